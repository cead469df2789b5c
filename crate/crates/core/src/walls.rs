//! Walls, chambers and Harder–Narasimhan types on the ample slice
//! `H_x = C0 + x f`, `x > e`.
//!
//! A wall is a slice position `x` where some two-step numerical filtration
//! `0 -> F1 -> E -> F2 -> 0` with integral Chern data and `Δ(F_i) >= 0` has
//! `(μ(F2) - μ(F1), H_x) = 0`. Writing `r1 r2 (μ(F1) - μ(F2)) = (A, B)` in the
//! `(C0, f)` basis, the wall sits at `x = e - B/A` and the discriminant budget
//! forces `A^2 (2x - e) <= r1 r2 (2 r c2 - (r-1) c1^2)`, which bounds the
//! candidate sub-classes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::{ChernData, IntClass};
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::rational::{div_ceil, fmt_q, int, q, Bound, Rational};
use crate::surface::{DivClass, SurfaceData};

/// Which chamber adjacent to a wall. `Below` is `H_x - εf`, the minus side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Below => Side::Above,
            Side::Above => Side::Below,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Below => "below",
            Side::Above => "above",
        })
    }
}

/// A two-step destabilizing datum at a wall, oriented for the minus side:
/// the sub-sheaf has `rank = ranks.0` and `c1 = sub_c1`, and
/// `xi = μ(quotient) - μ(sub)` has positive `C0` coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub xi: DivClass,
    pub ranks: (u32, u32),
    pub sub_c1: IntClass,
    /// `r1 Δ1 + r2 Δ2`, fixed by the split.
    #[serde(with = "crate::rational::serde_q")]
    pub delta_budget: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    #[serde(with = "crate::rational::serde_q")]
    pub position: Rational,
    pub witnesses: Vec<Witness>,
}

/// Open interval `(lo, hi)` of slice parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chamber {
    pub lo: Bound,
    pub hi: Bound,
}

impl Chamber {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        Chamber { lo, hi }
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        let p = Bound::Finite(x.clone());
        self.lo < p && p < self.hi
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Chamber) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl Serialize for Chamber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.lo, &self.hi).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chamber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (lo, hi) = <(Bound, Bound)>::deserialize(d)?;
        if lo >= hi {
            return Err(serde::de::Error::custom("chamber needs lo < hi"));
        }
        Ok(Chamber { lo, hi })
    }
}

/// An ordered Harder–Narasimhan type `(γ1, …, γs)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HNType {
    pub parts: Vec<ChernData>,
}

impl HNType {
    pub fn new(parts: Vec<ChernData>) -> Self {
        HNType { parts }
    }

    /// Parse a JSON array of Chern data.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: Vec<serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("HN type: {e}")))?;
        raw.iter().map(|v| ChernData::from_json_str(&v.to_string())).collect::<Result<_>>().map(HNType::new)
    }

    pub fn reversed(&self) -> HNType {
        HNType { parts: self.parts.iter().rev().cloned().collect() }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Chern data of a direct sum (Whitney formula).
pub fn direct_sum(s: &SurfaceData, parts: &[ChernData]) -> ChernData {
    let mut r = 0;
    let mut c1 = IntClass::new(0, 0);
    let mut c2 = BigInt::zero();
    for p in parts {
        c2 += &p.c2 + s.intersect_int(&c1.a, &c1.b, &p.c1.a, &p.c1.b);
        c1 = c1.add(&p.c1);
        r += p.r;
    }
    ChernData { r, c1, c2 }
}

/// `a(p)/r(p)` compared with `a(q)/r(q)`.
fn cmp_fiber_slope(p: &ChernData, q: &ChernData) -> std::cmp::Ordering {
    (&p.c1.a * BigInt::from(q.r)).cmp(&(&q.c1.a * BigInt::from(p.r)))
}

/// Whether consecutive parts are strictly ordered for `side`: `(μ_i - μ_{i+1}, H_x) > 0`
/// just off the wall, i.e. fiber slopes increase below and decrease above.
fn ordered_for(side: Side, p: &ChernData, q: &ChernData) -> bool {
    match side {
        Side::Below => cmp_fiber_slope(p, q).is_lt(),
        Side::Above => cmp_fiber_slope(p, q).is_gt(),
    }
}

/// A numerical two-step split `c = sub + quotient`, with the room left for `c2`.
#[derive(Clone, Debug)]
struct Split {
    r1: u32,
    r2: u32,
    sub: IntClass,
    quo: IntClass,
    /// `c2(sub) + c2(quo)`, fixed by Whitney.
    c2_sum: BigInt,
    /// Smallest `c2` with `Δ >= 0` on each side.
    min1: BigInt,
    min2: BigInt,
}

fn bogomolov_min_c2(s: &SurfaceData, r: u32, c1: &IntClass) -> BigInt {
    let sq = s.intersect_int(&c1.a, &c1.b, &c1.a, &c1.b);
    div_ceil(&(BigInt::from(r - 1) * sq), &BigInt::from(2 * r))
}

impl Split {
    fn new(s: &SurfaceData, c: &ChernData, r1: u32, sub: IntClass) -> Option<Split> {
        let r2 = c.r - r1;
        let quo = c.c1.sub(&sub);
        let c2_sum = &c.c2 - s.intersect_int(&sub.a, &sub.b, &quo.a, &quo.b);
        let min1 = bogomolov_min_c2(s, r1, &sub);
        let min2 = bogomolov_min_c2(s, r2, &quo);
        (&min1 + &min2 <= c2_sum).then_some(Split { r1, r2, sub, quo, c2_sum, min1, min2 })
    }

    fn witness(&self, s: &SurfaceData) -> Witness {
        let (r1, r2) = (q(i64::from(self.r1)), q(i64::from(self.r2)));
        let mu1 = self.sub.to_div().scale(&(Rational::one() / &r1));
        let mu2 = self.quo.to_div().scale(&(Rational::one() / &r2));
        let sq = |c: &IntClass| int(&s.intersect_int(&c.a, &c.b, &c.a, &c.b));
        let budget = int(&self.c2_sum)
            - (&r1 - q(1)) * sq(&self.sub) / (q(2) * &r1)
            - (&r2 - q(1)) * sq(&self.quo) / (q(2) * &r2);
        Witness { xi: &mu2 - &mu1, ranks: (self.r1, self.r2), sub_c1: self.sub.clone(), delta_budget: budget }
    }

    /// All `(sub, quotient)` Chern data with both discriminants nonnegative.
    fn distributions(&self) -> impl Iterator<Item = (ChernData, ChernData)> + '_ {
        let hi = &self.c2_sum - &self.min2;
        num_iter_range(&self.min1, &hi).map(move |c2_1| {
            let c2_2 = &self.c2_sum - &c2_1;
            (
                ChernData { r: self.r1, c1: self.sub.clone(), c2: c2_1 },
                ChernData { r: self.r2, c1: self.quo.clone(), c2: c2_2 },
            )
        })
    }
}

fn num_iter_range(lo: &BigInt, hi: &BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = lo.clone();
    let hi = hi.clone();
    std::iter::from_fn(move || {
        (cur <= hi).then(|| {
            let v = cur.clone();
            cur += 1;
            v
        })
    })
}

/// `r1 r2 (2 r c2 - (r-1) c1^2)`: the largest admissible `A^2 (2x - e)`.
fn split_budget(s: &SurfaceData, c: &ChernData, r1: u32) -> BigInt {
    BigInt::from(r1) * BigInt::from(c.r - r1) * c.discriminant_numerator(s)
}

fn check_datum(s: &SurfaceData, c: &ChernData) -> Result<u32> {
    let (_, e) = s.require_ruled("walls are only defined on the ruled slice")?;
    if c.r == 0 {
        return Err(Error::InvalidChern("rank must be positive".into()));
    }
    Ok(e)
}

fn lifts(n: &BigInt, r: u32) -> Option<BigInt> {
    let (quot, rem) = n.div_rem(&BigInt::from(r));
    rem.is_zero().then_some(quot)
}

/// Walls of `c` in `(x_lo, x_hi]`, ascending. Positions are deduplicated and
/// every contributing split is attached as a witness.
pub fn enumerate_walls(s: &SurfaceData, c: &ChernData, x_lo: &Rational, x_hi: &Rational) -> Result<Vec<Wall>> {
    enumerate_walls_with(s, c, x_lo, x_hi, Strategy::default())
}

pub fn enumerate_walls_with(
    s: &SurfaceData,
    c: &ChernData,
    x_lo: &Rational,
    x_hi: &Rational,
    strategy: Strategy,
) -> Result<Vec<Wall>> {
    let e = check_datum(s, c)?;
    let e_q = q(i64::from(e));
    if *x_lo < e_q {
        return Err(Error::InvalidRange(format!("lower end {} is below e = {e}", fmt_q(x_lo))));
    }
    if x_hi <= x_lo {
        return Err(Error::InvalidRange(format!("empty range ({}, {}]", fmt_q(x_lo), fmt_q(x_hi))));
    }
    let e_big = BigInt::from(e);

    // One task per (r1, |A|); every wall has a split with A < 0 and B > 0.
    let mut tasks = Vec::new();
    for r1 in 1..c.r {
        let m = split_budget(s, c, r1);
        let mut k = BigInt::one();
        while &e_big * &k * &k + BigInt::from(2) * &k <= m {
            tasks.push((r1, k.clone(), m.clone()));
            k += 1;
        }
    }

    let found = par::flat_map(&tasks, strategy, |(r1, k, m)| {
        let mut out = Vec::new();
        let r = c.r;
        let a = -k;
        let Some(a1) = lifts(&(&a + BigInt::from(*r1) * &c.c1.a), r) else {
            return out;
        };
        let by_budget = (m - &e_big * k * k).div_floor(&(BigInt::from(2) * k));
        let by_range = (int(k) * (x_hi - &e_q)).floor().to_integer();
        let b_max = by_budget.min(by_range);
        let b_min: BigInt = (int(k) * (x_lo - &e_q)).floor().to_integer() + 1;
        let rb = BigInt::from(r);
        let target: BigInt = (-(BigInt::from(*r1) * &c.c1.b)).mod_floor(&rb);
        let mut b = &b_min + (&target - &b_min).mod_floor(&rb);
        while b <= b_max {
            let b1 = lifts(&(&b + BigInt::from(*r1) * &c.c1.b), r).expect("residue chosen");
            if let Some(split) = Split::new(s, c, *r1, IntClass { a: a1.clone(), b: b1 }) {
                let x = &e_q + Rational::new(b.clone(), k.clone());
                out.push((x, split.witness(s)));
            }
            b += &rb;
        }
        out
    });

    let mut by_pos: BTreeMap<Rational, Vec<Witness>> = BTreeMap::new();
    for (x, w) in found {
        by_pos.entry(x).or_default().push(w);
    }
    Ok(by_pos
        .into_iter()
        .map(|(position, mut witnesses)| {
            witnesses.sort_by(|u, v| (u.ranks, &u.sub_c1).cmp(&(v.ranks, &v.sub_c1)));
            Wall { position, witnesses }
        })
        .collect())
}

/// Two-step splits at `x`, oriented so the sub-sheaf comes first on `side`.
fn splits_at(s: &SurfaceData, c: &ChernData, x: &Rational, side: Side) -> Vec<Split> {
    let Some((_, e)) = s.ruled_params() else {
        return Vec::new();
    };
    let e_q = q(i64::from(e));
    if *x <= e_q {
        return Vec::new();
    }
    let t = x - &e_q;
    let slope = q(2) * x - &e_q;
    let mut out = Vec::new();
    for r1 in 1..c.r {
        let m = int(&split_budget(s, c, r1));
        let mut k = BigInt::one();
        while int(&(&k * &k)) * &slope <= m {
            let a = match side {
                Side::Below => -&k,
                Side::Above => k.clone(),
            };
            k += 1;
            let b = -(int(&a) * &t);
            if !crate::rational::is_integer(&b) {
                continue;
            }
            let b = b.to_integer();
            let (Some(a1), Some(b1)) = (
                lifts(&(&a + BigInt::from(r1) * &c.c1.a), c.r),
                lifts(&(&b + BigInt::from(r1) * &c.c1.b), c.r),
            ) else {
                continue;
            };
            if let Some(split) = Split::new(s, c, r1, IntClass { a: a1, b: b1 }) {
                out.push(split);
            }
        }
    }
    out
}

/// Whether `x` is one of the wall positions of `c`.
pub fn is_on_wall(s: &SurfaceData, c: &ChernData, x: &Rational) -> Result<bool> {
    check_datum(s, c)?;
    Ok(!splits_at(s, c, x, Side::Below).is_empty())
}

/// The witnesses at `x`, if `x` is a wall.
pub fn wall_at(s: &SurfaceData, c: &ChernData, x: &Rational) -> Result<Option<Wall>> {
    check_datum(s, c)?;
    let mut witnesses: Vec<Witness> = splits_at(s, c, x, Side::Below).iter().map(|sp| sp.witness(s)).collect();
    if witnesses.is_empty() {
        return Ok(None);
    }
    witnesses.sort_by(|u, v| (u.ranks, &u.sub_c1).cmp(&(v.ranks, &v.sub_c1)));
    Ok(Some(Wall { position: x.clone(), witnesses }))
}

/// No wall of `c` lies above this slice parameter.
///
/// From the split bound `A^2 (2x - e) <= r1 r2 N` with `|A| >= 1` and
/// `r1 r2 <= floor(r^2/4)`.
pub fn wall_horizon(s: &SurfaceData, c: &ChernData) -> Result<Rational> {
    let e = q(i64::from(check_datum(s, c)?));
    let n = int(&c.discriminant_numerator(s));
    let rr = i64::from(c.r) * i64::from(c.r) / 4;
    let h = &e / q(2) + n * q(rr) / q(2);
    Ok(if h > e { h } else { e + q(1) })
}

/// Open intervals between consecutive walls in `(x_lo, x_hi)`.
pub fn chambers(s: &SurfaceData, c: &ChernData, x_lo: &Rational, x_hi: &Rational) -> Result<Vec<Chamber>> {
    let walls = enumerate_walls(s, c, x_lo, x_hi)?;
    let mut cuts = vec![Bound::Finite(x_lo.clone())];
    cuts.extend(walls.into_iter().map(|w| Bound::Finite(w.position)));
    if cuts.last() != Some(&Bound::Finite(x_hi.clone())) {
        cuts.push(Bound::Finite(x_hi.clone()));
    }
    Ok(cuts.windows(2).map(|w| Chamber::new(w[0].clone(), w[1].clone())).collect())
}

/// The chambers of `c` immediately below and above the slice point `x`.
/// The lower one is bounded by the ample-cone edge `e`, the upper one is
/// unbounded past the last wall.
pub fn adjacent_chambers(s: &SurfaceData, c: &ChernData, x: &Rational) -> Result<(Chamber, Chamber)> {
    let e = q(i64::from(check_datum(s, c)?));
    if *x <= e {
        return Err(Error::NotAmple(fmt_q(x)));
    }
    let lo = enumerate_walls(s, c, &e, x)?.into_iter().map(|w| w.position).rfind(|p| p < x);
    let horizon = wall_horizon(s, c)?;
    let hi = if *x < horizon {
        enumerate_walls(s, c, x, &horizon)?.into_iter().next().map(|w| w.position)
    } else {
        None
    };
    let below = Chamber::new(Bound::Finite(lo.unwrap_or(e)), Bound::Finite(x.clone()));
    let above = Chamber::new(Bound::Finite(x.clone()), hi.map_or(Bound::PosInf, Bound::Finite));
    Ok((below, above))
}

type TypeList = Rc<Vec<Vec<ChernData>>>;

/// Memoized multi-step generation at one `(position, side)`: a type is a
/// two-step split `(γ1, rest)` followed by either `rest` itself or a type of
/// `rest` whose first part continues the slope order.
struct HnGenerator<'a> {
    s: &'a SurfaceData,
    x: &'a Rational,
    side: Side,
    memo: HashMap<ChernData, TypeList>,
}

impl HnGenerator<'_> {
    fn types(&mut self, c: &ChernData) -> TypeList {
        if let Some(hit) = self.memo.get(c) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for split in splits_at(self.s, c, self.x, self.side) {
            for (first, rest) in split.distributions() {
                out.push(vec![first.clone(), rest.clone()]);
                for tail in self.types(&rest).iter() {
                    if ordered_for(self.side, &first, &tail[0]) {
                        let mut t = Vec::with_capacity(tail.len() + 1);
                        t.push(first.clone());
                        t.extend(tail.iter().cloned());
                        out.push(t);
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert(c.clone(), out.clone());
        out
    }
}

/// Every coarsening `(F_i, E/F_i)` keeps `Δ >= 0` on both sides.
fn closed_under_truncation(s: &SurfaceData, parts: &[ChernData]) -> bool {
    (1..parts.len()).all(|i| {
        let head = direct_sum(s, &parts[..i]);
        let tail = direct_sum(s, &parts[i..]);
        !head.discriminant_numerator(s).is_negative() && !tail.discriminant_numerator(s).is_negative()
    })
}

/// HN types at an arbitrary slice position (empty off the walls).
pub fn hn_types_at_position(s: &SurfaceData, c: &ChernData, x: &Rational, side: Side) -> Result<Vec<HNType>> {
    check_datum(s, c)?;
    let mut gen = HnGenerator { s, x, side, memo: HashMap::new() };
    let mut types: Vec<HNType> = gen
        .types(c)
        .iter()
        .filter(|parts| closed_under_truncation(s, parts))
        .map(|parts| HNType::new(parts.clone()))
        .collect();
    types.sort_by_cached_key(|t| serde_json::to_string(&t.parts).expect("chern data serializes"));
    types.dedup();
    Ok(types)
}

/// `Γ_{H, C}` for the chamber on `side` of `w`, ordered by serialized parts.
pub fn hn_types_at(s: &SurfaceData, c: &ChernData, w: &Wall, side: Side) -> Result<Vec<HNType>> {
    if !is_on_wall(s, c, &w.position)? {
        return Err(Error::WallMismatch(fmt_q(&w.position)));
    }
    hn_types_at_position(s, c, &w.position, side)
}

/// Rough size indicator for progress reporting and benches.
pub fn candidate_count(s: &SurfaceData, c: &ChernData) -> usize {
    let Some((_, e)) = s.ruled_params() else { return 0 };
    (1..c.r)
        .map(|r1| {
            let m = split_budget(s, c, r1).to_i64().unwrap_or(i64::MAX);
            let e = i64::from(e);
            (1..).take_while(|k| e * k * k + 2 * k <= m).map(|k| ((m - e * k * k) / (2 * k)).max(0) as usize).sum::<usize>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s23() -> SurfaceData {
        SurfaceData::ruled(2, 3)
    }

    fn positions(ws: &[Wall]) -> Vec<Rational> {
        ws.iter().map(|w| w.position.clone()).collect()
    }

    #[test]
    fn rank_one_has_no_walls() {
        let s = s23();
        for c in [ChernData::of(1, 0, 0, 0), ChernData::of(1, 2, -1, 4)] {
            assert!(enumerate_walls(&s, &c, &q(3), &q(100)).unwrap().is_empty());
            assert!(!is_on_wall(&s, &c, &q(5)).unwrap());
        }
    }

    #[test]
    fn worked_walls() {
        let s = s23();
        let c = ChernData::of(2, 1, 0, 1);
        let ws = enumerate_walls(&s, &c, &q(3), &q(6)).unwrap();
        assert_eq!(positions(&ws), vec![q(5)]);
        assert_eq!(ws[0].witnesses.len(), 1);
        let w = &ws[0].witnesses[0];
        assert_eq!(w.xi, DivClass::ints(1, -2));
        assert_eq!(w.delta_budget, q(0));
        assert_eq!(w.ranks, (1, 1));

        let c = ChernData::of(2, 1, 0, 2);
        let ws = enumerate_walls(&s, &c, &q(3), &q(8)).unwrap();
        assert_eq!(positions(&ws), vec![q(5), q(7)]);
        assert_eq!(ws[0].witnesses[0].delta_budget, q(1));
        assert_eq!(ws[1].witnesses[0].xi, DivClass::ints(1, -4));
        assert_eq!(ws[1].witnesses[0].delta_budget, q(0));
    }

    #[test]
    fn range_is_half_open() {
        let s = s23();
        let c = ChernData::of(2, 1, 0, 2);
        assert_eq!(positions(&enumerate_walls(&s, &c, &q(5), &q(7)).unwrap()), vec![q(7)]);
        assert!(enumerate_walls(&s, &c, &q(3), &(q(5) - crate::rational::frac(1, 100))).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        let s = s23();
        let c = ChernData::of(2, 1, 0, 1);
        assert!(matches!(enumerate_walls(&s, &c, &q(2), &q(6)), Err(Error::InvalidRange(_))));
        assert!(matches!(enumerate_walls(&s, &c, &q(6), &q(6)), Err(Error::InvalidRange(_))));
        let abs = SurfaceData::abstract_lattice([[0, 1], [1, 0]], DivClass::zero(), 2).unwrap();
        assert!(matches!(enumerate_walls(&abs, &c, &q(0), &q(6)), Err(Error::AbstractUnsupported(_))));
        let zero = ChernData { r: 0, c1: IntClass::new(0, 0), c2: BigInt::zero() };
        assert!(matches!(enumerate_walls(&s, &zero, &q(3), &q(6)), Err(Error::InvalidChern(_))));
    }

    #[test]
    fn chamber_examples() {
        let s = s23();
        let ch = chambers(&s, &ChernData::of(2, 1, 0, 1), &q(3), &q(6)).unwrap();
        let b = |n| Bound::Finite(q(n));
        assert_eq!(ch, vec![Chamber::new(b(3), b(5)), Chamber::new(b(5), b(6))]);
        let ch = chambers(&s, &ChernData::of(2, 1, 0, 2), &q(3), &q(8)).unwrap();
        assert_eq!(ch, vec![Chamber::new(b(3), b(5)), Chamber::new(b(5), b(7)), Chamber::new(b(7), b(8))]);
        let ch = chambers(&s, &ChernData::of(1, 1, 0, 2), &q(3), &q(8)).unwrap();
        assert_eq!(ch, vec![Chamber::new(b(3), b(8))]);
        // a wall at the upper end does not leave an empty chamber behind
        let ch = chambers(&s, &ChernData::of(2, 1, 0, 1), &q(3), &q(5)).unwrap();
        assert_eq!(ch, vec![Chamber::new(b(3), b(5))]);
    }

    #[test]
    fn adjacent() {
        let s = s23();
        let b = |n| Bound::Finite(q(n));
        let (lo, hi) = adjacent_chambers(&s, &ChernData::of(2, 1, 0, 2), &q(5)).unwrap();
        assert_eq!(lo, Chamber::new(b(3), b(5)));
        assert_eq!(hi, Chamber::new(b(5), b(7)));
        let (_, hi) = adjacent_chambers(&s, &ChernData::of(2, 1, 0, 2), &q(7)).unwrap();
        assert_eq!(hi, Chamber::new(b(7), Bound::PosInf));
    }

    #[test]
    fn hn_examples() {
        let s = s23();
        let c = ChernData::of(2, 1, 0, 1);
        let w = wall_at(&s, &c, &q(5)).unwrap().unwrap();
        let below = hn_types_at(&s, &c, &w, Side::Below).unwrap();
        assert_eq!(below, vec![HNType::new(vec![ChernData::of(1, 0, 1, 0), ChernData::of(1, 1, -1, 0)])]);
        let above = hn_types_at(&s, &c, &w, Side::Above).unwrap();
        assert_eq!(above, vec![HNType::new(vec![ChernData::of(1, 1, -1, 0), ChernData::of(1, 0, 1, 0)])]);
        assert!(below.iter().all(|t| t.len() <= 2));

        let fake = Wall { position: q(4), witnesses: vec![] };
        assert!(matches!(hn_types_at(&s, &c, &fake, Side::Below), Err(Error::WallMismatch(_))));
        assert!(is_on_wall(&s, &c, &q(5)).unwrap());
        assert!(!is_on_wall(&s, &c, &q(4)).unwrap());
    }

    #[test]
    fn budget_spreads_over_c2() {
        let s = s23();
        let c = ChernData::of(2, 1, 0, 2);
        let w = wall_at(&s, &c, &q(5)).unwrap().unwrap();
        let below = hn_types_at(&s, &c, &w, Side::Below).unwrap();
        assert_eq!(below.len(), 2);
        for t in &below {
            assert_eq!(direct_sum(&s, &t.parts), c);
        }
    }

    #[test]
    fn rank_three_types_are_consistent() {
        let s = SurfaceData::ruled(1, 1);
        let c = ChernData::of(3, 0, 0, 4);
        let horizon = wall_horizon(&s, &c).unwrap();
        let walls = enumerate_walls(&s, &c, &q(1), &horizon).unwrap();
        assert!(!walls.is_empty());
        let mut saw_three = false;
        for w in &walls {
            for side in [Side::Below, Side::Above] {
                for t in hn_types_at(&s, &c, w, side).unwrap() {
                    saw_three |= t.len() == 3;
                    assert_eq!(direct_sum(&s, &t.parts), c);
                    let h = DivClass::polarization(&w.position);
                    for p in &t.parts {
                        assert!(!p.discriminant_numerator(&s).is_negative());
                        let d = &p.mu() - &c.mu();
                        assert_eq!(s.intersect(&d, &h), q(0));
                    }
                    for pair in t.parts.windows(2) {
                        assert!(ordered_for(side, &pair[0], &pair[1]));
                    }
                }
            }
        }
        assert!(saw_three);

        // O(-C0+f) ⊂ O ⊂ O(C0-f) at x = 2, with the spare unit of c2 on any part
        let w = wall_at(&s, &c, &q(2)).unwrap().unwrap();
        let three: Vec<_> = hn_types_at(&s, &c, &w, Side::Below).unwrap().into_iter().filter(|t| t.len() == 3).collect();
        assert_eq!(three.len(), 3);
        assert_eq!(three[0].parts, vec![ChernData::of(1, -1, 1, 0), ChernData::of(1, 0, 0, 0), ChernData::of(1, 1, -1, 1)]);
    }

    #[test]
    fn sides_are_reversals() {
        let s = SurfaceData::ruled(1, 1);
        for c in [ChernData::of(3, 1, 0, 4), ChernData::of(3, 2, 1, 3), ChernData::of(2, 1, -1, 3)] {
            let horizon = wall_horizon(&s, &c).unwrap();
            for w in enumerate_walls(&s, &c, &q(1), &horizon).unwrap() {
                let below = hn_types_at(&s, &c, &w, Side::Below).unwrap();
                let mut above: Vec<HNType> =
                    hn_types_at(&s, &c, &w, Side::Above).unwrap().iter().map(HNType::reversed).collect();
                let mut below = below;
                below.sort();
                above.sort();
                assert_eq!(below, above);
                assert!(!below.is_empty());
            }
        }
    }

    #[test]
    fn strategies_agree() {
        let s = SurfaceData::ruled(1, 1);
        let c = ChernData::of(3, 1, 0, 4);
        let h = wall_horizon(&s, &c).unwrap();
        let a = enumerate_walls_with(&s, &c, &q(1), &h, Strategy::Sequential).unwrap();
        let b = enumerate_walls_with(&s, &c, &q(1), &h, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
