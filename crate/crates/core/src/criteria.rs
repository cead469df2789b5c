//! Existence bound, moduli dimension and the Picard-group case analysis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::chern::{ChernData, IntClass};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Rational};
use crate::surface::SurfaceData;
use crate::walls;

/// `(g, e)` after checking `g >= 1` and `e > 2g - 2`.
fn nonrational(s: &SurfaceData) -> Result<(u32, u32)> {
    let (g, e) = s.require_ruled("existence bounds need the ruled slice")?;
    if g == 0 {
        return Err(Error::RationalSurface);
    }
    if e + 2 <= 2 * g {
        return Err(Error::InvalidSurface(format!("need e > 2g - 2, got g = {g}, e = {e}")));
    }
    Ok((g, e))
}

/// `(r1, r2)` with `r1 ≡ (c1 . f) mod r`, `0 < r1 < r`.
fn fiber_split(c: &ChernData) -> Result<(u32, u32)> {
    let r1 = c.c1.a.mod_floor(&BigInt::from(c.r));
    if r1.is_zero() {
        return Err(Error::DivisibleFiberDegree);
    }
    let r1 = u32::try_from(r1).expect("residue below rank");
    Ok((r1, c.r - r1))
}

fn threshold(s: &SurfaceData, c: &ChernData, shift: &Rational) -> Result<Rational> {
    let (_, e) = nonrational(s)?;
    let (r1, r2) = fiber_split(c)?;
    let r = q(i64::from(c.r));
    Ok(q(i64::from(e)) / q(2) + &r * &r / q(i64::from(r1 * r2)) * (c.delta(s) - shift))
}

/// `x0 = e/2 + r^2 Δ / (r1 r2)`: semistable sheaves exist on `H_x` iff `x <= x0`.
pub fn existence_bound_x0(s: &SurfaceData, c: &ChernData) -> Result<Rational> {
    threshold(s, c, &q(0))
}

/// `x1 = e/2 + r^2 (Δ - 1/r) / (r1 r2)`.
pub fn picard_threshold_x1(s: &SurfaceData, c: &ChernData) -> Result<Rational> {
    threshold(s, c, &(q(1) / q(i64::from(c.r))))
}

pub fn exists_semistable(s: &SurfaceData, c: &ChernData, x: &Rational) -> Result<bool> {
    let x0 = existence_bound_x0(s, c)?;
    if !s.ample_slice_contains(x)? {
        return Err(Error::NotAmple(fmt_q(x)));
    }
    Ok(*x <= x0)
}

/// `2 r^2 Δ - r^2 (1 - g) + 1`.
pub fn moduli_dim(s: &SurfaceData, c: &ChernData) -> Result<Rational> {
    let (g, _) = s.require_ruled("the dimension formula is stated for the ruled surface")?;
    let r2 = q(i64::from(c.r) * i64::from(c.r));
    Ok(q(2) * &r2 * c.delta(s) - &r2 * (q(1) - q(i64::from(g))) + q(1))
}

/// Upper end for wall searches: `x0` when it applies, else the wall horizon.
pub fn default_upper_bound(s: &SurfaceData, c: &ChernData) -> Result<Rational> {
    match existence_bound_x0(s, c) {
        Ok(x0) => Ok(x0),
        Err(Error::DivisibleFiberDegree | Error::RationalSurface | Error::InvalidSurface(_)) => {
            walls::wall_horizon(s, c)
        }
        Err(err) => Err(err),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum NormalizationStep {
    Twist { by: IntClass },
    Dual,
}

/// Bring `c` to `0 < (c1 . f) <= r/2` by twisting with multiples of `C0`
/// and, if needed, dualizing.
pub fn normalize(s: &SurfaceData, c: &ChernData) -> Result<(ChernData, Vec<NormalizationStep>)> {
    fiber_split(c)?;
    let mut steps = Vec::new();
    let mut cur = c.clone();
    let shift_into_range = |cur: &mut ChernData, steps: &mut Vec<NormalizationStep>| {
        let k = -cur.c1.a.div_floor(&BigInt::from(cur.r));
        if !k.is_zero() {
            let by = IntClass { a: k, b: BigInt::zero() };
            *cur = cur.twist(s, &by);
            steps.push(NormalizationStep::Twist { by });
        }
    };
    shift_into_range(&mut cur, &mut steps);
    if BigInt::from(2) * &cur.c1.a > BigInt::from(cur.r) {
        cur = cur.dual();
        steps.push(NormalizationStep::Dual);
        shift_into_range(&mut cur, &mut steps);
    }
    Ok((cur, steps))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeRank {
    Exact(u32),
    /// Undetermined within `lo..=hi`.
    Range(u32, u32),
}

impl Serialize for FreeRank {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FreeRank::Exact(n) => s.serialize_u32(*n),
            FreeRank::Range(lo, hi) => s.serialize_str(&format!("{lo}..{hi}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardFlags {
    pub off_wall_stable_exists: bool,
    pub locally_factorial: bool,
}

/// `Pic = Pic(J^{d1} × J^{d2}) ⊕ Z^{free_rank}` (up to torsion).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardDescription {
    #[serde(with = "crate::rational::serde_int_pair")]
    pub base: (BigInt, BigInt),
    pub free_rank: FreeRank,
    pub kappa_generated: bool,
    pub flags: PicardFlags,
    pub normalization: Vec<NormalizationStep>,
    pub normalized: ChernData,
    pub r1: u32,
    pub r2: u32,
    #[serde(with = "crate::rational::serde_int")]
    pub d: BigInt,
    #[serde(with = "crate::rational::serde_int")]
    pub d1: BigInt,
    #[serde(with = "crate::rational::serde_int")]
    pub d2: BigInt,
    #[serde(with = "crate::rational::serde_q")]
    pub x0: Rational,
    #[serde(with = "crate::rational::serde_q")]
    pub x1: Rational,
}

pub fn picard_structure(s: &SurfaceData, c: &ChernData, x: &Rational) -> Result<PicardDescription> {
    let (g, e) = nonrational(s)?;
    if !s.ample_slice_contains(x)? {
        return Err(Error::NotAmple(fmt_q(x)));
    }
    let (n, normalization) = normalize(s, c)?;
    let x0 = existence_bound_x0(s, &n)?;
    let x1 = picard_threshold_x1(s, &n)?;
    if *x > x0 {
        return Err(Error::ModuliEmpty(fmt_q(x)));
    }
    if walls::is_on_wall(s, c, x)? {
        return Err(Error::OnWall(fmt_q(x)));
    }
    if *x == x0 || *x == x1 {
        return Err(Error::OnThreshold(fmt_q(x)));
    }
    let (r1, r2) = fiber_split(&n)?;
    let d = n.c1.b.clone();
    let r1b = BigInt::from(r1);
    let d1: BigInt = &r1b * &d + (&r1b * &r1b - &r1b) / 2 * BigInt::from(e) - &n.c2;
    let d2 = &d - &d1;
    let free_rank = if g == 1 {
        FreeRank::Range(1, 3)
    } else if r1 != 1 || *x < x1 {
        FreeRank::Exact(3)
    } else {
        FreeRank::Exact(2)
    };
    Ok(PicardDescription {
        base: (d1.clone(), d2.clone()),
        free_rank,
        kappa_generated: g >= 2,
        flags: PicardFlags { off_wall_stable_exists: true, locally_factorial: true },
        normalization,
        normalized: n,
        r1,
        r2,
        d,
        d1,
        d2,
        x0,
        x1,
    })
}

/// The normalized datum's `x0` doubles as the largest slice value with
/// non-empty moduli; walls above it cannot carry semistable sheaves.
pub fn walls_beyond_x0(s: &SurfaceData, c: &ChernData) -> Result<Vec<Rational>> {
    let (_, e) = nonrational(s)?;
    let x0 = existence_bound_x0(s, c)?;
    let lo = x0.clone().max(q(i64::from(e)));
    let horizon = walls::wall_horizon(s, c)?;
    if horizon <= lo {
        return Ok(Vec::new());
    }
    Ok(walls::enumerate_walls(s, c, &lo, &horizon)?.into_iter().map(|w| w.position).collect())
}
