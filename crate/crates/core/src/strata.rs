//! Codimensions of Harder–Narasimhan strata and the positivity report.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::chern::ChernData;
use crate::criteria;
use crate::error::{Error, Result};
use crate::rational::{is_integer, q, Bound, Rational};
use crate::surface::{DivClass, SurfaceData};
use crate::walls::{hn_types_at, HNType, Side, Wall};

fn r_q(c: &ChernData) -> Rational {
    q(i64::from(c.r))
}

/// `d = -Σ_{i<j} r_i r_j (P(μ_j - μ_i) - Δ_i - Δ_j)`.
pub fn codim(s: &SurfaceData, t: &HNType) -> Result<Rational> {
    if t.parts.len() < 2 {
        return Err(Error::TooFewParts);
    }
    let mut d = q(0);
    for (i, pi) in t.parts.iter().enumerate() {
        for pj in &t.parts[i + 1..] {
            let xi = &pj.mu() - &pi.mu();
            d -= r_q(pi) * r_q(pj) * (s.hilbert_p(&xi) - pi.delta(s) - pj.delta(s));
        }
    }
    Ok(d)
}

/// Smallest codimension over the types on `side` of `w`; `+inf` when there are none.
pub fn min_codim_at(s: &SurfaceData, c: &ChernData, w: &Wall, side: Side) -> Result<Bound> {
    let mut best: Option<Rational> = None;
    for t in hn_types_at(s, c, w, side)? {
        let d = codim(s, &t)?;
        if best.as_ref().is_none_or(|b| d < *b) {
            best = Some(d);
        }
    }
    Ok(best.map_or(Bound::PosInf, Bound::Finite))
}

/// One pair `i < j` of a type, with `r_i r_j (μ_j - μ_i) = a C0 - b f`.
/// The four terms add up to the pair's share of `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairTerms {
    pub i: usize,
    pub j: usize,
    #[serde(with = "crate::rational::serde_int")]
    pub a: BigInt,
    #[serde(with = "crate::rational::serde_int")]
    pub b: BigInt,
    /// `r_i r_j (μ_j - μ_i, K/2) = b + (g - 1 + e/2) a`.
    #[serde(with = "crate::rational::serde_q")]
    pub k_half: Rational,
    /// `-r_i r_j (μ_j - μ_i)^2 / 2`, positive on a wall.
    #[serde(with = "crate::rational::serde_q")]
    pub self_term: Rational,
    /// `-r_i r_j χ(O_X) = r_i r_j (g - 1)`.
    #[serde(with = "crate::rational::serde_q")]
    pub chi_term: Rational,
    /// `r_i r_j (Δ_i + Δ_j)`.
    #[serde(with = "crate::rational::serde_q")]
    pub delta_term: Rational,
}

impl PairTerms {
    pub fn total(&self) -> Rational {
        &self.k_half + &self.self_term + &self.chi_term + &self.delta_term
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    #[serde(rename = "type")]
    pub hn_type: HNType,
    #[serde(with = "crate::rational::serde_q")]
    pub d: Rational,
    pub pairs: Vec<PairTerms>,
    pub integral: bool,
    pub at_least_two: bool,
    pub at_least_three: bool,
    /// Every part with fractional fiber slope still has semistable sheaves at
    /// the wall (`x <= x0` of that part); the stronger bound is expected here.
    pub parts_semistable_at_wall: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    #[serde(with = "crate::rational::serde_q")]
    pub position: Rational,
    pub types: Vec<TypeReport>,
    pub warnings: Vec<String>,
}

impl PositivityReport {
    /// `d >= 2` everywhere and `d >= 3` wherever the stronger setting applies.
    pub fn holds(&self) -> bool {
        self.types.iter().all(|t| t.at_least_two && (!t.parts_semistable_at_wall || t.at_least_three))
    }
}

fn pair_terms(s: &SurfaceData, g: u32, e: u32, t: &HNType) -> Vec<PairTerms> {
    let k = s.k();
    let two = q(2);
    let mut out = Vec::new();
    for (i, pi) in t.parts.iter().enumerate() {
        for (j, pj) in t.parts.iter().enumerate().skip(i + 1) {
            let rr = r_q(pi) * r_q(pj);
            let xi = &pj.mu() - &pi.mu();
            let scaled: DivClass = xi.scale(&rr);
            let a = scaled.a.to_integer();
            let b = (-&scaled.b).to_integer();
            let k_half = s.intersect(&scaled, k) / &two;
            debug_assert_eq!(
                k_half,
                crate::rational::int(&b) + (q(i64::from(g)) - q(1) + q(i64::from(e)) / &two) * crate::rational::int(&a)
            );
            out.push(PairTerms {
                i,
                j,
                a,
                b,
                k_half,
                self_term: -(&rr * s.square(&xi)) / &two,
                chi_term: -(&rr * crate::rational::int(s.chi())),
                delta_term: &rr * (pi.delta(s) + pj.delta(s)),
            });
        }
    }
    out
}

/// Whether `c` has semistable sheaves at `x` by the existence bound; parts
/// with integral fiber slope are not constrained by it.
fn part_exists_at(s: &SurfaceData, c: &ChernData, x: &Rational) -> bool {
    match criteria::existence_bound_x0(s, c) {
        Ok(x0) => *x <= x0,
        Err(_) => true,
    }
}

/// Positivity report over the minus-side types of `w`.
pub fn check_positivity(s: &SurfaceData, c: &ChernData, w: &Wall) -> Result<PositivityReport> {
    let (g, e) = s.require_ruled("positivity bounds need the ruled slice")?;
    if g == 0 || e + 2 <= 2 * g {
        return Err(Error::PositivityHypothesis(format!("g = {g}, e = {e}")));
    }
    let mut types = Vec::new();
    let mut warnings = Vec::new();
    for t in hn_types_at(s, c, w, Side::Below)? {
        let d = codim(s, &t)?;
        let pairs = pair_terms(s, g, e, &t);
        debug_assert_eq!(pairs.iter().map(PairTerms::total).sum::<Rational>(), d);
        let integral = is_integer(&d);
        if !integral {
            warnings.push(format!("non-integral codimension {} for {}", crate::rational::fmt_q(&d), fmt_type(&t)));
        }
        if pairs.iter().any(|p| !p.a.is_positive() || !p.b.is_positive()) {
            warnings.push(format!("unexpected pair orientation in {}", fmt_type(&t)));
        }
        let parts_semistable_at_wall = t
            .parts
            .iter()
            .filter(|p| !p.fiber_slope_is_integral())
            .all(|p| part_exists_at(s, p, &w.position));
        types.push(TypeReport {
            at_least_two: d >= q(2),
            at_least_three: d >= q(3),
            d,
            pairs,
            integral,
            parts_semistable_at_wall,
            hn_type: t,
        });
    }
    Ok(PositivityReport { position: w.position.clone(), types, warnings })
}

fn fmt_type(t: &HNType) -> String {
    let parts: Vec<String> = t.parts.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}
