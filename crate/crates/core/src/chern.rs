//! Integral Chern data, the `(rank, slope, discriminant)` view, and the
//! discriminant calculus for extensions and filtrations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, q, Rational};
use crate::surface::{DivClass, SurfaceData};

/// An integral class `a C0 + b f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntClass {
    pub a: BigInt,
    pub b: BigInt,
}

impl IntClass {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        IntClass { a: a.into(), b: b.into() }
    }

    pub fn to_div(&self) -> DivClass {
        DivClass::new(int(&self.a), int(&self.b))
    }

    pub fn add(&self, o: &IntClass) -> IntClass {
        IntClass { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn sub(&self, o: &IntClass) -> IntClass {
        IntClass { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn neg(&self) -> IntClass {
        IntClass { a: -&self.a, b: -&self.b }
    }
}

impl Serialize for IntClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        struct I<'a>(&'a BigInt);
        impl Serialize for I<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                crate::rational::serde_int::serialize(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&I(&self.a))?;
        seq.serialize_element(&I(&self.b))?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct I(#[serde(with = "crate::rational::serde_int")] BigInt);
        let [a, b] = <[I; 2]>::deserialize(d)?;
        Ok(IntClass { a: a.0, b: b.0 })
    }
}

/// Integral Chern datum `(r, c1, c2)`, the canonical representation of a
/// numerical sheaf class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ChernJson")]
pub struct ChernData {
    pub r: u32,
    pub c1: IntClass,
    #[serde(with = "crate::rational::serde_int")]
    pub c2: BigInt,
}

#[derive(Deserialize)]
struct ChernJson {
    r: u32,
    c1: IntClass,
    #[serde(with = "crate::rational::serde_int")]
    c2: BigInt,
}

impl TryFrom<ChernJson> for ChernData {
    type Error = Error;
    fn try_from(j: ChernJson) -> Result<Self> {
        ChernData::new(j.r, j.c1, j.c2)
    }
}

impl ChernData {
    pub fn new(r: u32, c1: IntClass, c2: impl Into<BigInt>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidChern("rank must be positive".into()));
        }
        Ok(ChernData { r, c1, c2: c2.into() })
    }

    /// Parse `{"r":..,"c1":[a,b],"c2":..}`. Malformed JSON is a parse
    /// error; a well-formed datum of rank 0 is an invalid datum.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: ChernJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("chern data: {e}")))?;
        raw.try_into()
    }

    /// Shorthand for small literal data.
    pub fn of(r: u32, a: i64, b: i64, c2: i64) -> Self {
        ChernData::new(r, IntClass::new(a, b), c2).expect("positive rank")
    }

    pub fn rank_q(&self) -> Rational {
        q(i64::from(self.r))
    }

    pub fn mu(&self) -> DivClass {
        self.c1.to_div().scale(&(Rational::one() / self.rank_q()))
    }

    /// `2 r^2 Delta = 2 r c2 - (r - 1) c1^2`, an integer.
    pub fn discriminant_numerator(&self, s: &SurfaceData) -> BigInt {
        let r = BigInt::from(self.r);
        let c1sq = s.intersect_int(&self.c1.a, &self.c1.b, &self.c1.a, &self.c1.b);
        BigInt::from(2) * &r * &self.c2 - (&r - 1) * c1sq
    }

    pub fn delta(&self, s: &SurfaceData) -> Rational {
        let r = i64::from(self.r);
        Rational::new(self.discriminant_numerator(s), BigInt::from(2 * r * r))
    }

    /// `(c1 . f)`.
    pub fn fiber_degree(&self) -> &BigInt {
        &self.c1.a
    }

    /// Whether `(μ . f)` is an integer.
    pub fn fiber_slope_is_integral(&self) -> bool {
        (&self.c1.a % BigInt::from(self.r)).is_zero()
    }

    /// Tensor with the line bundle `L`: `c1 + r L`,
    /// `c2 + (r - 1)(c1 . L) + r(r - 1)/2 (L^2)`.
    pub fn twist(&self, s: &SurfaceData, l: &IntClass) -> ChernData {
        let r = BigInt::from(self.r);
        let c1l = s.intersect_int(&self.c1.a, &self.c1.b, &l.a, &l.b);
        let ll = s.intersect_int(&l.a, &l.b, &l.a, &l.b);
        ChernData {
            r: self.r,
            c1: IntClass { a: &self.c1.a + &r * &l.a, b: &self.c1.b + &r * &l.b },
            c2: &self.c2 + (&r - 1) * c1l + &r * (&r - 1) / 2 * ll,
        }
    }

    /// Chern data of the dual vector bundle.
    pub fn dual(&self) -> ChernData {
        ChernData { r: self.r, c1: self.c1.neg(), c2: self.c2.clone() }
    }
}

impl fmt::Display for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};({},{});{})", self.r, self.c1.a, self.c1.b, self.c2)
    }
}

/// `(rk, mu, Delta)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gamma {
    pub r: u32,
    pub mu: DivClass,
    #[serde(with = "crate::rational::serde_q")]
    pub delta: Rational,
}

pub fn gamma_of(s: &SurfaceData, c: &ChernData) -> Gamma {
    Gamma { r: c.r, mu: c.mu(), delta: c.delta(s) }
}

pub fn chern_of(s: &SurfaceData, g: &Gamma) -> Result<ChernData> {
    if g.r == 0 {
        return Err(Error::InvalidChern("rank must be positive".into()));
    }
    let r = q(i64::from(g.r));
    let c1 = g.mu.scale(&r);
    if !c1.is_integral() {
        return Err(Error::UnrealizableGamma);
    }
    // c2 = r Delta + (r - 1)/(2r) c1^2
    let c2 = &r * &g.delta + (&r - q(1)) / (q(2) * &r) * s.square(&c1);
    if !crate::rational::is_integer(&c2) {
        return Err(Error::UnrealizableGamma);
    }
    ChernData::new(g.r, IntClass::new(c1.a.to_integer(), c1.b.to_integer()), c2.to_integer())
}

/// Invariants of the middle term of `0 -> F1 -> E -> F2 -> 0`.
pub fn delta_of_extension(s: &SurfaceData, g1: &Gamma, g2: &Gamma) -> Gamma {
    let (r1, r2) = (q(i64::from(g1.r)), q(i64::from(g2.r)));
    let r = &r1 + &r2;
    let mu = (&g1.mu.scale(&r1) + &g2.mu.scale(&r2)).scale(&(Rational::one() / &r));
    let xi = &g1.mu - &g2.mu;
    let delta = &r1 / &r * &g1.delta + &r2 / &r * &g2.delta
        - &r1 * &r2 / (q(2) * &r * &r) * s.square(&xi);
    Gamma { r: g1.r + g2.r, mu, delta }
}

/// Invariants of `E` from the graded pieces of `0 = F0 ⊂ F1 ⊂ … ⊂ Fs = E`,
/// evaluated in closed form over the partial sums `F_i`:
///
/// `Delta = Σ (r_i/r) Δ_i − Σ_{i≥2} rk(F_{i−1}) rk(F_i) / (2 r_i r) · (μ(F_{i−1}) − μ(F_i))²`
pub fn delta_of_filtration(s: &SurfaceData, parts: &[Gamma]) -> Result<Gamma> {
    let first = parts.first().ok_or(Error::EmptyFiltration)?;
    let total_rank: u32 = parts.iter().map(|p| p.r).sum();
    let r = q(i64::from(total_rank));

    let mut weighted = Rational::zero();
    let mut correction = Rational::zero();
    let mut prev_rank = q(i64::from(first.r));
    let mut prev_c1 = first.mu.scale(&prev_rank);
    weighted += &prev_rank * &first.delta;
    for p in &parts[1..] {
        let rp = q(i64::from(p.r));
        weighted += &rp * &p.delta;
        let rank = &prev_rank + &rp;
        let c1 = &prev_c1 + &p.mu.scale(&rp);
        let step = &prev_c1.scale(&(Rational::one() / &prev_rank)) - &c1.scale(&(Rational::one() / &rank));
        correction += &prev_rank * &rank / (q(2) * &rp) * s.square(&step);
        prev_rank = rank;
        prev_c1 = c1;
    }
    Ok(Gamma {
        r: total_rank,
        mu: prev_c1.scale(&(Rational::one() / &r)),
        delta: (weighted - correction) / &r,
    })
}
