//! Numerical intersection theory on a ruled surface, in the basis `(C0, f)`.
//!
//! A ruled surface over a genus-`g` curve with minimal section of
//! self-intersection `-e` has Gram matrix `[[-e, 1], [1, 0]]`, canonical class
//! `-2 C0 + (2g - 2 - e) f` and `chi(O) = 1 - g`. The abstract mode takes an
//! arbitrary symmetric Gram matrix together with `K` and `chi(O)`; it exists to
//! exercise the K-trivial symmetry and supports no walls.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, int, q, Rational, Q};

/// A rational divisor class `a C0 + b f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivClass {
    pub a: Rational,
    pub b: Rational,
}

impl DivClass {
    pub fn new(a: Rational, b: Rational) -> Self {
        DivClass { a, b }
    }

    pub fn ints(a: i64, b: i64) -> Self {
        DivClass::new(q(a), q(b))
    }

    pub fn zero() -> Self {
        DivClass::ints(0, 0)
    }

    /// `C0 + x f`.
    pub fn polarization(x: &Rational) -> Self {
        DivClass::new(q(1), x.clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        DivClass::new(&self.a * k, &self.b * k)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        crate::rational::is_integer(&self.a) && crate::rational::is_integer(&self.b)
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, o: &DivClass) -> DivClass {
        DivClass::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, o: &DivClass) -> DivClass {
        DivClass::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass::new(-&self.a, -&self.b)
    }
}

impl Mul<&Rational> for &DivClass {
    type Output = DivClass;
    fn mul(self, k: &Rational) -> DivClass {
        self.scale(k)
    }
}

impl Serialize for DivClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [fmt_q(&self.a), fmt_q(&self.b)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[Q; 2]>::deserialize(d)?;
        Ok(DivClass::new(a.0, b.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Ruled { g: u32, e: u32 },
    Abstract,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceData {
    kind: SurfaceKind,
    gram: [[BigInt; 2]; 2],
    canonical: DivClass,
    chi: BigInt,
}

impl SurfaceData {
    pub fn ruled(g: u32, e: u32) -> Self {
        let (gi, ei) = (i64::from(g), i64::from(e));
        SurfaceData {
            kind: SurfaceKind::Ruled { g, e },
            gram: [
                [BigInt::from(-ei), BigInt::from(1)],
                [BigInt::from(1), BigInt::from(0)],
            ],
            canonical: DivClass::ints(-2, 2 * gi - 2 - ei),
            chi: BigInt::from(1 - gi),
        }
    }

    pub fn abstract_lattice(gram: [[i64; 2]; 2], canonical: DivClass, chi: i64) -> Result<Self> {
        if gram[0][1] != gram[1][0] {
            return Err(Error::InvalidSurface("gram matrix must be symmetric".into()));
        }
        Ok(SurfaceData {
            kind: SurfaceKind::Abstract,
            gram: gram.map(|row| row.map(BigInt::from)),
            canonical,
            chi: BigInt::from(chi),
        })
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    /// `(g, e)` in ruled mode.
    pub fn ruled_params(&self) -> Option<(u32, u32)> {
        match self.kind {
            SurfaceKind::Ruled { g, e } => Some((g, e)),
            SurfaceKind::Abstract => None,
        }
    }

    pub(crate) fn require_ruled(&self, what: &'static str) -> Result<(u32, u32)> {
        self.ruled_params().ok_or(Error::AbstractUnsupported(what))
    }

    pub fn gram(&self) -> &[[BigInt; 2]; 2] {
        &self.gram
    }

    /// The stored canonical class (derived in ruled mode, user input otherwise).
    pub fn k(&self) -> &DivClass {
        &self.canonical
    }

    pub fn chi(&self) -> &BigInt {
        &self.chi
    }

    /// True iff `g >= 1` and `e > 2g - 2`.
    pub fn is_nonrational(&self) -> bool {
        match self.kind {
            SurfaceKind::Ruled { g, e } => g >= 1 && i64::from(e) > 2 * i64::from(g) - 2,
            SurfaceKind::Abstract => false,
        }
    }

    pub fn intersect(&self, d1: &DivClass, d2: &DivClass) -> Rational {
        let g = &self.gram;
        &d1.a * (&d2.a * int(&g[0][0]) + &d2.b * int(&g[0][1]))
            + &d1.b * (&d2.a * int(&g[1][0]) + &d2.b * int(&g[1][1]))
    }

    /// Integer intersection for integral classes given by coordinates.
    pub(crate) fn intersect_int(&self, a1: &BigInt, b1: &BigInt, a2: &BigInt, b2: &BigInt) -> BigInt {
        let g = &self.gram;
        a1 * (a2 * &g[0][0] + b2 * &g[0][1]) + b1 * (a2 * &g[1][0] + b2 * &g[1][1])
    }

    pub fn square(&self, d: &DivClass) -> Rational {
        self.intersect(d, d)
    }

    pub fn canonical_class(&self) -> Result<DivClass> {
        match self.kind {
            SurfaceKind::Ruled { .. } => Ok(self.canonical.clone()),
            SurfaceKind::Abstract => Err(Error::CanonicalNotDerived),
        }
    }

    /// `P(x) = (x, x - K)/2 + chi(O)`.
    pub fn hilbert_p(&self, x: &DivClass) -> Rational {
        self.intersect(x, &(x - &self.canonical)) / q(2) + int(&self.chi)
    }

    /// Whether `H_x = C0 + x f` is ample, i.e. `x > e`.
    pub fn ample_slice_contains(&self, x: &Rational) -> Result<bool> {
        let (_, e) = self.require_ruled("ampleness is only modeled on the ruled slice")?;
        Ok(*x > q(i64::from(e)))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SurfaceJson {
    Ruled {
        g: u32,
        e: u32,
    },
    Abstract {
        gram: [[i64; 2]; 2],
        #[serde(rename = "K")]
        k: DivClass,
        #[serde(rename = "chiO")]
        chi: i64,
    },
}

impl<'de> Deserialize<'de> for SurfaceData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match SurfaceJson::deserialize(d)? {
            SurfaceJson::Ruled { g, e } => Ok(SurfaceData::ruled(g, e)),
            SurfaceJson::Abstract { gram, k, chi } => {
                SurfaceData::abstract_lattice(gram, k, chi).map_err(serde::de::Error::custom)
            }
        }
    }
}

impl SurfaceData {
    /// Parse a `{"kind":"ruled",..}` or `{"kind":"abstract",..}` object.
    pub fn from_json_str(text: &str) -> Result<Self> {
        match serde_json::from_str::<SurfaceJson>(text).map_err(|e| Error::Parse(format!("surface: {e}")))? {
            SurfaceJson::Ruled { g, e } => Ok(SurfaceData::ruled(g, e)),
            SurfaceJson::Abstract { gram, k, chi } => SurfaceData::abstract_lattice(gram, k, chi),
        }
    }
}

/// Full description, including the derived data, used for `surface` output.
#[derive(Serialize)]
pub struct SurfaceSummary {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(with = "crate::rational::serde_int_matrix")]
    pub gram: [[BigInt; 2]; 2],
    #[serde(rename = "K")]
    pub k: DivClass,
    #[serde(rename = "chiO", with = "crate::rational::serde_int")]
    pub chi: BigInt,
    pub nonrational: bool,
}

impl SurfaceData {
    pub fn summary(&self) -> SurfaceSummary {
        let (kind, g, e) = match self.kind {
            SurfaceKind::Ruled { g, e } => ("ruled", Some(g), Some(e)),
            SurfaceKind::Abstract => ("abstract", None, None),
        };
        SurfaceSummary {
            kind,
            g,
            e,
            gram: self.gram.clone(),
            k: self.canonical.clone(),
            chi: self.chi.clone(),
            nonrational: self.is_nonrational(),
        }
    }
}
