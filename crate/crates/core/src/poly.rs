//! Sparse univariate polynomials with exact rational coefficients and an
//! optional truncation degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Rational, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Z,
    Q,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::Z => 'z',
            Var::Q => 'q',
        }
    }

    pub fn parse(s: &str) -> Result<Var> {
        match s {
            "z" => Ok(Var::Z),
            "q" => Ok(Var::Q),
            _ => Err(Error::Parse(format!("unknown variable {s:?}"))),
        }
    }
}

/// `Σ c_k v^k`, reduced mod `v^(cap+1)` when a cap is set. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    var: Var,
    cap: Option<u32>,
    coeffs: BTreeMap<u32, Rational>,
}

impl Poly {
    pub fn zero(var: Var, cap: Option<u32>) -> Self {
        Poly { var, cap, coeffs: BTreeMap::new() }
    }

    pub fn monomial(var: Var, cap: Option<u32>, exp: u32, c: Rational) -> Self {
        Self::from_terms(var, cap, [(exp, c)])
    }

    pub fn one(var: Var, cap: Option<u32>) -> Self {
        Self::monomial(var, cap, 0, Rational::one())
    }

    pub fn from_terms(var: Var, cap: Option<u32>, terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = Poly::zero(var, cap);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: u32, c: Rational) {
        if c.is_zero() || self.cap.is_some_and(|n| k > n) {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at 1.
    pub fn coefficient_sum(&self) -> Rational {
        self.coeffs.values().sum()
    }

    /// Reduce mod `v^(cap+1)`; an existing tighter cap is kept.
    pub fn truncate(&self, cap: u32) -> Poly {
        let cap = self.cap.map_or(cap, |c| c.min(cap));
        Poly::from_terms(self.var, Some(cap), self.terms().map(|(k, c)| (k, c.clone())))
    }

    /// Drop the cap (coefficients beyond it were never stored).
    pub fn uncapped(mut self) -> Poly {
        self.cap = None;
        self
    }

    pub fn with_cap(&self, cap: Option<u32>) -> Poly {
        match cap {
            Some(n) => self.truncate(n),
            None => self.clone().uncapped(),
        }
    }

    fn joint(&self, o: &Poly) -> (Var, Option<u32>) {
        assert_eq!(self.var, o.var, "mixing polynomial variables");
        let cap = match (self.cap, o.cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        (self.var, cap)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (var, cap) = self.joint(o);
        Poly::from_terms(var, cap, self.terms().chain(o.terms()).map(|(k, c)| (k, c.clone())))
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::from_terms(self.var, self.cap, self.terms().map(|(k, c)| (k, c * s)))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let (var, cap) = self.joint(o);
        let mut p = Poly::zero(var, cap);
        for (i, a) in self.terms() {
            for (j, b) in o.terms() {
                p.add_term(i + j, a * b);
            }
        }
        p
    }

    /// `v^k · self`.
    pub fn shift(&self, k: u32) -> Poly {
        Poly::from_terms(self.var, self.cap, self.terms().map(|(i, c)| (i + k, c.clone())))
    }

    /// `c_k = c_{deg - k}` for all `k`.
    pub fn is_palindromic(&self) -> bool {
        let Some(deg) = self.degree() else { return true };
        self.terms().all(|(k, c)| self.coeff(deg - k) == *c) && self.coeff(0) == self.coeff(deg)
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.coeffs.values().all(Signed::is_positive)
    }

    pub fn from_json(v: &serde_json::Value, var: Var, cap: Option<u32>) -> Result<Poly> {
        let raw: BTreeMap<String, Q> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("polynomial: {e}")))?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            let k: u32 = k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            terms.push((k, c.0));
        }
        Ok(Poly::from_terms(var, cap, terms))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for (k, c) in self.terms() {
            m.serialize_entry(&k.to_string(), &fmt_q(c))?;
        }
        m.end()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let v = self.var.symbol();
        for (n, (k, c)) in self.terms().enumerate() {
            let (sign, abs) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            match (n, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let coef = if abs.is_integer() { abs.to_integer().to_string() } else { fmt_q(&abs) };
            match k {
                0 => f.write_str(&coef)?,
                _ if abs.is_one() => write!(f, "{v}^{k}")?,
                _ => write!(f, "{coef}*{v}^{k}")?,
            }
        }
        Ok(())
    }
}
