//! Published rank-3 Poincaré polynomials on the projective plane, kept
//! verbatim, and the sanity checks run against them.

use serde::Serialize;

use crate::poly::{Poly, Var};
use crate::rational::{fmt_q, q, Rational};

/// `M_H(3; c1, c2)` on `P^2`, with `c1` as a multiple of the line class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fixture {
    pub label: &'static str,
    pub chern: (u32, i64, i64),
    pub polynomial: Poly,
    pub expdim: i64,
}

type Published = (&'static str, (u32, i64, i64), &'static [i64]);

/// Coefficients of `z^0, z^2, z^4, …`.
const PUBLISHED: [Published; 3] = [
    ("M(3;1,2)", (3, 1, 2), &[1, 1, 1]),
    ("M(3;1,3)", (3, 1, 3), &[1, 2, 5, 8, 10, 8, 5, 2, 1]),
    ("M(3;1,4)", (3, 1, 4), &[1, 2, 6, 12, 24, 38, 54, 59, 54, 38, 24, 12, 6, 2, 1]),
];

/// `2 r c2 - (r-1) c1^2 - (r^2 - 1)` on `P^2`.
pub fn plane_expdim(r: u32, c1: i64, c2: i64) -> i64 {
    let r = i64::from(r);
    2 * r * c2 - (r - 1) * c1 * c1 - (r * r - 1)
}

pub fn fixtures() -> Vec<Fixture> {
    PUBLISHED
        .iter()
        .map(|&(label, (r, c1, c2), even)| Fixture {
            label,
            chern: (r, c1, c2),
            polynomial: Poly::from_terms(Var::Z, None, even.iter().enumerate().map(|(i, &c)| (2 * i as u32, q(c)))),
            expdim: plane_expdim(r, c1, c2),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub label: &'static str,
    pub degree: u32,
    pub expdim: i64,
    #[serde(serialize_with = "ser_q")]
    pub euler: Rational,
    pub palindromic: bool,
    pub degree_is_twice_expdim: bool,
    pub positive: bool,
    pub pass: bool,
}

fn ser_q<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub checks: Vec<FixtureCheck>,
    pub pass: bool,
}

pub fn verify_fixtures() -> FixtureReport {
    let checks: Vec<FixtureCheck> = fixtures()
        .into_iter()
        .map(|f| {
            let p = &f.polynomial;
            let degree = p.degree().unwrap_or(0);
            let palindromic = p.is_palindromic();
            let degree_is_twice_expdim = i64::from(degree) == 2 * f.expdim;
            let positive = p.all_coefficients_positive();
            FixtureCheck {
                label: f.label,
                degree,
                expdim: f.expdim,
                euler: p.coefficient_sum(),
                palindromic,
                degree_is_twice_expdim,
                positive,
                pass: palindromic && degree_is_twice_expdim && positive,
            }
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    FixtureReport { checks, pass }
}
