//! Exact wall-and-chamber structure of polarizations for moduli of sheaves on
//! a ruled surface: wall enumeration on the slice `H_x = C0 + x f`,
//! Harder–Narasimhan strata and their codimensions, wall-crossing of
//! Poincaré polynomials and finite-field masses, existence bounds and the
//! Picard-group case analysis.
//!
//! Everything is computed with arbitrary-precision integers and rationals.
//! With the default `parallel` feature, wall enumeration and sweeps run on
//! rayon; without it every [`par::Strategy`] falls back to sequential code.

pub mod chern;
pub mod criteria;
pub mod error;
pub mod fixtures;
pub mod par;
pub mod poly;
pub mod rational;
pub mod strata;
pub mod surface;
pub mod sweep;
pub mod wallcross;
pub mod walls;

pub use chern::{ChernData, Gamma, IntClass};
pub use error::{Error, Result};
pub use par::Strategy;
pub use poly::{Poly, Var};
pub use rational::{Bound, Rational};
pub use surface::{DivClass, SurfaceData};
pub use wallcross::{ChamberTable, Orientation, WallCrossing};
pub use walls::{Chamber, HNType, Side, Wall};
