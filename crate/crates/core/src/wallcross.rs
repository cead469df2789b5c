//! Wall-crossing of Poincaré polynomials and finite-field masses over
//! externally supplied chamber values.

use serde::{Deserialize, Serialize};

use crate::chern::ChernData;
use crate::error::{Error, Result};
use crate::poly::{Poly, Var};
use crate::rational::{fmt_q, is_integer, q, Bound, Rational};
use crate::strata::codim;
use crate::surface::SurfaceData;
use crate::walls::{adjacent_chambers, hn_types_at, Chamber, HNType, Side, Wall};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub gamma: ChernData,
    pub chamber: Chamber,
    pub poly: Poly,
}

/// Base values `(γ, chamber) -> polynomial`, all in one variable and cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberTable {
    var: Var,
    cap: Option<u32>,
    entries: Vec<TableEntry>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    gamma: ChernData,
    chamber: Chamber,
    poly: serde_json::Value,
}

impl ChamberTable {
    pub fn new(var: Var, cap: Option<u32>) -> Self {
        ChamberTable { var, cap, entries: Vec::new() }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    /// Insert or replace the value for `(gamma, chamber)`.
    pub fn insert(&mut self, gamma: ChernData, chamber: Chamber, poly: &Poly) {
        assert_eq!(poly.var(), self.var, "table variable");
        let poly = poly.with_cap(self.cap);
        match self.entries.iter_mut().find(|e| e.gamma == gamma && e.chamber == chamber) {
            Some(e) => e.poly = poly,
            None => self.entries.push(TableEntry { gamma, chamber, poly }),
        }
    }

    /// Value of `gamma` on `side` of the slice point `x`: the entry keyed by
    /// exactly `hint` if present, otherwise any entry whose chamber contains
    /// the points just `side` of `x`.
    pub fn lookup(&self, gamma: &ChernData, hint: &Chamber, x: &Rational, side: Side) -> Result<&Poly> {
        let px = Bound::Finite(x.clone());
        let germ = |c: &Chamber| match side {
            Side::Below => c.lo < px && px <= c.hi,
            Side::Above => c.lo <= px && px < c.hi,
        };
        self.entries
            .iter()
            .find(|e| e.gamma == *gamma && e.chamber == *hint)
            .or_else(|| self.entries.iter().find(|e| e.gamma == *gamma && germ(&e.chamber)))
            .map(|e| &e.poly)
            .ok_or_else(|| Error::MissingBaseValue { gamma: gamma.to_string(), chamber: hint.to_string() })
    }

    pub fn from_json_str(text: &str, var: Var, cap: Option<u32>) -> Result<Self> {
        let raw: Vec<EntryJson> = serde_json::from_str(text).map_err(|e| Error::Parse(format!("table: {e}")))?;
        let mut t = ChamberTable::new(var, cap);
        for e in raw {
            let poly = Poly::from_json(&e.poly, var, cap)?;
            t.insert(e.gamma, e.chamber, &poly);
        }
        Ok(t)
    }

    pub fn to_json_string(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            gamma: &'a ChernData,
            chamber: &'a Chamber,
            poly: &'a Poly,
        }
        let out: Vec<Out<'_>> =
            self.entries.iter().map(|e| Out { gamma: &e.gamma, chamber: &e.chamber, poly: &e.poly }).collect();
        serde_json::to_string(&out).expect("table serializes")
    }
}

/// Direction of a crossing. `Upward` goes from the chamber below the wall to
/// the one above it, summing over the types of the lower chamber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Upward,
    Downward,
}

impl Orientation {
    pub fn from_side(self) -> Side {
        match self {
            Orientation::Upward => Side::Below,
            Orientation::Downward => Side::Above,
        }
    }
}

/// Everything a crossing needs: the datum, the wall position, the chamber
/// left (`from`) and entered (`to`), and `Γ_{H, from}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCrossing {
    pub gamma: ChernData,
    pub position: Rational,
    pub from_side: Side,
    pub from: Chamber,
    pub to: Chamber,
    pub types: Vec<HNType>,
}

impl WallCrossing {
    pub fn at_wall(s: &SurfaceData, c: &ChernData, w: &Wall, orientation: Orientation) -> Result<Self> {
        let from_side = orientation.from_side();
        let types = hn_types_at(s, c, w, from_side)?;
        let (below, above) = adjacent_chambers(s, c, &w.position)?;
        let (from, to) = match orientation {
            Orientation::Upward => (below, above),
            Orientation::Downward => (above, below),
        };
        Ok(WallCrossing { gamma: c.clone(), position: w.position.clone(), from_side, from, to, types })
    }

    /// A crossing from explicitly given types, for lattices without a slice.
    pub fn from_types(
        gamma: ChernData,
        position: Rational,
        from_side: Side,
        from: Chamber,
        to: Chamber,
        types: Vec<HNType>,
    ) -> Self {
        WallCrossing { gamma, position, from_side, from, to, types }
    }

    pub fn reversed(&self) -> WallCrossing {
        WallCrossing {
            gamma: self.gamma.clone(),
            position: self.position.clone(),
            from_side: self.from_side.flip(),
            from: self.to.clone(),
            to: self.from.clone(),
            types: self.types.iter().map(HNType::reversed).collect(),
        }
    }

    fn product(&self, table: &ChamberTable, t: &HNType, chamber: &Chamber, side: Side) -> Result<Poly> {
        let mut p = Poly::one(table.var(), table.cap());
        for part in &t.parts {
            p = p.mul(table.lookup(part, chamber, &self.position, side)?);
        }
        Ok(p)
    }
}

/// `d` as a monomial exponent: `2d` for `z`, `d` for `q`.
fn exponent(s: &SurfaceData, t: &HNType, var: Var) -> Result<u32> {
    let d = codim(s, t)?;
    let e = match var {
        Var::Z => q(2) * &d,
        Var::Q => d.clone(),
    };
    if !is_integer(&e) || e < q(0) {
        return Err(Error::BadExponent(format!("{}^{} from d = {}", var.symbol(), fmt_q(&e), fmt_q(&d))));
    }
    u32::try_from(e.to_integer()).map_err(|_| Error::BadExponent(format!("exponent {} too large", fmt_q(&e))))
}

fn require_var(table: &ChamberTable, expected: Var) -> Result<()> {
    if table.var() != expected {
        return Err(Error::VariableMismatch { expected: expected.symbol(), got: table.var().symbol() });
    }
    Ok(())
}

/// `P(M_H) = P(M_C) + Σ_Γ z^{2d} Π P(M_C^{γ_i})` for the chamber `C` on `side`.
pub fn poincare_glue(s: &SurfaceData, c: &ChernData, w: &Wall, side: Side, table: &ChamberTable) -> Result<Poly> {
    require_var(table, Var::Z)?;
    let orientation = match side {
        Side::Below => Orientation::Upward,
        Side::Above => Orientation::Downward,
    };
    glue(s, &WallCrossing::at_wall(s, c, w, orientation)?, table)
}

/// Gluing on the `from` side of a prepared crossing.
pub fn glue(s: &SurfaceData, wc: &WallCrossing, table: &ChamberTable) -> Result<Poly> {
    let mut p = table.lookup(&wc.gamma, &wc.from, &wc.position, wc.from_side)?.clone();
    for t in &wc.types {
        let k = exponent(s, t, table.var())?;
        p = p.add(&wc.product(table, t, &wc.from, wc.from_side)?.shift(k));
    }
    Ok(p)
}

/// Crossing for Poincaré polynomials:
/// `P(M_C') = P(M_C) + Σ_Γ { z^{2d(γ1..γs)} Π P(M_C^{γ_i}) - z^{2d(γs..γ1)} Π P(M_C'^{γ_i}) }`.
pub fn poincare_cross(s: &SurfaceData, c: &ChernData, w: &Wall, table: &ChamberTable) -> Result<Poly> {
    poincare_cross_oriented(s, c, w, table, Orientation::Upward)
}

pub fn poincare_cross_oriented(
    s: &SurfaceData,
    c: &ChernData,
    w: &Wall,
    table: &ChamberTable,
    orientation: Orientation,
) -> Result<Poly> {
    require_var(table, Var::Z)?;
    cross(s, &WallCrossing::at_wall(s, c, w, orientation)?, table)
}

/// Crossing for masses, with the two exponents swapped relative to the
/// Poincaré version:
/// `m(C') = m(C) + Σ_Γ { q^{d(γs..γ1)} Π m_C(γ_i) - q^{d(γ1..γs)} Π m_C'(γ_i) }`.
pub fn mass_cross(s: &SurfaceData, c: &ChernData, w: &Wall, table: &ChamberTable) -> Result<Poly> {
    mass_cross_oriented(s, c, w, table, Orientation::Upward)
}

pub fn mass_cross_oriented(
    s: &SurfaceData,
    c: &ChernData,
    w: &Wall,
    table: &ChamberTable,
    orientation: Orientation,
) -> Result<Poly> {
    require_var(table, Var::Q)?;
    cross(s, &WallCrossing::at_wall(s, c, w, orientation)?, table)
}

/// Value of `gamma` in the `to` chamber; the variable of `table` selects the
/// Poincaré or the mass formula.
pub fn cross(s: &SurfaceData, wc: &WallCrossing, table: &ChamberTable) -> Result<Poly> {
    let base = table.lookup(&wc.gamma, &wc.from, &wc.position, wc.from_side)?.clone();
    Ok(base.add(&cross_delta(s, wc, table)?))
}

/// The sum over `Γ` alone.
pub fn cross_delta(s: &SurfaceData, wc: &WallCrossing, table: &ChamberTable) -> Result<Poly> {
    let var = table.var();
    let to_side = wc.from_side.flip();
    let mut delta = Poly::zero(var, table.cap());
    for t in &wc.types {
        let fwd = exponent(s, t, var)?;
        let back = exponent(s, &t.reversed(), var)?;
        let (plus, minus) = match var {
            Var::Z => (fwd, back),
            Var::Q => (back, fwd),
        };
        let old = wc.product(table, t, &wc.from, wc.from_side)?;
        let new = wc.product(table, t, &wc.to, to_side)?;
        delta = delta.add(&old.shift(plus)).sub(&new.shift(minus));
    }
    Ok(delta)
}
