//! The small exhaustive grid of `(surface, Chern datum)` pairs used for
//! consistency checks, evaluated in parallel.

use crate::chern::ChernData;
use crate::error::Result;
use crate::par::{self, Strategy};
use crate::rational::q;
use crate::surface::SurfaceData;
use crate::walls::{self, Wall};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub g: u32,
    pub e: u32,
    pub c: ChernData,
}

impl Instance {
    pub fn surface(&self) -> SurfaceData {
        SurfaceData::ruled(self.g, self.e)
    }
}

#[derive(Clone, Debug)]
pub struct Grid {
    pub genera: std::ops::RangeInclusive<u32>,
    /// Offsets of `e` from `2g - 2`.
    pub e_offsets: std::ops::RangeInclusive<u32>,
    pub ranks: std::ops::RangeInclusive<u32>,
    pub c1: std::ops::RangeInclusive<i64>,
    pub c2: std::ops::RangeInclusive<i64>,
}

impl Default for Grid {
    /// `g ∈ 1..=3`, `2g-1 <= e <= 2g+2`, `r <= 3`, `c1 ∈ [-2,2]^2`, `c2 ∈ 0..=4`.
    fn default() -> Self {
        Grid { genera: 1..=3, e_offsets: 1..=4, ranks: 1..=3, c1: -2..=2, c2: 0..=4 }
    }
}

impl Grid {
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for g in self.genera.clone() {
            for off in self.e_offsets.clone() {
                let e = 2 * g + off - 2;
                for r in self.ranks.clone() {
                    for a in self.c1.clone() {
                        for b in self.c1.clone() {
                            for c2 in self.c2.clone() {
                                out.push(Instance { g, e, c: ChernData::of(r, a, b, c2) });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// All walls of every instance, over `(e, horizon]`.
pub fn all_walls(instances: &[Instance], strategy: Strategy) -> Result<Vec<Vec<Wall>>> {
    par::map(instances, strategy, |inst| {
        let s = inst.surface();
        let hi = walls::wall_horizon(&s, &inst.c)?;
        walls::enumerate_walls_with(&s, &inst.c, &q(i64::from(inst.e)), &hi, Strategy::Sequential)
    })
    .into_iter()
    .collect()
}
