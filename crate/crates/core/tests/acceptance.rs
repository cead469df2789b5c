//! Exit criteria. Runs every check, prints one line per criterion and exits
//! non-zero if any of them fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{brute_force_walls, codim_oracle, x0_oracle, R64};
use num_traits::ToPrimitive;
use polwall_core::chern::ChernData;
use polwall_core::criteria::{self, FreeRank};
use polwall_core::fixtures;
use polwall_core::poly::{Poly, Var};
use polwall_core::rational::{q, Bound, Rational};
use polwall_core::strata::{check_positivity, codim, min_codim_at};
use polwall_core::surface::{DivClass, SurfaceData};
use polwall_core::sweep::{self, Grid, Instance};
use polwall_core::wallcross::{cross, cross_delta, glue, ChamberTable, Orientation, WallCrossing};
use polwall_core::walls::{self, Chamber, HNType, Side, Wall};
use polwall_core::Strategy;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const ENUMERATION_BUDGET: Duration = Duration::from_secs(60);
const CROSSING_SAMPLES: usize = 200;
const K_TRIVIAL_SAMPLES: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn to_r64(x: &Rational) -> R64 {
    R64::new(x.numer().to_i64().unwrap(), x.denom().to_i64().unwrap())
}

fn tuple(c: &ChernData) -> (i64, (i64, i64), i64) {
    (i64::from(c.r), (c.c1.a.to_i64().unwrap(), c.c1.b.to_i64().unwrap()), c.c2.to_i64().unwrap())
}

fn sweep_walls() -> (Vec<Instance>, Vec<Vec<Wall>>, Duration) {
    let grid = Grid::default().instances();
    let t0 = Instant::now();
    let walls = sweep::all_walls(&grid, Strategy::default()).expect("sweep enumerates");
    (grid, walls, t0.elapsed())
}

fn wall_oracle_equivalence() -> Outcome {
    let (grid, walls, elapsed) = sweep_walls();
    let mut mismatches = Vec::new();
    let mut total = 0;
    for (inst, ws) in grid.iter().zip(&walls) {
        let (r, c1, c2) = tuple(&inst.c);
        let oracle = brute_force_walls(i64::from(inst.e), r, c1, c2);
        let got: BTreeSet<R64> = ws.iter().map(|w| to_r64(&w.position)).collect();
        total += got.len();
        if got != oracle {
            mismatches.push(format!("g={} e={} {}", inst.g, inst.e, inst.c));
        }
    }
    let fast = elapsed < ENUMERATION_BUDGET;
    outcome(
        mismatches.is_empty() && fast,
        format!(
            "{} instances, {} walls, enumeration {:.2?}, {} mismatches{}",
            grid.len(),
            total,
            elapsed,
            mismatches.len(),
            mismatches.first().map(|m| format!(" (first: {m})")).unwrap_or_default()
        ),
    )
}

fn positivity_bounds() -> Outcome {
    let (grid, walls, _) = sweep_walls();
    let (mut types, mut strong, mut bad) = (0usize, 0usize, Vec::new());
    for (inst, ws) in grid.iter().zip(&walls) {
        let s = inst.surface();
        for w in ws {
            let report = check_positivity(&s, &inst.c, w).expect("hypotheses hold on the sweep");
            for t in &report.types {
                types += 1;
                let parts: Vec<_> = t.hn_type.parts.iter().map(tuple).collect();
                let oracle = codim_oracle(i64::from(inst.g), i64::from(inst.e), &parts);
                let d = to_r64(&t.d);
                if t.parts_semistable_at_wall {
                    strong += 1;
                }
                let ok = d == oracle && d >= R64::from(2) && (!t.parts_semistable_at_wall || d >= R64::from(3));
                if !ok {
                    bad.push(format!("g={} e={} {} x={} d={d}", inst.g, inst.e, inst.c, w.position));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{types} minus-side types (d >= 2), {strong} in the strict setting (d >= 3), {} violations{}",
            bad.len(),
            bad.first().map(|m| format!(" (first: {m})")).unwrap_or_default()
        ),
    )
}

fn worked_examples() -> Outcome {
    let s = SurfaceData::ruled(2, 3);
    let mut failures = Vec::new();
    let mut check = |label: &str, ok: bool| {
        if !ok {
            failures.push(label.to_string());
        }
    };

    let c = ChernData::of(2, 1, 0, 1);
    let x0 = criteria::existence_bound_x0(&s, &c).unwrap();
    let ws = walls::enumerate_walls(&s, &c, &q(3), &x0).unwrap();
    let got: BTreeSet<R64> = ws.iter().map(|w| to_r64(&w.position)).collect();
    check("walls {5}", got == BTreeSet::from([R64::from(5)]));
    check("walls match oracle", got == brute_force_walls(3, 2, (1, 0), 1));
    let w = &ws[0];
    let below = min_codim_at(&s, &c, w, Side::Below).unwrap();
    let above = min_codim_at(&s, &c, w, Side::Above).unwrap();
    check("codims {9, 0}", below == Bound::Finite(q(9)) && above == Bound::Finite(q(0)));
    check("codim oracle", codim_oracle(2, 3, &[(1, (0, 1), 0), (1, (1, -1), 0)]) == R64::from(9));
    check("reversed codim oracle", codim_oracle(2, 3, &[(1, (1, -1), 0), (1, (0, 1), 0)]) == R64::from(0));
    check("x0 = 5", x0 == q(5) && x0_oracle(3, 2, (1, 0), 1) == R64::from(5));
    check("x1 = 3", criteria::picard_threshold_x1(&s, &c).unwrap() == q(3));
    check("dim = 12", criteria::moduli_dim(&s, &c).unwrap() == q(12));
    check(
        "free rank 2 at x = 4",
        criteria::picard_structure(&s, &c, &q(4)).unwrap().free_rank == FreeRank::Exact(2),
    );

    let c = ChernData::of(2, 1, 0, 2);
    let x0 = criteria::existence_bound_x0(&s, &c).unwrap();
    let got: BTreeSet<R64> =
        walls::enumerate_walls(&s, &c, &q(3), &x0).unwrap().iter().map(|w| to_r64(&w.position)).collect();
    check("walls {5, 7}", got == BTreeSet::from([R64::from(5), R64::from(7)]));
    check("walls match oracle", got == brute_force_walls(3, 2, (1, 0), 2));
    check("x0 = 7", x0 == q(7) && x0_oracle(3, 2, (1, 0), 2) == R64::from(7));
    check("x1 = 5", criteria::picard_threshold_x1(&s, &c).unwrap() == q(5));
    check(
        "free rank 3 at x = 4",
        criteria::picard_structure(&s, &c, &q(4)).unwrap().free_rank == FreeRank::Exact(3),
    );
    check(
        "free rank 2 at x = 6",
        criteria::picard_structure(&s, &c, &q(6)).unwrap().free_rank == FreeRank::Exact(2),
    );
    outcome(failures.is_empty(), if failures.is_empty() { "all values match".into() } else { failures.join("; ") })
}

fn random_poly(rng: &mut StdRng, var: Var) -> Poly {
    let terms: Vec<(u32, Rational)> = (0..rng.random_range(1..=4))
        .map(|_| {
            let k = 2 * rng.random_range(0..=6u32);
            let c = Rational::new(rng.random_range(-5..=9i64).into(), rng.random_range(1..=3i64).into());
            (k, c)
        })
        .collect();
    Poly::from_terms(var, None, terms)
}

/// Part values on both sides and the value of `c` on the `from` side.
fn random_table(rng: &mut StdRng, wc: &WallCrossing, var: Var) -> ChamberTable {
    let mut t = ChamberTable::new(var, None);
    t.insert(wc.gamma.clone(), wc.from.clone(), &random_poly(rng, var));
    for ty in &wc.types {
        for part in &ty.parts {
            for ch in [&wc.from, &wc.to] {
                let v = random_poly(rng, var);
                t.insert(part.clone(), ch.clone(), &v);
            }
        }
    }
    t
}

/// Walls at or below the existence bound, where semistable sheaves exist
/// and every stratum exponent is a valid monomial degree.
fn sampled_walls(seed: u64, n: usize) -> Vec<(SurfaceData, ChernData, Wall)> {
    let (grid, walls, _) = sweep_walls();
    let mut all: Vec<(SurfaceData, ChernData, Wall)> = grid
        .iter()
        .zip(walls)
        .flat_map(|(inst, ws)| {
            let s = inst.surface();
            let x0 = criteria::existence_bound_x0(&s, &inst.c).ok();
            ws.into_iter()
                .filter(move |w| x0.as_ref().is_some_and(|x0| w.position <= *x0))
                .map(move |w| (inst.surface(), inst.c.clone(), w))
        })
        .collect();
    let mut rng = StdRng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    all.truncate(n);
    all
}

fn crossing_round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let samples = sampled_walls(4, CROSSING_SAMPLES);
    let mut bad = Vec::new();
    for (s, c, w) in &samples {
        let result = (|| -> polwall_core::Result<bool> {
            let up = WallCrossing::at_wall(s, c, w, Orientation::Upward)?;
            let mut table = random_table(&mut rng, &up, Var::Z);
            let start = table.lookup(c, &up.from, &w.position, Side::Below)?.clone();
            let there = cross(s, &up, &table)?;
            table.insert(c.clone(), up.to.clone(), &there);
            let down = WallCrossing::at_wall(s, c, w, Orientation::Downward)?;
            Ok(cross(s, &down, &table)? == start)
        })();
        match result {
            Ok(true) => {}
            Ok(false) => bad.push(format!("{c} x={} differs", w.position)),
            Err(e) => bad.push(format!("{c} x={}: {e}", w.position)),
        }
    }
    outcome(
        bad.is_empty() && samples.len() == CROSSING_SAMPLES,
        format!(
            "{} instances, {} failures{}",
            samples.len(),
            bad.len(),
            bad.first().map(|m| format!(" (first: {m})")).unwrap_or_default()
        ),
    )
}

fn glue_cross_consistency() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let samples = sampled_walls(5, CROSSING_SAMPLES);
    let mut bad = Vec::new();
    for (s, c, w) in &samples {
        let result = (|| -> polwall_core::Result<bool> {
            let up = WallCrossing::at_wall(s, c, w, Orientation::Upward)?;
            let down = WallCrossing::at_wall(s, c, w, Orientation::Downward)?;
            let mut table = random_table(&mut rng, &up, Var::Z);
            let other = random_poly(&mut rng, Var::Z);
            table.insert(c.clone(), up.to.clone(), &other);
            let here = table.lookup(c, &up.from, &w.position, Side::Below)?.clone();
            // M_H = M_C ⊔ strata(C) = M_C' ⊔ strata(C')
            let strata_below = glue(s, &up, &table)?.sub(&here);
            let strata_above = glue(s, &down, &table)?.sub(&other);
            Ok(cross(s, &up, &table)? == here.add(&strata_below).sub(&strata_above))
        })();
        match result {
            Ok(true) => {}
            Ok(false) => bad.push(format!("{c} x={} differs", w.position)),
            Err(e) => bad.push(format!("{c} x={}: {e}", w.position)),
        }
    }
    outcome(
        bad.is_empty() && samples.len() == CROSSING_SAMPLES,
        format!(
            "{} instances, {} failures{}",
            samples.len(),
            bad.len(),
            bad.first().map(|m| format!(" (first: {m})")).unwrap_or_default()
        ),
    )
}

/// A random two-part type on the hyperbolic plane with `K = 0` whose slope
/// difference is negative definite, so some polarization puts it on a wall.
fn random_k_trivial_type(rng: &mut StdRng, s: &SurfaceData) -> HNType {
    loop {
        let mut parts = Vec::new();
        for _ in 0..2 {
            let r = rng.random_range(1..=3u32);
            let (a, b) = (rng.random_range(-4..=4i64), rng.random_range(-4..=4i64));
            let sq = 2 * a * b;
            let min_c2 = ((i64::from(r) - 1) * sq).div_euclid(2 * i64::from(r))
                + i64::from(((i64::from(r) - 1) * sq).rem_euclid(2 * i64::from(r)) != 0);
            parts.push(ChernData::of(r, a, b, min_c2 + rng.random_range(0..=3i64)));
        }
        let xi: DivClass = &parts[1].mu() - &parts[0].mu();
        if s.square(&xi) < q(0) {
            return HNType::new(parts);
        }
    }
}

fn k_trivial_invariance() -> Outcome {
    let s = SurfaceData::abstract_lattice([[0, 1], [1, 0]], DivClass::zero(), 2).unwrap();
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let (mut accepted, mut tried, mut bad) = (0usize, 0usize, Vec::new());
    let below = Chamber::new(Bound::NegInf, Bound::Finite(q(0)));
    let above = Chamber::new(Bound::Finite(q(0)), Bound::PosInf);
    while accepted < K_TRIVIAL_SAMPLES {
        tried += 1;
        let t = random_k_trivial_type(&mut rng, &s);
        let fwd = codim(&s, &t).unwrap();
        let back = codim(&s, &t.reversed()).unwrap();
        if fwd != back {
            bad.push(format!("codims differ for {:?}", t.parts));
        }
        let total = walls::direct_sum(&s, &t.parts);
        let wc = WallCrossing::from_types(total, q(0), Side::Below, below.clone(), above.clone(), vec![t.clone()]);
        let mut table = ChamberTable::new(Var::Q, None);
        for p in &t.parts {
            let m = random_poly(&mut rng, Var::Q);
            table.insert(p.clone(), below.clone(), &m);
            table.insert(p.clone(), above.clone(), &m);
        }
        match cross_delta(&s, &wc, &table) {
            Ok(delta) => {
                accepted += 1;
                if !delta.is_zero() {
                    bad.push(format!("mass delta {delta} for {:?}", t.parts));
                }
            }
            // only non-negative integral codimensions are exponents
            Err(polwall_core::Error::BadExponent(_)) => {}
            Err(e) => bad.push(e.to_string()),
        }
    }
    outcome(
        bad.is_empty(),
        format!("{accepted} types with integral exponents ({tried} drawn), {} failures", bad.len()),
    )
}

fn published_fixtures() -> Outcome {
    // transcribed independently of the library table: z^0, z^2, …
    let printed: [(i64, &[i64]); 3] = [
        (2, &[1, 1, 1]),
        (3, &[1, 2, 5, 8, 10, 8, 5, 2, 1]),
        (4, &[1, 2, 6, 12, 24, 38, 54, 59, 54, 38, 24, 12, 6, 2, 1]),
    ];
    let euler = [3, 42, 333];
    let expdims = [2, 8, 14];
    // P^2 as a lattice: H^2 = 1, K = -3H, χ(O) = 1
    let plane = SurfaceData::abstract_lattice([[1, 0], [0, 1]], DivClass::ints(-3, 0), 1).unwrap();
    let report = fixtures::verify_fixtures();
    let lib = fixtures::fixtures();
    let mut failures = Vec::new();
    for (i, (c2, coeffs)) in printed.iter().enumerate() {
        let c = ChernData::of(3, 1, 0, *c2);
        let r2 = q(9);
        let expdim = q(2) * &r2 * c.delta(&plane) - r2 * q(1) + q(1);
        let check = &report.checks[i];
        let sum: i64 = coeffs.iter().sum();
        let ok = check.pass
            && expdim == q(expdims[i])
            && check.expdim == expdims[i]
            && i64::from(check.degree) == 2 * expdims[i]
            && sum == euler[i]
            && check.euler == q(euler[i])
            && lib[i].polynomial.terms().map(|(k, v)| (k, v.to_integer().to_i64().unwrap())).collect::<Vec<_>>()
                == coeffs.iter().enumerate().map(|(j, &v)| (2 * j as u32, v)).collect::<Vec<_>>();
        if !ok {
            failures.push(check.label);
        }
    }
    outcome(
        failures.is_empty() && report.pass,
        if failures.is_empty() {
            "3 polynomials: palindromic, positive, degrees 4/16/28, Euler 3/42/333".to_string()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    )
}

fn walls_below_existence_bound() -> Outcome {
    let grid = Grid::default().instances();
    let normalized: Vec<&Instance> = grid
        .iter()
        .filter(|i| {
            let a = i.c.c1.a.to_i64().unwrap();
            0 < a && a < i64::from(i.c.r)
        })
        .collect();
    let mut beyond = Vec::new();
    for inst in &normalized {
        let s = inst.surface();
        let (r, c1, c2) = tuple(&inst.c);
        let x0 = criteria::existence_bound_x0(&s, &inst.c).unwrap();
        assert_eq!(to_r64(&x0), x0_oracle(i64::from(inst.e), r, c1, c2));
        for x in criteria::walls_beyond_x0(&s, &inst.c).unwrap() {
            beyond.push(format!("g={} e={} {} wall {} > x0 {}", inst.g, inst.e, inst.c, x, x0));
        }
    }
    outcome(
        beyond.is_empty(),
        format!(
            "{} normalized instances, {} walls above x0{}",
            normalized.len(),
            beyond.len(),
            beyond.first().map(|m| format!(" (first: {m})")).unwrap_or_default()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("wall enumeration matches brute force", wall_oracle_equivalence),
        ("minus-side codimension bounds", positivity_bounds),
        ("worked example regression", worked_examples),
        ("crossing round trip", crossing_round_trip),
        ("gluing/crossing decomposition", glue_cross_consistency),
        ("K-trivial chamber independence", k_trivial_invariance),
        ("published rank-3 polynomials", published_fixtures),
        ("no wall above the existence bound", walls_below_existence_bound),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| {
                let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
                outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
            });
        if !out.pass {
            failed += 1;
        }
        println!(
            "criterion {} {} [{}] {} ({:.1?})",
            i + 1,
            if out.pass { "PASS" } else { "FAIL" },
            name,
            out.detail,
            t0.elapsed()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
