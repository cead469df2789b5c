//! Test-only oracles, written against plain machine integers so they share
//! no code path with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::Ratio;

pub type R64 = Ratio<i64>;

/// `(a C0 + b f) . (a' C0 + b' f)` with `C0^2 = -e`, `C0 f = 1`, `f^2 = 0`.
pub fn dot(e: i64, (a, b): (i64, i64), (a2, b2): (i64, i64)) -> i64 {
    -e * a * a2 + a * b2 + a2 * b
}

/// `2 r c2 - (r - 1) c1^2`.
pub fn disc(e: i64, r: i64, c1: (i64, i64), c2: i64) -> i64 {
    2 * r * c2 - (r - 1) * dot(e, c1, c1)
}

/// Every slice position `x > e` where some integral sub-datum
/// `(r1, c1(F1), c2(F1))` splits `(r, c1, c2)` with both discriminants
/// nonnegative and equal `H_x`-slopes.
pub fn brute_force_walls(e: i64, r: i64, c1: (i64, i64), c2: i64) -> BTreeSet<R64> {
    let mut out = BTreeSet::new();
    let n = disc(e, r, c1, c2);
    for r1 in 1..r {
        let r2 = r - r1;
        let m = (r1 * r2 * n).max(0);
        let box_a = m + c1.0.abs();
        let box_b = m + c1.1.abs();
        for a1 in -box_a..=box_a {
            // r1 r2 ξ = r1 c1(F2) - r2 c1(F1), ξ = μ2 - μ1
            let xa = r1 * (c1.0 - a1) - r2 * a1;
            if xa == 0 {
                continue;
            }
            for b1 in -box_b..=box_b {
                let xb = r1 * (c1.1 - b1) - r2 * b1;
                // ξa (x - e) + ξb = 0
                let x = R64::from(e) - R64::new(xb, xa);
                if x <= R64::from(e) {
                    continue;
                }
                let sub = (a1, b1);
                let quo = (c1.0 - a1, c1.1 - b1);
                let rest = c2 - dot(e, sub, quo);
                // the first c2(F1) with Δ(F1) >= 0 leaves the most room for F2
                let need = (r1 - 1) * dot(e, sub, sub);
                let c21 = need.div_euclid(2 * r1) + i64::from(need.rem_euclid(2 * r1) != 0);
                debug_assert!(disc(e, r1, sub, c21) >= 0 && disc(e, r1, sub, c21 - 1) < 0);
                if disc(e, r2, quo, rest - c21) >= 0 {
                    out.insert(x);
                }
            }
        }
    }
    out
}

/// `-Σ_{i<j} r_i r_j (P(μ_j - μ_i) - Δ_i - Δ_j)` on the ruled surface,
/// with `P(D) = (D, D - K)/2 + 1 - g` and `K = -2 C0 + (2g - 2 - e) f`.
pub fn codim_oracle(g: i64, e: i64, parts: &[(i64, (i64, i64), i64)]) -> R64 {
    let k = (-2, 2 * g - 2 - e);
    let dotq = |(a, b): (R64, R64), (a2, b2): (R64, R64)| -> R64 { -R64::from(e) * a * a2 + a * b2 + a2 * b };
    let mu = |&(r, (a, b), _): &(i64, (i64, i64), i64)| (R64::new(a, r), R64::new(b, r));
    let delta = |&(r, c1, c2): &(i64, (i64, i64), i64)| R64::new(disc(e, r, c1, c2), 2 * r * r);
    let kq = (R64::from(k.0), R64::from(k.1));
    let mut d = R64::from(0);
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let (mi, mj) = (mu(&parts[i]), mu(&parts[j]));
            let xi = (mj.0 - mi.0, mj.1 - mi.1);
            let p = dotq(xi, (xi.0 - kq.0, xi.1 - kq.1)) / 2 + R64::from(1 - g);
            let rr = R64::from(parts[i].0 * parts[j].0);
            d -= rr * (p - delta(&parts[i]) - delta(&parts[j]));
        }
    }
    d
}

/// `e/2 + r^2 Δ / (r1 r2)` with `r1 = (c1 . f) mod r`.
pub fn x0_oracle(e: i64, r: i64, c1: (i64, i64), c2: i64) -> R64 {
    let r1 = c1.0.rem_euclid(r);
    assert!(r1 != 0);
    let delta = R64::new(disc(e, r, c1, c2), 2 * r * r);
    R64::new(e, 2) + R64::new(r * r, r1 * (r - r1)) * delta
}
