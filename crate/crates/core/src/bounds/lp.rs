//! The relaxed linear program over dyadic block sizes and its explicit
//! dual certificate.
//!
//! With `N' = 4N`, `m' = 4m`, `n' = ⌈log₂ N'⌉`:
//!
//! ```text
//! primal: max Σ_k 2^{k/2} x_k   s.t.  Σ_k 2^k x_k ≤ N',  Σ_k k x_k ≤ m',  x ≥ 0
//! dual:   min N' y + m' z       s.t.  2^k y + k z ≥ 2^{k/2}  for k ∈ [n']
//! ```

use serde::{Deserialize, Serialize};

use super::ceil_log2;
use crate::error::{Error, Result};

/// Scaled parameters `(N', m', n')`.
pub fn scaled(n: usize, m: usize) -> (f64, f64, u32) {
    let n4 = 4 * n as u64;
    (n4 as f64, (4 * m) as f64, ceil_log2(n4))
}

/// Exact primal optimum.
///
/// With two constraints every vertex of the feasible region has at most two
/// nonzero coordinates, so the optimum is the best of the origin, the
/// single-coordinate vertices and the pairs with both constraints tight.
pub fn lp_primal_opt(n: usize, m: usize) -> f64 {
    let (cap_n, cap_m, top) = scaled(n, m);
    let obj = |k: u32| 2f64.powf(k as f64 / 2.0);
    let a = |k: u32| 2f64.powi(k as i32);
    let b = |k: u32| k as f64;
    let mut best = 0.0f64;
    for k in 1..=top {
        let x = (cap_n / a(k)).min(cap_m / b(k));
        best = best.max(obj(k) * x);
    }
    for i in 1..=top {
        for j in i + 1..=top {
            let det = a(i) * b(j) - a(j) * b(i);
            if det == 0.0 {
                continue;
            }
            let xi = (cap_n * b(j) - a(j) * cap_m) / det;
            let xj = (a(i) * cap_m - cap_n * b(i)) / det;
            if xi >= 0.0 && xj >= 0.0 {
                best = best.max(obj(i) * xi + obj(j) * xj);
            }
        }
    }
    best
}

/// The closed-form dual point and its check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub d: f64,
    pub y: f64,
    pub z: f64,
    pub value: f64,
    /// `min_k (2^k y + k z − 2^{k/2})`; feasible iff nonnegative.
    pub worst_slack: f64,
    pub feasible: bool,
}

/// Evaluates `y = (2^d d)^{-1/2}`, `z = (2^d / d)^{1/2}` with
/// `d = log₂(2N/m)` and checks every dual constraint.
pub fn check_dual_certificate(n: usize, m: usize) -> Result<DualCertificate> {
    if n == 0 || m == 0 || m > n {
        return Err(Error::OutsideCertificateRegime(format!(
            "need 1 ≤ m ≤ N, got N={n}, m={m}"
        )));
    }
    let (cap_n, cap_m, top) = scaled(n, m);
    let d = (2.0 * n as f64 / m as f64).log2();
    let y = (1.0 / (2f64.powf(d) * d)).sqrt();
    let z = (2f64.powf(d) / d).sqrt();
    let worst_slack = (1..=top)
        .map(|k| {
            let p = 2f64.powi(k as i32);
            p * y + k as f64 * z - p.sqrt()
        })
        .fold(f64::INFINITY, f64::min);
    Ok(DualCertificate {
        d,
        y,
        z,
        value: cap_n * y + cap_m * z,
        worst_slack,
        feasible: worst_slack >= 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling() {
        assert_eq!(scaled(8, 3), (32.0, 12.0, 5));
        assert_eq!(scaled(5, 1), (20.0, 4.0, 5));
    }

    #[test]
    fn certificate_n8_m3() {
        let c = check_dual_certificate(8, 3).unwrap();
        assert!(c.feasible, "{c:?}");
        let (np, mp) = (32.0f64, 12.0f64);
        let reference = (np * mp / ((np / mp).log2() + 1.0)).sqrt();
        assert!(c.value <= 2.0 * 2f64.sqrt() * reference + 1e-9);
        assert!(lp_primal_opt(8, 3) <= c.value + 1e-9);
    }

    #[test]
    fn regime_is_enforced() {
        assert!(matches!(
            check_dual_certificate(4, 5),
            Err(Error::OutsideCertificateRegime(_))
        ));
        assert!(check_dual_certificate(4, 0).is_err());
    }

    #[test]
    fn primal_matches_dense_grid_search() {
        // Independent check: scan a fine grid over every pair of coordinates.
        for (n, m) in [(4, 1), (8, 3), (10, 10), (16, 2)] {
            let (cap_n, cap_m, top) = scaled(n, m);
            let mut best = 0.0f64;
            for i in 1..=top {
                for j in i..=top {
                    let steps = 400;
                    for s in 0..=steps {
                        let xi_max = (cap_n / 2f64.powi(i as i32)).min(cap_m / i as f64);
                        let xi = xi_max * s as f64 / steps as f64;
                        let rn = cap_n - 2f64.powi(i as i32) * xi;
                        let rm = cap_m - i as f64 * xi;
                        let xj = if i == j {
                            0.0
                        } else {
                            (rn / 2f64.powi(j as i32)).min(rm / j as f64).max(0.0)
                        };
                        let v = 2f64.powf(i as f64 / 2.0) * xi + 2f64.powf(j as f64 / 2.0) * xj;
                        best = best.max(v);
                    }
                }
            }
            let exact = lp_primal_opt(n, m);
            assert!(exact + 1e-9 >= best, "({n},{m})");
            assert!(exact <= best * 1.01 + 1e-9, "({n},{m}) {exact} vs {best}");
        }
    }

    #[test]
    fn weak_duality_grid() {
        for n in 1..=64 {
            for m in 1..=n {
                let c = check_dual_certificate(n, m).unwrap();
                assert!(c.feasible, "({n},{m}) slack {}", c.worst_slack);
                assert!(lp_primal_opt(n, m) <= c.value + 1e-9);
            }
        }
    }
}
