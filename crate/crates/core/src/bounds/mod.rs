//! Complexity formulas and the exhaustive, LP and dual checks behind them.
//!
//! All logarithms are base 2.

mod gamma;
mod lp;
mod program;

pub use gamma::{
    gamma_hat, gamma_hat_sampled, learning_bound, GammaHat, LearningBound, MAX_EXACT_GAMMA_CLASS,
};
pub use lp::{check_dual_certificate, lp_primal_opt, DualCertificate};
pub use program::{brute_force_c, ProgramOptimum, MAX_EXHAUSTIVE_N};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `⌈log₂ m⌉`, with `⌈log₂ 1⌉ = 0`. `m = 0` is treated as 1.
pub fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        u64::BITS - (m - 1).leading_zeros()
    }
}

/// `min{ √(N log M / (log(N / log M) + 1)), √M }` for `2 ≤ M ≤ 2^N`.
pub fn closed_form_c(m: u64, n: usize) -> Result<f64> {
    let in_range = m >= 2 && (n >= 64 || m <= 1u64 << n);
    if !in_range {
        return Err(Error::OutOfRange(format!("M={m} not in [2, 2^{n}]")));
    }
    let log_m = (m as f64).log2();
    let n = n as f64;
    let main = (n * log_m / ((n / log_m).log2() + 1.0)).sqrt();
    Ok(main.min((m as f64).sqrt()))
}

/// Largest `(N − k + 1)k` over `k ∈ [N]` with `C(N, k−1) + C(N, k) ≤ M`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub k: usize,
    pub value: f64,
}

/// Scans every `k` with exact binomials. Ties keep the smallest `k`.
pub fn lower_bound_k(n: usize, m: u64) -> Result<LowerBound> {
    let in_range = m as u128 > n as u128 && (n >= 64 || m as u128 <= 1u128 << n);
    if !in_range {
        return Err(Error::OutOfRange(format!(
            "need N < M ≤ 2^N, got N={n}, M={m}"
        )));
    }
    let cap = BigUint::from(m);
    let mut prev = BigUint::from(1u32);
    let mut best: Option<(usize, usize)> = None;
    for k in 1..=n {
        let cur = &prev * BigUint::from(n - k + 1) / BigUint::from(k);
        if &prev + &cur <= cap {
            let score = (n - k + 1) * k;
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((k, score));
            }
        }
        prev = cur;
    }
    let (k, score) = best.expect("k = 1 is feasible whenever M > N");
    Ok(LowerBound {
        k,
        value: (score as f64).sqrt(),
    })
}

/// Classical `min{M, N}` and quantum `√M` reference complexities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Baselines {
    pub classical: u64,
    pub quantum: f64,
}

pub fn baseline_formulas(m: u64, n: usize) -> Baselines {
    Baselines {
        classical: m.min(n as u64),
        quantum: (m as f64).sqrt(),
    }
}

/// One row of a bounds sweep. Columns that are undefined for `(M, N)` are
/// `None`: the exhaustive optimum above its size limit, the closed form
/// outside `[2, 2^N]`, the dual certificate for `⌈log₂ M⌉ > N` and the lower
/// bound for `M ≤ N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "brute_force_C")]
    pub brute_force_c: Option<f64>,
    #[serde(rename = "closed_form_C")]
    pub closed_form_c: Option<f64>,
    pub lp_primal: f64,
    pub lp_dual: Option<f64>,
    pub k_lower: Option<usize>,
    pub lower_value: Option<f64>,
}

impl BoundReport {
    /// CSV column names, in field order.
    pub const HEADER: [&'static str; 8] = [
        "M",
        "N",
        "brute_force_C",
        "closed_form_C",
        "lp_primal",
        "lp_dual",
        "k_lower",
        "lower_value",
    ];

    /// `brute_force_C ≤ lp_primal ≤ lp_dual` on the columns that exist.
    pub fn chain_holds(&self, tol: f64) -> bool {
        let first = self
            .brute_force_c
            .is_none_or(|b| b <= self.lp_primal + tol);
        let second = self.lp_dual.is_none_or(|d| self.lp_primal <= d + tol);
        first && second
    }
}

/// Computes every column for `(M, N)`; the LP columns use `m = ⌈log₂ M⌉`.
pub fn bound_report(m: u64, n: usize) -> Result<BoundReport> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange(format!(
            "need M, N ≥ 1, got M={m}, N={n}"
        )));
    }
    let log_m = ceil_log2(m) as usize;
    let lower = lower_bound_k(n, m).ok();
    Ok(BoundReport {
        m,
        n,
        brute_force_c: brute_force_c(m, n).ok().map(|o| o.value),
        closed_form_c: closed_form_c(m, n).ok(),
        lp_primal: lp_primal_opt(n, log_m),
        lp_dual: check_dual_certificate(n, log_m).ok().map(|c| c.value),
        k_lower: lower.map(|l| l.k),
        lower_value: lower.map(|l| l.value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        let cases = [
            (0, 0),
            (1, 0),
            (2, 1),
            (3, 2),
            (4, 2),
            (5, 3),
            (16, 4),
            (17, 5),
        ];
        for (m, want) in cases {
            assert_eq!(ceil_log2(m), want, "{m}");
        }
        assert_eq!(ceil_log2(u64::MAX), 64);
    }

    #[test]
    fn closed_form_examples() {
        assert!((closed_form_c(16, 8).unwrap() - 4.0).abs() < 1e-12);
        for n in 4..=20 {
            assert_eq!(closed_form_c(1 << n, n).unwrap(), n as f64);
        }
        assert_eq!(closed_form_c(2, 1000).unwrap(), 2f64.sqrt());
        assert!(closed_form_c(1, 4).is_err());
        assert!(closed_form_c(17, 4).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let lb = lower_bound_k(8, 9).unwrap();
        assert_eq!(lb.k, 1);
        assert_eq!(lb.value, 8f64.sqrt());
        let lb = lower_bound_k(8, 256).unwrap();
        assert_eq!(lb.k, 4);
        assert_eq!(lb.value, 20f64.sqrt());
        let lb = lower_bound_k(4, 5).unwrap();
        assert_eq!((lb.k, lb.value), (1, 2.0));
        assert!(lower_bound_k(8, 8).is_err());
    }

    #[test]
    fn lower_bound_matches_float_binomials() {
        fn binom(n: usize, k: usize) -> f64 {
            (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
        }
        for n in 1..=12 {
            for m in n as u64 + 1..=1 << n {
                let lb = lower_bound_k(n, m).unwrap();
                let feasible = |k: usize| binom(n, k - 1) + binom(n, k) <= m as f64 + 1e-9;
                assert!(feasible(lb.k));
                for k in 1..=n {
                    if feasible(k) {
                        assert!((n - k + 1) * k <= (n - lb.k + 1) * lb.k);
                    }
                }
            }
        }
    }

    #[test]
    fn baselines() {
        assert_eq!(
            baseline_formulas(3, 100),
            Baselines {
                classical: 3,
                quantum: 3f64.sqrt()
            }
        );
        assert_eq!(baseline_formulas(256, 8).classical, 8);
    }

    #[test]
    fn report_columns() {
        let r = bound_report(16, 8).unwrap();
        assert!(r.chain_holds(1e-9));
        assert_eq!(r.k_lower, Some(1));
        let r = bound_report(4, 8).unwrap();
        assert_eq!(r.lower_value, None);
        let r = bound_report(1, 3).unwrap();
        assert_eq!(r.brute_force_c, Some(0.0));
        assert_eq!(r.closed_form_c, None);
    }
}
