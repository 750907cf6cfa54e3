use crate::error::{Error, Result};

/// Largest `N` the exhaustive optimizer accepts.
pub const MAX_EXHAUSTIVE_N: usize = 24;

/// Exact optimum of `max Σ √p_i` subject to `Σ p_i ≤ N`,
/// `Π max{2, p_i} ≤ M`, `p_i ≥ 1`, `r ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProgramOptimum {
    pub value: f64,
    /// An optimal multiset, non-increasing.
    pub parts: Vec<usize>,
}

/// Exhaustive search over non-increasing sequences. `M = 1` admits only the
/// empty sequence and yields 0.
pub fn brute_force_c(m: u64, n: usize) -> Result<ProgramOptimum> {
    if n == 0 {
        return Err(Error::OutOfRange("N must be at least 1".into()));
    }
    if m == 0 {
        return Err(Error::OutOfRange("M must be at least 1".into()));
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge(format!(
            "exhaustive optimum limited to N ≤ {MAX_EXHAUSTIVE_N}, got {n}; use the closed form"
        )));
    }
    let mut best = ProgramOptimum {
        value: 0.0,
        parts: Vec::new(),
    };
    let mut stack = Vec::new();
    extend(n, m, n, 0.0, &mut stack, &mut best);
    Ok(best)
}

fn extend(
    budget: usize,
    product_room: u64,
    max_part: usize,
    value: f64,
    parts: &mut Vec<usize>,
    best: &mut ProgramOptimum,
) {
    if value > best.value + 1e-12 {
        best.value = value;
        best.parts = parts.clone();
    }
    for p in (1..=max_part.min(budget)).rev() {
        let factor = p.max(2) as u64;
        if factor > product_room {
            continue;
        }
        parts.push(p);
        extend(
            budget - p,
            product_room / factor,
            p,
            value + (p as f64).sqrt(),
            parts,
            best,
        );
        parts.pop();
    }
}
