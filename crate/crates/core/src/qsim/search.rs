use rand::Rng;
use serde::{Deserialize, Serialize};

use super::oracle::DisagreementOracle;
use super::state::{Register, StateVector};
use crate::error::Result;

/// Constants of the unknown-`K` search schedule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    /// Factor by which the iteration bound `m` grows after a miss.
    pub growth: f64,
    /// A search gives up once its total Grover iterations exceed
    /// `cutoff_factor · √width`.
    pub cutoff_factor: f64,
    /// Upper bound on the probability that one search misses when at least
    /// one rank is marked; the amplification relies on it. The default is
    /// about three times the worst rate measured over windows up to 16.
    pub single_call_failure: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            growth: 6.0 / 5.0,
            cutoff_factor: 2.0,
            single_call_failure: 0.05,
        }
    }
}

impl SearchParams {
    /// Consecutive empty confirmations needed so a first-one search errs
    /// with probability at most `budget`.
    pub fn confirmations_for(&self, budget: f64) -> usize {
        if !(budget > 0.0 && budget < 1.0) || budget >= self.single_call_failure {
            return 1;
        }
        (budget.ln() / self.single_call_failure.ln())
            .ceil()
            .max(1.0) as usize
    }
}

fn index_qubits(window: usize) -> usize {
    (usize::BITS - window.saturating_sub(1).leading_zeros()).max(1) as usize
}

/// One Grover run: `iterations` rounds of marking and diffusion over the
/// ranks `0..window` (padded to a power of two), then a measurement of the
/// index register.
pub fn grover_round<R: Rng + ?Sized>(
    oracle: &mut DisagreementOracle<'_>,
    window: usize,
    iterations: usize,
    rng: &mut R,
) -> Result<usize> {
    let width = index_qubits(window);
    let index = Register::new(1, width);
    let mut psi = StateVector::zero(width + 1)?;
    // Target in |−⟩ turns each marking into a phase flip.
    psi.apply_x(0)?;
    psi.apply_h(0)?;
    psi.apply_h_register(index)?;
    for _ in 0..iterations {
        oracle.apply_marking(&mut psi, index, 0, window)?;
        psi.reflect_about_uniform(index)?;
    }
    let outcome = psi.measure_register(index, rng)?;
    oracle.note_drift(&psi);
    Ok(outcome)
}

/// Search for any marked rank in `0..window` without knowing how many are
/// marked.
///
/// Each round draws an iteration count uniformly below the current bound
/// `m`, measures, and confirms a candidate with one classical read. `m`
/// grows by `params.growth` up to `√size`; the search returns `None` once
/// the total iteration count passes `params.cutoff_factor · √size`. A
/// returned rank is always a verified disagreement.
pub fn grover_search_unknown_k<R: Rng + ?Sized>(
    oracle: &mut DisagreementOracle<'_>,
    window: usize,
    params: &SearchParams,
    rng: &mut R,
) -> Result<Option<usize>> {
    let window = window.min(oracle.width());
    if window == 0 {
        return Ok(None);
    }
    let size = 1usize << index_qubits(window);
    let root = (size as f64).sqrt();
    let cutoff = params.cutoff_factor * root;
    let mut bound = 1.0f64;
    let mut total = 0usize;
    loop {
        let j = rng.gen_range(0..bound.ceil() as usize);
        total += j;
        let t = grover_round(oracle, window, j, rng)?;
        if t < window && oracle.check(t) {
            return Ok(Some(t));
        }
        if total as f64 > cutoff {
            return Ok(None);
        }
        bound = (bound * params.growth).min(root);
    }
}

/// Smallest marked rank among all `oracle.width()` ranks, or `None`.
///
/// Prefix windows of width 2, 4, 8, … are searched until one contains a
/// mark; the prefix strictly before the best verified candidate is then
/// searched again until `confirmations` consecutive searches come back
/// empty. With no candidate at full width, the full window is re-searched
/// under the same rule.
pub fn find_first_one<R: Rng + ?Sized>(
    oracle: &mut DisagreementOracle<'_>,
    params: &SearchParams,
    confirmations: usize,
    rng: &mut R,
) -> Result<Option<usize>> {
    let width = oracle.width();
    if width == 0 {
        return Ok(None);
    }
    let mut best = None;
    let mut window = 1usize;
    while window < width {
        window = (window * 2).min(width);
        if let Some(t) = grover_search_unknown_k(oracle, window, params, rng)? {
            best = Some(t);
            break;
        }
    }
    if width == 1 && best.is_none() {
        best = grover_search_unknown_k(oracle, 1, params, rng)?;
    }
    let mut misses = usize::from(best.is_none());
    while misses < confirmations.max(1) {
        let window = best.unwrap_or(width);
        if window == 0 {
            break;
        }
        match grover_search_unknown_k(oracle, window, params, rng)? {
            Some(t) => {
                best = Some(t);
                misses = 0;
            }
            None => misses += 1,
        }
    }
    Ok(best)
}

/// Outcome of one amplified first-disagreement search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FinderReport {
    /// 1-based rank of the first disagreement found, if any.
    pub rank: Option<usize>,
    pub queries: u64,
    pub max_norm_drift: f64,
    pub confirmations: usize,
}

/// First disagreement along `oracle`'s order, with the number of empty
/// confirmations chosen so the search errs with probability at most
/// `error_budget`.
pub fn quantum_disagreement_finder<R: Rng + ?Sized>(
    oracle: &mut DisagreementOracle<'_>,
    error_budget: f64,
    params: &SearchParams,
    rng: &mut R,
) -> Result<FinderReport> {
    let confirmations = params.confirmations_for(error_budget);
    let before = oracle.queries();
    let rank = find_first_one(oracle, params, confirmations, rng)?.map(|t| t + 1);
    Ok(FinderReport {
        rank,
        queries: oracle.queries() - before,
        max_norm_drift: oracle.max_norm_drift(),
        confirmations,
    })
}
