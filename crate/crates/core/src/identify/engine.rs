use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::concept::{check_order, BitString};
use crate::error::{Error, Result};
use crate::qsim::{
    grover_search_unknown_k, quantum_disagreement_finder, DisagreementOracle, SearchParams,
};

/// Result of one disagreement search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Finding {
    /// 1-based rank into the searched order, `None` if no disagreement.
    pub rank: Option<usize>,
    /// Oracle applications spent by this search.
    pub queries: u64,
}

/// Oracle access to the hidden string through disagreement searches.
///
/// Implementations own the hidden string; algorithms only see findings.
pub trait DisagreementFinder {
    /// First position along `order` where the hidden string differs from
    /// `reference`.
    fn first_disagreement(&mut self, reference: &BitString, order: &[usize]) -> Result<Finding>;

    /// Some position along `order` where the hidden string differs from
    /// `reference`. Defaults to the first one.
    fn any_disagreement(&mut self, reference: &BitString, order: &[usize]) -> Result<Finding> {
        self.first_disagreement(reference, order)
    }

    /// Worst statevector norm deviation seen, for simulated engines.
    fn max_norm_drift(&self) -> f64 {
        0.0
    }
}

/// Which finder drives a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    /// Deterministic, always correct, no queries charged.
    Ideal,
    /// Simulated bounded-error quantum search.
    Quantum,
}

fn check_reference(x: &BitString, reference: &BitString, order: &[usize]) -> Result<()> {
    if reference.len() != x.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            actual: reference.len(),
        });
    }
    check_order(x.len(), order)
}

/// Exact engine: scans the order classically and reports zero oracle
/// queries, so that traces carry only the idealized cost.
#[derive(Clone, Debug)]
pub struct ExactFinder {
    x: BitString,
}

impl ExactFinder {
    pub fn new(x: BitString) -> Self {
        Self { x }
    }
}

impl DisagreementFinder for ExactFinder {
    fn first_disagreement(&mut self, reference: &BitString, order: &[usize]) -> Result<Finding> {
        check_reference(&self.x, reference, order)?;
        let rank = order
            .iter()
            .position(|&j| self.x.get(j) != reference.get(j))
            .map(|t| t + 1);
        Ok(Finding { rank, queries: 0 })
    }
}

/// Simulated quantum engine. Each call is amplified to fail with
/// probability at most `error_budget`.
#[derive(Clone, Debug)]
pub struct QuantumFinder {
    x: BitString,
    rng: ChaCha8Rng,
    params: SearchParams,
    error_budget: f64,
    max_drift: f64,
}

impl QuantumFinder {
    pub fn new(x: BitString, seed: u64, params: SearchParams, error_budget: f64) -> Self {
        Self {
            x,
            rng: ChaCha8Rng::seed_from_u64(seed),
            params,
            error_budget,
            max_drift: 0.0,
        }
    }

    /// Budget `1 / (3(⌈log₂ M⌉ + 1))`, so that all calls of one run
    /// together fail with probability at most 1/3.
    pub fn for_class_size(
        x: BitString,
        class_size: usize,
        seed: u64,
        params: SearchParams,
    ) -> Self {
        Self::new(x, seed, params, per_call_budget(class_size))
    }

    pub fn error_budget(&self) -> f64 {
        self.error_budget
    }
}

/// Independent per-trial seed derived from a base seed, so that each trial
/// is reproducible on its own regardless of scheduling.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    use rand::RngCore;
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(index);
    rng.next_u64()
}

/// Per-search failure budget for a class of `class_size` members.
pub fn per_call_budget(class_size: usize) -> f64 {
    let r_max = crate::bounds::ceil_log2(class_size.max(1) as u64) as f64;
    1.0 / (3.0 * (r_max + 1.0))
}

impl DisagreementFinder for QuantumFinder {
    fn first_disagreement(&mut self, reference: &BitString, order: &[usize]) -> Result<Finding> {
        check_reference(&self.x, reference, order)?;
        let mut oracle = DisagreementOracle::new(&self.x, reference, order)?;
        let report = quantum_disagreement_finder(
            &mut oracle,
            self.error_budget,
            &self.params,
            &mut self.rng,
        )?;
        self.max_drift = self.max_drift.max(report.max_norm_drift);
        Ok(Finding {
            rank: report.rank,
            queries: report.queries,
        })
    }

    fn any_disagreement(&mut self, reference: &BitString, order: &[usize]) -> Result<Finding> {
        check_reference(&self.x, reference, order)?;
        let mut oracle = DisagreementOracle::new(&self.x, reference, order)?;
        let attempts = self.params.confirmations_for(self.error_budget);
        let mut rank = None;
        for _ in 0..attempts {
            if let Some(t) =
                grover_search_unknown_k(&mut oracle, order.len(), &self.params, &mut self.rng)?
            {
                rank = Some(t + 1);
                break;
            }
        }
        self.max_drift = self.max_drift.max(oracle.max_norm_drift());
        Ok(Finding {
            rank,
            queries: oracle.queries(),
        })
    }

    fn max_norm_drift(&self) -> f64 {
        self.max_drift
    }
}
