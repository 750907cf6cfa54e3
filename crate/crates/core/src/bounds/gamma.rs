use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::concept::ConceptClass;
use crate::error::{Error, Result};

/// Classes up to this size are handled by enumerating every subset.
pub const MAX_EXACT_GAMMA_CLASS: usize = 20;

/// `γ̂` as a fraction `num / den` together with the subset attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaHat {
    pub num: usize,
    pub den: usize,
    /// Indices into the class of a worst subset found.
    pub witness: Vec<usize>,
    /// False when only sampled subsets were inspected; the value is then an
    /// upper estimate.
    pub exact: bool,
}

impl GammaHat {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

// Column masks: bit i of columns[j] is bit j of member i.
fn columns(class: &ConceptClass) -> Vec<u64> {
    (0..class.n())
        .map(|j| {
            class
                .members()
                .iter()
                .enumerate()
                .filter(|(_, y)| y.get(j))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect()
}

/// Best single-query guaranteed elimination count for subset `s`.
fn best_split(columns: &[u64], s: u64) -> usize {
    let size = s.count_ones();
    columns
        .iter()
        .map(|c| {
            let ones = (c & s).count_ones();
            ones.min(size - ones) as usize
        })
        .max()
        .unwrap_or(0)
}

fn less(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 * b.1 < b.0 * a.1
}

/// Exact `γ̂` by enumerating every subset `S` with `|S| ≥ 2`: the least,
/// over `S`, of the largest fraction of `S` that one query is guaranteed to
/// eliminate whatever the answer.
pub fn gamma_hat(class: &ConceptClass) -> Result<GammaHat> {
    let m = class.len();
    if m < 2 {
        return Err(Error::OutOfRange("γ̂ needs at least two members".into()));
    }
    if m > MAX_EXACT_GAMMA_CLASS {
        return Err(Error::TooLarge(format!(
            "exact γ̂ limited to {MAX_EXACT_GAMMA_CLASS} members, got {m}; use sampling"
        )));
    }
    let cols = columns(class);
    let mut best = (1usize, 1usize, 0u64);
    for s in 1u64..1 << m {
        if s.count_ones() < 2 {
            continue;
        }
        let frac = (best_split(&cols, s), s.count_ones() as usize);
        if less(frac, (best.0, best.1)) {
            best = (frac.0, frac.1, s);
        }
    }
    Ok(finish(best, true))
}

/// Upper estimate of `γ̂` from `samples` random subsets (plus the whole
/// class) for classes of up to 64 members.
pub fn gamma_hat_sampled(class: &ConceptClass, samples: usize, seed: u64) -> Result<GammaHat> {
    let m = class.len();
    if m < 2 {
        return Err(Error::OutOfRange("γ̂ needs at least two members".into()));
    }
    if m > 64 {
        return Err(Error::TooLarge(format!(
            "sampled γ̂ limited to 64 members, got {m}"
        )));
    }
    let cols = columns(class);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut best = (best_split(&cols, full), m, full);
    for _ in 0..samples {
        let size = rng.gen_range(2..=m);
        let s = sample(&mut rng, m, size)
            .into_iter()
            .fold(0u64, |acc, i| acc | 1 << i);
        let frac = (best_split(&cols, s), size);
        if less(frac, (best.0, best.1)) {
            best = (frac.0, frac.1, s);
        }
    }
    Ok(finish(best, false))
}

fn finish((num, den, s): (usize, usize, u64), exact: bool) -> GammaHat {
    GammaHat {
        num,
        den,
        witness: (0..64).filter(|i| s >> i & 1 == 1).collect(),
        exact,
    }
}

/// `√((1/γ)/log₂(1/γ)) · log₂ M` and the trace bound `log₂ M / γ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearningBound {
    pub queries: f64,
    pub rank_sum: f64,
}

pub fn learning_bound(gamma: f64, m: u64) -> Result<LearningBound> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::OutOfRange(format!("γ̂ = {gamma} not in (0, 1)")));
    }
    if m == 0 {
        return Err(Error::OutOfRange("M must be at least 1".into()));
    }
    let inv = 1.0 / gamma;
    let log_m = (m as f64).log2();
    Ok(LearningBound {
        queries: (inv / inv.log2()).sqrt() * log_m,
        rank_sum: log_m * inv,
    })
}
