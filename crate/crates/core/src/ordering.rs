//! Greedy construction of an informative query order.
//!
//! Given a candidate set `S`, [`hegedus_ordering`] produces a bit order `σ`
//! and reference string `s` such that the strings whose first
//! disagreement with `s` along `σ` falls at rank `p` number at most
//! `|S| / max{2, p}`. A search that finds a late disagreement therefore
//! eliminates proportionally more candidates.

use serde::{Deserialize, Serialize};

use crate::concept::{check_order, majority_string, BitString};
use crate::error::{Error, Result};

/// A query order `σ` (positions, rank 1 first), a reference string `s`, and
/// the elimination-set sizes `|S_p|` recorded while building it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ordering {
    /// `sigma[p - 1]` is the position queried at rank `p`.
    pub sigma: Vec<usize>,
    pub s: BitString,
    /// `elim_sizes[p - 1] = |S_p|`.
    pub elim_sizes: Vec<usize>,
}

impl Ordering {
    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// Materializes `S_p` for the 1-based rank `p`.
    pub fn elimination_set(&self, set: &[BitString], p: usize) -> Result<Vec<BitString>> {
        crate::concept::filter_by_disagreement(set, &self.sigma, &self.s, Some(p))
    }
}

/// Builds the ordering over every position of `set`.
pub fn hegedus_ordering(set: &[BitString]) -> Result<Ordering> {
    let n = set.first().ok_or(Error::EmptySet)?.len();
    let positions: Vec<usize> = (0..n).collect();
    hegedus_ordering_on(set, &positions)
}

/// Builds the ordering restricted to `positions`; the other positions of
/// `s` take the majority value of `set`.
///
/// At each step the unused position with the most strings disagreeing with
/// the majority of the still-agreeing subset is chosen, lowest index first
/// on ties.
pub fn hegedus_ordering_on(set: &[BitString], positions: &[usize]) -> Result<Ordering> {
    let mut s = majority_string(set)?;
    let n = s.len();
    check_order(n, positions)?;

    let mut remaining = positions.to_vec();
    remaining.sort_unstable();
    let mut agreeing: Vec<BitString> = set.to_vec();
    let mut sigma = Vec::with_capacity(remaining.len());
    let mut elim_sizes = Vec::with_capacity(remaining.len());
    let mut ones = vec![0usize; n];

    while !remaining.is_empty() {
        if agreeing.len() == 1 {
            let only = agreeing[0];
            for &j in &remaining {
                s.set(j, only.get(j));
                sigma.push(j);
                elim_sizes.push(0);
            }
            break;
        }
        for &j in &remaining {
            ones[j] = agreeing.iter().filter(|y| y.get(j)).count();
        }
        let size = agreeing.len();
        let mut best = (0usize, 0usize, false);
        for (slot, &j) in remaining.iter().enumerate() {
            let maj = 2 * ones[j] >= size;
            let disagree = if maj { size - ones[j] } else { ones[j] };
            if slot == 0 || disagree > best.1 {
                best = (slot, disagree, maj);
            }
        }
        let (slot, disagree, maj) = best;
        let j = remaining.remove(slot);
        s.set(j, maj);
        sigma.push(j);
        elim_sizes.push(disagree);
        agreeing.retain(|y| y.get(j) == maj);
    }

    Ok(Ordering {
        sigma,
        s,
        elim_sizes,
    })
}

/// Histogram of first-disagreement ranks: `counts[p - 1] = |S_p|`, computed
/// directly from `set` without reusing the construction's bookkeeping.
/// Strings agreeing with `s` along all of `σ` are not counted.
pub fn elimination_counts(set: &[BitString], ord: &Ordering) -> Result<Vec<usize>> {
    let n = ord.s.len();
    check_order(n, &ord.sigma)?;
    let mut counts = vec![0usize; ord.sigma.len()];
    for y in set {
        if y.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: y.len(),
            });
        }
        if let Some(rank) = ord.sigma.iter().position(|&j| y.get(j) != ord.s.get(j)) {
            counts[rank] += 1;
        }
    }
    Ok(counts)
}

/// Worst ratio `max_p |S_p|·max{2,p} / |S|`; at most 1 certifies the
/// elimination guarantee.
pub fn verify_ordering(set: &[BitString], ord: &Ordering) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let counts = elimination_counts(set, ord)?;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (c * (i + 1).max(2)) as f64 / set.len() as f64)
        .fold(0.0, f64::max))
}

/// Integer form of the guarantee: `|S_p|·max{2,p} ≤ |S|` for every rank.
pub fn ordering_holds(set: &[BitString], ord: &Ordering) -> Result<bool> {
    let counts = elimination_counts(set, ord)?;
    Ok(counts
        .iter()
        .enumerate()
        .all(|(i, &c)| c * (i + 1).max(2) <= set.len()))
}
