//! Halving-style identification algorithms and the classical baseline.
//!
//! All three algorithms keep a candidate set `S` (initially the class),
//! compare the hidden string against a reference derived from `S`, and
//! prune `S` by the outcome until one candidate remains. They differ in
//! the reference and the search:
//!
//! * [`run_halving_basic`]: any disagreement with `MAJ(S)` over all bits.
//! * [`run_halving_improved`]: the first disagreement with `MAJ(S)`,
//!   left to right over the bits not yet learned.
//! * [`run_final`]: the first disagreement with the reference string of
//!   [`hegedus_ordering_on`] along its order, over the bits not yet learned.
//!
//! Ranks `p` are counted inside the still-unlearned suffix, so a run's
//! ranks sum to at most `N`. The idealized cost charges `√p` per found
//! disagreement and `√L` for a search that finds none over `L` unlearned
//! bits (`√N` per search for the basic algorithm).

mod engine;

pub use engine::{
    per_call_budget, trial_seed, DisagreementFinder, EngineKind, ExactFinder, Finding,
    QuantumFinder,
};

use serde::{Deserialize, Serialize};

use crate::concept::{filter_by_disagreement, majority_string, BitString, ConceptClass};
use crate::error::{Error, Result};
use crate::ordering::hegedus_ordering_on;

/// Which identification loop to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Basic,
    Improved,
    Final,
}

/// Record of one identification run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub identified: BitString,
    /// Rank of each found disagreement, in iteration order. For the basic
    /// algorithm this is the 1-based bit position instead.
    pub positions: Vec<usize>,
    /// Iterations that found a disagreement.
    pub r: usize,
    pub ideal_cost: f64,
    /// Oracle applications actually made by the engine.
    pub raw_queries: u64,
    /// All loop iterations, including a final one that found nothing.
    pub iterations: usize,
}

impl RunTrace {
    /// `Π max{2, p_i}`, saturating.
    pub fn reduction_product(&self) -> u128 {
        self.positions
            .iter()
            .fold(1u128, |acc, &p| acc.saturating_mul(p.max(2) as u128))
    }

    pub fn position_sum(&self) -> usize {
        self.positions.iter().sum()
    }
}

struct Tracker {
    positions: Vec<usize>,
    ideal_cost: f64,
    raw_queries: u64,
    iterations: usize,
}

impl Tracker {
    fn new() -> Self {
        Self {
            positions: Vec::new(),
            ideal_cost: 0.0,
            raw_queries: 0,
            iterations: 0,
        }
    }

    fn finish(self, set: &[BitString]) -> RunTrace {
        RunTrace {
            identified: set[0],
            r: self.positions.len(),
            positions: self.positions,
            ideal_cost: self.ideal_cost,
            raw_queries: self.raw_queries,
            iterations: self.iterations,
        }
    }
}

fn nonempty(set: Vec<BitString>) -> Result<Vec<BitString>> {
    if set.is_empty() {
        Err(Error::PromiseViolated)
    } else {
        Ok(set)
    }
}

/// Basic halving: search all bits for any disagreement with `MAJ(S)` and
/// keep the candidates that match the hidden string at the bit found.
pub fn run_halving_basic(
    class: &ConceptClass,
    finder: &mut impl DisagreementFinder,
) -> Result<RunTrace> {
    let n = class.n();
    let all: Vec<usize> = (0..n).collect();
    let mut set = class.members().to_vec();
    let mut t = Tracker::new();
    loop {
        let maj = majority_string(&set)?;
        let found = finder.any_disagreement(&maj, &all)?;
        t.iterations += 1;
        t.raw_queries += found.queries;
        t.ideal_cost += (n as f64).sqrt();
        set = match found.rank {
            Some(p) => {
                let j = all[p - 1];
                t.positions.push(j + 1);
                set.into_iter().filter(|y| y.get(j) != maj.get(j)).collect()
            }
            None => filter_by_disagreement(&set, &all, &maj, None)?,
        };
        set = nonempty(set)?;
        if set.len() == 1 {
            return Ok(t.finish(&set));
        }
    }
}

/// Improved halving: first disagreement with `MAJ(S)` scanning the
/// unlearned suffix left to right.
pub fn run_halving_improved(
    class: &ConceptClass,
    finder: &mut impl DisagreementFinder,
) -> Result<RunTrace> {
    run_suffix_loop(class, finder, |set, free| {
        Ok((majority_string(set)?, free.to_vec()))
    })
}

/// Final algorithm: first disagreement with the ordering's reference
/// string along the ordering, recomputed on the unlearned positions each
/// iteration.
pub fn run_final(class: &ConceptClass, finder: &mut impl DisagreementFinder) -> Result<RunTrace> {
    run_suffix_loop(class, finder, |set, free| {
        let ord = hegedus_ordering_on(set, free)?;
        Ok((ord.s, ord.sigma))
    })
}

pub fn run(
    algorithm: Algorithm,
    class: &ConceptClass,
    finder: &mut impl DisagreementFinder,
) -> Result<RunTrace> {
    match algorithm {
        Algorithm::Basic => run_halving_basic(class, finder),
        Algorithm::Improved => run_halving_improved(class, finder),
        Algorithm::Final => run_final(class, finder),
    }
}

/// Shared loop for the first-disagreement algorithms. `plan` maps the
/// current candidates and unlearned positions (ascending) to a reference
/// string and a search order over exactly those positions.
fn run_suffix_loop(
    class: &ConceptClass,
    finder: &mut impl DisagreementFinder,
    plan: impl Fn(&[BitString], &[usize]) -> Result<(BitString, Vec<usize>)>,
) -> Result<RunTrace> {
    let mut set = class.members().to_vec();
    let mut free: Vec<usize> = (0..class.n()).collect();
    let mut t = Tracker::new();
    loop {
        let (reference, order) = plan(&set, &free)?;
        let found = finder.first_disagreement(&reference, &order)?;
        t.iterations += 1;
        t.raw_queries += found.queries;
        set = filter_by_disagreement(&set, &order, &reference, found.rank)?;
        match found.rank {
            Some(p) => {
                t.positions.push(p);
                t.ideal_cost += (p as f64).sqrt();
                free.retain(|j| !order[..p].contains(j));
            }
            None => {
                t.ideal_cost += (free.len() as f64).sqrt();
                free.clear();
            }
        }
        set = nonempty(set)?;
        if set.len() == 1 {
            return Ok(t.finish(&set));
        }
    }
}

/// Outcome of the classical baseline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalRun {
    pub identified: BitString,
    pub queries: u64,
}

/// Classical identification by direct bit reads: repeatedly read the
/// unread bit that splits the candidates most evenly (lowest index on
/// ties). Every read removes at least one candidate, so at most
/// `min{M − 1, N}` reads are made.
pub fn classical_identify(class: &ConceptClass, x: &BitString) -> Result<ClassicalRun> {
    if x.len() != class.n() {
        return Err(Error::LengthMismatch {
            expected: class.n(),
            actual: x.len(),
        });
    }
    let mut set = class.members().to_vec();
    let mut queries = 0u64;
    while set.len() > 1 {
        let split = (0..class.n())
            .map(|j| {
                let ones = set.iter().filter(|y| y.get(j)).count();
                (j, ones.min(set.len() - ones))
            })
            .filter(|&(_, minority)| minority > 0)
            .fold(None, |best: Option<(usize, usize)>, cand| match best {
                Some(b) if b.1 >= cand.1 => Some(b),
                _ => Some(cand),
            });
        let (j, _) = split.expect("distinct candidates differ somewhere");
        queries += 1;
        let bit = x.get(j);
        set.retain(|y| y.get(j) == bit);
        if set.is_empty() {
            return Err(Error::PromiseViolated);
        }
    }
    if set[0] != *x {
        return Err(Error::PromiseViolated);
    }
    Ok(ClassicalRun {
        identified: set[0],
        queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::{bits, generate_class, ClassKind};

    fn exact(x: &str) -> ExactFinder {
        ExactFinder::new(bits(x))
    }

    fn h1(n: usize) -> ConceptClass {
        generate_class(ClassKind::HammingWeight { k: 1 }, n, 0).unwrap()
    }

    fn cube(n: usize) -> ConceptClass {
        generate_class(ClassKind::Cube, n, 0).unwrap()
    }

    #[test]
    fn basic_on_cube_n2() {
        let t = run_halving_basic(&cube(2), &mut exact("10")).unwrap();
        assert_eq!(t.identified, bits("10"));
        assert!(t.iterations <= 3);
    }

    #[test]
    fn basic_on_hamming_one() {
        let t = run_halving_basic(&h1(3), &mut exact("001")).unwrap();
        assert_eq!(t.identified, bits("001"));
    }

    #[test]
    fn singleton_runs_once_without_disagreements() {
        let c = ConceptClass::parse(4, &["0110"]).unwrap();
        for alg in [Algorithm::Basic, Algorithm::Improved, Algorithm::Final] {
            let t = run(alg, &c, &mut exact("0110")).unwrap();
            assert_eq!(t.iterations, 1);
            assert_eq!(t.r, 0);
            assert_eq!(t.ideal_cost, 2.0);
        }
    }

    #[test]
    fn improved_on_cube_n4() {
        // MAJ of a cube ties to all ones, so 0000 disagrees at the first
        // unlearned bit every time.
        let t = run_halving_improved(&cube(4), &mut exact("0000")).unwrap();
        assert_eq!(t.positions, [1, 1, 1, 1]);
        assert_eq!(t.ideal_cost, 4.0);
        let t = run_halving_improved(&cube(4), &mut exact("1111")).unwrap();
        assert!(t.positions.is_empty());
        assert_eq!(t.iterations, 1);
        assert_eq!(t.ideal_cost, 2.0);
    }

    #[test]
    fn improved_on_hamming_one_n4() {
        let t = run_halving_improved(&h1(4), &mut exact("0001")).unwrap();
        assert_eq!(t.identified, bits("0001"));
        assert!(t.position_sum() <= 4);
    }

    #[test]
    fn final_on_hamming_one_n3() {
        let t = run_final(&h1(3), &mut exact("100")).unwrap();
        assert_eq!((t.positions.clone(), t.r), (vec![1], 1));
        let t = run_final(&h1(3), &mut exact("010")).unwrap();
        assert!(t.positions.is_empty());
        assert_eq!(t.iterations, 1);
        assert!((t.ideal_cost - 3f64.sqrt()).abs() < 1e-15);
        let t = run_final(&h1(3), &mut exact("001")).unwrap();
        assert_eq!(t.positions, [2]);
    }

    #[test]
    fn promise_violation_is_reported() {
        let c = ConceptClass::parse(3, &["100", "010"]).unwrap();
        for alg in [Algorithm::Basic, Algorithm::Improved, Algorithm::Final] {
            assert_eq!(
                run(alg, &c, &mut exact("111")),
                Err(Error::PromiseViolated),
                "{alg:?}"
            );
        }
        assert_eq!(
            classical_identify(&c, &bits("111")),
            Err(Error::PromiseViolated)
        );
    }

    #[test]
    fn classical_examples() {
        let c = ConceptClass::parse(3, &["101"]).unwrap();
        assert_eq!(classical_identify(&c, &bits("101")).unwrap().queries, 0);
        let c = h1(5);
        let worst = c
            .members()
            .iter()
            .map(|x| classical_identify(&c, x).unwrap().queries)
            .max()
            .unwrap();
        assert_eq!(worst, 4);
        let c = cube(5);
        for x in c.members() {
            let run = classical_identify(&c, x).unwrap();
            assert_eq!(run.identified, *x);
            assert!(run.queries <= 5);
        }
    }

    #[test]
    fn exhaustive_small_classes_all_algorithms() {
        let u = crate::concept::cube(3);
        for mask in 1u64..1 << 8 {
            let set = crate::concept::subset_by_mask(&u, mask);
            let c = ConceptClass::new(3, set).unwrap();
            let m = c.len();
            let log_m = crate::bounds::ceil_log2(m as u64) as usize;
            for x in c.members() {
                for alg in [Algorithm::Basic, Algorithm::Improved, Algorithm::Final] {
                    let t = run(alg, &c, &mut ExactFinder::new(*x)).unwrap();
                    assert_eq!(t.identified, *x);
                    if alg != Algorithm::Final {
                        assert!(t.r <= log_m, "{alg:?} r={} M={m}", t.r);
                        assert!(t.iterations <= log_m + 1);
                    }
                    if alg != Algorithm::Basic {
                        assert!(t.position_sum() <= 3);
                    }
                    if alg == Algorithm::Final {
                        assert!(t.reduction_product() <= m as u128);
                    }
                }
                let cl = classical_identify(&c, x).unwrap();
                assert!(cl.queries as usize <= (m - 1).min(3));
            }
        }
    }
}
