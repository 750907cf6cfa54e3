use serde::{Deserialize, Serialize};

use super::compose::{output_conditioned_compose, sum_compose};
use super::construct::{find_first_one_solution, first_disagreement_rank};
use super::solution::{cost_of, CostFunction, SdpSolution};
use crate::concept::{BitString, ConceptClass, FunctionTable};
use crate::error::Result;
use crate::ordering::hegedus_ordering_on;

/// Solution for `J − I` over a class, assembled from the decision tree of
/// the ordering-based identification algorithm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleIdSolution {
    pub solution: SdpSolution,
    pub cost: CostFunction,
    /// Ranks found for each member, as the exact algorithm would report.
    pub positions: Vec<Vec<usize>>,
    /// Number of stages in the tree.
    pub stages: usize,
}

impl OracleIdSolution {
    /// `max_x c(x) / (Σ_i √p_i(x) + √N)`.
    pub fn kappa(&self) -> f64 {
        let root_n = (self.solution.n() as f64).sqrt();
        self.cost
            .values
            .iter()
            .zip(&self.positions)
            .map(|(c, ps)| c / (ps.iter().map(|&p| (p as f64).sqrt()).sum::<f64>() + root_n))
            .fold(0.0, f64::max)
    }
}

struct Group {
    members: Vec<usize>,
    free: Vec<usize>,
}

/// Builds the stage-by-stage solution: at each stage every unresolved
/// candidate group gets a first-one block along its ordering over the
/// still-unlearned bits, the blocks are conditioned on the group, and the
/// stages are summed.
pub fn oracle_id_solution(class: &ConceptClass) -> Result<OracleIdSolution> {
    let n = class.n();
    let domain: Vec<BitString> = class.members().to_vec();
    let mut positions = vec![Vec::new(); domain.len()];
    let mut groups = vec![Group {
        members: (0..domain.len()).collect(),
        free: (0..n).collect(),
    }];
    let mut total: Option<SdpSolution> = None;
    let mut stages = 0;
    while groups.iter().any(|g| g.members.len() > 1) {
        stages += 1;
        let mut label = vec![0usize; domain.len()];
        let mut blocks = Vec::with_capacity(groups.len());
        let mut next = Vec::new();
        for (gid, group) in groups.iter().enumerate() {
            let dom: Vec<BitString> = group.members.iter().map(|&i| domain[i]).collect();
            group.members.iter().for_each(|&i| label[i] = gid);
            if dom.len() == 1 {
                blocks.push((gid, SdpSolution::zero(n, dom)?));
                next.push(Group {
                    members: group.members.clone(),
                    free: group.free.clone(),
                });
                continue;
            }
            let ord = hegedus_ordering_on(&dom, &group.free)?;
            blocks.push((gid, find_first_one_solution(&dom, &ord.sigma, &ord.s)?));
            let mut split: Vec<(usize, Group)> = Vec::new();
            for &i in &group.members {
                let rank = first_disagreement_rank(&domain[i], &ord.sigma, &ord.s);
                let found = rank <= ord.sigma.len();
                if found {
                    positions[i].push(rank);
                }
                match split.iter_mut().find(|(r, _)| *r == rank) {
                    Some((_, g)) => g.members.push(i),
                    None => {
                        let learned = if found {
                            &ord.sigma[..rank]
                        } else {
                            &ord.sigma[..]
                        };
                        let free = group
                            .free
                            .iter()
                            .copied()
                            .filter(|j| !learned.contains(j))
                            .collect();
                        split.push((
                            rank,
                            Group {
                                members: vec![i],
                                free,
                            },
                        ));
                    }
                }
            }
            next.extend(split.into_iter().map(|(_, g)| g));
        }
        let outer = FunctionTable::new(domain.clone(), label)?;
        let stage = output_conditioned_compose(&outer, &blocks)?;
        total = Some(match total {
            Some(acc) => sum_compose(&acc, &stage)?,
            None => stage,
        });
        groups = next;
    }
    let solution = match total {
        Some(s) => s,
        None => SdpSolution::zero(n, domain)?,
    };
    let cost = cost_of(&solution);
    Ok(OracleIdSolution {
        solution,
        cost,
        positions,
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::brute_force_c;
    use crate::concept::{bits, generate_class, ClassKind, GramMatrix};
    use crate::identify::{run_final, ExactFinder};
    use crate::sdp::verify_feasible;

    fn check(class: &ConceptClass) -> OracleIdSolution {
        let sol = oracle_id_solution(class).unwrap();
        let target = GramMatrix::identity(class.members()).complement();
        let r = verify_feasible(&target, &sol.solution).unwrap();
        assert!(r.max_violation < 1e-10, "{r:?}");
        for (i, x) in class.members().iter().enumerate() {
            let trace = run_final(class, &mut ExactFinder::new(*x)).unwrap();
            assert_eq!(trace.positions, sol.positions[i], "x={x}");
        }
        assert!(sol.kappa() <= 3.0, "kappa {}", sol.kappa());
        sol
    }

    #[test]
    fn hamming_one_n3() {
        let c = generate_class(ClassKind::HammingWeight { k: 1 }, 3, 0).unwrap();
        let sol = check(&c);
        let cost = sol.cost.get(&bits("100")).unwrap();
        assert!(cost <= 3.0 * (1.0 + 3f64.sqrt()));
    }

    #[test]
    fn cube_n2_against_program_optimum() {
        let c = generate_class(ClassKind::Cube, 2, 0).unwrap();
        let sol = check(&c);
        let opt = brute_force_c(4, 2).unwrap().value;
        assert!(sol.cost.max() <= 3.0 * opt + 1e-12);
    }

    #[test]
    fn two_members_need_one_stage() {
        let c = ConceptClass::parse(4, &["0110", "0011"]).unwrap();
        let sol = check(&c);
        assert_eq!(sol.stages, 1);
        let ord = crate::ordering::hegedus_ordering(c.members()).unwrap();
        for x in c.members() {
            let f = first_disagreement_rank(x, &ord.sigma, &ord.s) as f64;
            assert!(sol.cost.get(x).unwrap() <= 3.0 * f.sqrt() + 1e-12);
        }
    }

    #[test]
    fn singleton_is_trivial() {
        let c = ConceptClass::parse(3, &["101"]).unwrap();
        let sol = oracle_id_solution(&c).unwrap();
        assert_eq!(sol.stages, 0);
        assert_eq!(sol.cost.values, [0.0]);
    }

    #[test]
    fn random_classes() {
        for seed in 0..5 {
            let c = generate_class(ClassKind::Random { size: 9 }, 4, seed).unwrap();
            check(&c);
        }
    }
}
