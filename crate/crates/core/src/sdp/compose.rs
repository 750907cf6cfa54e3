use std::collections::HashMap;
use std::hash::Hash;

use super::solution::{SdpSolution, SparseVec, VectorTable};
use crate::concept::{BitString, FunctionTable};
use crate::error::{Error, Result};

/// Largest composite domain [`tensor_compose`] will enumerate.
pub const MAX_TENSOR_DOMAIN: usize = 1 << 20;

fn index_map(domain: &[BitString]) -> HashMap<BitString, usize> {
    domain.iter().enumerate().map(|(i, x)| (*x, i)).collect()
}

/// Direct sum: `u_xj = u^A_xj ⊕ u^B_xj`, feasible for `A + B` with cost at
/// most `c_A + c_B` pointwise.
pub fn sum_compose(a: &SdpSolution, b: &SdpSolution) -> Result<SdpSolution> {
    if a.n() != b.n() || a.domain() != b.domain() {
        return Err(Error::DomainMismatch(
            "sum composition needs identical domains in the same order".into(),
        ));
    }
    let dim = a
        .dim()
        .checked_add(b.dim())
        .ok_or_else(|| Error::TooLarge("composite dimension overflows".into()))?;
    let join = |ta: &VectorTable, tb: &VectorTable| -> VectorTable {
        ta.iter()
            .zip(tb)
            .map(|(ra, rb)| {
                ra.iter()
                    .zip(rb)
                    .map(|(va, vb)| {
                        let mut e = va.entries().to_vec();
                        e.extend_from_slice(vb.offset(a.dim()).entries());
                        SparseVec::from_entries(e)
                    })
                    .collect()
            })
            .collect()
    };
    let u = join(a.u_table(), b.u_table());
    let v = (a.v_table_opt().is_some() || b.v_table_opt().is_some())
        .then(|| join(a.v_table(), b.v_table()));
    SdpSolution::new(a.n(), a.domain().to_vec(), dim, u, v)
}

/// Output-conditioned composition: `u_xj = |f(x)⟩ ⊗ u^{f(x)}_xj`.
///
/// `blocks` pairs each output value `e` of `f` with a solution defined
/// exactly on `f⁻¹(e)` (any order). The result, over `f`'s domain, is
/// feasible for `F − F∘G` when each block is feasible for `J − G_e`, and
/// its cost on `x` equals the cost of `x` in block `f(x)`.
pub fn output_conditioned_compose<T: Clone + Eq + Hash>(
    f: &FunctionTable<T>,
    blocks: &[(T, SdpSolution)],
) -> Result<SdpSolution> {
    let domain = f.domain().to_vec();
    let n = domain.first().map_or(0, BitString::len);
    let groups = f.preimages();
    if blocks.len() != groups.len() {
        return Err(Error::MissingBlock(format!(
            "{} blocks for {} output values",
            blocks.len(),
            groups.len()
        )));
    }
    let max_dim = blocks.iter().map(|(_, s)| s.dim()).max().unwrap_or(1);
    let tags = u64::try_from(groups.len()).expect("fits");
    let dim = max_dim
        .checked_mul(tags.max(1))
        .ok_or_else(|| Error::TooLarge("composite dimension overflows".into()))?;
    let empty = vec![SparseVec::zero(); n];
    let mut u = vec![empty.clone(); domain.len()];
    let mut v = vec![empty; domain.len()];
    let mut asymmetric = false;
    for (tag, (value, members)) in groups.iter().enumerate() {
        let (_, sol) = blocks
            .iter()
            .find(|(e, _)| e == value)
            .ok_or_else(|| Error::MissingBlock(format!("no block for output group {tag}")))?;
        if sol.n() != n || sol.domain().len() != members.len() {
            return Err(Error::DomainMismatch(format!(
                "block {tag} must cover exactly the {} inputs of its output",
                members.len()
            )));
        }
        asymmetric |= !sol.is_symmetric();
        let local = index_map(sol.domain());
        let shift = tag as u64 * max_dim;
        for &x in members {
            let bx = *local.get(&domain[x]).ok_or_else(|| {
                Error::DomainMismatch(format!("block {tag} lacks input {}", domain[x]))
            })?;
            for j in 0..n {
                u[x][j] = sol.u(bx, j).offset(shift);
                v[x][j] = sol.v(bx, j).offset(shift);
            }
        }
    }
    SdpSolution::new(n, domain, dim, u, asymmetric.then_some(v))
}

/// Composition `f ∘ g` by tensoring: each of `f`'s `m` input bits is
/// computed by its own `k`-bit instance of `g`.
///
/// The composite input is the concatenation `x = x¹…xᵐ` of strings from
/// `g`'s domain whose outputs form a string in `sol_f`'s domain, and
/// `u_{x,(i,j)} = u^f_{g(x),i} ⊗ u^g_{xⁱ,j}`. Feasible for `J − F∘G` when
/// both parts are feasible, with cost at most `c_f(g(x)) · max_i c_g(xⁱ)`.
pub fn tensor_compose(
    sol_f: &SdpSolution,
    sol_g: &SdpSolution,
    g: &FunctionTable<bool>,
) -> Result<SdpSolution> {
    let (m, k) = (sol_f.n(), sol_g.n());
    if g.domain().iter().any(|y| y.len() != k) {
        return Err(Error::ArityMismatch(format!(
            "g table is not over {k}-bit strings"
        )));
    }
    if sol_g.domain().len() != g.len() {
        return Err(Error::DomainMismatch(
            "g's solution and table cover different inputs".into(),
        ));
    }
    let n = m * k;
    if n == 0 {
        return Err(Error::ArityMismatch("empty composite input".into()));
    }
    if n > crate::concept::MAX_BITS {
        return Err(Error::TooLarge(format!("{m}·{k} composite bits")));
    }
    let g_index = index_map(sol_g.domain());
    let g_rows: Vec<usize> = g
        .domain()
        .iter()
        .map(|y| {
            g_index
                .get(y)
                .copied()
                .ok_or_else(|| Error::DomainMismatch(format!("g's solution lacks {y}")))
        })
        .collect::<Result<_>>()?;
    let f_index = index_map(sol_f.domain());
    let radix = g.len();
    let total = (0..m).try_fold(1usize, |acc, _| {
        acc.checked_mul(radix).filter(|&t| t <= MAX_TENSOR_DOMAIN)
    });
    let total = total.ok_or_else(|| {
        Error::TooLarge(format!(
            "{radix}^{m} composite inputs exceed {MAX_TENSOR_DOMAIN}"
        ))
    })?;
    let dim = sol_f
        .dim()
        .checked_mul(sol_g.dim())
        .ok_or_else(|| Error::TooLarge("composite dimension overflows".into()))?;
    let asymmetric = !sol_f.is_symmetric() || !sol_g.is_symmetric();
    let (mut domain, mut u, mut v) = (Vec::new(), Vec::new(), Vec::new());
    let mut digits = vec![0usize; m];
    for _ in 0..total {
        let outer: Vec<bool> = digits.iter().map(|&d| g.outputs()[d]).collect();
        if let Some(&fx) = f_index.get(&BitString::from_bools(&outer)?) {
            let mut x = g.domain()[digits[0]];
            let (mut ru, mut rv) = (Vec::with_capacity(n), Vec::with_capacity(n));
            for (i, &d) in digits.iter().enumerate() {
                if i > 0 {
                    x = x.concat(&g.domain()[d])?;
                }
                let gx = g_rows[d];
                for j in 0..k {
                    ru.push(sol_f.u(fx, i).tensor(sol_g.u(gx, j), sol_g.dim()));
                    rv.push(sol_f.v(fx, i).tensor(sol_g.v(gx, j), sol_g.dim()));
                }
            }
            domain.push(x);
            u.push(ru);
            v.push(rv);
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < radix {
                break;
            }
            *d = 0;
        }
    }
    SdpSolution::new(n, domain, dim, u, asymmetric.then_some(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::{bits, cube, GramMatrix};
    use crate::sdp::{
        cost_of, equality_predicate_solution, find_first_one_solution, first_disagreement_rank,
        verify_feasible,
    };

    fn ffo(domain: &[BitString], s: &BitString) -> (SdpSolution, GramMatrix) {
        let order: Vec<usize> = (0..s.len()).collect();
        let sol = find_first_one_solution(domain, &order, s).unwrap();
        let f = FunctionTable::from_fn(domain, |x| first_disagreement_rank(x, &order, s)).unwrap();
        (sol, f.gram().complement())
    }

    #[test]
    fn sum_with_zero_and_with_itself() {
        let d = cube(3);
        let (sol, a) = ffo(&d, &bits("010"));
        let zero = SdpSolution::zero(3, d.clone()).unwrap();
        let s0 = sum_compose(&sol, &zero).unwrap();
        assert!(verify_feasible(&a, &s0).unwrap().max_violation < 1e-12);
        assert_eq!(cost_of(&s0), cost_of(&sol));
        let s2 = sum_compose(&sol, &sol).unwrap();
        assert!(verify_feasible(&a.scale(2.0), &s2).unwrap().max_violation < 1e-12);
        for (c2, c) in cost_of(&s2).values.iter().zip(cost_of(&sol).values) {
            assert!((c2 - 2.0 * c).abs() < 1e-12);
        }
        assert!(sum_compose(&sol, &SdpSolution::zero(3, d[..4].to_vec()).unwrap()).is_err());
    }

    #[test]
    fn sum_bounds_violation_and_cost() {
        let d = cube(3);
        let (sa, a) = ffo(&d, &bits("000"));
        let (sb, b) = ffo(&d, &bits("111"));
        let sum = sum_compose(&sa, &sb).unwrap();
        let target = a.add(&b).unwrap();
        let r = verify_feasible(&target, &sum).unwrap();
        assert!(r.max_violation < 1e-12);
        let (ca, cb, cs) = (cost_of(&sa), cost_of(&sb), cost_of(&sum));
        for i in 0..d.len() {
            assert!((cs.values[i] - ca.values[i] - cb.values[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_outer_function_is_a_single_block() {
        let d = cube(3);
        let (sol, a) = ffo(&d, &bits("101"));
        let f = FunctionTable::from_fn(&d, |_| 0u8).unwrap();
        let comp = output_conditioned_compose(&f, &[(0, sol.clone())]).unwrap();
        assert!(verify_feasible(&a, &comp).unwrap().max_violation < 1e-12);
        assert_eq!(cost_of(&comp), cost_of(&sol));
    }

    #[test]
    fn conditioned_blocks_on_hamming_one() {
        // Outer split on the first bit; inside {010, 001} a first-one search
        // over bits 1, 2 separates the pair.
        let c = [bits("100"), bits("010"), bits("001")];
        let f = FunctionTable::from_fn(&c, |x| x.get(0)).unwrap();
        let inner_order = [1usize, 2];
        let inner_s = bits("010");
        let mut blocks = Vec::new();
        for (value, members) in f.preimages() {
            let dom: Vec<BitString> = members.iter().map(|&i| c[i]).collect();
            let sol = if dom.len() == 1 {
                SdpSolution::zero(3, dom).unwrap()
            } else {
                find_first_one_solution(&dom, &inner_order, &inner_s).unwrap()
            };
            blocks.push((value, sol));
        }
        let comp = output_conditioned_compose(&f, &blocks).unwrap();
        let g = FunctionTable::from_fn(&c, |x| first_disagreement_rank(x, &inner_order, &inner_s))
            .unwrap();
        let target = f
            .gram()
            .sub(&f.gram().hadamard(&g.gram()).unwrap())
            .unwrap();
        let r = verify_feasible(&target, &comp).unwrap();
        assert!(r.max_violation < 1e-12, "{r:?}");
        assert!((comp.constraint_sum(1, 2) - 1.0).abs() < 1e-12);
        assert_eq!(comp.constraint_sum(0, 1), 0.0);
        let cc = cost_of(&comp);
        for (value, sol) in &blocks {
            for (x, cost) in sol.domain().iter().zip(cost_of(sol).values) {
                assert_eq!(f.lookup(x), Some(value));
                assert_eq!(cc.get(x), Some(cost));
            }
        }
        assert!(output_conditioned_compose(&f, &blocks[..1]).is_err());
    }

    #[test]
    fn or_of_ands() {
        let d2 = cube(2);
        let and = FunctionTable::from_fn(&d2, |x| *x == bits("11")).unwrap();
        let sol_g = equality_predicate_solution(&d2, &bits("11")).unwrap();
        let sol_f = equality_predicate_solution(&d2, &bits("00")).unwrap();
        let comp = tensor_compose(&sol_f, &sol_g, &and).unwrap();
        assert_eq!(comp.domain().len(), 16);
        let h = FunctionTable::from_fn(comp.domain(), |x| {
            (x.get(0) && x.get(1)) || (x.get(2) && x.get(3))
        })
        .unwrap();
        let r = verify_feasible(&h.gram().complement(), &comp).unwrap();
        assert!(r.max_violation < 1e-10, "{r:?}");
        let (cf, cg, cc) = (cost_of(&sol_f), cost_of(&sol_g), cost_of(&comp));
        let cg_max = cg.max();
        for (x, c) in comp.domain().iter().zip(&cc.values) {
            let outer =
                BitString::from_bools(&[x.get(0) && x.get(1), x.get(2) && x.get(3)]).unwrap();
            assert!(*c <= cf.get(&outer).unwrap() * cg_max + 1e-12);
        }
    }

    #[test]
    fn tensor_with_identity_bits_reproduces_outer() {
        let d1 = cube(1);
        let id = FunctionTable::from_fn(&d1, |x| x.get(0)).unwrap();
        // One-bit identity: J − F is the off-diagonal indicator, solved by unit vectors.
        let u = vec![vec![SparseVec::single(0, 1.0)]; 2];
        let sol_g = SdpSolution::new(1, d1.clone(), 1, u, None).unwrap();
        let d3 = cube(3);
        let (sol_f, a) = ffo(&d3, &bits("000"));
        let comp = tensor_compose(&sol_f, &sol_g, &id).unwrap();
        assert_eq!(comp.domain(), sol_f.domain());
        assert!(verify_feasible(&a, &comp).unwrap().max_violation < 1e-12);
        assert_eq!(cost_of(&comp), cost_of(&sol_f));
    }
}
