use super::solution::{SdpSolution, SparseVec};
use crate::concept::BitString;
use crate::error::{Error, Result};

fn check_positions(n: usize, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    for &j in order {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(Error::InvalidPermutation(format!(
                "{order:?} is not a list of distinct positions below {n}"
            )));
        }
    }
    Ok(())
}

fn check_strings(domain: &[BitString], s: &BitString) -> Result<()> {
    if let Some(x) = domain.iter().find(|x| x.len() != s.len()) {
        return Err(Error::LengthMismatch {
            expected: s.len(),
            actual: x.len(),
        });
    }
    Ok(())
}

/// 1-based rank along `order` of the first position where `x` differs from
/// `s`, or `order.len() + 1` if there is none.
pub fn first_disagreement_rank(x: &BitString, order: &[usize], s: &BitString) -> usize {
    order
        .iter()
        .position(|&j| x.get(j) != s.get(j))
        .map_or(order.len() + 1, |t| t + 1)
}

/// Solution for `J − F` where `F` is the Gram matrix of
/// [`first_disagreement_rank`].
///
/// Each vector is one-dimensional. For the position of rank `t` and
/// `f = f(x)`: `a_t = t^{-1/4}` when `t < f`, `b_f = f^{1/4}` when `t = f`,
/// and zero after. Pairs with `f(x) < f(y)` differ at rank `f(x)` and
/// nowhere earlier, which contributes `a·b = 1`. The cost is
/// `Σ_{t<f} t^{-1/2} + √f ≤ 3√f`.
///
/// `order` may list only some of the positions; the others get zero
/// vectors.
pub fn find_first_one_solution(
    domain: &[BitString],
    order: &[usize],
    s: &BitString,
) -> Result<SdpSolution> {
    let n = s.len();
    check_positions(n, order)?;
    check_strings(domain, s)?;
    let u = domain
        .iter()
        .map(|x| {
            let f = first_disagreement_rank(x, order, s);
            let mut row = vec![SparseVec::zero(); n];
            for (rank0, &j) in order.iter().enumerate() {
                let t = rank0 + 1;
                let value = match t.cmp(&f) {
                    std::cmp::Ordering::Less => (t as f64).powf(-0.25),
                    std::cmp::Ordering::Equal => (t as f64).powf(0.25),
                    std::cmp::Ordering::Greater => break,
                };
                row[j] = SparseVec::single(0, value);
            }
            row
        })
        .collect();
    SdpSolution::new(n, domain.to_vec(), 1, u, None)
}

/// Solution for `J − F` where `f(x) = [x = s]`, with cost `√N` on every
/// input: `u_{s,j} = N^{-1/4}` for all `j`, and for `x ≠ s` a single
/// `N^{1/4}` on the first bit where `x` differs from `s`.
pub fn equality_predicate_solution(domain: &[BitString], s: &BitString) -> Result<SdpSolution> {
    let n = s.len();
    check_strings(domain, s)?;
    let small = (n as f64).powf(-0.25);
    let large = (n as f64).powf(0.25);
    let u = domain
        .iter()
        .map(|x| {
            let mut row = vec![SparseVec::zero(); n];
            match (0..n).find(|&j| x.get(j) != s.get(j)) {
                Some(j) => row[j] = SparseVec::single(0, large),
                None => row
                    .iter_mut()
                    .for_each(|v| *v = SparseVec::single(0, small)),
            }
            row
        })
        .collect();
    SdpSolution::new(n, domain.to_vec(), 1, u, None)
}
