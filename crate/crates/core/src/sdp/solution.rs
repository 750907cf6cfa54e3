use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::concept::{BitString, GramMatrix};
use crate::error::{Error, Result};

/// Sparse real vector: `(coordinate, value)` pairs sorted by coordinate,
/// without zeros.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SparseVec(Vec<(u64, f64)>);

impl SparseVec {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn single(coord: u64, value: f64) -> Self {
        if value == 0.0 {
            Self::zero()
        } else {
            Self(vec![(coord, value)])
        }
    }

    /// Builds from arbitrary entries; sorts, merges duplicates, drops zeros.
    pub fn from_entries(mut entries: Vec<(u64, f64)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(u64, f64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => out.push((c, v)),
            }
        }
        out.retain(|e| e.1 != 0.0);
        Self(out)
    }

    pub fn entries(&self) -> &[(u64, f64)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|e| e.1 * e.1).sum()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut acc) = (0, 0, 0.0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::from_entries(self.0.iter().map(|&(c, v)| (c, v * k)).collect())
    }

    /// Shifts every coordinate by `by`.
    pub fn offset(&self, by: u64) -> Self {
        Self(self.0.iter().map(|&(c, v)| (c + by, v)).collect())
    }

    /// Tensor product with coordinates `c_self · other_dim + c_other`.
    pub fn tensor(&self, other: &Self, other_dim: u64) -> Self {
        let mut out = Vec::with_capacity(self.0.len() * other.0.len());
        for &(c, v) in &self.0 {
            for &(d, w) in &other.0 {
                out.push((c * other_dim + d, v * w));
            }
        }
        Self(out)
    }

    fn max_coord(&self) -> Option<u64> {
        self.0.last().map(|e| e.0)
    }
}

/// One vector per (input, bit) pair, i.e. `vectors[x][j]`.
pub type VectorTable = Vec<Vec<SparseVec>>;

/// A candidate point of the filtered γ₂ program: vectors `u_xj`, `v_xj` in
/// a real space of dimension `dim`, for every input `x` of `domain` and
/// every bit `j`. When `v` is absent, `v = u`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdpSolution {
    n: usize,
    domain: Vec<BitString>,
    dim: u64,
    u: VectorTable,
    v: Option<VectorTable>,
}

impl SdpSolution {
    pub fn new(
        n: usize,
        domain: Vec<BitString>,
        dim: u64,
        u: VectorTable,
        v: Option<VectorTable>,
    ) -> Result<Self> {
        for x in &domain {
            if x.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: x.len(),
                });
            }
        }
        let check = |table: &VectorTable, name: &str| -> Result<()> {
            if table.len() != domain.len() || table.iter().any(|row| row.len() != n) {
                return Err(Error::DimensionMismatch(format!(
                    "{name} must hold {n} vectors for each of {} inputs",
                    domain.len()
                )));
            }
            let over = table
                .iter()
                .flatten()
                .filter_map(SparseVec::max_coord)
                .any(|c| c >= dim);
            if over {
                return Err(Error::DimensionMismatch(format!(
                    "{name} has a coordinate ≥ {dim}"
                )));
            }
            Ok(())
        };
        check(&u, "u")?;
        if let Some(v) = &v {
            check(v, "v")?;
        }
        Ok(Self {
            n,
            domain,
            dim,
            u,
            v,
        })
    }

    /// All vectors zero; feasible exactly for the zero matrix.
    pub fn zero(n: usize, domain: Vec<BitString>) -> Result<Self> {
        let u = vec![vec![SparseVec::zero(); n]; domain.len()];
        Self::new(n, domain, 1, u, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> &[BitString] {
        &self.domain
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn u(&self, x: usize, j: usize) -> &SparseVec {
        &self.u[x][j]
    }

    pub fn v(&self, x: usize, j: usize) -> &SparseVec {
        match &self.v {
            Some(v) => &v[x][j],
            None => &self.u[x][j],
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.v.is_none()
    }

    pub(crate) fn u_table(&self) -> &VectorTable {
        &self.u
    }

    pub(crate) fn v_table(&self) -> &VectorTable {
        self.v.as_ref().unwrap_or(&self.u)
    }

    pub(crate) fn v_table_opt(&self) -> Option<&VectorTable> {
        self.v.as_ref()
    }

    pub fn index_of(&self, x: &BitString) -> Option<usize> {
        self.domain.iter().position(|y| y == x)
    }

    /// `Σ_{j : x_j ≠ y_j} ⟨u_xj | v_yj⟩` for domain indices `x`, `y`.
    pub fn constraint_sum(&self, x: usize, y: usize) -> f64 {
        let (a, b) = (self.domain[x], self.domain[y]);
        (0..self.n)
            .filter(|&j| a.get(j) != b.get(j))
            .map(|j| self.u(x, j).dot(self.v(y, j)))
            .sum()
    }
}

/// `c(x) = max{Σ_j ‖u_xj‖², Σ_j ‖v_xj‖²}` over a domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostFunction {
    pub domain: Vec<BitString>,
    pub values: Vec<f64>,
}

impl CostFunction {
    pub fn get(&self, x: &BitString) -> Option<f64> {
        self.domain
            .iter()
            .position(|y| y == x)
            .map(|i| self.values[i])
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

pub fn cost_of(sol: &SdpSolution) -> CostFunction {
    let values = (0..sol.domain.len())
        .map(|x| {
            let u: f64 = (0..sol.n).map(|j| sol.u(x, j).norm_sqr()).sum();
            let v: f64 = (0..sol.n).map(|j| sol.v(x, j).norm_sqr()).sum();
            u.max(v)
        })
        .collect();
    CostFunction {
        domain: sol.domain.clone(),
        values,
    }
}

/// Outcome of checking the constraints on a set of pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub max_violation: f64,
    /// Pair attaining `max_violation`.
    pub worst_pair: Option<(BitString, BitString)>,
    pub pairs_checked: u64,
}

impl FeasibilityReport {
    pub fn feasible(&self, tol: f64) -> bool {
        self.max_violation <= tol
    }
}

fn merge(a: FeasibilityReport, b: FeasibilityReport) -> FeasibilityReport {
    let pairs = a.pairs_checked + b.pairs_checked;
    let mut best = if b.max_violation > a.max_violation {
        b
    } else {
        a
    };
    best.pairs_checked = pairs;
    best
}

fn empty_report() -> FeasibilityReport {
    FeasibilityReport {
        max_violation: 0.0,
        worst_pair: None,
        pairs_checked: 0,
    }
}

/// Largest `|Σ_{j : x_j ≠ y_j} ⟨u_xj | v_yj⟩ − A_xy|` over all pairs.
pub fn verify_feasible(target: &GramMatrix, sol: &SdpSolution) -> Result<FeasibilityReport> {
    if target.labels() != sol.domain() {
        return Err(Error::DomainMismatch(format!(
            "matrix over {} labels vs solution over {} inputs (labels must match in order)",
            target.dim(),
            sol.domain().len()
        )));
    }
    let size = sol.domain.len();
    Ok((0..size)
        .into_par_iter()
        .map(|x| {
            (0..size)
                .map(|y| pair_report(sol, x, y, target.get(x, y)))
                .fold(empty_report(), merge)
        })
        .reduce(empty_report, merge))
}

/// Like [`verify_feasible`], restricted to the given pairs of domain indices
/// and with the target entries supplied by a function, for domains too large
/// to materialize the matrix.
pub fn verify_pairs(
    sol: &SdpSolution,
    pairs: &[(usize, usize)],
    target: impl Fn(usize, usize) -> f64 + Sync,
) -> Result<FeasibilityReport> {
    let size = sol.domain.len();
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= size || y >= size) {
        return Err(Error::OutOfRange(format!(
            "pair ({x}, {y}) outside a domain of {size}"
        )));
    }
    Ok(pairs
        .par_iter()
        .map(|&(x, y)| pair_report(sol, x, y, target(x, y)))
        .reduce(empty_report, merge))
}

fn pair_report(sol: &SdpSolution, x: usize, y: usize, want: f64) -> FeasibilityReport {
    let violation = (sol.constraint_sum(x, y) - want).abs();
    FeasibilityReport {
        max_violation: violation,
        worst_pair: Some((sol.domain[x], sol.domain[y])),
        pairs_checked: 1,
    }
}
