use std::collections::HashMap;
use std::hash::Hash;

use super::bits::BitString;
use crate::error::{Error, Result};

/// A total function on a finite domain of strings.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionTable<T> {
    domain: Vec<BitString>,
    outputs: Vec<T>,
}

impl<T: Clone + Eq + Hash> FunctionTable<T> {
    pub fn new(domain: Vec<BitString>, outputs: Vec<T>) -> Result<Self> {
        if domain.len() != outputs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} inputs but {} outputs",
                domain.len(),
                outputs.len()
            )));
        }
        check_domain(&domain)?;
        Ok(Self { domain, outputs })
    }

    pub fn from_fn(domain: &[BitString], f: impl Fn(&BitString) -> T) -> Result<Self> {
        let outputs = domain.iter().map(f).collect();
        Self::new(domain.to_vec(), outputs)
    }

    pub fn domain(&self) -> &[BitString] {
        &self.domain
    }

    pub fn outputs(&self) -> &[T] {
        &self.outputs
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn lookup(&self, x: &BitString) -> Option<&T> {
        self.domain
            .iter()
            .position(|d| d == x)
            .map(|i| &self.outputs[i])
    }

    /// Domain indices grouped by output value, groups in order of first
    /// appearance.
    pub fn preimages(&self) -> Vec<(T, Vec<usize>)> {
        let mut slot: HashMap<&T, usize> = HashMap::new();
        let mut groups: Vec<(T, Vec<usize>)> = Vec::new();
        for (i, out) in self.outputs.iter().enumerate() {
            let g = *slot.entry(out).or_insert_with(|| {
                groups.push((out.clone(), Vec::new()));
                groups.len() - 1
            });
            groups[g].1.push(i);
        }
        groups
    }

    /// `F_xy = 1` iff `f(x) = f(y)`.
    pub fn gram(&self) -> GramMatrix {
        let n = self.domain.len();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if self.outputs[i] == self.outputs[j] {
                    entries[i * n + j] = 1.0;
                }
            }
        }
        GramMatrix {
            labels: self.domain.clone(),
            entries,
        }
    }
}

/// Gram matrix of `f`: `F_xy = 1` iff `f(x) = f(y)`.
pub fn gram_of_function<T: Clone + Eq + Hash>(f: &FunctionTable<T>) -> GramMatrix {
    f.gram()
}

pub(crate) fn check_domain(domain: &[BitString]) -> Result<()> {
    if let Some(first) = domain.first() {
        if let Some(bad) = domain.iter().find(|d| d.len() != first.len()) {
            return Err(Error::LengthMismatch {
                expected: first.len(),
                actual: bad.len(),
            });
        }
    }
    let mut sorted = domain.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateMember(w[0].to_string()));
    }
    Ok(())
}

/// Square real matrix indexed by domain strings.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    labels: Vec<BitString>,
    entries: Vec<f64>,
}

impl GramMatrix {
    pub fn new(labels: Vec<BitString>, entries: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(Self { labels, entries })
    }

    pub fn from_fn(labels: &[BitString], f: impl Fn(usize, usize) -> f64) -> Self {
        let n = labels.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self {
            labels: labels.to_vec(),
            entries,
        }
    }

    pub fn zeros(labels: &[BitString]) -> Self {
        Self::from_fn(labels, |_, _| 0.0)
    }

    /// `J`.
    pub fn all_ones(labels: &[BitString]) -> Self {
        Self::from_fn(labels, |_, _| 1.0)
    }

    pub fn identity(labels: &[BitString]) -> Self {
        Self::from_fn(labels, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BitString] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.labels.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.labels.len();
        &self.entries[i * n..(i + 1) * n]
    }

    fn zip(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.labels != other.labels {
            return Err(Error::DomainMismatch(
                "matrices indexed by different domains".into(),
            ));
        }
        Ok(Self {
            labels: self.labels.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Entrywise product `A ∘ B`.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            labels: self.labels.clone(),
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    /// `J − self`.
    pub fn complement(&self) -> Self {
        Self {
            labels: self.labels.clone(),
            entries: self.entries.iter().map(|a| 1.0 - a).collect(),
        }
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    /// Submatrix on the given row/column indices.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let labels: Vec<BitString> = idx.iter().map(|&i| self.labels[i]).collect();
        Self::from_fn(&labels, |a, b| self.get(idx[a], idx[b]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::bits::bits;

    fn domain(v: &[&str]) -> Vec<BitString> {
        v.iter().map(|s| bits(s)).collect()
    }

    #[test]
    fn identity_function_gives_identity() {
        let d = domain(&["00", "01", "10"]);
        let f = FunctionTable::from_fn(&d, |x| *x).unwrap();
        assert_eq!(f.gram(), GramMatrix::identity(&d));
    }

    #[test]
    fn constant_function_gives_all_ones() {
        let d = domain(&["00", "01", "10"]);
        let f = FunctionTable::from_fn(&d, |_| 7u8).unwrap();
        assert_eq!(gram_of_function(&f), GramMatrix::all_ones(&d));
    }

    #[test]
    fn find_first_one_on_equal_outputs() {
        let d = domain(&["10", "11"]);
        let f =
            FunctionTable::from_fn(&d, |x| x.iter().position(|b| b).map_or(3, |p| p + 1)).unwrap();
        assert_eq!(f.gram(), GramMatrix::all_ones(&d));
    }

    #[test]
    fn preimages_group_in_first_seen_order() {
        let d = domain(&["00", "01", "10", "11"]);
        let f = FunctionTable::from_fn(&d, |x| x.get(1)).unwrap();
        let groups = f.preimages();
        assert_eq!(groups, vec![(false, vec![0, 2]), (true, vec![1, 3])]);
    }

    #[test]
    fn arithmetic_requires_matching_labels() {
        let a = GramMatrix::all_ones(&domain(&["0", "1"]));
        let b = GramMatrix::all_ones(&domain(&["00", "01"]));
        assert!(a.sub(&b).is_err());
        let i = GramMatrix::identity(a.labels());
        let diff = a.sub(&i).unwrap();
        assert_eq!(diff.get(0, 0), 0.0);
        assert_eq!(diff.get(0, 1), 1.0);
        assert_eq!(i.complement(), diff);
    }

    #[test]
    fn table_rejects_duplicate_domain() {
        assert!(FunctionTable::new(domain(&["0", "0"]), vec![1, 2]).is_err());
        assert!(FunctionTable::new(domain(&["0", "1"]), vec![1]).is_err());
    }
}
