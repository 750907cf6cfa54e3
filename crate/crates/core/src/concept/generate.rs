use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bits::BitString;
use super::class::ConceptClass;
use crate::error::{Error, Result};

/// Largest class any generator will materialize.
pub const MAX_CLASS_SIZE: u64 = 1 << 20;

/// Named concept-class families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassKind {
    /// All of `{0,1}^N`.
    Cube,
    /// Strings of Hamming weight exactly `k` (`k = 1` is the one-marked-item class).
    HammingWeight { k: usize },
    /// Strings of Hamming weight `k − 1` or `k`.
    HammingPair { k: usize },
    /// Arbitrary first `free_bits` bits, zeros elsewhere.
    Prefix { free_bits: usize },
    /// `size` distinct strings drawn uniformly.
    Random { size: usize },
}

/// Builds a class of the requested family. Only `Random` consumes `seed`.
pub fn generate_class(kind: ClassKind, n: usize, seed: u64) -> Result<ConceptClass> {
    BitString::zeros(n)?;
    let members = match kind {
        ClassKind::Cube => {
            if n > 20 {
                return Err(too_big(format!("2^{n}")));
            }
            (0..1u64 << n)
                .map(|w| BitString::from_word(n, w))
                .collect::<Result<Vec<_>>>()?
        }
        ClassKind::HammingWeight { k } => {
            if k > n {
                return Err(Error::InfeasibleClass(format!(
                    "weight {k} exceeds length {n}"
                )));
            }
            weight_class(n, k)?
        }
        ClassKind::HammingPair { k } => {
            if k == 0 || k > n {
                return Err(Error::InfeasibleClass(format!(
                    "weights {{k-1, k}} need 1 <= k <= {n}"
                )));
            }
            let mut m = weight_class(n, k - 1)?;
            m.extend(weight_class(n, k)?);
            if m.len() as u64 > MAX_CLASS_SIZE {
                return Err(too_big(m.len().to_string()));
            }
            m
        }
        ClassKind::Prefix { free_bits } => {
            if free_bits > n || free_bits > 20 {
                return Err(Error::InfeasibleClass(format!(
                    "{free_bits} free bits in a {n}-bit string"
                )));
            }
            (0..1u64 << free_bits)
                .map(|w| BitString::from_word(n, w << (n - free_bits)))
                .collect::<Result<Vec<_>>>()?
        }
        ClassKind::Random { size } => random_members(n, size, seed)?,
    };
    ConceptClass::new(n, members)
}

fn too_big(what: String) -> Error {
    Error::InfeasibleClass(format!("class of size {what} exceeds {MAX_CLASS_SIZE}"))
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn weight_class(n: usize, k: usize) -> Result<Vec<BitString>> {
    if binomial_u128(n, k) > MAX_CLASS_SIZE as u128 {
        return Err(too_big(format!("C({n},{k})")));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<BitString>) {
        if chosen.len() == k {
            let mut b = BitString::zeros(n).expect("length checked");
            for &p in chosen.iter() {
                b.set(p, true);
            }
            out.push(b);
            return;
        }
        for p in start..n {
            if n - p < k - chosen.len() {
                break;
            }
            chosen.push(p);
            rec(n, k, p + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(n, k, 0, &mut chosen, &mut out);
    Ok(out)
}

fn random_members(n: usize, size: usize, seed: u64) -> Result<Vec<BitString>> {
    let available: u128 = 1u128 << n;
    if size == 0 || size as u128 > available || size as u64 > MAX_CLASS_SIZE {
        return Err(Error::InfeasibleClass(format!(
            "{size} distinct strings of length {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // Dense requests: shuffle the whole cube; sparse ones: rejection sample.
    if n <= 20 && size as u128 * 2 > available {
        let mut all: Vec<u64> = (0..1u64 << n).collect();
        all.shuffle(&mut rng);
        all.truncate(size);
        return all
            .into_iter()
            .map(|w| BitString::from_word(n, w))
            .collect();
    }
    let mut seen = HashSet::with_capacity(size);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let w = rng.gen::<u64>() & mask;
        if seen.insert(w) {
            out.push(BitString::from_word(n, w)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(c: &ConceptClass) -> Vec<String> {
        c.members().iter().map(|b| b.to_string()).collect()
    }

    #[test]
    fn cube_n2() {
        let c = generate_class(ClassKind::Cube, 2, 0).unwrap();
        assert_eq!(strs(&c), ["00", "01", "10", "11"]);
    }

    #[test]
    fn hamming_one_n3() {
        let c = generate_class(ClassKind::HammingWeight { k: 1 }, 3, 0).unwrap();
        assert_eq!(strs(&c), ["001", "010", "100"]);
    }

    #[test]
    fn prefix_n4_two_free() {
        let c = generate_class(ClassKind::Prefix { free_bits: 2 }, 4, 0).unwrap();
        assert_eq!(strs(&c), ["0000", "0100", "1000", "1100"]);
    }

    #[test]
    fn hamming_pair_sizes() {
        let c = generate_class(ClassKind::HammingPair { k: 2 }, 4, 0).unwrap();
        assert_eq!(c.len(), 4 + 6);
        assert!(c
            .members()
            .iter()
            .all(|m| m.weight() == 1 || m.weight() == 2));
    }

    #[test]
    fn random_is_deterministic_and_distinct() {
        let a = generate_class(ClassKind::Random { size: 20 }, 8, 7).unwrap();
        let b = generate_class(ClassKind::Random { size: 20 }, 8, 7).unwrap();
        let c = generate_class(ClassKind::Random { size: 20 }, 8, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 20);
        let dense = generate_class(ClassKind::Random { size: 15 }, 4, 1).unwrap();
        assert_eq!(dense.len(), 15);
    }

    #[test]
    fn infeasible_requests() {
        assert!(generate_class(ClassKind::Random { size: 5 }, 2, 0).is_err());
        assert!(generate_class(ClassKind::HammingWeight { k: 4 }, 3, 0).is_err());
        assert!(generate_class(ClassKind::Prefix { free_bits: 5 }, 4, 0).is_err());
        assert!(generate_class(ClassKind::HammingWeight { k: 32 }, 64, 0).is_err());
        assert!(generate_class(ClassKind::Cube, 0, 0).is_err());
    }
}
