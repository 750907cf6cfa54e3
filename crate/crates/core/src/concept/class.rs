use serde::{Deserialize, Serialize};

use super::bits::BitString;
use crate::error::{Error, Result};

/// A promise set `C ⊆ {0,1}^n`, members kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClassFile", into = "ClassFile")]
pub struct ConceptClass {
    n: usize,
    members: Vec<BitString>,
}

/// On-disk form: `{"n": N, "members": ["0101", ...]}`.
#[derive(Serialize, Deserialize)]
struct ClassFile {
    n: usize,
    members: Vec<BitString>,
}

impl TryFrom<ClassFile> for ConceptClass {
    type Error = Error;

    fn try_from(file: ClassFile) -> Result<Self> {
        ConceptClass::new(file.n, file.members)
    }
}

impl From<ConceptClass> for ClassFile {
    fn from(c: ConceptClass) -> Self {
        ClassFile {
            n: c.n,
            members: c.members,
        }
    }
}

impl ConceptClass {
    /// Validates and canonically sorts `members`.
    pub fn new(n: usize, mut members: Vec<BitString>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(bad) = members.iter().find(|m| m.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: bad.len(),
            });
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(w[0].to_string()));
        }
        Ok(Self { n, members })
    }

    /// Like [`ConceptClass::new`] but silently drops duplicates.
    pub fn from_unsorted(n: usize, mut members: Vec<BitString>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        Self::new(n, members)
    }

    pub fn parse(n: usize, members: &[&str]) -> Result<Self> {
        let members = members
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<BitString>>>()?;
        Self::new(n, members)
    }

    /// String length `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Class size `M`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[BitString] {
        &self.members
    }

    pub fn contains(&self, x: &BitString) -> bool {
        self.index_of(x).is_some()
    }

    pub fn index_of(&self, x: &BitString) -> Option<usize> {
        self.members.binary_search(x).ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("class serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Bitwise majority of `set`, ties resolved to 1.
pub fn majority_string(set: &[BitString]) -> Result<BitString> {
    let first = set.first().ok_or(Error::EmptySet)?;
    let n = first.len();
    let mut ones = vec![0usize; n];
    for y in set {
        if y.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: y.len(),
            });
        }
        for (i, c) in ones.iter_mut().enumerate() {
            *c += y.get(i) as usize;
        }
    }
    let mut out = BitString::zeros(n)?;
    for (i, &c) in ones.iter().enumerate() {
        out.set(i, 2 * c >= set.len());
    }
    Ok(out)
}

/// Packed mask with a 1 at every listed position.
pub(crate) fn position_mask(n: usize, positions: &[usize]) -> u64 {
    positions.iter().fold(0u64, |m, &p| m | 1u64 << (n - 1 - p))
}

pub(crate) fn check_order(n: usize, order: &[usize]) -> Result<()> {
    let mut seen = 0u64;
    for &p in order {
        if p >= n {
            return Err(Error::InvalidPermutation(format!(
                "position {p} outside [0, {n})"
            )));
        }
        let m = 1u64 << p;
        if seen & m != 0 {
            return Err(Error::InvalidPermutation(format!("position {p} repeated")));
        }
        seen |= m;
    }
    Ok(())
}

/// Keeps the strings consistent with the outcome of a first-disagreement
/// search along `order` against reference `s`.
///
/// `found = Some(p)` (1-based rank into `order`) keeps strings agreeing with
/// `s` on `order[..p-1]` and differing at `order[p-1]`; `None` keeps strings
/// agreeing with `s` on every position of `order`.
pub fn filter_by_disagreement(
    set: &[BitString],
    order: &[usize],
    s: &BitString,
    found: Option<usize>,
) -> Result<Vec<BitString>> {
    let n = s.len();
    check_order(n, order)?;
    if let Some(y) = set.iter().find(|y| y.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: y.len(),
        });
    }
    let (agree, differ) = match found {
        Some(p) => {
            if p == 0 || p > order.len() {
                return Err(Error::OutOfRange(format!(
                    "disagreement rank {p} outside [1, {}]",
                    order.len()
                )));
            }
            (
                position_mask(n, &order[..p - 1]),
                1u64 << (n - 1 - order[p - 1]),
            )
        }
        None => (position_mask(n, order), 0),
    };
    Ok(set
        .iter()
        .filter(|y| {
            let diff = y.word() ^ s.word();
            diff & agree == 0 && diff & differ == differ
        })
        .copied()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::bits::bits;

    fn strs(v: &[BitString]) -> Vec<String> {
        v.iter().map(|b| b.to_string()).collect()
    }

    #[test]
    fn majority_examples() {
        assert_eq!(majority_string(&[bits("0"), bits("1")]).unwrap(), bits("1"));
        assert_eq!(
            majority_string(&[bits("00"), bits("01"), bits("11")]).unwrap(),
            bits("01")
        );
        assert_eq!(majority_string(&[bits("0110")]).unwrap(), bits("0110"));
        assert_eq!(majority_string(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn filter_examples() {
        let s3 = [bits("100"), bits("010"), bits("001")];
        let id3 = [0, 1, 2];
        let found = filter_by_disagreement(&s3, &id3, &bits("010"), Some(1)).unwrap();
        assert_eq!(strs(&found), ["100"]);
        let none = filter_by_disagreement(&s3, &id3, &bits("010"), None).unwrap();
        assert_eq!(strs(&none), ["010"]);

        let cube = [bits("00"), bits("01"), bits("10"), bits("11")];
        let found = filter_by_disagreement(&cube, &[0, 1], &bits("11"), Some(2)).unwrap();
        assert_eq!(strs(&found), ["10"]);
    }

    #[test]
    fn filter_rejects_bad_rank_and_order() {
        let s = [bits("10")];
        assert!(filter_by_disagreement(&s, &[0, 1], &bits("10"), Some(3)).is_err());
        assert!(filter_by_disagreement(&s, &[0, 0], &bits("10"), None).is_err());
        assert!(filter_by_disagreement(&s, &[0, 2], &bits("10"), None).is_err());
    }

    #[test]
    fn class_validation() {
        assert_eq!(ConceptClass::new(2, vec![]), Err(Error::EmptySet));
        assert!(matches!(
            ConceptClass::parse(2, &["00", "00"]),
            Err(Error::DuplicateMember(_))
        ));
        assert!(matches!(
            ConceptClass::parse(2, &["00", "001"]),
            Err(Error::LengthMismatch { .. })
        ));
        let c = ConceptClass::parse(2, &["11", "00", "10"]).unwrap();
        assert_eq!(strs(c.members()), ["00", "10", "11"]);
        assert!(c.contains(&bits("10")));
        assert!(!c.contains(&bits("01")));
    }

    #[test]
    fn json_format() {
        let c = ConceptClass::parse(3, &["100", "010", "001"]).unwrap();
        assert_eq!(c.to_json(), r#"{"n":3,"members":["001","010","100"]}"#);
        let back = ConceptClass::from_json(r#"{"n":3,"members":["100","001","010"]}"#).unwrap();
        assert_eq!(back, c);
        assert!(ConceptClass::from_json(r#"{"n":2,"members":["100"]}"#).is_err());
    }
}
