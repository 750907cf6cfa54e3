//! Bit strings, concept classes, majority strings and Gram matrices.

mod bits;
mod class;
mod generate;
mod gram;

pub use bits::{bits, BitString, MAX_BITS};
pub(crate) use class::check_order;
pub use class::{filter_by_disagreement, majority_string, ConceptClass};
pub use generate::{generate_class, ClassKind, MAX_CLASS_SIZE};
pub use gram::{gram_of_function, FunctionTable, GramMatrix};

/// Every string of length `n`, in lexicographic order.
pub fn cube(n: usize) -> Vec<BitString> {
    assert!(n <= 24, "cube of dimension {n} is too large to enumerate");
    (0..1u64 << n)
        .map(|w| BitString::from_word(n, w).expect("fits"))
        .collect()
}

/// The members of `universe` selected by the bits of `mask`.
pub fn subset_by_mask(universe: &[BitString], mask: u64) -> Vec<BitString> {
    universe
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, b)| *b)
        .collect()
}
