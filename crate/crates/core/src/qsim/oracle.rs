use crate::concept::{check_order, BitString};
use crate::error::{Error, Result};

use super::state::{Register, StateVector};

/// Number of oracle applications made so far. Only ever increases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryCounter {
    count: u64,
}

impl QueryCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    #[inline]
    fn tick(&mut self) {
        self.count += 1;
    }
}

/// `O_x : |i, b⟩ ↦ |i, b ⊕ x_i⟩` on `index` and `target`; register values
/// `i ≥ N` are left untouched.
pub fn apply_oracle(
    psi: &mut StateVector,
    x: &BitString,
    index: Register,
    target: usize,
    counter: &mut QueryCounter,
) -> Result<()> {
    psi.check_register(index)?;
    if index.width < usize::BITS as usize && (1usize << index.width) < x.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit index register cannot address {} bits",
            index.width,
            x.len()
        )));
    }
    psi.apply_bit_flip_by(index, target, |i| i < x.len() && x.get(i))?;
    counter.tick();
    Ok(())
}

/// Oracle access to a hidden string, viewed through a known order and a
/// known reference string.
///
/// Register value `t` stands for position `order[t]`; the marked predicate
/// is `x[order[t]] ≠ s[order[t]]`. One marking call is a single `O_x`
/// application conjugated by query-free relabelling and a classical XOR
/// with `s`, so it costs exactly one query, as does each classical bit read.
pub struct DisagreementOracle<'a> {
    x: &'a BitString,
    s: &'a BitString,
    order: &'a [usize],
    counter: QueryCounter,
    max_drift: f64,
}

impl<'a> DisagreementOracle<'a> {
    pub fn new(x: &'a BitString, s: &'a BitString, order: &'a [usize]) -> Result<Self> {
        if x.len() != s.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                actual: s.len(),
            });
        }
        check_order(x.len(), order)?;
        Ok(Self {
            x,
            s,
            order,
            counter: QueryCounter::new(),
            max_drift: 0.0,
        })
    }

    /// Effective search width `L`.
    pub fn width(&self) -> usize {
        self.order.len()
    }

    pub fn queries(&self) -> u64 {
        self.counter.count()
    }

    pub fn max_norm_drift(&self) -> f64 {
        self.max_drift
    }

    pub(crate) fn note_drift(&mut self, psi: &StateVector) {
        self.max_drift = self.max_drift.max(psi.max_norm_drift());
    }

    /// Marks ranks `t < window` that disagree; ranks at or beyond the window
    /// are never marked.
    pub fn apply_marking(
        &mut self,
        psi: &mut StateVector,
        index: Register,
        target: usize,
        window: usize,
    ) -> Result<()> {
        let (x, s, order) = (self.x, self.s, self.order);
        let window = window.min(order.len());
        psi.apply_bit_flip_by(index, target, |t| {
            t < window && x.get(order[t]) != s.get(order[t])
        })?;
        self.counter.tick();
        Ok(())
    }

    /// Classical read of rank `t` (0-based): does it disagree?
    pub fn check(&mut self, t: usize) -> bool {
        self.counter.tick();
        let j = self.order[t];
        self.x.get(j) != self.s.get(j)
    }
}
