use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 20;

/// A contiguous block of qubits `offset..offset + width`, little-endian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Register {
    pub offset: usize,
    pub width: usize,
}

impl Register {
    pub fn new(offset: usize, width: usize) -> Self {
        Self { offset, width }
    }

    #[inline]
    pub fn mask(&self) -> usize {
        (1usize << self.width) - 1
    }

    #[inline]
    pub fn read(&self, basis: usize) -> usize {
        basis >> self.offset & self.mask()
    }

    pub fn contains(&self, qubit: usize) -> bool {
        (self.offset..self.offset + self.width).contains(&qubit)
    }
}

/// Dense state vector over `qubits` qubits; basis index bit `q` is qubit `q`.
///
/// Every operation re-measures the L2 norm and keeps the worst deviation
/// from 1 seen so far.
#[derive(Clone, Debug)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
    max_drift: f64,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(qubits: usize) -> Result<Self> {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        if qubits == 0 || qubits > MAX_QUBITS {
            return Err(Error::OutOfRange(format!(
                "{qubits} qubits not in 1..={MAX_QUBITS}"
            )));
        }
        if index >> qubits != 0 {
            return Err(Error::OutOfRange(format!(
                "basis state {index} on {qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            qubits,
            amps,
            max_drift: 0.0,
        })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let qubits = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << qubits || qubits == 0 || qubits > MAX_QUBITS {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        let mut s = Self {
            qubits,
            amps,
            max_drift: 0.0,
        };
        s.track();
        Ok(s)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|‖ψ‖ − 1|` observed after any operation.
    pub fn max_norm_drift(&self) -> f64 {
        self.max_drift
    }

    fn track(&mut self) {
        let drift = (self.norm() - 1.0).abs();
        if drift > self.max_drift {
            self.max_drift = drift;
        }
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.qubits {
            return Err(Error::OutOfRange(format!("qubit {q} of {}", self.qubits)));
        }
        Ok(())
    }

    pub(crate) fn check_register(&self, reg: Register) -> Result<()> {
        if reg.width == 0 || reg.offset + reg.width > self.qubits {
            return Err(Error::DimensionMismatch(format!(
                "register {}..{} on {} qubits",
                reg.offset,
                reg.offset + reg.width,
                self.qubits
            )));
        }
        Ok(())
    }

    pub fn apply_h(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1 << q;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for k in 0..self.amps.len() {
            if k & bit == 0 {
                let a = self.amps[k];
                let b = self.amps[k | bit];
                self.amps[k] = (a + b) * r;
                self.amps[k | bit] = (a - b) * r;
            }
        }
        self.track();
        Ok(())
    }

    pub fn apply_x(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1 << q;
        for k in 0..self.amps.len() {
            if k & bit == 0 {
                self.amps.swap(k, k | bit);
            }
        }
        self.track();
        Ok(())
    }

    pub fn apply_h_register(&mut self, reg: Register) -> Result<()> {
        self.check_register(reg)?;
        for q in reg.offset..reg.offset + reg.width {
            self.apply_h(q)?;
        }
        Ok(())
    }

    /// `|i,b⟩ ↦ |i, b ⊕ f(i)⟩` for a classical predicate on the register
    /// value. No oracle access; callers account for queries.
    pub(crate) fn apply_bit_flip_by(
        &mut self,
        reg: Register,
        target: usize,
        f: impl Fn(usize) -> bool,
    ) -> Result<()> {
        self.check_register(reg)?;
        self.check_qubit(target)?;
        if reg.contains(target) {
            return Err(Error::DimensionMismatch(
                "target qubit inside index register".into(),
            ));
        }
        let bit = 1 << target;
        for k in 0..self.amps.len() {
            if k & bit == 0 && f(reg.read(k)) {
                self.amps.swap(k, k | bit);
            }
        }
        self.track();
        Ok(())
    }

    /// Reflection `2|u⟩⟨u| − I` about the uniform superposition of `reg`,
    /// i.e. `H^⊗w (2|0⟩⟨0| − I) H^⊗w`, acting independently on every value
    /// of the other qubits.
    pub fn reflect_about_uniform(&mut self, reg: Register) -> Result<()> {
        self.check_register(reg)?;
        let span = 1usize << reg.width;
        let reg_bits = reg.mask() << reg.offset;
        for rest in 0..self.amps.len() {
            if rest & reg_bits != 0 {
                continue;
            }
            let mut mean = Complex64::new(0.0, 0.0);
            for i in 0..span {
                mean += self.amps[rest | i << reg.offset];
            }
            mean /= span as f64;
            for i in 0..span {
                let k = rest | i << reg.offset;
                self.amps[k] = mean * 2.0 - self.amps[k];
            }
        }
        self.track();
        Ok(())
    }

    /// Marginal probability of each value of `reg`.
    pub fn register_probabilities(&self, reg: Register) -> Result<Vec<f64>> {
        self.check_register(reg)?;
        let mut p = vec![0.0; 1 << reg.width];
        for (k, a) in self.amps.iter().enumerate() {
            p[reg.read(k)] += a.norm_sqr();
        }
        Ok(p)
    }

    /// Samples `reg` in the computational basis and collapses the state.
    pub fn measure_register<R: Rng + ?Sized>(
        &mut self,
        reg: Register,
        rng: &mut R,
    ) -> Result<usize> {
        let probs = self.register_probabilities(reg)?;
        let total: f64 = probs.iter().sum();
        let mut u = rng.gen::<f64>() * total;
        let mut outcome = probs.len() - 1;
        for (i, &p) in probs.iter().enumerate() {
            if u < p {
                outcome = i;
                break;
            }
            u -= p;
        }
        let keep = probs[outcome].sqrt();
        for (k, a) in self.amps.iter_mut().enumerate() {
            if reg.read(k) == outcome {
                *a /= keep;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        self.track();
        Ok(outcome)
    }
}
