use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{ComplexMatrix, DensityMatrix, Register};
use crate::{Error, Result, C64, DEFAULT_TOL};

/// Normalized amplitude vector over a register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: Register,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Builds a state, checking length, finiteness and unit norm (at the
    /// default tolerance).
    pub fn new(register: Register, amplitudes: Vec<C64>) -> Result<Self> {
        let state = Self::unchecked(register, amplitudes)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(register: Register, mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        amplitudes.iter_mut().for_each(|z| *z /= norm);
        Self::new(register, amplitudes)
    }

    fn unchecked(register: Register, amplitudes: Vec<C64>) -> Result<Self> {
        let expected =
            register.hilbert_dim().ok_or(Error::SizeCap { what: "state vector", dim: usize::MAX, cap: usize::MAX })?;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: amplitudes.len() });
        }
        if amplitudes.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidParameter("state has non-finite amplitudes".into()));
        }
        Ok(Self { register, amplitudes })
    }

    /// Computational basis ket with one digit per wire.
    pub fn basis(register: Register, digits: &[usize]) -> Result<Self> {
        if digits.len() != register.len() {
            return Err(Error::DimensionMismatch { expected: register.len(), found: digits.len() });
        }
        let d = register.d();
        if let Some(&bad) = digits.iter().find(|&&x| x >= d) {
            return Err(Error::InvalidParameter(format!("basis digit {bad} out of range for d = {d}")));
        }
        let index = digits.iter().fold(0, |acc, &x| acc * d + x);
        let mut amps = vec![C64::new(0.0, 0.0); register.hilbert_dim().unwrap_or(0)];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(register, amps)
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Tensor product; the other state's wires follow this state's wires.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.register.d() != other.register.d() {
            return Err(Error::RegisterMismatch);
        }
        let labels = self.register.wires().iter().chain(other.register.wires()).cloned();
        let register = Register::new(self.register.d(), labels)?;
        let amps = self.amplitudes.iter().flat_map(|a| other.amplitudes.iter().map(move |b| a * b)).collect();
        Self::unchecked(register, amps)
    }

    /// Same amplitudes under new wire labels.
    pub fn relabel<S: Into<String>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let register = Register::new(self.register.d(), labels)?;
        if register.len() != self.register.len() {
            return Err(Error::DimensionMismatch { expected: self.register.len(), found: register.len() });
        }
        Ok(Self { register, amplitudes: self.amplitudes.clone() })
    }

    /// Same state expressed over a permuted wire order.
    pub fn reorder<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        if order.len() != self.register.len() {
            return Err(Error::DimensionMismatch { expected: self.register.len(), found: order.len() });
        }
        let src = self.register.indices_of(order)?;
        let register = self.register.select(&src)?;
        let d = self.register.d();
        let n = self.register.len();
        let mut amps = vec![C64::new(0.0, 0.0); self.amplitudes.len()];
        let mut digits = vec![0usize; n];
        for (old_index, &z) in self.amplitudes.iter().enumerate() {
            let mut rem = old_index;
            for w in (0..n).rev() {
                digits[w] = rem % d;
                rem /= d;
            }
            let new_index = src.iter().fold(0, |acc, &w| acc * d + digits[w]);
            amps[new_index] = z;
        }
        Self::unchecked(register, amps)
    }

    /// Reduced density matrix on `keep` (in the given order), tracing out
    /// every other wire. Works directly on amplitudes so the full density
    /// matrix is never formed.
    pub fn reduced_density<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        let keep_idx = self.register.indices_of(keep)?;
        let sub = self.register.select(&keep_idx)?;
        let d = self.register.d();
        let n = self.register.len();
        let rest: Vec<usize> = (0..n).filter(|w| !keep_idx.contains(w)).collect();
        let keep_offsets = offsets(d, n, &keep_idx);
        let rest_offsets = offsets(d, n, &rest);
        let dim = keep_offsets.len();
        let mut rho = ComplexMatrix::zeros(dim);
        for &base in &rest_offsets {
            for (r, &ro) in keep_offsets.iter().enumerate() {
                let a = self.amplitudes[base + ro];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for (c, &co) in keep_offsets.iter().enumerate() {
                    rho[(r, c)] += a * self.amplitudes[base + co].conj();
                }
            }
        }
        Ok(DensityMatrix::from_parts(sub, rho))
    }

    /// `|ψ⟩⟨ψ|` over the full register.
    pub fn density(&self) -> DensityMatrix {
        let rho = ComplexMatrix::outer(&self.amplitudes, &self.amplitudes).expect("same vector");
        DensityMatrix::from_parts(self.register.clone(), rho)
    }
}

/// Global offsets of every digit combination on `wires` (big-endian in the
/// order given), for a register of `n` wires of dimension `d`.
pub(crate) fn offsets(d: usize, n: usize, wires: &[usize]) -> Vec<usize> {
    let strides: Vec<usize> = wires.iter().map(|&w| d.pow((n - 1 - w) as u32)).collect();
    let count = d.pow(wires.len() as u32);
    (0..count)
        .map(|mut loc| {
            let mut off = 0;
            for s in strides.iter().rev() {
                off += (loc % d) * s;
                loc /= d;
            }
            off
        })
        .collect()
}

/// Applies `op` to the listed wires of a raw amplitude vector of `n` wires,
/// as if `op` were tensored with the identity on every other wire.
pub fn apply_to_amplitudes(amps: &mut [C64], d: usize, n: usize, op: &ComplexMatrix, wires: &[usize]) -> Result<()> {
    if let Some(&w) = wires.iter().find(|&&w| w >= n) {
        return Err(Error::WireIndex { index: w, len: n });
    }
    for (i, w) in wires.iter().enumerate() {
        if wires[..i].contains(w) {
            return Err(Error::DuplicateWire(format!("#{w}")));
        }
    }
    let expected = d.pow(wires.len() as u32);
    if op.dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: op.dim() });
    }
    if amps.len() != d.pow(n as u32) {
        return Err(Error::DimensionMismatch { expected: d.pow(n as u32), found: amps.len() });
    }
    let rest: Vec<usize> = (0..n).filter(|w| !wires.contains(w)).collect();
    let local = offsets(d, n, wires);
    let bases = offsets(d, n, &rest);
    let mut input = vec![C64::new(0.0, 0.0); local.len()];
    for base in bases {
        for (slot, &off) in input.iter_mut().zip(&local) {
            *slot = amps[base + off];
        }
        for (r, &off) in local.iter().enumerate() {
            amps[base + off] = op.row(r).iter().zip(&input).map(|(a, b)| a * b).sum();
        }
    }
    Ok(())
}

/// Applies `op` to the named wires of `state`. The norm is preserved when
/// `op` is unitary.
pub fn embed_apply<S: AsRef<str>>(state: &StateVector, op: &ComplexMatrix, wires: &[S]) -> Result<StateVector> {
    let idx = state.register.indices_of(wires)?;
    let mut amps = state.amplitudes.clone();
    apply_to_amplitudes(&mut amps, state.register.d(), state.register.len(), op, &idx)?;
    StateVector::unchecked(state.register.clone(), amps)
}

/// Inner product `⟨a|b⟩`.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<C64> {
    if a.register != b.register {
        return Err(Error::RegisterMismatch);
    }
    Ok(a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| x.conj() * y).sum())
}

/// Seeded random state: complex-normal amplitudes rescaled to unit norm.
pub fn random_state(register: Register, seed: u64) -> Result<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = register.hilbert_dim().ok_or(Error::InvalidParameter("register too large".into()))?;
    let amps = (0..len).map(|_| C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))).collect();
    StateVector::normalized(register, amps)
}
