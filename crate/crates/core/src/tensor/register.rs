use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Ordered set of labelled wires sharing one qudit dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    d: usize,
    wires: Vec<String>,
}

impl Register {
    pub fn new<S: Into<String>>(d: usize, wires: impl IntoIterator<Item = S>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let wires: Vec<String> = wires.into_iter().map(Into::into).collect();
        for (i, w) in wires.iter().enumerate() {
            if wires[..i].contains(w) {
                return Err(Error::DuplicateWire(w.clone()));
            }
        }
        Ok(Self { d, wires })
    }

    /// Canonical protocol layout `[A, S1..Sn, N1..Nn]`.
    pub fn canonical(d: usize, n: usize) -> Result<Self> {
        let labels = std::iter::once("A".to_string())
            .chain((1..=n).map(|i| format!("S{i}")))
            .chain((1..=n).map(|i| format!("N{i}")));
        Self::new(d, labels)
    }

    /// Register of `count` wires labelled `q0, q1, ...`.
    pub fn anonymous(d: usize, count: usize) -> Result<Self> {
        Self::new(d, (0..count).map(|i| format!("q{i}")))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.wires.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wires.is_empty()
    }

    pub fn wires(&self) -> &[String] {
        &self.wires
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.wires.iter().position(|w| w == label).ok_or_else(|| Error::UnknownWire(label.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    /// Hilbert-space dimension `d^len`, or `None` on overflow.
    pub fn hilbert_dim(&self) -> Option<usize> {
        self.d.checked_pow(self.wires.len() as u32)
    }

    /// Sub-register made of the given wire indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let labels = indices
            .iter()
            .map(|&i| self.wires.get(i).cloned().ok_or(Error::WireIndex { index: i, len: self.len() }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.d, labels)
    }
}

/// Limits on dense objects. Defaults: operators up to 4096x4096, state
/// vectors up to 2^22 amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCap {
    pub max_operator_dim: usize,
    pub max_state_len: usize,
}

impl Default for SizeCap {
    fn default() -> Self {
        Self { max_operator_dim: 4096, max_state_len: 1 << 22 }
    }
}

impl SizeCap {
    pub fn check_operator(&self, what: &'static str, dim: usize) -> Result<()> {
        if dim > self.max_operator_dim {
            return Err(Error::SizeCap { what, dim, cap: self.max_operator_dim });
        }
        Ok(())
    }

    pub fn check_state(&self, what: &'static str, len: usize) -> Result<()> {
        if len > self.max_state_len {
            return Err(Error::SizeCap { what, dim: len, cap: self.max_state_len });
        }
        Ok(())
    }

    /// Operator dimension `d^wires`, checked against the cap.
    pub fn operator_dim(&self, what: &'static str, d: usize, wires: usize) -> Result<usize> {
        let dim = d.checked_pow(wires as u32).unwrap_or(usize::MAX);
        self.check_operator(what, dim)?;
        Ok(dim)
    }

    pub fn state_len(&self, what: &'static str, d: usize, wires: usize) -> Result<usize> {
        let len = d.checked_pow(wires as u32).unwrap_or(usize::MAX);
        self.check_state(what, len)?;
        Ok(len)
    }
}
