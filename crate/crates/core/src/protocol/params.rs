use serde::{Deserialize, Serialize};

use crate::tensor::{Register, SizeCap};
use crate::weyl::check_dim;
use crate::{Error, Result};

/// Dimension `d`, party count `n` and the party that receives the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolParams {
    pub d: usize,
    pub n: usize,
    /// 1-based index of the party `S_i` that decrypts.
    pub target_party: usize,
    pub cap: SizeCap,
}

impl ProtocolParams {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        Self::with_cap(d, n, SizeCap::default())
    }

    pub fn with_cap(d: usize, n: usize, cap: SizeCap) -> Result<Self> {
        check_dim(d)?;
        if n == 0 {
            return Err(Error::InvalidParameter("party count n must be at least 1".into()));
        }
        cap.operator_dim("protocol operator on n+1 wires", d, n + 1)?;
        Ok(Self { d, n, target_party: 1, cap })
    }

    pub fn with_target(mut self, target_party: usize) -> Result<Self> {
        if target_party == 0 || target_party > self.n {
            return Err(Error::InvalidParameter(format!("target party {target_party} out of range 1..={}", self.n)));
        }
        self.target_party = target_party;
        Ok(self)
    }

    /// `d^(n+1)`, the dimension of every protocol operator.
    pub fn operator_dim(&self) -> usize {
        self.d.pow(self.n as u32 + 1)
    }

    /// Full register `[A, S1..Sn, N1..Nn]`.
    pub fn register(&self) -> Result<Register> {
        Register::canonical(self.d, self.n)
    }

    /// Wires the encryption unitary acts on: `A, S1..Sn`.
    pub fn encryption_wires(&self) -> Vec<String> {
        std::iter::once("A".to_string()).chain((1..=self.n).map(|i| format!("S{i}"))).collect()
    }

    /// Wires the decryption unitary acts on: `S_t, N_t`, then the remaining
    /// `N_j` in increasing order.
    pub fn decryption_wires(&self) -> Vec<String> {
        let t = self.target_party;
        [format!("S{t}"), format!("N{t}")]
            .into_iter()
            .chain((1..=self.n).filter(|&j| j != t).map(|j| format!("N{j}")))
            .collect()
    }
}
