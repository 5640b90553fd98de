use std::collections::BTreeMap;

use serde::Serialize;

use super::GateOp;
use crate::tensor::{apply_to_amplitudes, embed_apply, ComplexMatrix, Register, SizeCap, StateVector};
use crate::{Error, Result, C64};

/// Ordered gate list over a labelled register. Gates are applied first to
/// last.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit {
    register: Register,
    ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(register: Register) -> Self {
        Self { register, ops: Vec::new() }
    }

    /// Builds a circuit, validating every gate against the register.
    pub fn from_ops(register: Register, ops: impl IntoIterator<Item = GateOp>) -> Result<Self> {
        let mut c = Self::new(register);
        for op in ops {
            c.push(op)?;
        }
        Ok(c)
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate(self.register.d())?;
        self.register.indices_of(&op.wires())?;
        self.ops.push(op);
        Ok(())
    }

    /// Appends every gate of `other`, whose wires must exist here too.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.register.d() != self.register.d() {
            return Err(Error::RegisterMismatch);
        }
        for op in &other.ops {
            self.push(op.clone())?;
        }
        Ok(())
    }

    /// The inverse circuit: gates reversed and individually inverted.
    pub fn dagger(&self) -> Self {
        let d = self.register.d();
        Self { register: self.register.clone(), ops: self.ops.iter().rev().map(|g| g.dagger(d)).collect() }
    }

    /// Number of gates by arity (controls plus targets).
    pub fn arity_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for op in &self.ops {
            *counts.entry(op.arity()).or_insert(0) += 1;
        }
        counts
    }

    /// Applies the circuit to any state whose register contains the
    /// circuit's wire labels, leaving other wires alone.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.register().d() != self.register.d() {
            return Err(Error::RegisterMismatch);
        }
        let d = self.register.d();
        let mut out = state.clone();
        for op in &self.ops {
            out = embed_apply(&out, &op.matrix(d)?, &op.wires())?;
        }
        Ok(out)
    }
}

/// Dense unitary of `c` on its own register, built column by column.
pub fn circuit_to_unitary(c: &Circuit) -> Result<ComplexMatrix> {
    let reg = c.register();
    let (d, n) = (reg.d(), reg.len());
    let dim = SizeCap::default().operator_dim("circuit unitary", d, n)?;
    let gates =
        c.ops().iter().map(|op| Ok((op.matrix(d)?, reg.indices_of(&op.wires())?))).collect::<Result<Vec<_>>>()?;
    let mut m = ComplexMatrix::zeros(dim);
    let mut col = vec![C64::new(0.0, 0.0); dim];
    for j in 0..dim {
        col.fill(C64::new(0.0, 0.0));
        col[j] = C64::new(1.0, 0.0);
        for (g, wires) in &gates {
            apply_to_amplitudes(&mut col, d, n, g, wires)?;
        }
        for (r, z) in col.iter().enumerate() {
            m[(r, j)] = *z;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::random_state;
    use crate::weyl::fourier;

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(Register::anonymous(3, 2).unwrap());
        assert_eq!(circuit_to_unitary(&c).unwrap(), ComplexMatrix::identity(9));
    }

    #[test]
    fn single_fourier() {
        for d in 2..=5 {
            let c = Circuit::from_ops(Register::anonymous(d, 1).unwrap(), [GateOp::fourier("q0")]).unwrap();
            assert!(circuit_to_unitary(&c).unwrap().approx_eq(&fourier(d).unwrap(), 1e-15));
        }
    }

    #[test]
    fn unknown_wire_rejected() {
        let mut c = Circuit::new(Register::anonymous(2, 1).unwrap());
        assert!(matches!(c.push(GateOp::fourier("zz")), Err(Error::UnknownWire(_))));
        assert!(c.is_empty());
    }

    #[test]
    fn apply_matches_unitary_on_larger_register() {
        let d = 3;
        let c = Circuit::from_ops(
            Register::new(d, ["b", "c"]).unwrap(),
            [GateOp::fourier("b"), GateOp::x_power(d, 1, "c").power_controlled("b"), GateOp::swap("b", "c")],
        )
        .unwrap();
        let u = circuit_to_unitary(&c).unwrap();
        let state = random_state(Register::new(d, ["a", "b", "c"]).unwrap(), 3).unwrap();
        let via_apply = c.apply(&state).unwrap();
        let via_dense = embed_apply(&state, &u, &["b", "c"]).unwrap();
        let diff =
            via_apply.amplitudes().iter().zip(via_dense.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-13);
    }

    #[test]
    fn dagger_undoes_circuit() {
        let d = 4;
        let c = Circuit::from_ops(
            Register::anonymous(d, 2).unwrap(),
            [
                GateOp::fourier("q0"),
                GateOp::diagonal_phase(vec![0.3, -1.0, 2.0, 0.5], "q1"),
                GateOp::z_power(d, 3, "q1").level_controlled([("q0", 2)]),
            ],
        )
        .unwrap();
        let mut round = c.clone();
        round.append(&c.dagger()).unwrap();
        assert!(circuit_to_unitary(&round).unwrap().approx_eq(&ComplexMatrix::identity(16), 1e-13));
        assert_eq!(c.arity_counts(), BTreeMap::from([(1, 2), (2, 1)]));
    }
}
