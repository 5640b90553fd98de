use serde::{Deserialize, Serialize};

use super::ProtocolParams;
use crate::cazac::{chu, coeff_grid};
use crate::tensor::{kron_all, ComplexMatrix, SizeCap};
use crate::weyl::{check_dim, weyl_displacement, x_power, z_power, WeylIndex};
use crate::{Error, Result, C64, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Z,
}

/// `P_X = X_d^{⊗(n+1)}` or `P_Z = Z_d^{⊗(n+1)}` on `(A, S1..Sn)`.
pub fn pauli_product(axis: Axis, d: usize, n: usize) -> Result<ComplexMatrix> {
    pauli_product_power(axis, d, n, 1, SizeCap::default())
}

fn pauli_product_power(axis: Axis, d: usize, n: usize, k: i64, cap: SizeCap) -> Result<ComplexMatrix> {
    check_dim(d)?;
    cap.operator_dim("Pauli product", d, n + 1)?;
    let single = match axis {
        Axis::X => x_power(d, k)?,
        Axis::Z => z_power(d, k)?,
    };
    kron_all(std::iter::repeat_n(&single, n + 1))
}

/// `V(P) = d^{-1/2} Σ_k c(k) P^k` with `c` the Chu sequence.
///
/// `p` must be unitary with `p^d = I`; otherwise the sum is not unitary and a
/// structure error is returned.
pub fn v_of_p(p: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    let c = chu(d)?.values;
    let report = p.is_unitary(DEFAULT_TOL);
    if !report.unitary {
        return Err(Error::NotUnitary(report.max_deviation));
    }
    let dim = p.dim();
    let mut sum = ComplexMatrix::zeros(dim);
    let mut power = ComplexMatrix::identity(dim);
    for ck in &c {
        sum = &sum + &power.scale(*ck);
        power = &power * p;
    }
    // `power` now holds p^d.
    let dev = power.max_abs_diff(&ComplexMatrix::identity(dim));
    if dev > DEFAULT_TOL {
        return Err(Error::Structure(format!("P^d differs from the identity by {dev:e}")));
    }
    Ok(sum.scale(C64::new(1.0 / (d as f64).sqrt(), 0.0)))
}

/// `exp(-iθP)`, the exponential generalization. Unitary only when `p` is
/// hermitian (for Weyl operators that means `d = 2`).
pub fn exp_generalization(p: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    p.scale(C64::new(0.0, -theta)).expm()
}

/// `U_enc = V(P_X) · V(P_Z)` on `(A, S1..Sn)`.
pub fn u_enc(params: &ProtocolParams) -> Result<ComplexMatrix> {
    let (d, n) = (params.d, params.n);
    let vx = v_of_p(&pauli_product_power(Axis::X, d, n, 1, params.cap)?, d)?;
    let vz = v_of_p(&pauli_product_power(Axis::Z, d, n, 1, params.cap)?, d)?;
    Ok(&vx * &vz)
}

/// `(1/d) Σ_{k,l} c_kl (X^k Z^l)^{⊗(n+1)}`: the encryption unitary expanded as
/// a double sum of collective displacements.
pub fn u_enc_double_sum(params: &ProtocolParams) -> Result<ComplexMatrix> {
    let (d, n) = (params.d, params.n);
    let grid = coeff_grid(d)?;
    let mut sum = ComplexMatrix::zeros(params.operator_dim());
    for idx in WeylIndex::all(d)? {
        let w = weyl_displacement(idx);
        let term = kron_all(std::iter::repeat_n(&w, n + 1))?;
        sum = &sum + &term.scale(grid.get(idx.k(), idx.l()));
    }
    Ok(sum.scale(C64::new(1.0 / d as f64, 0.0)))
}
