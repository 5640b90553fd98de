use super::ProtocolParams;
use crate::cazac::coeff_grid;
use crate::tensor::{kron, kron_all, ComplexMatrix};
use crate::weyl::{bell_projector, check_dim, fourier, swap_gate, x_power, z_power, WeylIndex};
use crate::{Result, C64};

/// The two-qudit gate `C` on `(S_t, N_t)`: index reversal `F²` on `N_t`,
/// then `X^{2c}` on `S_t` controlled by `N_t = c`.
///
/// Applying `F²` first is what maps
/// `(1/d) Σ_{m,n} X^m Z^n|ψ⟩ ⊗ (X^m Z^n ⊗ I)|Φ_d⟩` onto `|Φ_d⟩|ψ⟩` for every
/// `d`; with the opposite order the identity only survives for `d ∈ {2, 4}`.
pub fn c_gate(d: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let mut ladder = ComplexMatrix::zeros(d * d);
    for c in 0..d {
        let x2c = x_power(d, 2 * c as i64)?;
        let mut proj = ComplexMatrix::zeros(d);
        proj[(c, c)] = C64::new(1.0, 0.0);
        ladder = &ladder + &kron(&x2c, &proj)?;
    }
    let f2 = fourier(d)?.pow(2);
    let reversal = kron(&ComplexMatrix::identity(d), &f2)?;
    Ok(&ladder * &reversal)
}

/// `⊗_{j≥2} X^k Z^{-l}` on the `n - 1` non-target `N_j` wires (a 1x1 identity
/// when `n = 1`).
pub fn weyl_tail(d: usize, n: usize, k: usize, l: usize) -> Result<ComplexMatrix> {
    if n <= 1 {
        return Ok(ComplexMatrix::identity(1));
    }
    let w = &x_power(d, k as i64)? * &z_power(d, -(l as i64))?;
    kron_all(std::iter::repeat_n(&w, n - 1))
}

/// `A = Σ_{k,l} conj(c_kl) Π_kl ⊗ U_kl`, the Bell-projector sum at the heart
/// of the decryption unitary. `conj(c_kl) = c_kl^{-1}` since `|c_kl| = 1`.
pub fn decryption_core(params: &ProtocolParams) -> Result<ComplexMatrix> {
    let (d, n) = (params.d, params.n);
    let grid = coeff_grid(d)?;
    let mut a = ComplexMatrix::zeros(params.operator_dim());
    for idx in WeylIndex::all(d)? {
        let term = kron(&bell_projector(idx), &weyl_tail(d, n, idx.k(), idx.l())?)?;
        a = &a + &term.scale(grid.get(idx.k(), idx.l()).conj());
    }
    Ok(a)
}

fn swap_c_prefactor(params: &ProtocolParams) -> Result<ComplexMatrix> {
    let d = params.d;
    let sc = &swap_gate(d)? * &c_gate(d)?;
    kron(&sc, &ComplexMatrix::identity(d.pow(params.n as u32 - 1)))
}

/// `U_dec = (SWAP·C ⊗ I) · A` on `(S_t, N_t, N_j≠t...)`.
pub fn u_dec_dense(params: &ProtocolParams) -> Result<ComplexMatrix> {
    Ok(&swap_c_prefactor(params)? * &decryption_core(params)?)
}

/// The decryption unitary summed term by term,
/// `Σ_{k,l} c_kl^{-1} (SWAP·C·Π_kl) ⊗ U_kl`, without factoring the prefactor
/// out of the sum.
pub fn u_dec_literal(params: &ProtocolParams) -> Result<ComplexMatrix> {
    let (d, n) = (params.d, params.n);
    let grid = coeff_grid(d)?;
    let sc = &swap_gate(d)? * &c_gate(d)?;
    let mut sum = ComplexMatrix::zeros(params.operator_dim());
    for idx in WeylIndex::all(d)? {
        let inv = C64::new(1.0, 0.0) / grid.get(idx.k(), idx.l());
        let term = kron(&(&sc * &bell_projector(idx)), &weyl_tail(d, n, idx.k(), idx.l())?)?;
        sum = &sum + &term.scale(inv);
    }
    Ok(sum)
}
