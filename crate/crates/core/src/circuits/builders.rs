use super::{Circuit, GateOp};
use crate::cazac::{chu, coeff_grid};
use crate::protocol::ProtocolParams;
use crate::tensor::{ComplexMatrix, Register};
use crate::weyl::{bell_basis_state, check_dim, omega_pow, WeylIndex};
use crate::{Result, C64};

/// Diagonal of the `Q` gate: `q_k = d^{-1/2} Σ_j c(j) ω^{jk}`. Every entry has
/// unit modulus.
pub fn q_diagonal(d: usize) -> Result<Vec<C64>> {
    let c = chu(d)?.values;
    let norm = 1.0 / (d as f64).sqrt();
    Ok((0..d)
        .map(|k| c.iter().enumerate().map(|(j, cj)| cj * omega_pow(d, (j * k) as i64)).sum::<C64>() * norm)
        .collect())
}

/// `Q` as a diagonal-phase gate storing `φ_k = arg q_k`.
pub fn q_gate(d: usize, target: impl Into<String>) -> Result<GateOp> {
    let phases = q_diagonal(d)?.iter().map(|q| q.arg()).collect();
    Ok(GateOp::diagonal_phase(phases, target))
}

fn encryption_register(params: &ProtocolParams) -> Result<Register> {
    Register::new(params.d, params.encryption_wires())
}

/// `V(P_Z)`: a `C(X)` ladder `A → S1 → ... → Sn` accumulates the digit sum on
/// `Sn`, `Q` applies the phase, and the reversed `C(X)†` ladder uncomputes.
pub fn build_vpz_circuit(d: usize, n: usize) -> Result<Circuit> {
    let params = ProtocolParams::new(d, n)?;
    let wires = params.encryption_wires();
    let mut c = Circuit::new(encryption_register(&params)?);
    for pair in wires.windows(2) {
        c.push(GateOp::x_power(d, 1, &pair[1]).power_controlled(&pair[0]))?;
    }
    c.push(q_gate(d, &wires[n])?)?;
    for pair in wires.windows(2).rev() {
        c.push(GateOp::x_power(d, -1, &pair[1]).power_controlled(&pair[0]))?;
    }
    Ok(c)
}

/// `V(P_X) = F†^{⊗(n+1)} V(P_Z) F^{⊗(n+1)}`.
pub fn build_vpx_circuit(d: usize, n: usize) -> Result<Circuit> {
    let vpz = build_vpz_circuit(d, n)?;
    let mut c = Circuit::new(vpz.register().clone());
    let wires = vpz.register().wires().to_vec();
    for w in &wires {
        c.push(GateOp::fourier(w))?;
    }
    c.append(&vpz)?;
    for w in &wires {
        c.push(GateOp::fourier_dagger(w))?;
    }
    Ok(c)
}

/// `U_enc = V(P_X) V(P_Z)`: the `V(P_Z)` circuit followed by the `V(P_X)` one.
pub fn build_enc_circuit(params: &ProtocolParams) -> Result<Circuit> {
    let mut c = build_vpz_circuit(params.d, params.n)?;
    c.append(&build_vpx_circuit(params.d, params.n)?)?;
    Ok(c)
}

/// `T̄ = Σ_{k,l} |k⟩|l⟩⟨Φ_d|(Z^{-l} X^{-k} ⊗ I)`: maps the Bell basis state
/// `(X^k Z^l ⊗ I)|Φ_d⟩` to `|k⟩|l⟩`.
pub fn build_tbar(d: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let mut m = ComplexMatrix::zeros(d * d);
    for idx in WeylIndex::all(d)? {
        let row = idx.k() * d + idx.l();
        for (col, a) in bell_basis_state(idx).amplitudes().iter().enumerate() {
            m[(row, col)] = a.conj();
        }
    }
    Ok(m)
}

fn decryption_register(params: &ProtocolParams) -> Result<Register> {
    Register::new(params.d, params.decryption_wires())
}

fn push_tkl(c: &mut Circuit, params: &ProtocolParams, k: usize, l: usize) -> Result<()> {
    let d = params.d;
    let wires = params.decryption_wires();
    let grid = coeff_grid(d)?;
    let controls = [(wires[0].as_str(), k), (wires[1].as_str(), l)];
    let phase = (grid.get(k, l).conj() / grid.get(0, 0).conj()).arg();
    if phase != 0.0 {
        c.push(GateOp::scalar_phase(phase).level_controlled(controls))?;
    }
    for w in &wires[2..] {
        if l != 0 {
            c.push(GateOp::z_power(d, -(l as i64), w).level_controlled(controls))?;
        }
        if k != 0 {
            c.push(GateOp::x_power(d, k as i64, w).level_controlled(controls))?;
        }
    }
    Ok(())
}

/// `T_kl` on `(S_t, N_t, N_j≠t...)`: when `S_t = k` and `N_t = l`, multiplies
/// by `conj(c_kl)/conj(c_00)` and applies `X^k Z^{-l}` to every other `N_j`.
/// Identity gates are omitted, so `T_00` is empty.
pub fn build_tkl(params: &ProtocolParams, k: usize, l: usize) -> Result<Circuit> {
    WeylIndex::new(params.d, k, l)?;
    let mut c = Circuit::new(decryption_register(params)?);
    push_tkl(&mut c, params, k, l)?;
    Ok(c)
}

/// The decryption circuit on `(S_t, N_t, N_j≠t...)`: the `c_00` prefix, `T̄`,
/// every `T_kl`, `T̄†`, then `C` (two `F` on `N_t` followed by `X^2` on `S_t`
/// power-controlled by `N_t`) and a final SWAP.
pub fn build_udec_circuit(params: &ProtocolParams) -> Result<Circuit> {
    let d = params.d;
    let wires = params.decryption_wires();
    let (s, nt) = (&wires[0], &wires[1]);
    let tbar = build_tbar(d)?;
    let mut c = Circuit::new(decryption_register(params)?);
    c.push(GateOp::scalar_phase(coeff_grid(d)?.get(0, 0).arg()))?;
    c.push(GateOp::unitary("tbar", tbar.clone(), [s, nt]))?;
    for idx in WeylIndex::all(d)?.into_iter().skip(1) {
        push_tkl(&mut c, params, idx.k(), idx.l())?;
    }
    c.push(GateOp::unitary("tbar†", tbar.adjoint(), [s, nt]))?;
    c.push(GateOp::fourier(nt))?;
    c.push(GateOp::fourier(nt))?;
    if 2 % d != 0 {
        c.push(GateOp::x_power(d, 2, s).power_controlled(nt))?;
    }
    c.push(GateOp::swap(s, nt))?;
    Ok(c)
}
