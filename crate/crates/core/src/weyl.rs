//! Generalized Pauli (Weyl) operators and the gates built from them.
//!
//! `X_d|k⟩ = |k+1 mod d⟩`, `Z_d|k⟩ = ω^k|k⟩` with `ω = e^{2πi/d}`, and
//! `F|k⟩ = d^{-1/2} Σ_j ω^{jk}|j⟩`. Negative powers are taken as the
//! complementary positive power, which is exact because `X_d^d = Z_d^d = I`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::tensor::{kron, ComplexMatrix, Register, StateVector};
use crate::{Error, Result, C64, DEFAULT_TOL};

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(())
}

/// `ω^k` for `ω = e^{2πi/d}`.
pub fn omega_pow(d: usize, k: i64) -> C64 {
    let k = k.rem_euclid(d as i64);
    C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)
}

/// Reduces a possibly negative exponent into `0..d`.
pub fn reduce_power(d: usize, k: i64) -> usize {
    k.rem_euclid(d as i64) as usize
}

/// Exponent pair `(k, l)` of the displacement `X_d^k Z_d^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylIndex {
    d: usize,
    k: usize,
    l: usize,
}

impl WeylIndex {
    pub fn new(d: usize, k: usize, l: usize) -> Result<Self> {
        check_dim(d)?;
        if k >= d || l >= d {
            return Err(Error::InvalidParameter(format!("Weyl index ({k}, {l}) out of range for d = {d}")));
        }
        Ok(Self { d, k, l })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// All `d²` indices in row-major `(k, l)` order.
    pub fn all(d: usize) -> Result<Vec<Self>> {
        check_dim(d)?;
        Ok((0..d).flat_map(|k| (0..d).map(move |l| Self { d, k, l })).collect())
    }
}

pub fn shift_x(d: usize) -> Result<ComplexMatrix> {
    x_power(d, 1)
}

pub fn phase_z(d: usize) -> Result<ComplexMatrix> {
    z_power(d, 1)
}

/// `X_d^k`, built directly as a permutation matrix.
pub fn x_power(d: usize, k: i64) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let k = reduce_power(d, k);
    Ok(ComplexMatrix::from_fn(d, |r, c| if r == (c + k) % d { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }))
}

/// `Z_d^l`, built directly as a diagonal matrix.
pub fn z_power(d: usize, l: i64) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let l = reduce_power(d, l) as i64;
    let diag: Vec<C64> = (0..d as i64).map(|j| omega_pow(d, j * l)).collect();
    Ok(ComplexMatrix::diagonal(&diag))
}

pub fn fourier(d: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let norm = 1.0 / (d as f64).sqrt();
    Ok(ComplexMatrix::from_fn(d, |j, k| omega_pow(d, (j * k) as i64) * norm))
}

pub fn fourier_dagger(d: usize) -> Result<ComplexMatrix> {
    Ok(fourier(d)?.adjoint())
}

fn ensure_unitary_qudit_gate(u: &ComplexMatrix, d: usize) -> Result<()> {
    check_dim(d)?;
    if u.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: u.dim() });
    }
    let report = u.is_unitary(DEFAULT_TOL);
    if !report.unitary {
        return Err(Error::NotUnitary(report.max_deviation));
    }
    Ok(())
}

/// `C(U)|j⟩|k⟩ = |j⟩ U^j |k⟩`, control first.
pub fn controlled_power(u: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    ensure_unitary_qudit_gate(u, d)?;
    let blocks: Vec<ComplexMatrix> = (0..d).map(|j| u.pow(j as u32)).collect();
    Ok(block_diagonal(d, &blocks))
}

/// `C_p(U)|j⟩|k⟩ = |j⟩ U^{j δ_{p,j}} |k⟩`: applies `U^p` exactly when the
/// control is at level `p`.
pub fn p_controlled(u: &ComplexMatrix, d: usize, p: usize) -> Result<ComplexMatrix> {
    ensure_unitary_qudit_gate(u, d)?;
    if p >= d {
        return Err(Error::InvalidParameter(format!("control level {p} out of range for d = {d}")));
    }
    let blocks: Vec<ComplexMatrix> =
        (0..d).map(|j| if j == p { u.pow(p as u32) } else { ComplexMatrix::identity(d) }).collect();
    Ok(block_diagonal(d, &blocks))
}

/// `Σ_j |j⟩⟨j| ⊗ blocks[j]`.
fn block_diagonal(d: usize, blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d * d);
    for (j, b) in blocks.iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                m[(j * d + r, j * d + c)] = b[(r, c)];
            }
        }
    }
    m
}

/// `SWAP|j⟩|k⟩ = |k⟩|j⟩`.
pub fn swap_gate(d: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    Ok(ComplexMatrix::from_fn(d * d, |r, c| {
        let (j, k) = (c / d, c % d);
        if r == k * d + j {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// Amplitudes of `|Φ_d⟩ = d^{-1/2} Σ_p |p⟩|p⟩`.
pub fn bell_amplitudes(d: usize) -> Vec<C64> {
    let mut amps = vec![C64::new(0.0, 0.0); d * d];
    let a = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    for p in 0..d {
        amps[p * d + p] = a;
    }
    amps
}

/// Generalized Bell state on a two-wire register labelled `q0, q1`.
pub fn bell_state(d: usize) -> Result<StateVector> {
    check_dim(d)?;
    StateVector::new(Register::anonymous(d, 2)?, bell_amplitudes(d))
}

/// `X_d^k Z_d^l`.
pub fn weyl_displacement(idx: WeylIndex) -> ComplexMatrix {
    let d = idx.d;
    &x_power(d, idx.k as i64).expect("valid d") * &z_power(d, idx.l as i64).expect("valid d")
}

/// `(X_d^k Z_d^l)^† = Z_d^{-l} X_d^{-k}`.
pub fn weyl_displacement_inverse(idx: WeylIndex) -> ComplexMatrix {
    let d = idx.d;
    &z_power(d, -(idx.l as i64)).expect("valid d") * &x_power(d, -(idx.k as i64)).expect("valid d")
}

/// `(X_d^k Z_d^l ⊗ I)|Φ_d⟩`.
pub fn bell_basis_state(idx: WeylIndex) -> StateVector {
    let d = idx.d;
    let op = kron(&weyl_displacement(idx), &ComplexMatrix::identity(d)).expect("d² is small");
    let amps = op.matvec(&bell_amplitudes(d)).expect("dimensions agree");
    StateVector::new(Register::anonymous(d, 2).expect("valid d"), amps).expect("unitary image of a unit vector")
}

/// Bell-basis projector `Π_kl = (X^k Z^l ⊗ I)|Φ⟩⟨Φ|(Z^{-l} X^{-k} ⊗ I)`.
pub fn bell_projector(idx: WeylIndex) -> ComplexMatrix {
    let v = bell_basis_state(idx);
    ComplexMatrix::outer(v.amplitudes(), v.amplitudes()).expect("same vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{embed_apply, overlap};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn basis(d: usize, digits: &[usize]) -> StateVector {
        StateVector::basis(Register::anonymous(d, digits.len()).unwrap(), digits).unwrap()
    }

    fn apply(op: &ComplexMatrix, s: &StateVector) -> StateVector {
        let wires: Vec<String> = s.register().wires().to_vec();
        embed_apply(s, op, &wires).unwrap()
    }

    #[test]
    fn rejects_degenerate_dimension() {
        assert_eq!(shift_x(1), Err(Error::InvalidDimension(1)));
        assert_eq!(phase_z(0), Err(Error::InvalidDimension(0)));
        assert!(fourier(1).is_err());
        assert!(WeylIndex::new(3, 3, 0).is_err());
    }

    #[test]
    fn qubit_special_cases() {
        let x = shift_x(2).unwrap();
        assert_eq!(x.data(), &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let z = phase_z(2).unwrap();
        assert!(z.approx_eq(&ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]), 1e-15));
        let h = 1.0 / 2f64.sqrt();
        let hadamard = ComplexMatrix::new(2, vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]).unwrap();
        assert!(fourier(2).unwrap().approx_eq(&hadamard, 1e-15));
    }

    #[test]
    fn shift_wraps_around() {
        assert_eq!(apply(&shift_x(3).unwrap(), &basis(3, &[2])), basis(3, &[0]));
        assert_eq!(shift_x(4).unwrap().pow(4), ComplexMatrix::identity(4));
    }

    #[test]
    fn phase_on_qutrit() {
        let out = apply(&phase_z(3).unwrap(), &basis(3, &[1]));
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!((out.amplitudes()[1] - w).norm() < 1e-15);
        let z5 = phase_z(5).unwrap();
        assert!(z5.adjoint().approx_eq(&z5.pow(4), 1e-14));
        assert!((&z5.adjoint() * &z5).approx_eq(&ComplexMatrix::identity(5), 1e-14));
    }

    #[test]
    fn fourier_conjugates_phase_into_shift() {
        for d in 2..=7 {
            let f = fourier(d).unwrap();
            let lhs = &(&f.adjoint() * &phase_z(d).unwrap()) * &f;
            assert!(lhs.approx_eq(&shift_x(d).unwrap(), 1e-13), "d = {d}");
            assert!(f.is_unitary(1e-10).unitary);
        }
    }

    #[test]
    fn fourier_squared_reverses_index() {
        let f = fourier(3).unwrap();
        let out = apply(&f.pow(2), &basis(3, &[1]));
        assert!((overlap(&basis(3, &[2]), &out).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn group_relations() {
        for d in 2..=7 {
            let x = shift_x(d).unwrap();
            let z = phase_z(d).unwrap();
            let id = ComplexMatrix::identity(d);
            assert!(x.pow(d as u32).approx_eq(&id, 1e-13));
            assert!(z.pow(d as u32).approx_eq(&id, 1e-13));
            assert!(x.adjoint().approx_eq(&x.pow(d as u32 - 1), 1e-13));
            assert!(z.adjoint().approx_eq(&z.pow(d as u32 - 1), 1e-13));
            // Z X = ω X Z
            let zx = &z * &x;
            let xz = (&x * &z).scale(omega_pow(d, 1));
            assert!(zx.approx_eq(&xz, 1e-13), "d = {d}");
        }
    }

    #[test]
    fn controlled_shift() {
        let cnot = controlled_power(&shift_x(2).unwrap(), 2).unwrap();
        let mut expected = ComplexMatrix::zeros(4);
        for (r, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            expected[(r, col)] = c(1.0, 0.0);
        }
        assert_eq!(cnot, expected);

        let cx3 = controlled_power(&shift_x(3).unwrap(), 3).unwrap();
        assert_eq!(apply(&cx3, &basis(3, &[2, 2])), basis(3, &[2, 1]));

        let cz3 = controlled_power(&phase_z(3).unwrap(), 3).unwrap();
        let out = apply(&cz3, &basis(3, &[1, 2]));
        assert!((out.amplitudes()[5] - omega_pow(3, 2)).norm() < 1e-14);
    }

    #[test]
    fn controlled_rejects_non_unitary() {
        let bad = ComplexMatrix::identity(2).scale(c(2.0, 0.0));
        assert!(matches!(controlled_power(&bad, 2), Err(Error::NotUnitary(_))));
        assert!(matches!(p_controlled(&shift_x(3).unwrap(), 3, 3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn level_controlled_shift() {
        let x3 = shift_x(3).unwrap();
        assert_eq!(p_controlled(&x3, 3, 0).unwrap(), ComplexMatrix::identity(9));
        let g = p_controlled(&x3, 3, 2).unwrap();
        assert_eq!(apply(&g, &basis(3, &[2, 0])), basis(3, &[2, 2]));
        assert_eq!(apply(&g, &basis(3, &[1, 0])), basis(3, &[1, 0]));
    }

    #[test]
    fn swap_properties() {
        assert_eq!(apply(&swap_gate(2).unwrap(), &basis(2, &[0, 1])), basis(2, &[1, 0]));
        for d in 2..=7 {
            let s = swap_gate(d).unwrap();
            assert_eq!(s.pow(2), ComplexMatrix::identity(d * d));
        }
        let b = bell_state(3).unwrap();
        assert_eq!(apply(&swap_gate(3).unwrap(), &b), b);
    }

    #[test]
    fn bell_state_preparation() {
        let b3 = bell_state(3).unwrap();
        let third = 1.0 / 3f64.sqrt();
        for (i, z) in b3.amplitudes().iter().enumerate() {
            let expected = if i % 4 == 0 { third } else { 0.0 };
            assert!((z - c(expected, 0.0)).norm() < 1e-15);
        }
        for d in 2..=7 {
            let prep = &controlled_power(&shift_x(d).unwrap(), d).unwrap()
                * &kron(&fourier(d).unwrap(), &ComplexMatrix::identity(d)).unwrap();
            let out = apply(&prep, &basis(d, &[0, 0]));
            assert!((overlap(&bell_state(d).unwrap(), &out).unwrap() - 1.0).norm() < 1e-13, "d = {d}");
        }
    }

    #[test]
    fn displacements() {
        assert_eq!(weyl_displacement(WeylIndex::new(4, 0, 0).unwrap()), ComplexMatrix::identity(4));
        let xz = weyl_displacement(WeylIndex::new(2, 1, 1).unwrap());
        assert!(xz.approx_eq(
            &ComplexMatrix::new(2, vec![c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap(),
            1e-15
        ));
        for idx in WeylIndex::all(4).unwrap() {
            let prod = &weyl_displacement(idx) * &weyl_displacement_inverse(idx);
            assert!(prod.approx_eq(&ComplexMatrix::identity(4), 1e-13));
        }
    }

    #[test]
    fn bell_basis_orthonormal_and_complete() {
        let d = 3;
        let all = WeylIndex::all(d).unwrap();
        assert_eq!(bell_basis_state(all[0]), bell_state(d).unwrap());
        let mut sum = ComplexMatrix::zeros(d * d);
        for &a in &all {
            for &b in &all {
                let ov = overlap(&bell_basis_state(a), &bell_basis_state(b)).unwrap();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((ov - expected).norm() < 1e-13);
            }
            sum = &sum + &bell_projector(a);
        }
        assert!(sum.approx_eq(&ComplexMatrix::identity(d * d), 1e-13));
    }
}
