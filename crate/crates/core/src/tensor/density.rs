use super::state::offsets;
use super::{ComplexMatrix, Register};
use crate::{Error, Result, C64};

/// Density matrix over a (sub-)register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    register: Register,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validated constructor: hermitian, unit trace and positive
    /// semidefinite, all within `tol`.
    pub fn new(register: Register, matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let expected = register.hilbert_dim().unwrap_or(usize::MAX);
        if matrix.dim() != expected {
            return Err(Error::DimensionMismatch { expected, found: matrix.dim() });
        }
        if !matrix.is_hermitian(tol) {
            return Err(Error::InvalidDensity("not hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::InvalidDensity(format!("trace is {tr}")));
        }
        if !is_positive_semidefinite(&matrix, tol) {
            return Err(Error::InvalidDensity("negative eigenvalue below tolerance".into()));
        }
        Ok(Self { register, matrix })
    }

    pub(crate) fn from_parts(register: Register, matrix: ComplexMatrix) -> Self {
        Self { register, matrix }
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Traces out every wire not listed in `keep`; the result is ordered as
    /// `keep`.
    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        let idx = self.register.indices_of(keep)?;
        let matrix = partial_trace_matrix(&self.matrix, self.register.d(), self.register.len(), &idx)?;
        Ok(Self { register: self.register.select(&idx)?, matrix })
    }

    /// `max |ρ_ij - δ_ij / D|`.
    pub fn deviation_from_maximally_mixed(&self) -> f64 {
        let dim = self.matrix.dim();
        let mixed = ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0));
        self.matrix.max_abs_diff(&mixed)
    }

    /// `⟨ψ|ρ|ψ⟩` for a pure state given by its amplitudes.
    pub fn fidelity_with_pure(&self, psi: &[C64]) -> Result<f64> {
        let rho_psi = self.matrix.matvec(psi)?;
        Ok(psi.iter().zip(&rho_psi).map(|(a, b)| a.conj() * b).sum::<C64>().re)
    }
}

/// Partial trace of an arbitrary (not necessarily hermitian) operator on `n`
/// wires of dimension `d`, keeping the wire indices in `keep` in that order.
pub fn partial_trace_matrix(m: &ComplexMatrix, d: usize, n: usize, keep: &[usize]) -> Result<ComplexMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    if let Some(&w) = keep.iter().find(|&&w| w >= n) {
        return Err(Error::WireIndex { index: w, len: n });
    }
    let full = d.pow(n as u32);
    if m.dim() != full {
        return Err(Error::DimensionMismatch { expected: full, found: m.dim() });
    }
    let rest: Vec<usize> = (0..n).filter(|w| !keep.contains(w)).collect();
    let keep_off = offsets(d, n, keep);
    let rest_off = offsets(d, n, &rest);
    Ok(ComplexMatrix::from_fn(keep_off.len(), |r, c| {
        rest_off.iter().map(|&b| m[(b + keep_off[r], b + keep_off[c])]).sum()
    }))
}

/// Cholesky attempt on `m + tol·I`; succeeds iff every eigenvalue of the
/// hermitian matrix `m` exceeds `-tol` (up to roundoff).
fn is_positive_semidefinite(m: &ComplexMatrix, tol: f64) -> bool {
    let n = m.dim();
    let mut l = vec![C64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let mut diag = m[(j, j)].re + tol;
        for k in 0..j {
            diag -= l[j * n + k].norm_sqr();
        }
        if diag <= 0.0 {
            return false;
        }
        let ljj = diag.sqrt();
        l[j * n + j] = C64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / ljj;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{random_state, StateVector};
    use crate::weyl::bell_state;

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        for d in 2..=4 {
            let rho = bell_state(d).unwrap().density();
            let first = rho.register().wires()[0].clone();
            let marginal = rho.partial_trace(&[first]).unwrap();
            assert!(marginal.deviation_from_maximally_mixed() < 1e-14, "d = {d}");
        }
    }

    #[test]
    fn product_state_marginal() {
        let r = Register::anonymous(2, 2).unwrap();
        let rho = StateVector::basis(r, &[0, 0]).unwrap().density();
        let m = rho.partial_trace(&["q0"]).unwrap();
        assert_eq!(m.matrix(), &ComplexMatrix::diagonal(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]));
    }

    #[test]
    fn keep_everything_is_exact_identity_map() {
        let r = Register::anonymous(3, 2).unwrap();
        let rho = random_state(r, 5).unwrap().density();
        assert_eq!(rho.partial_trace(&["q0", "q1"]).unwrap(), rho);
    }

    #[test]
    fn empty_keep_rejected() {
        let rho = bell_state(2).unwrap().density();
        let none: [&str; 0] = [];
        assert_eq!(rho.partial_trace(&none), Err(Error::EmptyKeep));
    }

    #[test]
    fn reduced_density_agrees_with_dense_partial_trace() {
        let r = Register::anonymous(3, 3).unwrap();
        let psi = random_state(r, 9).unwrap();
        for keep in [vec!["q1"], vec!["q2", "q0"], vec!["q0", "q1", "q2"]] {
            let direct = psi.reduced_density(&keep).unwrap();
            let dense = psi.density().partial_trace(&keep).unwrap();
            assert!(direct.matrix().approx_eq(dense.matrix(), 1e-14));
            assert_eq!(direct.register(), dense.register());
        }
    }

    #[test]
    fn validated_constructor() {
        let r = Register::anonymous(2, 1).unwrap();
        let half = C64::new(0.5, 0.0);
        let mixed = ComplexMatrix::diagonal(&[half, half]);
        assert!(DensityMatrix::new(r.clone(), mixed, 1e-10).is_ok());
        let negative = ComplexMatrix::diagonal(&[C64::new(1.5, 0.0), C64::new(-0.5, 0.0)]);
        assert!(DensityMatrix::new(r.clone(), negative, 1e-10).is_err());
        let not_herm = ComplexMatrix::new(2, vec![half, C64::new(0.0, 0.3), C64::new(0.0, 0.3), half]).unwrap();
        assert!(DensityMatrix::new(r, not_herm, 1e-10).is_err());
    }
}
