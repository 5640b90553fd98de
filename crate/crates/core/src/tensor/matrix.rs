use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::ComplexFloat;
use serde::{Deserialize, Serialize};

use super::register::SizeCap;
use crate::{Error, Result, C64};

/// Dense square matrix of complex amplitudes, stored row-major.
///
/// Every operator and density matrix in the crate is square, so only a
/// single dimension is kept.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

/// Outcome of [`ComplexMatrix::is_unitary`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitarityReport {
    pub unitary: bool,
    /// `max |(M M^† - I)_{ij}|`.
    pub max_deviation: f64,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("matrix dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        if data.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = z;
        }
        m
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
        }
        Ok(Self::from_fn(a.len(), |r, c| a[r] * b[c].conj()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Matrix product. Zero entries of `self` are skipped, which makes
    /// products with permutation and diagonal operators quadratic instead of
    /// cubic.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self.data.chunks_exact(self.dim).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on matrices of different dimension");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> UnitarityReport {
        let product = self * &self.adjoint();
        let max_deviation = product.max_abs_diff(&Self::identity(self.dim));
        UnitarityReport { unitary: max_deviation <= tol, max_deviation }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| (r..self.dim).all(|c| (self[(r, c)] - self[(c, r)].conj()).abs() <= tol))
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self[(r, c)].abs() <= tol))
    }

    fn one_norm(&self) -> f64 {
        (0..self.dim).map(|c| (0..self.dim).map(|r| self[(r, c)].abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling and squaring of a truncated Taylor
    /// series.
    pub fn expm(&self) -> Self {
        let norm = self.one_norm();
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
        let scaled = self.scale(C64::new(0.5f64.powi(squarings as i32), 0.0));

        let mut sum = Self::identity(self.dim);
        let mut term = Self::identity(self.dim);
        for k in 1..=24 {
            term = (&term * &scaled).scale(C64::new(1.0 / k as f64, 0.0));
            sum = &sum + &term;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on a dimension mismatch; use [`ComplexMatrix::matmul`] for the
    /// fallible form.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product under the default size cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    SizeCap::default().kron(a, b)
}

/// Left-to-right Kronecker product of a non-empty list of factors.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> Result<ComplexMatrix> {
    let mut iter = factors.into_iter();
    let first = iter.next().ok_or_else(|| Error::InvalidParameter("empty Kronecker product".into()))?;
    iter.try_fold(first.clone(), |acc, m| kron(&acc, m))
}

impl SizeCap {
    pub fn kron(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let dim = a.dim.checked_mul(b.dim).ok_or(Error::SizeCap {
            what: "Kronecker product",
            dim: usize::MAX,
            cap: self.max_operator_dim,
        })?;
        self.check_operator("Kronecker product", dim)?;
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for ar in 0..a.dim {
            for ac in 0..a.dim {
                let x = a[(ar, ac)];
                if x.re == 0.0 && x.im == 0.0 {
                    continue;
                }
                for br in 0..b.dim {
                    let row = ar * b.dim + br;
                    for bc in 0..b.dim {
                        data[row * dim + ac * b.dim + bc] = x * b[(br, bc)];
                    }
                }
            }
        }
        Ok(ComplexMatrix { dim, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn new_rejects_bad_input() {
        assert!(ComplexMatrix::new(2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexMatrix::new(0, vec![]).is_err());
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_respects_size_cap() {
        let cap = SizeCap { max_operator_dim: 8, ..SizeCap::default() };
        let a = ComplexMatrix::identity(4);
        assert!(matches!(cap.kron(&a, &a), Err(Error::SizeCap { dim: 16, cap: 8, .. })));
    }

    #[test]
    fn pow_and_matmul_agree() {
        let m = ComplexMatrix::from_fn(3, |r, col| c((r + 2 * col) as f64 * 0.1, r as f64 * 0.05));
        let naive = &(&m * &m) * &(&m * &m);
        assert!(m.pow(4).approx_eq(&(&naive * &m.pow(0)), 1e-12));
        assert_eq!(m.pow(0), ComplexMatrix::identity(3));
    }

    #[test]
    fn expm_matches_pauli_closed_form() {
        // e^{-iθX} = cos θ I - i sin θ X for the hermitian qubit X.
        let x = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        for theta in [0.0, PI / 4.0, 1.3, 7.5] {
            let e = x.scale(c(0.0, -theta)).expm();
            let expected = &ComplexMatrix::identity(2).scale(c(theta.cos(), 0.0)) + &x.scale(c(0.0, -theta.sin()));
            assert!(e.approx_eq(&expected, 1e-12), "theta = {theta}");
        }
    }

    #[test]
    fn expm_of_diagonal() {
        let d = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-2.0, 3.0)]);
        let e = d.expm();
        assert!((e[(0, 0)] - c(1.0, 0.0).exp()).abs() < 1e-12);
        assert!((e[(1, 1)] - c(-2.0, 3.0).exp()).abs() < 1e-12);
        assert!(e[(0, 1)].abs() < 1e-15);
    }

    #[test]
    fn unitarity_report_carries_deviation() {
        let m = ComplexMatrix::identity(3).scale(c(2.0, 0.0));
        let rep = m.is_unitary(1e-10);
        assert!(!rep.unitary);
        assert!((rep.max_deviation - 3.0).abs() < 1e-12);
        assert!(ComplexMatrix::identity(5).is_unitary(0.0).unitary);
    }
}
