//! Zadoff-Chu sequences and the correlation analytics behind the
//! encryption coefficients.
//!
//! `zc(k) = exp(-iπ u k (k + c_f + 2q) / d)` with `c_f = d mod 2`; the Chu
//! sequence is the `u = 1, q = 0` member. Phases are reduced with exact
//! integer arithmetic before the exponential, so `c(0) = 1` and other
//! rational-angle entries carry no accumulated roundoff.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::weyl::check_dim;
use crate::{Error, Result, C64};

/// `exp(-iπ num / den)`, reducing `num` modulo `2 den` first.
fn neg_half_turn_phase(num: i128, den: i128) -> C64 {
    let r = num.rem_euclid(2 * den);
    C64::from_polar(1.0, -PI * r as f64 / den as f64)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A Zadoff-Chu sequence of length `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChuSequence {
    pub d: usize,
    pub u: i64,
    pub q: i64,
    pub values: Vec<C64>,
}

impl ChuSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn zadoff_chu(d: usize, u: i64, q: i64) -> Result<ChuSequence> {
    check_dim(d)?;
    if gcd(u, d as i64) != 1 {
        return Err(Error::InvalidParameter(format!("Zadoff-Chu root u = {u} is not coprime with d = {d}")));
    }
    let cf = (d % 2) as i128;
    let values =
        (0..d as i128).map(|k| neg_half_turn_phase(u as i128 * k * (k + cf + 2 * q as i128), d as i128)).collect();
    Ok(ChuSequence { d, u, q, values })
}

/// `c(k) = exp(-iπ k (k + d mod 2) / d)`.
pub fn chu(d: usize) -> Result<ChuSequence> {
    zadoff_chu(d, 1, 0)
}

/// Product grid `c_kl = c(k) c(l)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffGrid {
    pub d: usize,
    entries: Vec<C64>,
}

impl CoeffGrid {
    pub fn get(&self, k: usize, l: usize) -> C64 {
        self.entries[k * self.d + l]
    }

    /// Row-major view of the grid.
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }
}

pub fn coeff_grid(d: usize) -> Result<CoeffGrid> {
    let c = chu(d)?.values;
    let entries = c.iter().flat_map(|a| c.iter().map(move |b| a * b)).collect();
    Ok(CoeffGrid { d, entries })
}

/// `(1/L) Σ_k seq[k] · conj(seq[(k + shift) mod L])`.
pub fn periodic_autocorr(seq: &[C64], shift: usize) -> Result<C64> {
    let len = seq.len();
    if len == 0 {
        return Err(Error::InvalidParameter("autocorrelation of an empty sequence".into()));
    }
    let sum: C64 = (0..len).map(|k| seq[k] * seq[(k + shift) % len].conj()).sum();
    Ok(sum / len as f64)
}

/// Magnitudes of the cyclic 2D autocorrelation of the `c_kl` grid,
/// `(1/d²) Σ_{k,l} c_kl · conj(c_{k⊕m, l⊕n})`, indexed `[m][n]`.
pub fn autocorr2d(d: usize) -> Result<Vec<Vec<f64>>> {
    let grid = coeff_grid(d)?;
    let norm = (d * d) as f64;
    Ok((0..d)
        .map(|m| {
            (0..d)
                .map(|n| {
                    let sum: C64 = (0..d)
                        .flat_map(|k| (0..d).map(move |l| (k, l)))
                        .map(|(k, l)| grid.get(k, l) * grid.get((k + m) % d, (l + n) % d).conj())
                        .sum();
                    (sum / norm).norm()
                })
                .collect()
        })
        .collect())
}

/// CSV rows `m,n,magnitude` for [`autocorr2d`], header included.
pub fn autocorr_csv(d: usize) -> Result<String> {
    let grid = autocorr2d(d)?;
    let mut out = String::from("m,n,magnitude\n");
    for (m, row) in grid.iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            writeln!(out, "{m},{n},{v:.12}").expect("writing to a String");
        }
    }
    Ok(out)
}

/// `Σ_j exp(-iπ(j+m)((j+m) + d mod 2)/d) · exp(iπ j(j + d mod 2)/d)` with
/// `j + m` taken as a plain integer (not reduced mod `d`). Equals `d·δ_{m,0}`.
pub fn gauss_sum(d: usize, m: usize) -> Result<C64> {
    check_dim(d)?;
    if m >= d {
        return Err(Error::InvalidParameter(format!("shift m = {m} out of range for d = {d}")));
    }
    let (d, m, cf) = (d as i128, m as i128, (d % 2) as i128);
    Ok((0..d)
        .map(|j| {
            let s = j + m;
            neg_half_turn_phase(s * (s + cf), d) * neg_half_turn_phase(-j * (j + cf), d)
        })
        .sum())
}

/// Forward DFT `X[k] = Σ_j x[j] e^{-2πi jk/N}`, evaluated directly.
pub fn dft(seq: &[C64]) -> Vec<C64> {
    let n = seq.len();
    (0..n)
        .map(|k| {
            seq.iter()
                .enumerate()
                .map(|(j, x)| x * C64::from_polar(1.0, -2.0 * PI * ((j * k) % n) as f64 / n as f64))
                .sum()
        })
        .collect()
}
