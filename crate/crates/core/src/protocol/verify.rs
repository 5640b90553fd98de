use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{
    c_gate, decryption_core, pauli_product, run_protocol, u_dec_dense, u_enc, v_of_p, Axis, DecryptionRoute,
    ProtocolParams,
};
use crate::cazac::{autocorr2d, chu, gauss_sum, periodic_autocorr};
use crate::tensor::{kron, partial_trace_matrix, random_state, ComplexMatrix, Register};
use crate::weyl::{
    bell_amplitudes, bell_basis_state, bell_projector, fourier, fourier_dagger, omega_pow, phase_z, shift_x,
    weyl_displacement, weyl_displacement_inverse, x_power, z_power, WeylIndex,
};
use crate::{Error, Result, C64, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub tol: f64,
    pub seed: u64,
    /// Random operators or states drawn per identity that quantifies over
    /// arbitrary ones.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, seed: 0, samples: 50 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_deviation: f64,
    pub cases: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub d: usize,
    pub tolerance: f64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type CheckFn = fn(usize, &VerifyOptions) -> Result<Acc>;

/// Largest supported dimension for the identity suite.
pub const MAX_VERIFY_DIM: usize = 7;

#[derive(Default)]
struct Acc {
    max: f64,
    cases: usize,
}

impl Acc {
    fn push(&mut self, dev: f64) {
        // NaN must fail, so it is kept rather than dropped by `max`.
        self.max = if dev.is_nan() || self.max.is_nan() { f64::NAN } else { self.max.max(dev) };
        self.cases += 1;
    }
}

fn vec_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn random_matrix(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |_, _| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Runs every identity check at dimension `d` (2 through 7).
pub fn verify_identities(d: usize, opts: &VerifyOptions) -> Result<IdentityReport> {
    if !(2..=MAX_VERIFY_DIM).contains(&d) {
        return Err(Error::InvalidParameter(format!("identity suite supports d in 2..={MAX_VERIFY_DIM}, got {d}")));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let checks: Vec<(&str, CheckFn)> = vec![
        ("weyl.relations", weyl_relations),
        ("lemma1.ricochet", lemma1_ricochet),
        ("lemma2.c_gate", lemma2_c_gate),
        ("lemma3.bell_orthonormality", lemma3_orthonormality),
        ("lemma4.projector_algebra", lemma4_projector_algebra),
        ("lemma5.completeness", lemma5_completeness),
        ("lemma6.gauss_sum", lemma6_gauss_sum),
        ("theorem1.bell_invariance", theorem1_bell_invariance),
        ("theorem2.partial_trace", theorem2_partial_trace),
        ("theorem3.bell_trace", theorem3_bell_trace),
        ("cazac.autocorrelation", cazac_autocorrelation),
        ("unitarity.encryption", unitarity_encryption),
        ("unitarity.decryption", unitarity_decryption),
        ("protocol.secrecy", protocol_secrecy),
        ("protocol.decryption", protocol_decryption),
    ];
    let mut out = Vec::with_capacity(checks.len());
    for (name, f) in checks {
        let acc = f(d, opts)?;
        out.push(IdentityCheck {
            name: name.to_string(),
            max_deviation: acc.max,
            cases: acc.cases,
            passed: acc.max <= opts.tol,
        });
    }
    Ok(IdentityReport { d, tolerance: opts.tol, checks: out })
}

/// `Z X = ω X Z`, `X^d = Z^d = I`, `X = F† Z F`.
fn weyl_relations(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let (x, z, f) = (shift_x(d)?, phase_z(d)?, fourier(d)?);
    let id = ComplexMatrix::identity(d);
    let mut acc = Acc::default();
    acc.push((&z * &x).max_abs_diff(&(&x * &z).scale(omega_pow(d, 1))));
    acc.push(x.pow(d as u32).max_abs_diff(&id));
    acc.push(z.pow(d as u32).max_abs_diff(&id));
    acc.push((&(&fourier_dagger(d)? * &z) * &f).max_abs_diff(&x));
    acc.push((&f * &f.adjoint()).max_abs_diff(&id));
    Ok(acc)
}

/// `(U ⊗ I)|Φ⟩ = (I ⊗ Uᵀ)|Φ⟩` for random `U`.
fn lemma1_ricochet(d: usize, opts: &VerifyOptions) -> Result<Acc> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x1001);
    let phi = bell_amplitudes(d);
    let id = ComplexMatrix::identity(d);
    let mut acc = Acc::default();
    for _ in 0..opts.samples {
        let u = random_matrix(d, &mut rng);
        let lhs = kron(&u, &id)?.matvec(&phi)?;
        let rhs = kron(&id, &u.transpose())?.matvec(&phi)?;
        acc.push(vec_diff(&lhs, &rhs));
    }
    Ok(acc)
}

/// `C · d^{-1} Σ_{m,n} X^mZ^n|ψ⟩ ⊗ (X^mZ^n ⊗ I)|Φ⟩ = |Φ⟩ ⊗ |ψ⟩` for random
/// `|ψ⟩`, with `C` acting on the last two wires.
fn lemma2_c_gate(d: usize, opts: &VerifyOptions) -> Result<Acc> {
    let c = kron(&ComplexMatrix::identity(d), &c_gate(d)?)?;
    let phi = bell_amplitudes(d);
    let mut acc = Acc::default();
    for s in 0..opts.samples {
        let psi = random_state(Register::anonymous(d, 1)?, opts.seed ^ (0x2000 + s as u64))?;
        let mut lhs = vec![C64::new(0.0, 0.0); d * d * d];
        for idx in WeylIndex::all(d)? {
            let w = weyl_displacement(idx);
            let a = w.matvec(psi.amplitudes())?;
            let b = kron(&w, &ComplexMatrix::identity(d))?.matvec(&phi)?;
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    lhs[i * d * d + j] += x * y / d as f64;
                }
            }
        }
        let out = c.matvec(&lhs)?;
        let expected: Vec<C64> = phi.iter().flat_map(|p| psi.amplitudes().iter().map(move |q| p * q)).collect();
        acc.push(vec_diff(&out, &expected));
    }
    Ok(acc)
}

/// `⟨Φ_{k1 k2}|Φ_{k3 k4}⟩ = δ δ` over all index pairs.
fn lemma3_orthonormality(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let states: Vec<_> = WeylIndex::all(d)?.into_iter().map(bell_basis_state).collect();
    let mut acc = Acc::default();
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let ip: C64 = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x.conj() * y).sum();
            acc.push((ip - delta(i, j)).norm());
        }
    }
    Ok(acc)
}

/// `Π_a Π_b = δ_{ab} Π_a` over all index pairs.
fn lemma4_projector_algebra(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let projectors: Vec<_> = WeylIndex::all(d)?.into_iter().map(bell_projector).collect();
    let zero = ComplexMatrix::zeros(d * d);
    let mut acc = Acc::default();
    for (i, a) in projectors.iter().enumerate() {
        for (j, b) in projectors.iter().enumerate() {
            let expected = if i == j { a } else { &zero };
            acc.push((a * b).max_abs_diff(expected));
        }
    }
    Ok(acc)
}

/// `Σ_{k,l} Π_kl = I`.
fn lemma5_completeness(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let mut sum = ComplexMatrix::zeros(d * d);
    for idx in WeylIndex::all(d)? {
        sum = &sum + &bell_projector(idx);
    }
    let mut acc = Acc::default();
    acc.push(sum.max_abs_diff(&ComplexMatrix::identity(d * d)));
    Ok(acc)
}

/// The Chu Gauss sum equals `d δ_{m,0}`.
fn lemma6_gauss_sum(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let mut acc = Acc::default();
    for m in 0..d {
        acc.push((gauss_sum(d, m)? - d as f64 * delta(m, 0)).norm());
    }
    Ok(acc)
}

/// `(X^{k1} Z^{-k2} ⊗ X^{k1} Z^{k2})|Φ⟩ = |Φ⟩`.
fn theorem1_bell_invariance(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let phi = bell_amplitudes(d);
    let mut acc = Acc::default();
    for k1 in 0..d as i64 {
        for k2 in 0..d as i64 {
            let left = &x_power(d, k1)? * &z_power(d, -k2)?;
            let right = &x_power(d, k1)? * &z_power(d, k2)?;
            acc.push(vec_diff(&kron(&left, &right)?.matvec(&phi)?, &phi));
        }
    }
    Ok(acc)
}

/// `Tr_B((O1 ⊗ I)|Φ⟩⟨Φ|(O2† ⊗ I)) = O1 O2† / d` for random `O1, O2`.
fn theorem2_partial_trace(d: usize, opts: &VerifyOptions) -> Result<Acc> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x3003);
    let phi = bell_amplitudes(d);
    let id = ComplexMatrix::identity(d);
    let mut acc = Acc::default();
    for _ in 0..opts.samples {
        let o1 = random_matrix(d, &mut rng);
        let o2 = random_matrix(d, &mut rng);
        let left = kron(&o1, &id)?.matvec(&phi)?;
        let right = kron(&o2, &id)?.matvec(&phi)?;
        let m = ComplexMatrix::outer(&left, &right)?;
        let reduced = partial_trace_matrix(&m, d, 2, &[0])?;
        let expected = (&o1 * &o2.adjoint()).scale(C64::new(1.0 / d as f64, 0.0));
        acc.push(reduced.max_abs_diff(&expected));
    }
    Ok(acc)
}

/// `Tr((X^kZ^l ⊗ I)|Φ⟩⟨Φ|(Z^{-n}X^{-m} ⊗ I)) = δ_{km} δ_{ln}`.
fn theorem3_bell_trace(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let phi = ComplexMatrix::outer(&bell_amplitudes(d), &bell_amplitudes(d))?;
    let id = ComplexMatrix::identity(d);
    let all = WeylIndex::all(d)?;
    let mut acc = Acc::default();
    for a in &all {
        let left = &kron(&weyl_displacement(*a), &id)? * &phi;
        for b in &all {
            let t = (&left * &kron(&weyl_displacement_inverse(*b), &id)?).trace();
            acc.push((t - delta(a.k(), b.k()) * delta(a.l(), b.l())).norm());
        }
    }
    Ok(acc)
}

/// Chu autocorrelation is a delta; the `c_kl` grid's 2D autocorrelation
/// magnitude is 1 at the origin and 0 elsewhere.
fn cazac_autocorrelation(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let c = chu(d)?.values;
    let mut acc = Acc::default();
    for s in 0..d {
        acc.push((periodic_autocorr(&c, s)? - delta(s, 0)).norm());
    }
    for (m, row) in autocorr2d(d)?.iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            acc.push((v - delta(m, 0) * delta(n, 0)).abs());
        }
    }
    Ok(acc)
}

fn protocol_sizes(d: usize) -> Vec<ProtocolParams> {
    (1..=2).filter_map(|n| ProtocolParams::new(d, n).ok()).collect()
}

/// `V(P_X)`, `V(P_Z)` and `U_enc` are unitary for `n = 1, 2`.
fn unitarity_encryption(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let mut acc = Acc::default();
    for p in protocol_sizes(d) {
        for axis in [Axis::X, Axis::Z] {
            acc.push(v_of_p(&pauli_product(axis, d, p.n)?, d)?.is_unitary(0.0).max_deviation);
        }
        acc.push(u_enc(&p)?.is_unitary(0.0).max_deviation);
    }
    Ok(acc)
}

/// `A A† = I` and `U_dec` is unitary for `n = 1, 2`.
fn unitarity_decryption(d: usize, _: &VerifyOptions) -> Result<Acc> {
    let mut acc = Acc::default();
    for p in protocol_sizes(d) {
        acc.push(decryption_core(&p)?.is_unitary(0.0).max_deviation);
        acc.push(u_dec_dense(&p)?.is_unitary(0.0).max_deviation);
    }
    Ok(acc)
}

fn protocol_reports(d: usize, opts: &VerifyOptions) -> Result<Vec<super::ProtocolReport>> {
    let mut out = Vec::new();
    for p in protocol_sizes(d) {
        for s in 0..opts.samples.min(3) as u64 {
            let seed = opts.seed ^ (0x4000 + s);
            let psi = random_state(Register::new(d, ["A"])?, seed)?;
            out.push(run_protocol(&p, &psi, Some(seed), DecryptionRoute::Dense)?);
        }
    }
    Ok(out)
}

/// Every `ρ_{S_i}` equals `I/d` after encryption. Only `n = 2` is checked:
/// with a single party the trace over the other parties' Bell halves is
/// missing and `ρ_{S_1}` depends on the input.
fn protocol_secrecy(d: usize, opts: &VerifyOptions) -> Result<Acc> {
    let mut acc = Acc::default();
    for r in protocol_reports(d, opts)?.iter().filter(|r| r.n >= 2) {
        r.marginals.iter().for_each(|m| acc.push(*m));
    }
    Ok(acc)
}

/// Decryption returns `|ψ⟩` on `S_1` and the closed-form final state.
fn protocol_decryption(d: usize, opts: &VerifyOptions) -> Result<Acc> {
    let mut acc = Acc::default();
    for r in protocol_reports(d, opts)? {
        acc.push((1.0 - r.decryption_fidelity).abs());
        acc.push((1.0 - r.closed_form_overlap).abs());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_suite_passes() {
        let r = verify_identities(2, &VerifyOptions::default()).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{}: {:e}", c.name, c.max_deviation);
            assert!(c.cases > 0, "{}", c.name);
        }
        assert_eq!(r.check("lemma3.bell_orthonormality").unwrap().cases, 16);
        assert_eq!(r.check("lemma1.ricochet").unwrap().cases, 50);
    }

    #[test]
    fn qutrit_suite_passes() {
        assert!(verify_identities(3, &VerifyOptions::default()).unwrap().all_passed());
    }

    #[test]
    fn impossible_tolerance_fails() {
        let opts = VerifyOptions { tol: 1e-30, ..Default::default() };
        assert!(!verify_identities(3, &opts).unwrap().all_passed());
    }

    #[test]
    fn rejects_out_of_range_inputs() {
        assert!(verify_identities(1, &VerifyOptions::default()).is_err());
        assert!(verify_identities(8, &VerifyOptions::default()).is_err());
        assert!(verify_identities(3, &VerifyOptions { tol: 0.0, ..Default::default() }).is_err());
    }

    #[test]
    fn nan_deviation_fails() {
        let mut acc = Acc::default();
        acc.push(0.0);
        acc.push(f64::NAN);
        acc.push(1.0);
        assert!(acc.max.is_nan());
        assert!(acc.max.partial_cmp(&1.0).is_none());
    }
}
