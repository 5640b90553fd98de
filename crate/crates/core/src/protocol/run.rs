use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{u_dec_dense, u_enc, ProtocolParams};
use crate::circuits::build_udec_circuit;
use crate::tensor::{embed_apply, overlap, ComplexMatrix, Register, StateVector};
use crate::weyl::bell_amplitudes;
use crate::{Error, Result, DEFAULT_TOL};

/// How the decryption unitary is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecryptionRoute {
    /// The dense `(SWAP·C ⊗ I)·A` operator.
    #[default]
    Dense,
    /// The gate-level decryption circuit, applied gate by gate.
    Circuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub marginal: f64,
    pub fidelity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { marginal: DEFAULT_TOL, fidelity: DEFAULT_TOL }
    }
}

/// Fidelity of a two-wire marginal with `|Φ_d⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellResidual {
    pub pair: [String; 2],
    pub fidelity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub encrypt: f64,
    pub marginals: f64,
    pub decrypt: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub d: usize,
    pub n: usize,
    pub target_party: usize,
    pub seed: Option<u64>,
    pub route: DecryptionRoute,
    /// `max |ρ_{S_i} - I/d|` for `i = 1..n`, measured after encryption.
    pub marginals: Vec<f64>,
    /// `⟨ψ|ρ_{S_t}|ψ⟩` after decryption.
    pub decryption_fidelity: f64,
    /// `|⟨expected|final⟩|` against the closed-form final state.
    pub closed_form_overlap: f64,
    /// `(A, N_t)` first, then `(S_j, N_j)` for `j ≠ t`.
    pub bell_residuals: Vec<BellResidual>,
    pub tolerances: Tolerances,
    pub timings_ms: Option<Timings>,
}

impl ProtocolReport {
    pub fn marginals_pass(&self) -> bool {
        self.marginals.iter().all(|&m| m <= self.tolerances.marginal)
    }

    pub fn decryption_passes(&self) -> bool {
        let tol = self.tolerances.fidelity;
        self.decryption_fidelity >= 1.0 - tol
            && self.closed_form_overlap >= 1.0 - tol
            && self.bell_residuals.iter().all(|b| b.fidelity >= 1.0 - tol)
    }

    pub fn passes(&self) -> bool {
        self.marginals_pass() && self.decryption_passes()
    }
}

fn pair_state(d: usize, a: &str, b: &str) -> Result<StateVector> {
    StateVector::new(Register::new(d, [a, b])?, bell_amplitudes(d))
}

fn check_psi(params: &ProtocolParams, psi: &StateVector) -> Result<()> {
    if psi.register().d() != params.d || psi.register().len() != 1 {
        return Err(Error::DimensionMismatch { expected: params.d, found: psi.amplitudes().len() });
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// `|ψ⟩_A ⊗ ⊗_i |Φ_d⟩_{S_i N_i}` on the canonical register.
pub fn initial_state(params: &ProtocolParams, psi: &StateVector) -> Result<StateVector> {
    check_psi(params, psi)?;
    let (d, n) = (params.d, params.n);
    params.cap.state_len("protocol state", d, 2 * n + 1)?;
    let mut state = psi.relabel(["A"])?;
    for i in 1..=n {
        state = state.tensor(&pair_state(d, &format!("S{i}"), &format!("N{i}"))?)?;
    }
    state.reorder(params.register()?.wires())
}

/// Applies `U_enc` to `(A, S1..Sn)`.
pub fn encrypt(params: &ProtocolParams, state: &StateVector) -> Result<StateVector> {
    embed_apply(state, &u_enc(params)?, &params.encryption_wires())
}

/// Applies the decryption unitary to `(S_t, N_t, N_j≠t...)`.
pub fn decrypt(params: &ProtocolParams, state: &StateVector, route: DecryptionRoute) -> Result<StateVector> {
    match route {
        DecryptionRoute::Dense => embed_apply(state, &u_dec_dense(params)?, &params.decryption_wires()),
        DecryptionRoute::Circuit => build_udec_circuit(params)?.apply(state),
    }
}

/// `d^{-1/2} Σ_p |p⟩_A |ψ⟩_{S_t} |p⟩_{N_t} ⊗ ⊗_{j≠t} |Φ_d⟩_{S_j N_j}` on the
/// canonical register.
pub fn closed_form_final_state(params: &ProtocolParams, psi: &StateVector) -> Result<StateVector> {
    check_psi(params, psi)?;
    let (d, n, t) = (params.d, params.n, params.target_party);
    params.cap.state_len("protocol state", d, 2 * n + 1)?;
    let mut state = pair_state(d, "A", &format!("N{t}"))?.tensor(&psi.relabel([format!("S{t}")])?)?;
    for j in (1..=n).filter(|&j| j != t) {
        state = state.tensor(&pair_state(d, &format!("S{j}"), &format!("N{j}"))?)?;
    }
    state.reorder(params.register()?.wires())
}

/// Runs the protocol end to end with the given decryption route.
pub fn run_protocol(
    params: &ProtocolParams,
    psi: &StateVector,
    seed: Option<u64>,
    route: DecryptionRoute,
) -> Result<ProtocolReport> {
    run_inner(params, psi, seed, route, |state| decrypt(params, state, route))
}

/// Runs the protocol with a caller-supplied decryption operator on
/// `(S_t, N_t, N_j≠t...)`, reported as the dense route.
pub fn run_protocol_with(
    params: &ProtocolParams,
    psi: &StateVector,
    seed: Option<u64>,
    u_dec: &ComplexMatrix,
) -> Result<ProtocolReport> {
    run_inner(params, psi, seed, DecryptionRoute::Dense, |state| embed_apply(state, u_dec, &params.decryption_wires()))
}

fn run_inner(
    params: &ProtocolParams,
    psi: &StateVector,
    seed: Option<u64>,
    route: DecryptionRoute,
    decryptor: impl FnOnce(&StateVector) -> Result<StateVector>,
) -> Result<ProtocolReport> {
    let (d, n, t) = (params.d, params.n, params.target_party);
    let start = Instant::now();
    let ms = |since: Instant| since.elapsed().as_secs_f64() * 1e3;

    let initial = initial_state(params, psi)?;
    let clock = Instant::now();
    let encrypted = encrypt(params, &initial)?;
    let encrypt_ms = ms(clock);

    let clock = Instant::now();
    let marginals = (1..=n)
        .map(|i| Ok(encrypted.reduced_density(&[format!("S{i}")])?.deviation_from_maximally_mixed()))
        .collect::<Result<Vec<_>>>()?;
    let marginals_ms = ms(clock);

    let clock = Instant::now();
    let decrypted = decryptor(&encrypted)?;
    let decrypt_ms = ms(clock);

    let decryption_fidelity = decrypted.reduced_density(&[format!("S{t}")])?.fidelity_with_pure(psi.amplitudes())?;
    let expected = closed_form_final_state(params, psi)?;
    let closed_form_overlap = overlap(&expected, &decrypted)?.norm();

    let bell = bell_amplitudes(d);
    let mut pairs = vec![["A".to_string(), format!("N{t}")]];
    pairs.extend((1..=n).filter(|&j| j != t).map(|j| [format!("S{j}"), format!("N{j}")]));
    let bell_residuals = pairs
        .into_iter()
        .map(|pair| {
            let fidelity = decrypted.reduced_density(&pair)?.fidelity_with_pure(&bell)?;
            Ok(BellResidual { pair, fidelity })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ProtocolReport {
        d,
        n,
        target_party: t,
        seed,
        route,
        marginals,
        decryption_fidelity,
        closed_form_overlap,
        bell_residuals,
        tolerances: Tolerances::default(),
        timings_ms: Some(Timings {
            encrypt: encrypt_ms,
            marginals: marginals_ms,
            decrypt: decrypt_ms,
            total: ms(start),
        }),
    })
}
