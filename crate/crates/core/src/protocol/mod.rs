//! Encryption and decryption unitaries, end-to-end simulation and the
//! numerical identity suite.
//!
//! Operators are built on at most `n + 1` wires: the encryption unitary on
//! `(A, S1..Sn)` and the decryption unitary on `(S_t, N_t, N_j≠t...)` for the
//! target party `t`. They are applied to the `2n + 1`-wire register through
//! [`embed_apply`](crate::tensor::embed_apply) and never materialized on the
//! full register.

mod decryption;
mod encryption;
mod params;
mod run;
mod verify;

pub use decryption::{c_gate, decryption_core, u_dec_dense, u_dec_literal, weyl_tail};
pub use encryption::{exp_generalization, pauli_product, u_enc, u_enc_double_sum, v_of_p, Axis};
pub use params::ProtocolParams;
pub use run::{
    closed_form_final_state, decrypt, encrypt, initial_state, run_protocol, run_protocol_with, BellResidual,
    DecryptionRoute, ProtocolReport, Timings, Tolerances,
};
pub use verify::{verify_identities, IdentityCheck, IdentityReport, VerifyOptions};
