//! Gate-level circuits: a small IR, builders for the encryption and
//! decryption circuits, a dense evaluator and the gate-count model.

mod builders;
mod circuit;
mod counts;
mod gate;

pub use builders::{
    build_enc_circuit, build_tbar, build_tkl, build_udec_circuit, build_vpx_circuit, build_vpz_circuit, q_diagonal,
    q_gate,
};
pub use circuit::{circuit_to_unitary, Circuit};
pub use counts::{
    counts_csv, counts_table, gate_counts, tally, GateCounts, Tally, COUNTS_CSV_HEADER, DEFAULT_D_RANGE, DEFAULT_N_SET,
};
pub use gate::{GateKind, GateOp};
