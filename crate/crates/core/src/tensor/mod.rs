//! Dense complex linear algebra over multi-qudit registers.
//!
//! Every register uses a single qudit dimension `d`. Basis kets are indexed
//! big-endian in base `d`: the first wire of the register is the most
//! significant digit.

mod density;
mod matrix;
mod register;
mod state;

pub use density::{partial_trace_matrix, DensityMatrix};
pub use matrix::{kron, kron_all, ComplexMatrix, UnitarityReport};
pub use register::{Register, SizeCap};
pub use state::{apply_to_amplitudes, embed_apply, overlap, random_state, StateVector};
