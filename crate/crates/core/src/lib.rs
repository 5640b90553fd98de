//! Numerical simulator and verification suite for cloning encrypted qudit
//! states.
//!
//! The crate is organised bottom-up:
//!
//! - [`tensor`]: dense complex matrices, multi-qudit registers, state
//!   vectors, density matrices, operator embedding and partial traces.
//! - [`weyl`]: shift/phase (Weyl) operators, the qudit Fourier transform,
//!   controlled gates, SWAP and the generalized Bell basis.
//! - [`cazac`]: Zadoff-Chu / Chu sequences, their correlation analytics and
//!   the coefficient grid used by the encryption operator.
//! - [`protocol`]: the encryption and decryption unitaries, end-to-end
//!   simulation and the identity suite.
//! - [`circuits`]: a small gate-level IR, builders for the encryption and
//!   decryption circuits, a unitary evaluator and the gate-count model.

pub mod cazac;
pub mod circuits;
pub mod error;
pub mod protocol;
pub mod tensor;
pub mod weyl;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Default tolerance for equality, unitarity and hermiticity checks.
pub const DEFAULT_TOL: f64 = 1e-10;
