//! Quantum circuit simulation in the complex Clifford algebra ℂ₂ₙ.
//!
//! An `n`-qubit state is an element of the minimal left ideal generated by the
//! primitive idempotent `I = f₁f₁† ⋯ fₙfₙ†`, and gates act by left
//! multiplication with unitary algebra elements. A dense statevector simulator
//! in [`oracle`] serves as the reference backend.

pub mod algebra;
pub mod circuit;
pub mod error;
pub mod gates;
pub mod oracle;
pub mod real_ga;
pub mod witt;

pub use algebra::{AlgebraSignature, BladeMask, Multivector};
pub use circuit::{parse_circuit, run_clifford, Circuit, GateOp};
pub use error::{Error, Result};
pub use gates::{apply, super_tensor, Gate, GateElement};
pub use oracle::{compare_backends, fuzz, run_matrix, FuzzConfig, FuzzReport, MatrixState};
pub use witt::{basis_state, state_to_amplitudes, SpinorState, WittContext};
