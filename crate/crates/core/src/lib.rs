//! Dense state-vector simulation of small quantum registers, together with
//! the classical machinery the standard algorithm suite needs: Boolean
//! circuits and their algebraic normal forms, SAT instances with a
//! brute-force solver, compilation of Boolean circuits into reversible ones,
//! the discrete Fourier transform as an O(n^2) gate circuit, Grover search
//! with exact success tracking, and end-to-end Shor factoring with its
//! classical pre/post-processing.
//!
//! Everything is sized for desk-scale verification: registers up to 26
//! qubits, with exact reference oracles (dense matrices, exhaustive
//! enumeration, direct summation of outcome distributions) backing every
//! quantum path.
//!
//! ```
//! use qsim_core::{Gate, StateVector};
//!
//! let mut state = StateVector::basis_state(2, 0).unwrap();
//! state.apply_gate(&Gate::u1(0)).unwrap();
//! state.apply_gate(&Gate::cnot(0, 1).unwrap()).unwrap();
//! assert!((state.probability_of(0b00) - 0.5).abs() < 1e-12);
//! assert!((state.probability_of(0b11) - 0.5).abs() < 1e-12);
//! ```

pub mod boolean;
pub mod corpus;
pub mod error;
pub mod gates;
pub mod grover;
pub mod matrix;
pub mod qft;
pub mod reversible;
pub mod shor;
pub mod statevector;

pub use error::{Error, ModulusRejection, Result};
pub use gates::{Circuit, Gate};
pub use matrix::CMat;
pub use statevector::{MeasurementOutcome, StateDump, StateVector, DEFAULT_MAX_QUBITS};
