//! Shared helpers for the benchmark targets.

use qsim_core::{Gate, StateVector};

/// A register of `n` qubits prepared in the uniform superposition.
pub fn uniform_state(n: usize) -> StateVector {
    let mut state = StateVector::basis_state(n, 0).expect("within default capacity");
    for q in 0..n {
        state.apply_gate(&Gate::u1(q)).expect("qubit in range");
    }
    state
}
