//! Grover search over N = 2^n items with a single marked index.
//!
//! One search iterate is T = D * I, where I is the oracle reflection that
//! negates the marked basis state and D is the diffusion operator
//! V * J * V built from the uniform-superposition preparation V (one U1 per
//! qubit) and J, the reflection fixing |0...0> and negating everything else.
//! As an operator D equals 2|xi><xi| - I with xi the uniform superposition,
//! so T rotates the plane spanned by xi and the marked state by the fixed
//! angle phi with cos(phi) = 1 - 2/N per step.
//!
//! The runner tracks the exact success probability after every iterate and
//! counts oracle invocations, one per iterate.

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::gates::{Circuit, Gate};
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};

/// The oracle reflection: negates |marked> and fixes every other basis state.
pub fn oracle_reflection(marked: usize, n: usize) -> Result<Gate> {
    Gate::phase_flip_at(marked, n)
}

/// The diffusion circuit V * J * V. J is realized literally as the global
/// sign times the phase flip at zero, so the induced operator is exactly
/// 2|xi><xi| - I with no residual phase.
pub fn diffusion(n: usize) -> Circuit {
    let mut circuit = Circuit::new();
    for q in (0..n).rev() {
        circuit.push(Gate::u1(q));
    }
    circuit.push(Gate::global_phase(Complex64::new(-1.0, 0.0)));
    circuit.push(Gate::phase_flip_at(0, n).expect("zero index always in range"));
    for q in (0..n).rev() {
        circuit.push(Gate::u1(q));
    }
    circuit
}

/// Number of iterates that maximizes the success probability: the initial
/// angle between the uniform state and the marked state, arccos(1/sqrt(N)),
/// divided by the per-step rotation arccos(1 - 2/N), rounded to nearest.
/// Agrees with the asymptotic floor(pi*sqrt(N)/4) at large N.
pub fn grover_iterations(capital_n: u64) -> u64 {
    if capital_n <= 1 {
        return 0;
    }
    let n = capital_n as f64;
    let initial = (1.0 / n.sqrt()).acos();
    let per_step = (1.0 - 2.0 / n).acos();
    (initial / per_step).round() as u64
}

/// Everything observable about one search run.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverRun {
    pub n_qubits: usize,
    pub target: usize,
    pub iterations: u64,
    /// Exact success probability before any iterate and after each one;
    /// length is `iterations + 1`.
    pub trace: Vec<f64>,
    /// Oracle reflections applied; exactly one per iterate.
    pub oracle_calls: u64,
}

/// Run the full search: prepare the uniform state, iterate T the standard
/// number of times, measure. Returns the measured candidate and the run
/// record with its probability trace.
pub fn grover_search<R: Rng + ?Sized>(
    n: usize,
    target: usize,
    rng: &mut R,
) -> Result<(usize, GroverRun)> {
    grover_search_capped(n, target, DEFAULT_MAX_QUBITS, rng)
}

pub fn grover_search_capped<R: Rng + ?Sized>(
    n: usize,
    target: usize,
    max_qubits: usize,
    rng: &mut R,
) -> Result<(usize, GroverRun)> {
    let iterations = grover_iterations(1u64 << n);
    let mut engine = GroverEngine::new(n, target, max_qubits)?;
    for _ in 0..iterations {
        engine.iterate()?;
    }
    let candidate = engine.state.measure(rng)?.basis_index;
    Ok((candidate, engine.into_run()))
}

/// Stepwise driver exposing the state between iterates, used by the
/// geometry checks (plane invariance, per-step rotation angle).
pub struct GroverEngine {
    state: StateVector,
    oracle: Gate,
    diffusion: Circuit,
    run: GroverRun,
}

impl GroverEngine {
    pub fn new(n: usize, target: usize, max_qubits: usize) -> Result<GroverEngine> {
        let mut state = StateVector::basis_state_capped(n, 0, max_qubits)?;
        for q in 0..n {
            state.apply_gate(&Gate::u1(q))?;
        }
        let oracle = oracle_reflection(target, n)?;
        let trace = vec![state.probability_of(target)];
        Ok(GroverEngine {
            state,
            oracle,
            diffusion: diffusion(n),
            run: GroverRun {
                n_qubits: n,
                target,
                iterations: 0,
                trace,
                oracle_calls: 0,
            },
        })
    }

    /// Apply one iterate T = diffusion * oracle and record the new success
    /// probability.
    pub fn iterate(&mut self) -> Result<()> {
        self.state.apply_gate(&self.oracle)?;
        self.run.oracle_calls += 1;
        self.state.apply_circuit(&self.diffusion)?;
        self.run.iterations += 1;
        self.run
            .trace
            .push(self.state.probability_of(self.run.target));
        Ok(())
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn run(&self) -> &GroverRun {
        &self.run
    }

    pub fn into_run(self) -> GroverRun {
        self.run
    }
}
