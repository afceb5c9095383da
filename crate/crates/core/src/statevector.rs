//! Dense state vectors and the in-place gate kernels.
//!
//! A register of n qubits is stored as 2^n complex amplitudes in double
//! precision. Basis index x encodes the register little-endian: bit i of x
//! is the state of qubit i. Display strings render the conventional
//! big-endian ket, so `|10>` is index 1 on two qubits.
//!
//! Kernels mutate the amplitude array in place and preserve the norm to
//! within machine rounding. Nothing ever renormalizes silently: a norm that
//! drifts beyond 1e-6 makes [`StateVector::measure`] fail, and smaller drift
//! is observable through [`StateVector::norm_sqr`].

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{Circuit, Gate};

/// Default cap on register width. 2^26 amplitudes = 1 GiB of f64 pairs.
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Dense complex state vector over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

/// Result of observing the register in the computational basis.
///
/// `probability` is the pre-collapse probability of the observed index,
/// i.e. the squared modulus of its amplitude before the measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementOutcome {
    pub basis_index: usize,
    pub probability: f64,
}

impl StateVector {
    /// The classical state |x> on `n_qubits` qubits.
    pub fn basis_state(n_qubits: usize, x: usize) -> Result<StateVector> {
        Self::basis_state_capped(n_qubits, x, DEFAULT_MAX_QUBITS)
    }

    /// As [`StateVector::basis_state`] with an explicit width cap. The cap is
    /// checked before any allocation is attempted.
    pub fn basis_state_capped(n_qubits: usize, x: usize, max_qubits: usize) -> Result<StateVector> {
        if n_qubits > max_qubits {
            return Err(Error::CapacityExceeded {
                requested: n_qubits,
                max: max_qubits,
            });
        }
        let dim = 1usize << n_qubits;
        if x >= dim {
            return Err(Error::BasisIndexOutOfRange { index: x, dim });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[x] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// Wrap an explicit amplitude vector (length must be a power of two).
    /// The caller is responsible for normalization; `norm_sqr` reports it.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<StateVector> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::TableNotPowerOfTwo { len });
        }
        Ok(StateVector {
            n_qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, x: usize) -> Complex64 {
        self.amps[x]
    }

    /// Squared modulus of the amplitude at basis index `x`.
    pub fn probability_of(&self, x: usize) -> f64 {
        self.amps[x].norm_sqr()
    }

    /// Sum of all outcome probabilities; 1 for a normalized state.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Bytes held by the amplitude array.
    pub fn memory_bytes(&self) -> usize {
        self.amps.capacity() * std::mem::size_of::<Complex64>()
    }

    /// Apply one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        self.validate_gate(gate)?;
        match *gate {
            Gate::U1 { target } => kernel_u1(&mut self.amps, target),
            Gate::U2 { k, j } => kernel_u2(&mut self.amps, k, j),
            Gate::Not { target } => kernel_not(&mut self.amps, target),
            Gate::Cnot { control, target } => kernel_cnot(&mut self.amps, control, target),
            Gate::Toffoli { c1, c2, target } => kernel_toffoli(&mut self.amps, c1, c2, target),
            Gate::Swap { a, b } => kernel_swap(&mut self.amps, a, b),
            Gate::PhaseFlipAt { index, span } => kernel_phase_flip(&mut self.amps, index, span),
            Gate::Permutation { ref table, span } => {
                kernel_permutation(&mut self.amps, table, span)
            }
            Gate::GlobalPhase { phase } => {
                for a in &mut self.amps {
                    *a *= phase;
                }
            }
        }
        Ok(())
    }

    /// Apply every gate of a circuit in list order.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        for gate in circuit {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    fn validate_gate(&self, gate: &Gate) -> Result<()> {
        if let Some(max) = gate.max_qubit() {
            if max >= self.n_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: max,
                    n_qubits: self.n_qubits,
                });
            }
        }
        Ok(())
    }

    /// Observe the register in the computational basis: sample a basis
    /// index with probability |amplitude|^2 and collapse onto it.
    ///
    /// Fails with [`Error::NormCorrupted`] when the norm has drifted more
    /// than 1e-6 from 1.
    pub fn measure<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<MeasurementOutcome> {
        let outcome = self.sample_index(rng)?;
        self.amps.fill(Complex64::new(0.0, 0.0));
        self.amps[outcome.basis_index] = Complex64::new(1.0, 0.0);
        Ok(outcome)
    }

    /// Sample an outcome without collapsing the state. Repeated calls are
    /// statistically identical to preparing the same state fresh and
    /// measuring it once.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<MeasurementOutcome> {
        let total = self.norm_sqr();
        if (total - 1.0).abs() > 1e-6 {
            return Err(Error::NormCorrupted { norm: total });
        }
        let target = rng.gen::<f64>() * total;
        let mut cumulative = 0.0;
        let mut last_nonzero = 0usize;
        for (x, amp) in self.amps.iter().enumerate() {
            let p = amp.norm_sqr();
            if p > 0.0 {
                last_nonzero = x;
            }
            cumulative += p;
            if cumulative > target {
                return Ok(MeasurementOutcome {
                    basis_index: x,
                    probability: p,
                });
            }
        }
        // Rounding pushed the target past the final cumulative sum.
        Ok(MeasurementOutcome {
            basis_index: last_nonzero,
            probability: self.amps[last_nonzero].norm_sqr(),
        })
    }

    /// Tensor product. `self` occupies the low bits of the combined index and
    /// `high` the high bits: amplitude(y*2^n_self + x) = self(x) * high(y).
    pub fn tensor(&self, high: &StateVector) -> Result<StateVector> {
        self.tensor_capped(high, DEFAULT_MAX_QUBITS)
    }

    pub fn tensor_capped(&self, high: &StateVector, max_qubits: usize) -> Result<StateVector> {
        let n = self.n_qubits + high.n_qubits;
        if n > max_qubits {
            return Err(Error::CapacityExceeded {
                requested: n,
                max: max_qubits,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n];
        for (y, hb) in high.amps.iter().enumerate() {
            if *hb == Complex64::new(0.0, 0.0) {
                continue;
            }
            let base = y << self.n_qubits;
            for (x, lb) in self.amps.iter().enumerate() {
                amps[base | x] = lb * hb;
            }
        }
        Ok(StateVector { n_qubits: n, amps })
    }

    /// Serializable dump: `[re, im]` pairs in index order plus the width.
    pub fn dump(&self) -> StateDump {
        StateDump {
            n_qubits: self.n_qubits,
            amplitudes: self.amps.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

/// JSON-facing state dump format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateDump {
    pub n_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

// --- kernels ------------------------------------------------------------
//
// Pair enumeration: to visit all indices with a fixed value at bit `pos`,
// iterate a compressed counter and re-insert a zero bit at `pos`.

#[inline(always)]
fn insert_zero_bit(x: usize, pos: usize) -> usize {
    let low = x & ((1usize << pos) - 1);
    ((x >> pos) << (pos + 1)) | low
}

fn kernel_u1(amps: &mut [Complex64], target: usize) {
    let mask = 1usize << target;
    let half = amps.len() >> 1;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..half {
        let i0 = insert_zero_bit(i, target);
        let i1 = i0 | mask;
        let a0 = amps[i0];
        let a1 = amps[i1];
        amps[i0] = (a0 + a1) * s;
        amps[i1] = (a0 - a1) * s;
    }
}

fn kernel_u2(amps: &mut [Complex64], k: usize, j: usize) {
    debug_assert!(k < j);
    let phase = crate::gates::dyadic_phase(j - k);
    let quarter = amps.len() >> 2;
    let both = (1usize << k) | (1usize << j);
    for i in 0..quarter {
        let idx = insert_zero_bit(insert_zero_bit(i, k), j) | both;
        amps[idx] *= phase;
    }
}

fn kernel_not(amps: &mut [Complex64], target: usize) {
    let mask = 1usize << target;
    let half = amps.len() >> 1;
    for i in 0..half {
        let i0 = insert_zero_bit(i, target);
        amps.swap(i0, i0 | mask);
    }
}

fn kernel_cnot(amps: &mut [Complex64], control: usize, target: usize) {
    let (lo, hi) = if control < target {
        (control, target)
    } else {
        (target, control)
    };
    let cmask = 1usize << control;
    let tmask = 1usize << target;
    let quarter = amps.len() >> 2;
    for i in 0..quarter {
        let idx = insert_zero_bit(insert_zero_bit(i, lo), hi) | cmask;
        amps.swap(idx, idx | tmask);
    }
}

fn kernel_toffoli(amps: &mut [Complex64], c1: usize, c2: usize, target: usize) {
    let mut pos = [c1, c2, target];
    pos.sort_unstable();
    let cmask = (1usize << c1) | (1usize << c2);
    let tmask = 1usize << target;
    let eighth = amps.len() >> 3;
    for i in 0..eighth {
        let idx =
            insert_zero_bit(insert_zero_bit(insert_zero_bit(i, pos[0]), pos[1]), pos[2]) | cmask;
        amps.swap(idx, idx | tmask);
    }
}

fn kernel_swap(amps: &mut [Complex64], a: usize, b: usize) {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let amask = 1usize << a;
    let bmask = 1usize << b;
    let quarter = amps.len() >> 2;
    // visit indices with bit a set and bit b clear; exchange with the mirror
    for i in 0..quarter {
        let idx = insert_zero_bit(insert_zero_bit(i, lo), hi) | amask;
        amps.swap(idx, idx ^ amask ^ bmask);
    }
}

fn kernel_phase_flip(amps: &mut [Complex64], index: usize, span: usize) {
    let blocks = amps.len() >> span;
    for high in 0..blocks {
        let idx = (high << span) | index;
        amps[idx] = -amps[idx];
    }
}

fn kernel_permutation(amps: &mut [Complex64], table: &[usize], span: usize) {
    let block = 1usize << span;
    debug_assert_eq!(table.len(), block);
    let blocks = amps.len() >> span;
    let mut scratch = vec![Complex64::new(0.0, 0.0); block];
    for high in 0..blocks {
        let base = high << span;
        scratch.copy_from_slice(&amps[base..base + block]);
        for (x, &fx) in table.iter().enumerate() {
            amps[base + fx] = scratch[x];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn uniform(n: usize) -> StateVector {
        let mut sv = StateVector::basis_state(n, 0).unwrap();
        for q in 0..n {
            sv.apply_gate(&Gate::u1(q)).unwrap();
        }
        sv
    }

    #[test]
    fn basis_state_places_the_single_amplitude() {
        let sv = StateVector::basis_state(1, 0).unwrap();
        assert_eq!(sv.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);

        let sv = StateVector::basis_state(2, 3).unwrap();
        assert_eq!(
            sv.amplitudes(),
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );

        let sv = StateVector::basis_state(3, 5).unwrap();
        for (x, amp) in sv.amplitudes().iter().enumerate() {
            assert_eq!(amp.norm_sqr() > 0.0, x == 5);
        }
    }

    #[test]
    fn basis_state_rejects_out_of_range_index() {
        assert_eq!(
            StateVector::basis_state(2, 4).unwrap_err(),
            Error::BasisIndexOutOfRange { index: 4, dim: 4 }
        );
    }

    #[test]
    fn capacity_is_checked_before_allocation() {
        assert_eq!(
            StateVector::basis_state_capped(20, 0, 12).unwrap_err(),
            Error::CapacityExceeded {
                requested: 20,
                max: 12
            }
        );
    }

    #[test]
    fn u1_on_zero_gives_equal_superposition() {
        let mut sv = StateVector::basis_state(1, 0).unwrap();
        sv.apply_gate(&Gate::u1(0)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sv.amplitude(0) - c(s, 0.0)).norm() < 1e-15);
        assert!((sv.amplitude(1) - c(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn u1_twice_is_identity() {
        let mut sv = StateVector::basis_state(1, 0).unwrap();
        let circuit = Circuit::from_gates(vec![Gate::u1(0), Gate::u1(0)]);
        sv.apply_circuit(&circuit).unwrap();
        assert!((sv.amplitude(0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(sv.amplitude(1).norm() < 1e-15);
    }

    #[test]
    fn u2_phases_the_both_ones_component() {
        let mut sv = StateVector::basis_state(2, 3).unwrap();
        sv.apply_gate(&Gate::u2(0, 1).unwrap()).unwrap();
        assert!((sv.amplitude(3) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn not_flips_qubit_one() {
        // |01> in ket notation = index 1; NOT on qubit 1 sends it to |11> = 3
        let mut sv = StateVector::basis_state(2, 1).unwrap();
        sv.apply_gate(&Gate::not(1)).unwrap();
        assert_eq!(sv.probability_of(3), 1.0);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let mut sv = uniform(3);
        let before = sv.clone();
        sv.apply_circuit(&Circuit::new()).unwrap();
        assert_eq!(sv, before);
    }

    #[test]
    fn one_u1_per_qubit_builds_uniform_superposition() {
        let sv = uniform(4);
        for x in 0..16 {
            assert!((sv.probability_of(x) - 1.0 / 16.0).abs() < 1e-12);
        }
    }

    #[test]
    fn probability_examples() {
        let sv = uniform(3);
        assert!((sv.probability_of(5) - 0.125).abs() < 1e-12);
        let sv = StateVector::basis_state(1, 0).unwrap();
        assert_eq!(sv.probability_of(1), 0.0);
        let mut sv = StateVector::basis_state(1, 0).unwrap();
        sv.apply_gate(&Gate::u1(0)).unwrap();
        assert!((sv.probability_of(0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn gate_application_rejects_out_of_range_qubits() {
        let mut sv = StateVector::basis_state(2, 0).unwrap();
        assert_eq!(
            sv.apply_gate(&Gate::u1(2)).unwrap_err(),
            Error::QubitOutOfRange {
                qubit: 2,
                n_qubits: 2
            }
        );
        assert!(sv.apply_gate(&Gate::cnot(0, 3).unwrap()).is_err());
    }

    #[test]
    fn measure_on_a_basis_state_is_deterministic() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..20 {
            let mut sv = StateVector::basis_state(3, 5).unwrap();
            let out = sv.measure(&mut rng).unwrap();
            assert_eq!(out.basis_index, 5);
            assert!((out.probability - 1.0).abs() < 1e-12);
            assert_eq!(sv.probability_of(5), 1.0);
        }
    }

    #[test]
    fn measure_respects_support() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..200 {
            let mut sv = StateVector::basis_state(1, 0).unwrap();
            sv.apply_gate(&Gate::u1(0)).unwrap();
            let out = sv.measure(&mut rng).unwrap();
            assert!(out.basis_index < 2);
            assert!((out.probability - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn measure_frequencies_match_probabilities() {
        // 40000 seeded samples of the uniform 2-qubit state: each outcome
        // frequency must sit within 0.25 +/- 0.01 (about 4.6 binomial sigma).
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        let sv = uniform(2);
        let mut counts = [0u32; 4];
        for _ in 0..40_000 {
            let out = sv.sample_index(&mut rng).unwrap();
            counts[out.basis_index] += 1;
        }
        for &count in &counts {
            let freq = f64::from(count) / 40_000.0;
            assert!((freq - 0.25).abs() < 0.01, "frequency {freq} off");
        }
    }

    #[test]
    fn measure_rejects_corrupted_norm() {
        let mut sv = StateVector::from_amplitudes(vec![c(2.0, 0.0), c(0.0, 0.0)]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        assert!(matches!(
            sv.measure(&mut rng),
            Err(Error::NormCorrupted { .. })
        ));
    }

    #[test]
    fn tensor_products() {
        let zero = StateVector::basis_state(1, 0).unwrap();
        let one = StateVector::basis_state(1, 1).unwrap();
        // |0> tensor |1> puts the high qubit at 1: index 2 on two qubits
        let sv = zero.tensor(&one).unwrap();
        assert_eq!(sv.probability_of(2), 1.0);

        let u = uniform(1);
        let uu = u.tensor(&u).unwrap();
        for x in 0..4 {
            assert!((uu.probability_of(x) - 0.25).abs() < 1e-12);
        }

        // norm multiplicativity
        assert!((uu.norm_sqr() - u.norm_sqr() * u.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn permutation_kernel_applies_blockwise() {
        // swap the low two qubits of a 3-qubit register via a span-2 table
        let table = vec![0, 2, 1, 3];
        let gate = Gate::permutation(table).unwrap();
        let mut sv = StateVector::basis_state(3, 0b101).unwrap();
        sv.apply_gate(&gate).unwrap();
        // low bits 01 -> 10, high bit kept: 0b110
        assert_eq!(sv.probability_of(0b110), 1.0);
    }

    #[test]
    fn norm_is_preserved_by_every_kind() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let n = 4;
        let gates = vec![
            Gate::u1(2),
            Gate::u2(1, 3).unwrap(),
            Gate::not(0),
            Gate::cnot(2, 0).unwrap(),
            Gate::toffoli(3, 1, 0).unwrap(),
            Gate::swap(0, 3).unwrap(),
            Gate::phase_flip_at(9, 4).unwrap(),
            Gate::permutation((0..16).rev().collect()).unwrap(),
            Gate::global_phase(c(0.0, 1.0)),
        ];
        // random normalized state
        let mut amps: Vec<Complex64> = (0..16)
            .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        let mut sv = StateVector::from_amplitudes(amps).unwrap();
        assert_eq!(sv.n_qubits(), n);
        for gate in &gates {
            sv.apply_gate(gate).unwrap();
            assert!(
                (sv.norm_sqr() - 1.0).abs() < 1e-12,
                "norm drifted after {gate}"
            );
        }
    }

    #[test]
    fn dump_serializes_re_im_pairs() {
        let sv = StateVector::basis_state(1, 1).unwrap();
        let dump = sv.dump();
        assert_eq!(dump.n_qubits, 1);
        assert_eq!(dump.amplitudes, vec![[0.0, 0.0], [1.0, 0.0]]);
    }
}
