//! The discrete Fourier transform on n qubits, three ways: as a dense
//! reference matrix, as the O(n^2) gate circuit that produces the transform
//! with its output bits reversed, and as that circuit followed by swaps that
//! undo the reversal.
//!
//! With N = 2^n the transform sends |x> to sum_c exp(2*pi*i*c*x/N)|c>/sqrt(N).
//! The gate realization processes qubits from the most significant down: for
//! k = n-1, ..., 0 it first applies the controlled dyadic phases U2(k, j) for
//! every j > k (qubit k is still classical at that point, the higher qubits
//! already carry their phase ladders) and then mixes qubit k with U1. The
//! result is the transform with output bit c_i delivered on qubit n-1-i; the
//! plain variant appends floor(n/2) swaps to restore bit order, and the
//! factoring pipeline instead folds the reversal into classical decoding of
//! the measured index.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::gates::{Circuit, Gate};
use crate::matrix::CMat;

/// Dense N x N transform matrix: entry (c, x) = exp(2*pi*i*c*x/N)/sqrt(N).
pub fn dft_matrix(n: usize) -> CMat {
    let dim = 1usize << n;
    let scale = 1.0 / (dim as f64).sqrt();
    CMat::from_fn(dim, dim, |c, x| {
        // reduce the exponent mod N before going to floating point
        let exponent = (c * x) % dim;
        Complex64::from_polar(scale, TAU * exponent as f64 / dim as f64)
    })
}

/// The transform circuit with bit-reversed output order:
/// n U1 gates and n(n-1)/2 controlled phases, nothing else.
pub fn qft_circuit_bitrev(n: usize) -> Circuit {
    let mut circuit = Circuit::new();
    for k in (0..n).rev() {
        for j in k + 1..n {
            circuit.push(Gate::u2(k, j).expect("k < j by construction"));
        }
        circuit.push(Gate::u1(k));
    }
    circuit
}

/// The transform circuit in natural bit order: the bit-reversed core
/// followed by floor(n/2) swaps.
pub fn qft_circuit(n: usize) -> Circuit {
    let mut circuit = qft_circuit_bitrev(n);
    for i in 0..n / 2 {
        circuit.push(Gate::swap(i, n - 1 - i).expect("distinct halves"));
    }
    circuit
}

/// Reverse the low n bits of x.
pub fn bit_reverse(x: usize, n: usize) -> usize {
    let mut out = 0usize;
    for i in 0..n {
        out |= ((x >> i) & 1) << (n - 1 - i);
    }
    out
}
