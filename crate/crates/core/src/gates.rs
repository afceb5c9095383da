//! The gate set and circuits built from it.
//!
//! The primitive gates are `U1` (the real 2x2 involution mixing |0> and |1>),
//! the controlled dyadic phase `U2`, the classical involutions
//! NOT/CNOT/TOFFOLI/SWAP, a point phase flip used as a search oracle, and
//! lifts of arbitrary classical permutations to unitaries. Gates are
//! immutable after construction and cheap to clone; permutation tables are
//! shared behind an `Arc`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMat;

/// One unitary primitive, carrying the qubit indices it touches.
///
/// A gate never names the same qubit twice; the constructors reject such
/// requests, so within one gate every wire is distinct by construction.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// |0> -> (|0>+|1>)/sqrt(2), |1> -> (|0>-|1>)/sqrt(2) on `target`.
    U1 {
        target: usize,
    },
    /// Multiplies |11> on the qubit pair (k, j), k < j, by exp(i*pi/2^(j-k)).
    U2 {
        k: usize,
        j: usize,
    },
    Not {
        target: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Toffoli {
        c1: usize,
        c2: usize,
        target: usize,
    },
    Swap {
        a: usize,
        b: usize,
    },
    /// Diagonal reflection: negates the amplitude of one basis index of the
    /// low `span` qubits and fixes every other basis state.
    PhaseFlipAt {
        index: usize,
        span: usize,
    },
    /// A classical bijection F on the low `span` qubits lifted to the unitary
    /// sending |x> to |F(x)>; amplitudes are carried unchanged.
    Permutation {
        table: Arc<[usize]>,
        span: usize,
    },
    /// Scalar phase applied to the whole state; used to express operators
    /// whose literal definition carries a global sign.
    GlobalPhase {
        phase: Complex64,
    },
}

impl Gate {
    pub fn u1(target: usize) -> Gate {
        Gate::U1 { target }
    }

    /// Controlled dyadic phase on the pair (k, j). Requires `k < j`.
    pub fn u2(k: usize, j: usize) -> Result<Gate> {
        if k >= j {
            return Err(Error::PhasePairOrder { k, j });
        }
        Ok(Gate::U2 { k, j })
    }

    pub fn not(target: usize) -> Gate {
        Gate::Not { target }
    }

    pub fn cnot(control: usize, target: usize) -> Result<Gate> {
        if control == target {
            return Err(Error::DuplicateQubit { qubit: control });
        }
        Ok(Gate::Cnot { control, target })
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Result<Gate> {
        if c1 == c2 || c1 == target || c2 == target {
            let qubit = if c1 == c2 { c1 } else { target };
            return Err(Error::DuplicateQubit { qubit });
        }
        Ok(Gate::Toffoli { c1, c2, target })
    }

    pub fn swap(a: usize, b: usize) -> Result<Gate> {
        if a == b {
            return Err(Error::DuplicateQubit { qubit: a });
        }
        Ok(Gate::Swap { a, b })
    }

    /// Sign flip at one basis index of a `span`-qubit block.
    pub fn phase_flip_at(index: usize, span: usize) -> Result<Gate> {
        let dim = 1usize
            .checked_shl(span as u32)
            .ok_or(Error::CapacityExceeded {
                requested: span,
                max: usize::BITS as usize - 1,
            })?;
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, dim });
        }
        Ok(Gate::PhaseFlipAt { index, span })
    }

    /// Lift a classical permutation table to a unitary. The table length must
    /// be a power of two and the table itself a bijection on `0..len`.
    pub fn permutation(table: Vec<usize>) -> Result<Gate> {
        let len = table.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::TableNotPowerOfTwo { len });
        }
        let mut seen = vec![false; len];
        for &v in &table {
            if v >= len || seen[v] {
                return Err(Error::NotABijection { len });
            }
            seen[v] = true;
        }
        let span = len.trailing_zeros() as usize;
        Ok(Gate::Permutation {
            table: table.into(),
            span,
        })
    }

    /// Global scalar of unit modulus.
    pub fn global_phase(phase: Complex64) -> Gate {
        debug_assert!(
            (phase.norm() - 1.0).abs() < 1e-12,
            "global phase must be unimodular"
        );
        Gate::GlobalPhase { phase }
    }

    /// Number of qubits the gate's matrix acts on.
    pub fn span(&self) -> usize {
        match self {
            Gate::U1 { .. } | Gate::Not { .. } => 1,
            Gate::U2 { .. } | Gate::Cnot { .. } | Gate::Swap { .. } => 2,
            Gate::Toffoli { .. } => 3,
            Gate::PhaseFlipAt { span, .. } | Gate::Permutation { span, .. } => *span,
            Gate::GlobalPhase { .. } => 0,
        }
    }

    /// Qubits the gate touches, listed so that the first entry is the most
    /// significant bit of the local index used by [`Gate::matrix`]. Block
    /// gates (phase flip, permutation) read the low `span` qubits verbatim,
    /// so their listing is `span-1, ..., 1, 0`.
    pub fn matrix_qubit_order(&self) -> Vec<usize> {
        match *self {
            Gate::U1 { target } | Gate::Not { target } => vec![target],
            Gate::U2 { k, j } => vec![k, j],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Toffoli { c1, c2, target } => vec![c1, c2, target],
            Gate::Swap { a, b } => vec![a, b],
            Gate::PhaseFlipAt { span, .. } | Gate::Permutation { span, .. } => {
                (0..span).rev().collect()
            }
            Gate::GlobalPhase { .. } => vec![],
        }
    }

    /// Largest qubit index the gate references, if it references any.
    pub fn max_qubit(&self) -> Option<usize> {
        self.matrix_qubit_order().into_iter().max()
    }

    /// The dense 2^span x 2^span matrix of the gate over its touched qubits,
    /// in the qubit order given by [`Gate::matrix_qubit_order`].
    pub fn matrix(&self) -> CMat {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Gate::U1 { .. } => {
                let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
                let mut m = CMat::zeros(2, 2);
                m[(0, 0)] = s;
                m[(0, 1)] = s;
                m[(1, 0)] = s;
                m[(1, 1)] = -s;
                m
            }
            Gate::U2 { k, j } => {
                let mut m = CMat::identity(4);
                m[(3, 3)] = dyadic_phase(j - k);
                m
            }
            Gate::Not { .. } => {
                let mut m = CMat::zeros(2, 2);
                m[(0, 1)] = one;
                m[(1, 0)] = one;
                m
            }
            Gate::Cnot { .. } => {
                // local index = control*2 + target
                let mut m = CMat::identity(4);
                m[(2, 2)] = Complex64::new(0.0, 0.0);
                m[(3, 3)] = Complex64::new(0.0, 0.0);
                m[(2, 3)] = one;
                m[(3, 2)] = one;
                m
            }
            Gate::Toffoli { .. } => {
                // local index = c1*4 + c2*2 + target; swaps 6 and 7
                let mut m = CMat::identity(8);
                m[(6, 6)] = Complex64::new(0.0, 0.0);
                m[(7, 7)] = Complex64::new(0.0, 0.0);
                m[(6, 7)] = one;
                m[(7, 6)] = one;
                m
            }
            Gate::Swap { .. } => {
                let mut m = CMat::identity(4);
                m[(1, 1)] = Complex64::new(0.0, 0.0);
                m[(2, 2)] = Complex64::new(0.0, 0.0);
                m[(1, 2)] = one;
                m[(2, 1)] = one;
                m
            }
            Gate::PhaseFlipAt { index, span } => {
                let dim = 1usize << span;
                let mut m = CMat::identity(dim);
                m[(*index, *index)] = -one;
                m
            }
            Gate::Permutation { table, .. } => {
                let dim = table.len();
                let mut m = CMat::zeros(dim, dim);
                for (x, &fx) in table.iter().enumerate() {
                    m[(fx, x)] = one;
                }
                m
            }
            Gate::GlobalPhase { phase } => {
                let mut m = CMat::zeros(1, 1);
                m[(0, 0)] = *phase;
                m
            }
        }
    }
}

/// exp(i*pi / 2^distance), computed fresh from the dyadic exponent.
pub(crate) fn dyadic_phase(distance: usize) -> Complex64 {
    Complex64::from_polar(1.0, PI * 0.5f64.powi(distance as i32))
}

/// An ordered gate list. No fusion or reordering is ever applied; gates act
/// in exactly the sequence they were pushed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new() -> Circuit {
        Circuit::default()
    }

    pub fn from_gates(gates: Vec<Gate>) -> Circuit {
        Circuit { gates }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Gate> {
        self.gates.iter()
    }

    /// Parse the one-gate-per-line text format:
    /// `U1 q`, `U2 k j`, `NOT q`, `CNOT c t`, `TOFFOLI a b t`, `SWAP a b`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut gates = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let mut parts = line.split_whitespace();
            let op = parts.next().unwrap();
            let args: Vec<usize> = parts
                .map(|p| {
                    p.parse::<usize>().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("expected a qubit index, found `{p}`"),
                    })
                })
                .collect::<Result<_>>()?;
            let arity_err = |want: usize| Error::Parse {
                line: lineno,
                message: format!(
                    "`{op}` takes {want} qubit argument(s), found {}",
                    args.len()
                ),
            };
            let gate = match op {
                "U1" => {
                    if args.len() != 1 {
                        return Err(arity_err(1));
                    }
                    Gate::u1(args[0])
                }
                "U2" => {
                    if args.len() != 2 {
                        return Err(arity_err(2));
                    }
                    Gate::u2(args[0], args[1]).map_err(|e| parse_wrap(lineno, e))?
                }
                "NOT" => {
                    if args.len() != 1 {
                        return Err(arity_err(1));
                    }
                    Gate::not(args[0])
                }
                "CNOT" => {
                    if args.len() != 2 {
                        return Err(arity_err(2));
                    }
                    Gate::cnot(args[0], args[1]).map_err(|e| parse_wrap(lineno, e))?
                }
                "TOFFOLI" => {
                    if args.len() != 3 {
                        return Err(arity_err(3));
                    }
                    Gate::toffoli(args[0], args[1], args[2]).map_err(|e| parse_wrap(lineno, e))?
                }
                "SWAP" => {
                    if args.len() != 2 {
                        return Err(arity_err(2));
                    }
                    Gate::swap(args[0], args[1]).map_err(|e| parse_wrap(lineno, e))?
                }
                other => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("unknown gate `{other}`"),
                    })
                }
            };
            gates.push(gate);
        }
        Ok(Circuit { gates })
    }
}

fn parse_wrap(line: usize, e: Error) -> Error {
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::U1 { target } => write!(f, "U1 {target}"),
            Gate::U2 { k, j } => write!(f, "U2 {k} {j}"),
            Gate::Not { target } => write!(f, "NOT {target}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Toffoli { c1, c2, target } => write!(f, "TOFFOLI {c1} {c2} {target}"),
            Gate::Swap { a, b } => write!(f, "SWAP {a} {b}"),
            // The remaining kinds are not part of the text interchange format.
            Gate::PhaseFlipAt { index, span } => {
                write!(f, "# PHASEFLIP {index} over {span} qubits")
            }
            Gate::Permutation { span, .. } => write!(f, "# PERMUTATION over {span} qubits"),
            Gate::GlobalPhase { phase } => write!(f, "# GLOBALPHASE {}+{}i", phase.re, phase.im),
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for gate in &self.gates {
            writeln!(f, "{gate}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Circuit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Circuit> {
        Circuit::parse(s)
    }
}

impl<'a> IntoIterator for &'a Circuit {
    type Item = &'a Gate;
    type IntoIter = std::slice::Iter<'a, Gate>;
    fn into_iter(self) -> Self::IntoIter {
        self.gates.iter()
    }
}
