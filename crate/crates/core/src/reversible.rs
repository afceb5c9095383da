//! Compilation of Boolean circuits into reversible ones.
//!
//! A compiled circuit acts on three registers laid out low-to-high as
//! input (m wires), output (n wires), scratch (one wire per fresh
//! intermediate). Its defining contract: started with the scratch register
//! cleared, it computes
//!
//! ```text
//! H(x, y, 0) = (x, F(x) xor y, 0)
//! ```
//!
//! where F is the function of the source circuit. The construction runs a
//! forward pass (each classical gate replaced by its reversible counterpart
//! f~(x, y) = (x, f(x) xor y) writing into a fresh scratch wire), copies the
//! result wires into the output register with CNOTs, then replays the
//! forward pass in reverse order to restore every scratch wire to zero.
//! Input wires are never written, and scratch wires are never reused before
//! the uncompute pass, so the mirror is literal.

use crate::boolean::{BoolGate, BooleanCircuit};
use crate::error::{Error, Result};
use crate::gates::Gate;

/// Wire ceiling for compilation. Bit vectors are simulated as u64 masks.
pub const DEFAULT_MAX_WIRES: usize = 63;

/// One reversible gate; every kind is an involution on bit vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RevGate {
    Not { target: usize },
    Cnot { control: usize, target: usize },
    Toffoli { c1: usize, c2: usize, target: usize },
    Swap { a: usize, b: usize },
}

impl RevGate {
    /// Apply the gate's classical table to a packed bit vector.
    #[inline]
    pub fn apply(self, bits: u64) -> u64 {
        match self {
            RevGate::Not { target } => bits ^ (1 << target),
            RevGate::Cnot { control, target } => {
                if bits >> control & 1 == 1 {
                    bits ^ (1 << target)
                } else {
                    bits
                }
            }
            RevGate::Toffoli { c1, c2, target } => {
                if bits >> c1 & 1 == 1 && bits >> c2 & 1 == 1 {
                    bits ^ (1 << target)
                } else {
                    bits
                }
            }
            RevGate::Swap { a, b } => {
                if (bits >> a ^ bits >> b) & 1 == 1 {
                    bits ^ (1 << a) ^ (1 << b)
                } else {
                    bits
                }
            }
        }
    }

    pub fn max_wire(self) -> usize {
        match self {
            RevGate::Not { target } => target,
            RevGate::Cnot { control, target } => control.max(target),
            RevGate::Toffoli { c1, c2, target } => c1.max(c2).max(target),
            RevGate::Swap { a, b } => a.max(b),
        }
    }
}

impl std::fmt::Display for RevGate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            RevGate::Not { target } => write!(f, "NOT {target}"),
            RevGate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            RevGate::Toffoli { c1, c2, target } => write!(f, "TOFFOLI {c1} {c2} {target}"),
            RevGate::Swap { a, b } => write!(f, "SWAP {a} {b}"),
        }
    }
}

impl TryFrom<&Gate> for RevGate {
    type Error = Error;

    /// The involution subset of the quantum gate set maps one-to-one onto
    /// reversible gates; everything else is rejected.
    fn try_from(gate: &Gate) -> Result<RevGate> {
        match *gate {
            Gate::Not { target } => Ok(RevGate::Not { target }),
            Gate::Cnot { control, target } => Ok(RevGate::Cnot { control, target }),
            Gate::Toffoli { c1, c2, target } => Ok(RevGate::Toffoli { c1, c2, target }),
            Gate::Swap { a, b } => Ok(RevGate::Swap { a, b }),
            ref other => Err(Error::NotReversible {
                gate: other.to_string(),
            }),
        }
    }
}

/// An ordered involution-gate list over `inputs + outputs + scratch` wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibleCircuit {
    inputs: usize,
    outputs: usize,
    scratch: usize,
    gates: Vec<RevGate>,
}

impl ReversibleCircuit {
    /// Assemble from parts, checking that every gate stays inside the wire
    /// count.
    pub fn new(
        inputs: usize,
        outputs: usize,
        scratch: usize,
        gates: Vec<RevGate>,
    ) -> Result<ReversibleCircuit> {
        let wires = inputs + outputs + scratch;
        if wires > DEFAULT_MAX_WIRES {
            return Err(Error::WireBudgetExceeded {
                needed: wires,
                cap: DEFAULT_MAX_WIRES,
            });
        }
        for gate in &gates {
            if gate.max_wire() >= wires {
                return Err(Error::UndefinedWire {
                    wire: gate.max_wire(),
                    available: wires,
                });
            }
        }
        Ok(ReversibleCircuit {
            inputs,
            outputs,
            scratch,
            gates,
        })
    }

    pub fn wires(&self) -> usize {
        self.inputs + self.outputs + self.scratch
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn scratch(&self) -> usize {
        self.scratch
    }

    pub fn gates(&self) -> &[RevGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Run the gate tables in order on a packed bit vector.
    pub fn simulate_mask(&self, bits: u64) -> u64 {
        debug_assert!(self.wires() == 64 || bits < (1u64 << self.wires()));
        self.gates.iter().fold(bits, |acc, g| g.apply(acc))
    }

    /// Run on an explicit bit vector (wire i = `bits[i]`).
    pub fn simulate(&self, bits: &[bool]) -> Result<Vec<bool>> {
        if bits.len() != self.wires() {
            return Err(Error::LengthMismatch {
                expected: self.wires(),
                actual: bits.len(),
            });
        }
        let packed = bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        let out = self.simulate_mask(packed);
        Ok((0..self.wires()).map(|i| (out >> i) & 1 == 1).collect())
    }

    /// The inverse circuit: the same involution gates in reverse order.
    pub fn invert(&self) -> ReversibleCircuit {
        let mut gates = self.gates.clone();
        gates.reverse();
        ReversibleCircuit { gates, ..*self }
    }

    /// Lift to a unitary permutation gate: the table is `simulate_mask` on
    /// every basis index of the wire register.
    pub fn lift_to_unitary(&self) -> Result<Gate> {
        self.lift_to_unitary_capped(crate::statevector::DEFAULT_MAX_QUBITS)
    }

    pub fn lift_to_unitary_capped(&self, max_qubits: usize) -> Result<Gate> {
        let wires = self.wires();
        if wires > max_qubits {
            return Err(Error::CapacityExceeded {
                requested: wires,
                max: max_qubits,
            });
        }
        let table: Vec<usize> = (0..1usize << wires)
            .map(|x| self.simulate_mask(x as u64) as usize)
            .collect();
        Gate::permutation(table)
    }

    /// Exhaustively verify the compiler contract against the source circuit:
    /// for every input x and output-register preload y (scratch zero), the
    /// circuit must produce (x, F(x) xor y, 0).
    pub fn check_contract(&self, source: &BooleanCircuit) -> Result<ContractCheck> {
        let m = self.inputs;
        let n = self.outputs;
        if m != source.n_inputs() || n != source.n_outputs() {
            return Err(Error::LengthMismatch {
                expected: source.n_inputs() + source.n_outputs(),
                actual: m + n,
            });
        }
        if self.wires() > DEFAULT_MAX_WIRES {
            return Err(Error::WireBudgetExceeded {
                needed: self.wires(),
                cap: DEFAULT_MAX_WIRES,
            });
        }
        let mut cases = 0u64;
        for x in 0..1u64 << m {
            let fx = source.eval_mask(x as usize) as u64;
            for y in 0..1u64 << n {
                let input = x | (y << m);
                let got = self.simulate_mask(input);
                let want = x | ((fx ^ y) << m);
                cases += 1;
                if got != want {
                    return Ok(ContractCheck {
                        cases,
                        passed: false,
                    });
                }
            }
        }
        Ok(ContractCheck {
            cases,
            passed: true,
        })
    }
}

/// Outcome of an exhaustive contract check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContractCheck {
    pub cases: u64,
    pub passed: bool,
}

/// Parse reversible gate lines: `NOT q`, `CNOT c t`, `TOFFOLI a b t`,
/// `SWAP a b`, one per line; blanks and `#` comments are skipped. The
/// format is the involution subset of the quantum circuit text format.
pub fn parse_gates(text: &str) -> Result<Vec<RevGate>> {
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
                    message: format!("expected a wire index, found `{p}`"),
                })
            })
            .collect::<Result<_>>()?;
        let bad_arity = |want: usize| Error::Parse {
            line: lineno,
            message: format!("`{op}` takes {want} wire argument(s), found {}", args.len()),
        };
        let gate = match (op, args.len()) {
            ("NOT", 1) => RevGate::Not { target: args[0] },
            ("CNOT", 2) => RevGate::Cnot {
                control: args[0],
                target: args[1],
            },
            ("TOFFOLI", 3) => RevGate::Toffoli {
                c1: args[0],
                c2: args[1],
                target: args[2],
            },
            ("SWAP", 2) => RevGate::Swap {
                a: args[0],
                b: args[1],
            },
            ("NOT", _) => return Err(bad_arity(1)),
            ("CNOT", _) | ("SWAP", _) => return Err(bad_arity(2)),
            ("TOFFOLI", _) => return Err(bad_arity(3)),
            (other, _) => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("unknown reversible gate `{other}`"),
                })
            }
        };
        gates.push(gate);
    }
    Ok(gates)
}

/// Compile a Boolean circuit into a reversible one satisfying
/// `H(x, y, 0) = (x, F(x) xor y, 0)`.
pub fn compile(bc: &BooleanCircuit) -> Result<ReversibleCircuit> {
    compile_capped(bc, DEFAULT_MAX_WIRES)
}

/// As [`compile`] with an explicit wire budget.
pub fn compile_capped(bc: &BooleanCircuit, max_wires: usize) -> Result<ReversibleCircuit> {
    let m = bc.n_inputs();
    let n = bc.n_outputs();

    // Upper bound on the wire budget before doing any work: every gate
    // allocates at most one scratch wire.
    if m + n + bc.gates().len() > max_wires {
        return Err(Error::WireBudgetExceeded {
            needed: m + n + bc.gates().len(),
            cap: max_wires,
        });
    }

    // alias[w] = reversible wire carrying Boolean wire w
    let mut alias: Vec<usize> = (0..m).collect();
    let mut scratch = 0usize;
    let mut forward: Vec<RevGate> = Vec::new();

    // Scratch wires live above the input and output registers and are
    // allocated append-only.
    let fresh = |scratch: &mut usize| {
        let wire = m + n + *scratch;
        *scratch += 1;
        wire
    };

    for gate in bc.gates() {
        match *gate {
            // identity costs nothing: the output wire is the input wire
            BoolGate::Id(x) => alias.push(alias[x]),
            BoolGate::Const1 => {
                let s = fresh(&mut scratch);
                forward.push(RevGate::Not { target: s });
                alias.push(s);
            }
            BoolGate::Xor(x, y) => {
                let s = fresh(&mut scratch);
                forward.push(RevGate::Cnot {
                    control: alias[x],
                    target: s,
                });
                forward.push(RevGate::Cnot {
                    control: alias[y],
                    target: s,
                });
                alias.push(s);
            }
            BoolGate::And(x, y) => {
                let s = fresh(&mut scratch);
                if alias[x] == alias[y] {
                    // x AND x = x over F2; a Toffoli may not repeat a control
                    forward.push(RevGate::Cnot {
                        control: alias[x],
                        target: s,
                    });
                } else {
                    forward.push(RevGate::Toffoli {
                        c1: alias[x],
                        c2: alias[y],
                        target: s,
                    });
                }
                alias.push(s);
            }
            BoolGate::Fanout(x) => {
                let s = fresh(&mut scratch);
                forward.push(RevGate::Cnot {
                    control: alias[x],
                    target: s,
                });
                alias.push(alias[x]);
                alias.push(s);
            }
        }
    }

    let mut gates = forward.clone();
    // copy-out: (F(x), G(x), y) -> (F(x), G(x), F(x) + y)
    for (i, &w) in bc.outputs().iter().enumerate() {
        gates.push(RevGate::Cnot {
            control: alias[w],
            target: m + i,
        });
    }
    // uncompute: the forward gates mirrored, clearing the scratch register
    gates.extend(forward.iter().rev());

    ReversibleCircuit::new(m, n, scratch, gates)
}
