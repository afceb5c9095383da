//! Classical Boolean layer: circuits over the basis {x, 1, x+y, xy, (x,x)},
//! multilinear polynomials over F2 with exact interpolation, SAT instances
//! given as clause pairs (S_i, T_i), and the diagonal pair numbering.
//!
//! Variable indexing: SAT variables and polynomial variables are 1-indexed
//! (x_1, x_2, ...). Assignments are 0-indexed vectors, with `v[k-1]` holding
//! the value of variable x_k; packed into an integer, bit k-1 is x_k.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the brute-force assignment search (2^24 assignments).
pub const DEFAULT_SEARCH_CAP: usize = 24;

/// One classical gate. Input operands name previously defined wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolGate {
    /// Copy of a wire: x.
    Id(usize),
    /// The constant 1 (no inputs).
    Const1,
    /// x + y over F2.
    Xor(usize, usize),
    /// x * y.
    And(usize, usize),
    /// (x, x): the two-output copy gate.
    Fanout(usize),
}

impl BoolGate {
    /// How many fresh wires the gate defines.
    pub fn output_count(&self) -> usize {
        match self {
            BoolGate::Fanout(_) => 2,
            _ => 1,
        }
    }

    fn inputs(&self) -> [Option<usize>; 2] {
        match *self {
            BoolGate::Id(x) | BoolGate::Fanout(x) => [Some(x), None],
            BoolGate::Const1 => [None, None],
            BoolGate::Xor(x, y) | BoolGate::And(x, y) => [Some(x), Some(y)],
        }
    }
}

/// An acyclic gate list. Wires `0..n_inputs` are the circuit inputs; each
/// gate appends freshly numbered output wires, so every gate input refers to
/// an already defined wire and the circuit is acyclic by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanCircuit {
    n_inputs: usize,
    gates: Vec<BoolGate>,
    outputs: Vec<usize>,
    n_wires: usize,
}

impl BooleanCircuit {
    pub fn new(n_inputs: usize) -> BooleanCircuit {
        BooleanCircuit {
            n_inputs,
            gates: Vec::new(),
            outputs: Vec::new(),
            n_wires: n_inputs,
        }
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_wires(&self) -> usize {
        self.n_wires
    }

    pub fn gates(&self) -> &[BoolGate] {
        &self.gates
    }

    /// The designated output wires, in order.
    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Append a gate; returns the indices of the wires it defines.
    pub fn push(&mut self, gate: BoolGate) -> Result<(usize, Option<usize>)> {
        for input in gate.inputs().into_iter().flatten() {
            if input >= self.n_wires {
                return Err(Error::UndefinedWire {
                    wire: input,
                    available: self.n_wires,
                });
            }
        }
        let first = self.n_wires;
        self.n_wires += gate.output_count();
        let second = (gate.output_count() == 2).then_some(first + 1);
        self.gates.push(gate);
        Ok((first, second))
    }

    pub fn id(&mut self, x: usize) -> Result<usize> {
        Ok(self.push(BoolGate::Id(x))?.0)
    }

    pub fn const1(&mut self) -> usize {
        self.push(BoolGate::Const1).expect("const1 has no inputs").0
    }

    pub fn xor(&mut self, x: usize, y: usize) -> Result<usize> {
        Ok(self.push(BoolGate::Xor(x, y))?.0)
    }

    pub fn and(&mut self, x: usize, y: usize) -> Result<usize> {
        Ok(self.push(BoolGate::And(x, y))?.0)
    }

    pub fn fanout(&mut self, x: usize) -> Result<(usize, usize)> {
        let (a, b) = self.push(BoolGate::Fanout(x))?;
        Ok((a, b.expect("fanout defines two wires")))
    }

    /// Designate the output wires.
    pub fn set_outputs(&mut self, outputs: Vec<usize>) -> Result<()> {
        for &w in &outputs {
            if w >= self.n_wires {
                return Err(Error::UndefinedWire {
                    wire: w,
                    available: self.n_wires,
                });
            }
        }
        self.outputs = outputs;
        Ok(())
    }

    /// Evaluate every wire in order and return the designated outputs.
    pub fn eval(&self, input: &[bool]) -> Result<Vec<bool>> {
        if input.len() != self.n_inputs {
            return Err(Error::LengthMismatch {
                expected: self.n_inputs,
                actual: input.len(),
            });
        }
        let mut wires = Vec::with_capacity(self.n_wires);
        wires.extend_from_slice(input);
        for gate in &self.gates {
            match *gate {
                BoolGate::Id(x) => wires.push(wires[x]),
                BoolGate::Const1 => wires.push(true),
                BoolGate::Xor(x, y) => wires.push(wires[x] ^ wires[y]),
                BoolGate::And(x, y) => wires.push(wires[x] & wires[y]),
                BoolGate::Fanout(x) => {
                    let v = wires[x];
                    wires.push(v);
                    wires.push(v);
                }
            }
        }
        Ok(self.outputs.iter().map(|&w| wires[w]).collect())
    }

    /// Evaluate with the input packed into an integer (bit i = input wire i),
    /// returning the outputs packed the same way.
    pub fn eval_mask(&self, input: usize) -> usize {
        let bits: Vec<bool> = (0..self.n_inputs).map(|i| (input >> i) & 1 == 1).collect();
        let out = self.eval(&bits).expect("mask input has the right width");
        out.iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | ((b as usize) << i))
    }

    /// Total output size of all gates (the fanout gate counts 2). This is
    /// the length budget the reversible compiler is measured against.
    pub fn gate_output_size(&self) -> usize {
        self.gates.iter().map(BoolGate::output_count).sum()
    }
}

/// A multilinear polynomial over F2, stored as the set of its monomials.
///
/// Each monomial is a bitmask of variable indices (bit k-1 stands for x_k);
/// the empty mask is the constant 1, and the empty set is the zero
/// polynomial. The representation is canonical, which is what makes
/// uniqueness testable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BooleanPolynomial {
    monomials: BTreeSet<u64>,
}

impl BooleanPolynomial {
    pub fn zero() -> BooleanPolynomial {
        BooleanPolynomial::default()
    }

    pub fn one() -> BooleanPolynomial {
        BooleanPolynomial {
            monomials: BTreeSet::from([0]),
        }
    }

    /// The polynomial consisting of a single monomial.
    pub fn monomial(mask: u64) -> BooleanPolynomial {
        BooleanPolynomial {
            monomials: BTreeSet::from([mask]),
        }
    }

    /// Sum a list of monomials with XOR semantics: a mask appearing an even
    /// number of times cancels.
    pub fn from_monomials(masks: impl IntoIterator<Item = u64>) -> BooleanPolynomial {
        let mut set = BTreeSet::new();
        for m in masks {
            if !set.remove(&m) {
                set.insert(m);
            }
        }
        BooleanPolynomial { monomials: set }
    }

    pub fn monomials(&self) -> impl Iterator<Item = u64> + '_ {
        self.monomials.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Sum over F2 (symmetric difference of monomial sets).
    pub fn add(&self, other: &BooleanPolynomial) -> BooleanPolynomial {
        let monomials = self
            .monomials
            .symmetric_difference(&other.monomials)
            .copied()
            .collect();
        BooleanPolynomial { monomials }
    }

    /// Evaluate at a packed assignment (bit k-1 = x_k).
    pub fn eval_mask(&self, assignment: u64) -> bool {
        self.monomials
            .iter()
            .filter(|&&m| m & assignment == m)
            .count()
            % 2
            == 1
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        let mask = assignment
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        self.eval_mask(mask)
    }
}

impl fmt::Display for BooleanPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &m in &self.monomials {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 0 {
                write!(f, "1")?;
                continue;
            }
            let mut started = false;
            for bit in 0..64 {
                if (m >> bit) & 1 == 1 {
                    if started {
                        write!(f, "*")?;
                    }
                    write!(f, "x{}", bit + 1)?;
                    started = true;
                }
            }
        }
        Ok(())
    }
}

/// Interpolate the unique multilinear polynomial agreeing with a truth table
/// of length 2^m (entry y holds f(y), with y packed bit k-1 = x_k).
///
/// The coefficient of the monomial x^T is the F2 sum of f over all points
/// y <= T (bitwise), computed with an in-place subset-sum butterfly; this is
/// exactly the expansion of the delta-function form
/// sum_y f(y) * prod_i (x_i + y_i + 1).
pub fn interpolate(table: &[bool]) -> Result<BooleanPolynomial> {
    let len = table.len();
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::TableNotPowerOfTwo { len });
    }
    let m = len.trailing_zeros() as usize;
    if m > DEFAULT_SEARCH_CAP {
        return Err(Error::SearchSpaceExceeded {
            m,
            cap: DEFAULT_SEARCH_CAP,
        });
    }
    let mut coeff: Vec<bool> = table.to_vec();
    for bit in 0..m {
        let mask = 1usize << bit;
        for x in 0..len {
            if x & mask != 0 {
                coeff[x] ^= coeff[x ^ mask];
            }
        }
    }
    Ok(BooleanPolynomial {
        monomials: coeff
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(mask, _)| mask as u64)
            .collect(),
    })
}

/// One clause pair (S, T): the clause is violated exactly when every
/// S-variable is 0 and every T-variable is 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatClause {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "T")]
    pub t: Vec<usize>,
}

/// A satisfiability instance over variables x_1..x_m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatInstance {
    pub m: usize,
    pub clauses: Vec<SatClause>,
}

impl SatInstance {
    /// Build an instance, validating and canonicalizing (sorting,
    /// deduplicating) every clause's variable sets.
    pub fn new(m: usize, clauses: Vec<SatClause>) -> Result<SatInstance> {
        let mut canon = Vec::with_capacity(clauses.len());
        for mut clause in clauses {
            for set in [&mut clause.s, &mut clause.t] {
                for &var in set.iter() {
                    if var == 0 || var > m {
                        return Err(Error::VariableOutOfRange { var, m });
                    }
                }
                set.sort_unstable();
                set.dedup();
            }
            canon.push(clause);
        }
        Ok(SatInstance { m, clauses: canon })
    }

    /// Re-validate an instance that arrived through deserialization.
    pub fn validate(self) -> Result<SatInstance> {
        SatInstance::new(self.m, self.clauses)
    }

    /// Instance size: m times the clause count.
    pub fn size(&self) -> usize {
        self.m * self.clauses.len()
    }

    /// True when every clause mentions exactly three distinct variables.
    pub fn is_3sat(&self) -> bool {
        self.clauses.iter().all(|c| {
            let union: BTreeSet<usize> = c.s.iter().chain(&c.t).copied().collect();
            union.len() == 3
        })
    }

    /// Evaluate the defining product over F2 at an assignment:
    /// prod_i (1 + prod_{k in S_i}(1 + v_k) * prod_{j in T_i} v_j).
    pub fn eval(&self, v: &[bool]) -> Result<bool> {
        if v.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                actual: v.len(),
            });
        }
        let mut b = 1u8;
        for clause in &self.clauses {
            let mut inner = 1u8;
            for &k in &clause.s {
                inner &= 1 ^ (v[k - 1] as u8);
            }
            for &j in &clause.t {
                inner &= v[j - 1] as u8;
            }
            b &= 1 ^ inner;
        }
        Ok(b == 1)
    }

    /// Exhaustive search for the lexicographically least satisfying
    /// assignment (compared entrywise from x_1), or `None`.
    pub fn brute_force(&self) -> Result<Option<Vec<bool>>> {
        self.brute_force_capped(DEFAULT_SEARCH_CAP)
    }

    pub fn brute_force_capped(&self, cap: usize) -> Result<Option<Vec<bool>>> {
        if self.m > cap {
            return Err(Error::SearchSpaceExceeded { m: self.m, cap });
        }
        // Enumerate with x_1 as the most significant counter bit, so the
        // numeric order of `counter` is the lexicographic order of v.
        let mut v = vec![false; self.m];
        for counter in 0u64..(1u64 << self.m) {
            for (i, slot) in v.iter_mut().enumerate() {
                *slot = (counter >> (self.m - 1 - i)) & 1 == 1;
            }
            if self.eval(&v)? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }
}

/// Diagonal numbering of pairs of positive integers:
/// (m, n) -> m + (m+n-1)(m+n-2)/2. Bijective onto 1, 2, 3, ...
pub fn pairing(m: u64, n: u64) -> u64 {
    assert!(m >= 1 && n >= 1, "pairing is defined on positive integers");
    let s = m + n;
    m + (s - 1) * (s - 2) / 2
}

/// Two-sided inverse of [`pairing`].
pub fn unpairing(p: u64) -> (u64, u64) {
    assert!(p >= 1, "pair numbers start at 1");
    // find the diagonal s = m + n with (s-1)(s-2)/2 < p <= s(s-1)/2
    let mut s = (((2 * p) as f64).sqrt() as u64).max(2);
    while (s - 1) * (s - 2) / 2 >= p {
        s -= 1;
    }
    while s * (s - 1) / 2 < p {
        s += 1;
    }
    let m = p - (s - 1) * (s - 2) / 2;
    (m, s - m)
}
