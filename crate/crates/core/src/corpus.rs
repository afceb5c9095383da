//! Generation of small Boolean-circuit corpora for exhaustive checking of
//! the reversible compiler.
//!
//! Two flavors: `exhaustive_small` enumerates every circuit of at most two
//! gates (all gate kinds, all wirings) over a bounded input count, and
//! `random_corpus` draws seeded random circuits up to a gate budget. Both
//! are deterministic, so failures reproduce.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::boolean::{BoolGate, BooleanCircuit};

fn all_gates(wires: usize) -> Vec<BoolGate> {
    let mut gates = vec![BoolGate::Const1];
    for x in 0..wires {
        gates.push(BoolGate::Id(x));
        gates.push(BoolGate::Fanout(x));
        for y in 0..wires {
            gates.push(BoolGate::Xor(x, y));
            gates.push(BoolGate::And(x, y));
        }
    }
    gates
}

/// Designate up to `max_outputs` wires, preferring the most recently
/// defined ones (the gate results).
fn designate_outputs(bc: &mut BooleanCircuit, max_outputs: usize) {
    let wires = bc.n_wires();
    let take = wires.min(max_outputs);
    let outputs: Vec<usize> = (wires - take..wires).collect();
    bc.set_outputs(outputs).expect("wires just counted");
}

/// Every circuit with zero, one, or two gates over `0..=max_inputs` input
/// wires, outputs designated as the trailing wires (at most `max_outputs`).
pub fn exhaustive_small(max_inputs: usize, max_outputs: usize) -> Vec<BooleanCircuit> {
    let mut corpus = Vec::new();
    for m in 0..=max_inputs {
        // gateless circuit: outputs are input wires
        let mut bare = BooleanCircuit::new(m);
        designate_outputs(&mut bare, max_outputs);
        corpus.push(bare);

        for g1 in all_gates(m) {
            let mut one = BooleanCircuit::new(m);
            one.push(g1).expect("wiring enumerated within bounds");
            let wires_after = one.n_wires();
            designate_outputs(&mut one, max_outputs);
            corpus.push(one);

            for g2 in all_gates(wires_after) {
                let mut two = BooleanCircuit::new(m);
                two.push(g1).expect("wiring enumerated within bounds");
                two.push(g2).expect("wiring enumerated within bounds");
                designate_outputs(&mut two, max_outputs);
                corpus.push(two);
            }
        }
    }
    corpus
}

/// Deterministic chains that reach a given depth: each basis gate kind
/// iterated `depth` times, always feeding the freshest wire back in.
pub fn deep_chains(max_inputs: usize, depth: usize) -> Vec<BooleanCircuit> {
    let mut corpus = Vec::new();
    for m in 1..=max_inputs {
        for kind in 0..5usize {
            let mut bc = BooleanCircuit::new(m);
            let mut latest = 0usize;
            for step in 0..depth {
                let other = step % m;
                latest = match kind {
                    0 => bc.id(latest).expect("valid wire"),
                    1 => bc.const1(),
                    2 => bc.xor(latest, other).expect("valid wires"),
                    3 => bc.and(latest, other).expect("valid wires"),
                    _ => bc.fanout(latest).expect("valid wire").1,
                };
            }
            designate_outputs(&mut bc, 3);
            corpus.push(bc);
        }
    }
    corpus
}

/// One seeded random circuit with up to `max_gates` gates.
pub fn random_circuit<R: Rng>(
    rng: &mut R,
    max_inputs: usize,
    max_outputs: usize,
    max_gates: usize,
) -> BooleanCircuit {
    let m = rng.gen_range(0..=max_inputs);
    let mut bc = BooleanCircuit::new(m);
    let n_gates = rng.gen_range(0..=max_gates);
    for _ in 0..n_gates {
        let wires = bc.n_wires();
        let gate = if wires == 0 {
            BoolGate::Const1
        } else {
            match rng.gen_range(0..5) {
                0 => BoolGate::Id(rng.gen_range(0..wires)),
                1 => BoolGate::Const1,
                2 => BoolGate::Xor(rng.gen_range(0..wires), rng.gen_range(0..wires)),
                3 => BoolGate::And(rng.gen_range(0..wires), rng.gen_range(0..wires)),
                _ => BoolGate::Fanout(rng.gen_range(0..wires)),
            }
        };
        bc.push(gate).expect("generated wires are in range");
    }
    // random nonempty output designation when any wire exists
    let wires = bc.n_wires();
    if wires > 0 {
        let count = rng.gen_range(1..=max_outputs.min(wires));
        let outputs: Vec<usize> = (0..count).map(|_| rng.gen_range(0..wires)).collect();
        bc.set_outputs(outputs).expect("wires just counted");
    }
    bc
}

/// A seeded batch of random circuits.
pub fn random_corpus(
    seed: u64,
    count: usize,
    max_inputs: usize,
    max_outputs: usize,
    max_gates: usize,
) -> Vec<BooleanCircuit> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_circuit(&mut rng, max_inputs, max_outputs, max_gates))
        .collect()
}
