//! Text format for Boolean circuit files consumed by `qsim compile`.
//!
//! ```text
//! # wires 0..m-1 are the inputs
//! inputs 2
//! AND 0 1
//! outputs 2
//! ```
//!
//! Gate lines are `ID x`, `CONST1`, `XOR x y`, `AND x y`, `FANOUT x`; each
//! gate defines fresh wires numbered upward from the inputs (FANOUT defines
//! two). `inputs` must come first, `outputs` last; `#` starts a comment.

use qsim_core::boolean::{BoolGate, BooleanCircuit};
use qsim_core::{Error, Result};

pub fn parse(text: &str) -> Result<BooleanCircuit> {
    let mut circuit: Option<BooleanCircuit> = None;
    let mut outputs_seen = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let err = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        let mut parts = line.split_whitespace();
        let op = parts.next().unwrap();
        let args: Vec<usize> = parts
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| err(format!("expected a number, found `{p}`")))
            })
            .collect::<Result<_>>()?;

        if op == "inputs" {
            if circuit.is_some() {
                return Err(err("`inputs` may only appear once, first".into()));
            }
            if args.len() != 1 {
                return Err(err("`inputs` takes one count".into()));
            }
            circuit = Some(BooleanCircuit::new(args[0]));
            continue;
        }
        let bc = circuit
            .as_mut()
            .ok_or_else(|| err("file must start with `inputs m`".into()))?;
        if outputs_seen {
            return Err(err("`outputs` must be the final line".into()));
        }
        let arity = |want: usize| err(format!("`{op}` takes {want} wire argument(s)"));
        let wrap = |e: Error| Error::Parse {
            line: lineno,
            message: e.to_string(),
        };
        match op {
            "outputs" => {
                bc.set_outputs(args).map_err(wrap)?;
                outputs_seen = true;
            }
            "ID" => {
                if args.len() != 1 {
                    return Err(arity(1));
                }
                bc.push(BoolGate::Id(args[0])).map_err(wrap)?;
            }
            "CONST1" => {
                if !args.is_empty() {
                    return Err(arity(0));
                }
                bc.push(BoolGate::Const1).map_err(wrap)?;
            }
            "XOR" => {
                if args.len() != 2 {
                    return Err(arity(2));
                }
                bc.push(BoolGate::Xor(args[0], args[1])).map_err(wrap)?;
            }
            "AND" => {
                if args.len() != 2 {
                    return Err(arity(2));
                }
                bc.push(BoolGate::And(args[0], args[1])).map_err(wrap)?;
            }
            "FANOUT" => {
                if args.len() != 1 {
                    return Err(arity(1));
                }
                bc.push(BoolGate::Fanout(args[0])).map_err(wrap)?;
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    circuit.ok_or(Error::Parse {
        line: 0,
        message: "empty circuit file".into(),
    })
}
