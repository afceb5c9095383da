//! JSON report shapes. Field order is fixed by the struct declarations and
//! every report embeds the seed and the version string, so a given seed and
//! flag set always produces byte-identical output.

use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Probabilities are emitted with 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        format!("{x:.11e}").parse().expect("formatted float parses")
    }
}

#[derive(Serialize)]
pub struct FactorRunReport {
    pub t: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<u64>,
    pub r_prime: Option<u64>,
    pub factor: Option<u64>,
    pub success: bool,
}

#[derive(Serialize)]
pub struct FactorReportJson {
    #[serde(rename = "M")]
    pub m: u64,
    pub factor: Option<u64>,
    pub cofactor: Option<u64>,
    pub runs_used: usize,
    pub runs: Vec<FactorRunReport>,
    pub seed: u64,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct GroverSingleJson {
    pub n: usize,
    pub target: usize,
    pub candidate: usize,
    pub success: bool,
    pub iterations: u64,
    pub oracle_calls: u64,
    pub trace: Vec<f64>,
    pub seed: u64,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct GroverRunJson {
    pub run: u32,
    pub candidate: usize,
    pub success: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<f64>>,
}

#[derive(Serialize)]
pub struct GroverBatchJson {
    pub n: usize,
    pub target: usize,
    pub iterations: u64,
    pub runs: Vec<GroverRunJson>,
    pub successes: u32,
    pub seed: u64,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct QftJson {
    pub n: usize,
    pub input: usize,
    pub bitrev: bool,
    pub gate_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<qsim_core::StateDump>,
    pub seed: u64,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct SatJson {
    pub m: usize,
    pub satisfiable: bool,
    /// Bits for x_1..x_m, or null when unsatisfiable.
    pub assignment: Option<Vec<u8>>,
    pub seed: u64,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct CompileCheckJson {
    pub passed: bool,
    pub cases: u64,
}

#[derive(Serialize)]
pub struct CompileJson {
    pub inputs: usize,
    pub outputs: usize,
    pub scratch: usize,
    pub wires: usize,
    pub gate_count: usize,
    pub gates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CompileCheckJson>,
    pub seed: u64,
    pub version: &'static str,
}

pub fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("reports serialize")
    );
}
