//! qsim: seeded, reproducible command-line front end for the simulator.
//!
//! Subcommands: `factor`, `grover`, `qft`, `sat solve`, `compile`.
//! Exit codes: 0 success, 1 usage or input error, 2 algorithmic failure
//! (factoring budget exhausted, contract check failed).

mod boolfmt;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qsim_core::boolean::SatInstance;
use qsim_core::grover::{grover_search_capped, GroverRun};
use qsim_core::qft::{qft_circuit, qft_circuit_bitrev};
use qsim_core::reversible::{compile, RevGate, ReversibleCircuit};
use qsim_core::shor::{factor, ShorConfig};
use qsim_core::{Circuit, StateVector};

use report::{print_json, sig12, VERSION};

#[derive(Parser)]
#[command(
    name = "qsim",
    version,
    about = "Desk-scale quantum circuit simulation pipelines"
)]
struct Cli {
    /// RNG seed; every report embeds the value in effect.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on the simulated register width.
    #[arg(long, global = true, default_value_t = qsim_core::DEFAULT_MAX_QUBITS)]
    max_qubits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor an odd composite by quantum period finding.
    Factor {
        /// The number to factor.
        #[arg(long)]
        m: u64,
        /// Pin the base t instead of drawing randomly.
        #[arg(long)]
        t: Option<u64>,
        /// Runs to spend per base (default derived from M).
        #[arg(long)]
        max_runs: Option<u32>,
        /// Bases to try before giving up (default derived from M).
        #[arg(long)]
        max_t_draws: Option<u32>,
        /// After a failed decode, also try small multiples of r'.
        #[arg(long)]
        try_multiples: bool,
    },
    /// Search N = 2^n items for a marked index.
    Grover {
        #[arg(long)]
        n: usize,
        /// The marked basis index.
        #[arg(long)]
        target: usize,
        /// Independent seeded runs; run i uses RNG stream i.
        #[arg(long, default_value_t = 1)]
        runs: u32,
        /// Include the per-iteration success-probability trace.
        #[arg(long)]
        trace: bool,
    },
    /// Apply the Fourier transform circuit to a basis state.
    Qft {
        #[arg(long)]
        n: usize,
        /// Input basis index.
        #[arg(long, default_value_t = 0)]
        input: usize,
        /// Use the bit-reversed-output circuit (no final swaps).
        #[arg(long)]
        bitrev: bool,
        /// Print the final state as JSON ([re, im] pairs plus width).
        #[arg(long)]
        dump_state: bool,
    },
    /// Satisfiability utilities.
    Sat {
        #[command(subcommand)]
        command: SatCommand,
    },
    /// Compile a Boolean circuit file into a reversible circuit.
    Compile {
        /// Circuit file: `inputs m`, gate lines, `outputs w...`.
        #[arg(long)]
        circuit: PathBuf,
        /// Exhaustively verify the compiled circuit (wires <= 14).
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum SatCommand {
    /// Brute-force a JSON instance: {"m": int, "clauses": [{"S": [..], "T": [..]}]}.
    Solve {
        #[arg(long)]
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let common = cli_common(&cli);
    match cli.command {
        Command::Factor {
            m,
            t,
            max_runs,
            max_t_draws,
            try_multiples,
        } => run_factor(&common, m, t, max_runs, max_t_draws, try_multiples),
        Command::Grover {
            n,
            target,
            runs,
            trace,
        } => run_grover(&common, n, target, runs, trace),
        Command::Qft {
            n,
            input,
            bitrev,
            dump_state,
        } => run_qft(&common, n, input, bitrev, dump_state),
        Command::Sat {
            command: SatCommand::Solve { file },
        } => run_sat_solve(&common, &file),
        Command::Compile { circuit, check } => run_compile(&common, &circuit, check),
    }
}

struct Common {
    seed: u64,
    json: bool,
    max_qubits: usize,
}

fn cli_common(cli: &Cli) -> Common {
    Common {
        seed: cli.seed,
        json: cli.json,
        max_qubits: cli.max_qubits,
    }
}

fn run_factor(
    common: &Common,
    m: u64,
    t: Option<u64>,
    max_runs: Option<u32>,
    max_t_draws: Option<u32>,
    try_multiples: bool,
) -> Result<u8, String> {
    let mut config = ShorConfig::for_modulus(m);
    config.max_qubits = common.max_qubits;
    config.forced_t = t;
    config.try_multiples = try_multiples;
    if let Some(k) = max_runs {
        config.max_runs_per_t = k;
    }
    if let Some(k) = max_t_draws {
        config.max_t_draws = k;
    }

    let report = factor(m, &config, common.seed).map_err(|e| e.to_string())?;

    if common.json {
        print_json(&report::FactorReportJson {
            m: report.m,
            factor: report.factor,
            cofactor: report.cofactor,
            runs_used: report.runs_used(),
            runs: report
                .runs
                .iter()
                .map(|r| report::FactorRunReport {
                    t: r.t,
                    c: r.c,
                    residue: r.residue,
                    r_prime: r.r_prime,
                    factor: r.factor,
                    success: r.success,
                })
                .collect(),
            seed: report.seed,
            version: VERSION,
        });
    } else {
        println!("M = {m}  seed = {}  version = {VERSION}", report.seed);
        for (i, r) in report.runs.iter().enumerate() {
            let c = r.c.map_or("-".into(), |c| c.to_string());
            let rp = r.r_prime.map_or("-".into(), |r| r.to_string());
            let f = r.factor.map_or("none".into(), |f| f.to_string());
            println!("run {}: t={} c={} r'={} factor={}", i + 1, r.t, c, rp, f);
        }
        match report.factor {
            Some(f) => println!("{m} = {f} * {} ({} runs)", m / f, report.runs_used()),
            None => println!(
                "no factor found within budget ({} runs)",
                report.runs_used()
            ),
        }
    }
    Ok(if report.factor.is_some() { 0 } else { 2 })
}

fn run_grover(
    common: &Common,
    n: usize,
    target: usize,
    runs: u32,
    trace: bool,
) -> Result<u8, String> {
    if runs == 0 {
        return Err("--runs must be at least 1".into());
    }
    let mut results: Vec<(usize, GroverRun)> = Vec::with_capacity(runs as usize);
    for run_index in 0..runs {
        // deterministic split: each run gets its own RNG stream
        let mut rng = ChaCha12Rng::seed_from_u64(common.seed);
        rng.set_stream(u64::from(run_index));
        results.push(
            grover_search_capped(n, target, common.max_qubits, &mut rng)
                .map_err(|e| e.to_string())?,
        );
    }

    let rounded_trace =
        |run: &GroverRun| run.trace.iter().copied().map(sig12).collect::<Vec<f64>>();

    if common.json {
        if runs == 1 {
            let (candidate, run) = &results[0];
            print_json(&report::GroverSingleJson {
                n,
                target,
                candidate: *candidate,
                success: *candidate == target,
                iterations: run.iterations,
                oracle_calls: run.oracle_calls,
                trace: rounded_trace(run),
                seed: common.seed,
                version: VERSION,
            });
        } else {
            let successes = results.iter().filter(|(c, _)| *c == target).count() as u32;
            print_json(&report::GroverBatchJson {
                n,
                target,
                iterations: results[0].1.iterations,
                runs: results
                    .iter()
                    .enumerate()
                    .map(|(i, (candidate, run))| report::GroverRunJson {
                        run: i as u32,
                        candidate: *candidate,
                        success: *candidate == target,
                        trace: trace.then(|| rounded_trace(run)),
                    })
                    .collect(),
                successes,
                seed: common.seed,
                version: VERSION,
            });
        }
    } else {
        let iterations = results[0].1.iterations;
        println!(
            "grover n = {n} (N = {})  target = {target}  iterations = {iterations}  seed = {}  version = {VERSION}",
            1usize << n,
            common.seed
        );
        for (i, (candidate, run)) in results.iter().enumerate() {
            let final_p = sig12(*run.trace.last().expect("trace nonempty"));
            println!(
                "run {i}: candidate = {candidate}  success = {}  final probability = {final_p}",
                *candidate == target
            );
            if trace {
                let line: Vec<String> = rounded_trace(run).iter().map(|p| p.to_string()).collect();
                println!("trace: {}", line.join(" "));
            }
        }
    }
    Ok(0)
}

fn run_qft(
    common: &Common,
    n: usize,
    input: usize,
    bitrev: bool,
    dump_state: bool,
) -> Result<u8, String> {
    let circuit = if bitrev {
        qft_circuit_bitrev(n)
    } else {
        qft_circuit(n)
    };
    let mut state =
        StateVector::basis_state_capped(n, input, common.max_qubits).map_err(|e| e.to_string())?;
    state.apply_circuit(&circuit).map_err(|e| e.to_string())?;

    if common.json {
        print_json(&report::QftJson {
            n,
            input,
            bitrev,
            gate_count: circuit.len(),
            state: dump_state.then(|| state.dump()),
            seed: common.seed,
            version: VERSION,
        });
    } else {
        println!(
            "qft n = {n}  input = {input}  bitrev = {bitrev}  gates = {}  seed = {}  version = {VERSION}",
            circuit.len(),
            common.seed
        );
        if dump_state {
            println!(
                "{}",
                serde_json::to_string(&state.dump()).expect("dump serializes")
            );
        }
    }
    Ok(0)
}

fn run_sat_solve(common: &Common, file: &Path) -> Result<u8, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let instance: SatInstance = serde_json::from_str(&text)
        .map_err(|e| format!("malformed SAT instance in {}: {e}", file.display()))?;
    let instance = instance.validate().map_err(|e| e.to_string())?;
    let solution = instance.brute_force().map_err(|e| e.to_string())?;

    if common.json {
        print_json(&report::SatJson {
            m: instance.m,
            satisfiable: solution.is_some(),
            assignment: solution
                .as_ref()
                .map(|v| v.iter().map(|&b| u8::from(b)).collect()),
            seed: common.seed,
            version: VERSION,
        });
    } else {
        match &solution {
            Some(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| format!("x{}={}", i + 1, u8::from(b)))
                    .collect();
                println!("{}", parts.join(" "));
            }
            None => println!("UNSAT"),
        }
    }
    Ok(0)
}

fn run_compile(common: &Common, path: &Path, check: bool) -> Result<u8, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let bc = boolfmt::parse(&text).map_err(|e| e.to_string())?;
    let rc = compile(&bc).map_err(|e| e.to_string())?;

    let gate_lines: Vec<String> = rc.gates().iter().map(|g| g.to_string()).collect();

    let check_result = if check {
        if rc.wires() > 14 {
            return Err(format!(
                "--check needs at most 14 wires for the exhaustive sweep; this circuit has {}",
                rc.wires()
            ));
        }
        // round-trip through the circuit text format, so the check runs on
        // what was emitted, not just on the in-memory circuit
        let parsed = Circuit::parse(&gate_lines.join("\n")).map_err(|e| e.to_string())?;
        let reparsed: Vec<RevGate> = parsed
            .iter()
            .map(RevGate::try_from)
            .collect::<qsim_core::Result<_>>()
            .map_err(|e| e.to_string())?;
        let rebuilt = ReversibleCircuit::new(rc.inputs(), rc.outputs(), rc.scratch(), reparsed)
            .map_err(|e| e.to_string())?;
        Some(rebuilt.check_contract(&bc).map_err(|e| e.to_string())?)
    } else {
        None
    };

    if common.json {
        print_json(&report::CompileJson {
            inputs: rc.inputs(),
            outputs: rc.outputs(),
            scratch: rc.scratch(),
            wires: rc.wires(),
            gate_count: rc.len(),
            gates: gate_lines,
            check: check_result.map(|c| report::CompileCheckJson {
                passed: c.passed,
                cases: c.cases,
            }),
            seed: common.seed,
            version: VERSION,
        });
    } else {
        println!(
            "# inputs={} outputs={} scratch={} wires={} gates={}  seed = {}  version = {VERSION}",
            rc.inputs(),
            rc.outputs(),
            rc.scratch(),
            rc.wires(),
            rc.len(),
            common.seed
        );
        for line in &gate_lines {
            println!("{line}");
        }
        if let Some(c) = check_result {
            println!(
                "# contract check: {} ({} cases)",
                if c.passed { "PASS" } else { "FAIL" },
                c.cases
            );
        }
    }
    Ok(match check_result {
        Some(c) if !c.passed => 2,
        _ => 0,
    })
}
