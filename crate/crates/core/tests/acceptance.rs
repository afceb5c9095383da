//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line (visible with `--nocapture`) after its assertions hold.
//!
//! Run with: cargo test -p qsim-core --test acceptance -- --nocapture

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qsim_core::boolean::{self, SatClause, SatInstance};
use qsim_core::corpus;
use qsim_core::grover::{grover_iterations, grover_search, GroverEngine};
use qsim_core::matrix::circuit_operator;
use qsim_core::qft::{dft_matrix, qft_circuit};
use qsim_core::reversible::compile;
use qsim_core::shor::{
    self, best_approximation, choose_params, factor, gcd, order_classical, peak_distribution,
    PeriodRunner, ShorConfig,
};
use qsim_core::{Gate, StateVector, DEFAULT_MAX_QUBITS};

fn pass(line: &str) {
    println!("acceptance {line}: PASS");
}

#[test]
fn criterion_1_qft_circuit_equals_transform_matrix() {
    let start = Instant::now();
    for n in 1..=8usize {
        let op = circuit_operator(&qft_circuit(n), n).unwrap();
        let reference = dft_matrix(n);
        let diff = op.max_abs_diff(&reference);
        assert!(diff <= 1e-10, "n={n}: max entry difference {diff}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    pass(&format!(
        "1 (transform circuit == dense matrix, n=1..8, in {elapsed:.2?})"
    ));
}

#[test]
fn criterion_2_reversible_compiler_contract() {
    const BUDGET_C: usize = 2;
    let mut corpus_all = corpus::exhaustive_small(3, 3);
    corpus_all.extend(corpus::deep_chains(3, 8));
    corpus_all.extend(corpus::random_corpus(0xACCE97, 200, 3, 3, 12));
    let total = corpus_all.len();
    for bc in corpus_all {
        let rc = compile(&bc).unwrap();
        let check = rc.check_contract(&bc).unwrap();
        assert!(check.passed, "contract violated for {:?}", bc.gates());
        // scratch register comes back exactly zero
        let (m, n) = (rc.inputs(), rc.outputs());
        for x in 0..1u64 << m {
            for y in 0..1u64 << n {
                assert_eq!(
                    rc.simulate_mask(x | (y << m)) >> (m + n),
                    0,
                    "dirty scratch"
                );
            }
        }
        let budget = bc.gate_output_size() + bc.n_inputs() + bc.n_outputs();
        assert!(
            rc.len() <= BUDGET_C * budget * budget,
            "gate budget exceeded"
        );
    }
    pass(&format!(
        "2 (compiler contract + gate budget C={BUDGET_C} over {total} circuits)"
    ));
}

#[test]
fn criterion_3_grover_exactness_and_geometry() {
    // N = 4: a single iterate is exact for every target
    for target in 0..4usize {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let (candidate, run) = grover_search(2, target, &mut rng).unwrap();
        assert_eq!(run.iterations, 1);
        assert_eq!(candidate, target);
        assert!(
            (run.trace[1] - 1.0).abs() <= 1e-10,
            "target {target}: {}",
            run.trace[1]
        );
    }

    // N = 1024: 25 iterates reach success probability >= 0.99
    let n = 10usize;
    let capital_n = 1u64 << n;
    assert_eq!(grover_iterations(capital_n), 25);
    let target = 321usize;
    let mut engine = GroverEngine::new(n, target, DEFAULT_MAX_QUBITS).unwrap();

    // track the plane spanned by the uniform state and the target while
    // iterating to twice the standard count
    let dim = 1usize << n;
    let xi = 1.0 / (dim as f64).sqrt();
    // orthonormal basis of the plane: e1 = xi-vector, e2 = unit vector along
    // (target - <xi|target> xi)
    let overlap = xi; // <xi|target>
    let residual = (1.0 - overlap * overlap).sqrt();
    let mut states = vec![engine.state().clone()];
    for _ in 0..2 * 25 {
        engine.iterate().unwrap();
        states.push(engine.state().clone());
    }
    let run = engine.run().clone();
    assert!(
        run.trace[25] >= 0.99,
        "success probability after 25 iterates: {}",
        run.trace[25]
    );

    // leakage out of the plane stays below 1e-10
    let e2 = |x: usize| {
        if x == target {
            residual
        } else {
            -overlap * xi / residual
        }
    };
    for (k, state) in states.iter().enumerate() {
        let amps = state.amplitudes();
        let dot_e1: f64 = amps.iter().map(|a| a.re * xi).sum();
        let dot_e2: f64 = amps.iter().enumerate().map(|(x, a)| a.re * e2(x)).sum();
        let mut leak = 0.0f64;
        for (x, a) in amps.iter().enumerate() {
            let in_plane = dot_e1 * xi + dot_e2 * e2(x);
            leak += (a.re - in_plane).powi(2) + a.im * a.im;
        }
        assert!(
            leak.sqrt() < 1e-10,
            "leakage {} at iterate {k}",
            leak.sqrt()
        );
    }

    // per-step rotation angle: cos = 1 - 2/N within 1e-9, sin matches too
    let cos_expect = 1.0 - 2.0 / capital_n as f64;
    let sin_expect = 2.0 * ((capital_n - 1) as f64).sqrt() / capital_n as f64;
    for pair in states.windows(2) {
        let dot: f64 = pair[0]
            .amplitudes()
            .iter()
            .zip(pair[1].amplitudes())
            .map(|(a, b)| a.re * b.re + a.im * b.im)
            .sum();
        assert!(
            (dot - cos_expect).abs() <= 1e-9,
            "cos {dot} vs {cos_expect}"
        );
        let sin = (1.0 - dot * dot).sqrt();
        assert!(
            (sin - sin_expect).abs() <= 1e-9,
            "sin {sin} vs {sin_expect}"
        );
    }

    pass("3 (search exact at N=4; >=0.99 at N=1024; plane leakage < 1e-10; step angle)");
}

#[test]
fn criterion_4_exact_outcome_distribution_and_sampling() {
    let params = choose_params(15).unwrap();
    let t = 2u64;

    // exact distribution: 16 outcomes, uniformly 1/16, via direct summation
    let direct = peak_distribution(&params, t);
    let support: Vec<_> = direct.iter().filter(|(_, p)| *p > 1e-12).collect();
    assert_eq!(support.len(), 16);
    for ((c, residue), p) in &support {
        assert!(c % 64 == 0, "unexpected peak at c={c}");
        assert!([1u64, 2, 4, 8].contains(residue));
        assert!((p - 1.0 / 16.0).abs() <= 1e-10);
    }

    // and via the simulated state
    let runner = PeriodRunner::new(&params, t, DEFAULT_MAX_QUBITS).unwrap();
    let simulated = runner.outcome_probabilities();
    for &((c, residue), p) in &direct {
        let key = ((c << params.residue_bits) | residue) as usize;
        assert!(
            (simulated[key].1 - p).abs() <= 1e-10,
            "simulation off at ({c}, {residue})"
        );
    }

    // 10^4 seeded full runs match the distribution within 4 sigma per outcome
    let samples = 10_000usize;
    let mut rng = ChaCha12Rng::seed_from_u64(0x5480);
    let mut counts = std::collections::BTreeMap::<(u64, u64), u32>::new();
    for _ in 0..samples {
        let outcome = shor::quantum_period_run(&params, t, &mut rng).unwrap();
        *counts.entry((outcome.c, outcome.residue)).or_default() += 1;
    }
    for (pair, count) in &counts {
        assert!(
            support.iter().any(|(s, _)| s == pair),
            "sampled off-support pair {pair:?}"
        );
        let _ = count;
    }
    let p = 1.0 / 16.0;
    let sigma = (p * (1.0 - p) / samples as f64).sqrt();
    for ((c, residue), _) in &support {
        let freq = f64::from(counts.get(&(*c, *residue)).copied().unwrap_or(0)) / samples as f64;
        assert!(
            (freq - p).abs() <= 4.0 * sigma,
            "outcome ({c},{residue}): frequency {freq} vs {p} (sigma {sigma})"
        );
    }
    pass("4 (exact 16-outcome distribution at M=15, t=2; 10^4 samples within 4 sigma)");
}

#[test]
fn criterion_5_factoring_end_to_end() {
    // >= 95 of 100 fixed seeds succeed within the default budgets
    for m in [15u64, 21, 33, 35] {
        let config = ShorConfig::for_modulus(m);
        let mut successes = 0u32;
        for seed in 0..100u64 {
            let report = factor(m, &config, seed).unwrap();
            if let Some(f) = report.factor {
                assert!(f > 1 && f < m && m % f == 0, "bogus factor {f} of {m}");
                assert_eq!(report.cofactor, Some(m / f));
                successes += 1;
            }
        }
        assert!(
            successes >= 95,
            "M={m}: only {successes}/100 seeds factored"
        );
        println!("  M={m}: {successes}/100 seeds factored");
    }

    // measured per-run success rate for M=15, t=2 is 3/4 within 0.05
    let params = choose_params(15).unwrap();
    let runner = PeriodRunner::new(&params, 2, DEFAULT_MAX_QUBITS).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(0xFAC7);
    let trials = 2000usize;
    let mut wins = 0u32;
    for _ in 0..trials {
        if runner.sample_outcome(&mut rng).unwrap().factor.is_some() {
            wins += 1;
        }
    }
    let rate = f64::from(wins) / trials as f64;
    assert!((rate - 0.75).abs() <= 0.05, "per-run success rate {rate}");
    println!("  M=15, t=2 per-run success rate: {rate}");
    pass("5 (factoring >= 95/100 seeds for M in 15,21,33,35; per-run rate 0.75 +/- 0.05)");
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[test]
fn criterion_6_good_frequency_laws() {
    for m in [15u64, 21, 33, 35] {
        let t = 2u64;
        let params = choose_params(m).unwrap();
        let big_n = params.big_n;
        let r = order_classical(t, m);
        let distribution = peak_distribution(&params, t);

        // total probability per frequency c
        let mut per_c = vec![0.0f64; big_n as usize];
        for &((c, _), p) in &distribution {
            per_c[c as usize] += p;
        }

        let mut good_count = 0u64;
        for c in 0..big_n {
            let d = (r * c) % big_n;
            let good = 2 * d <= r || 2 * (big_n - d) <= r;
            if !good {
                continue;
            }
            good_count += 1;
            // every good c decodes to a divisor of the order
            let (_, r_prime) = best_approximation(c, big_n, m)
                .unwrap_or_else(|| panic!("good c={c} failed to decode (M={m})"));
            assert_eq!(
                r % r_prime,
                0,
                "M={m}: good c={c} decoded r'={r_prime} with r={r}"
            );
            // and carries at least 1/(3 r^2) of the outcome mass
            let bound = 1.0 / (3.0 * (r * r) as f64);
            assert!(
                per_c[c as usize] >= bound,
                "M={m}: good c={c} has probability {} < {bound}",
                per_c[c as usize]
            );
        }
        assert_eq!(
            good_count, r,
            "M={m}: expected exactly r={r} good frequencies"
        );

        // very good pairs: decode recovers the order itself
        let very_good_pairs = distribution
            .iter()
            .filter(|((c, _), p)| {
                *p > 1e-12 && best_approximation(*c, big_n, m).map(|(_, rp)| rp) == Some(r)
            })
            .count() as u64;
        if big_n.is_multiple_of(r) {
            assert_eq!(
                very_good_pairs,
                r * euler_phi(r),
                "M={m}: very-good pair count off (r={r})"
            );
        } else {
            // the order does not divide N here; the count is reported, not pinned
            println!(
                "  M={m}, t={t}: r={r} does not divide N={big_n}; measured very-good pairs = {very_good_pairs} (r*phi(r) = {})",
                r * euler_phi(r)
            );
        }
    }
    pass("6 (good frequencies decode to divisors; mass >= 1/(3r^2); very-good count at r | N)");
}

#[test]
fn criterion_7_continued_fractions_vs_exhaustive_search() {
    // reference oracle: scan every lowest-terms fraction below the bound and
    // keep the (provably unique) one within 1/(2N)
    fn by_scan(c: u64, n: u64, bound: u64) -> Option<(u64, u64)> {
        let mut hit: Option<(u64, u64)> = None;
        for q in 1..bound {
            for d in 0..=q {
                if gcd(d, q) != 1 {
                    continue;
                }
                let diff = (c as i128 * q as i128 - d as i128 * n as i128).unsigned_abs();
                if 2 * diff < q as u128 {
                    assert!(hit.is_none() || hit == Some((d, q)), "uniqueness violated");
                    hit = Some((d, q));
                }
            }
        }
        hit
    }

    let n = 1u64 << 12;
    for bound in [2u64, 15, 33, 64] {
        for c in 0..n {
            assert_eq!(
                best_approximation(c, n, bound),
                by_scan(c, n, bound),
                "N=2^12 bound={bound} c={c}"
            );
        }
    }
    // a smaller register for good measure
    let n = 1u64 << 8;
    for bound in [2u64, 7, 16] {
        for c in 0..n {
            assert_eq!(best_approximation(c, n, bound), by_scan(c, n, bound));
        }
    }
    pass("7 (continued-fraction decode == exhaustive denominator search, N=2^12, bounds to 64)");
}

#[test]
fn criterion_8_boolean_layer() {
    // interpolation exact on every table with up to three variables
    for m in 0..=3usize {
        let len = 1usize << m;
        for bits in 0u32..1u32 << len {
            let table: Vec<bool> = (0..len).map(|i| (bits >> i) & 1 == 1).collect();
            let poly = boolean::interpolate(&table).unwrap();
            for (point, &expect) in table.iter().enumerate() {
                assert_eq!(poly.eval_mask(point as u64), expect);
            }
        }
    }

    // SAT: product formula == clause semantics, exhaustively for m <= 4 over
    // every single-clause instance and a seeded batch of multi-clause ones
    fn clause_semantics(u: &SatInstance, v: &[bool]) -> bool {
        u.clauses.iter().all(|c| {
            let all_s_zero = c.s.iter().all(|&k| !v[k - 1]);
            let all_t_one = c.t.iter().all(|&j| v[j - 1]);
            !(all_s_zero && all_t_one)
        })
    }
    let mut rng = ChaCha12Rng::seed_from_u64(0x5A7);
    for m in 1..=4usize {
        let vars = 1usize << m;
        // all single-clause instances: S and T range over all subsets
        for s_bits in 0..vars {
            for t_bits in 0..vars {
                let clause = SatClause {
                    s: (0..m)
                        .filter(|i| (s_bits >> i) & 1 == 1)
                        .map(|i| i + 1)
                        .collect(),
                    t: (0..m)
                        .filter(|i| (t_bits >> i) & 1 == 1)
                        .map(|i| i + 1)
                        .collect(),
                };
                let u = SatInstance::new(m, vec![clause]).unwrap();
                check_instance(&u, clause_semantics);
            }
        }
        // random multi-clause instances
        for _ in 0..100 {
            use rand::Rng;
            let n_clauses = rng.gen_range(0..=6);
            let clauses = (0..n_clauses)
                .map(|_| SatClause {
                    s: (0..m)
                        .filter(|_| rng.gen_bool(0.4))
                        .map(|i| i + 1)
                        .collect(),
                    t: (0..m)
                        .filter(|_| rng.gen_bool(0.4))
                        .map(|i| i + 1)
                        .collect(),
                })
                .collect();
            let u = SatInstance::new(m, clauses).unwrap();
            check_instance(&u, clause_semantics);
        }
    }

    fn check_instance(u: &SatInstance, semantics: fn(&SatInstance, &[bool]) -> bool) {
        let m = u.m;
        let mut first_sat: Option<Vec<bool>> = None;
        for counter in 0..1u64 << m {
            // lexicographic order: x_1 is the most significant counter bit
            let v: Vec<bool> = (0..m).map(|i| (counter >> (m - 1 - i)) & 1 == 1).collect();
            let algebraic = u.eval(&v).unwrap();
            assert_eq!(algebraic, semantics(u, &v), "routes disagree on {v:?}");
            if algebraic && first_sat.is_none() {
                first_sat = Some(v);
            }
        }
        assert_eq!(
            u.brute_force().unwrap(),
            first_sat,
            "lexicographic minimum mismatch"
        );
    }

    // pair numbering: bijective onto the first 1225 numbers (K = 50)
    let k = 50u64;
    let segment = k * (k - 1) / 2;
    assert_eq!(segment, 1225);
    let mut seen = vec![false; segment as usize + 1];
    for m in 1..k {
        for n in 1..=(k - m) {
            let p = boolean::pairing(m, n);
            assert!(p >= 1 && p <= segment && !seen[p as usize]);
            seen[p as usize] = true;
            assert_eq!(boolean::unpairing(p), (m, n));
        }
    }
    assert!(seen[1..].iter().all(|&b| b));

    pass("8 (interpolation exact for m<=3; SAT semantics + lex minimum for m<=4; pairing bijective on 1225)");
}

#[test]
fn criterion_9_performance_sanity() {
    let n = 22usize;
    let mut state = StateVector::basis_state_capped(n, 0, DEFAULT_MAX_QUBITS).unwrap();
    // memory: amplitude storage stays within 2^(n+5) bytes
    assert!(
        state.memory_bytes() <= 1usize << (n + 5),
        "memory {}",
        state.memory_bytes()
    );

    let start = Instant::now();
    for q in 0..n {
        state.apply_gate(&Gate::u1(q)).unwrap();
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 2.0,
        "U1 sweep over {n} qubits took {elapsed:?}"
    );
    // the sweep really happened: the state is now the uniform superposition
    assert!((state.probability_of(0) - 1.0 / (1u64 << n) as f64).abs() < 1e-15);
    assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
    assert!(state.memory_bytes() <= 1usize << (n + 5));
    pass(&format!(
        "9 (U1 sweep at n=22 in {elapsed:.2?}; memory within 2^27 bytes)"
    ));
}
