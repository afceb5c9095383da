//! End-to-end factoring of small odd composites by quantum period finding.
//!
//! Given M (odd, composite, not a prime power) the pipeline fixes the
//! frequency register width n by M^2 < 2^n < 2M^2, draws random bases t
//! coprime to M, and repeats runs of the quantum subroutine:
//!
//! 1. partial initialization of the frequency register to the uniform
//!    superposition over a = 0..N-1,
//! 2. the lifted permutation (a, y) -> (a, y xor t^a mod M),
//! 3. the Fourier transform on the frequency register (emitted in its
//!    bit-reversed form; the reversal is undone classically when decoding
//!    the measured index),
//! 4. joint observation of both registers, yielding a pair (c, t^k mod M).
//!
//! Classical decoding finds the best rational approximation d'/r' to c/N
//! with denominator below M via continued fractions, then tries
//! gcd(t^(r'/2) +- 1, M) when r' is even. Budgets for repeated runs and
//! fresh draws of t, and the exact outcome distribution used to validate
//! the simulation, live here too.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, ModulusRejection, Result};
use crate::gates::Gate;
use crate::qft::{bit_reverse, qft_circuit_bitrev};
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};

// --- classical arithmetic -------------------------------------------------

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Modular exponentiation by repeated squaring.
pub fn modpow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus > 0);
    let m = modulus as u128;
    let mut base = (base as u128) % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic primality by trial division; adequate at desk scale.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m.is_multiple_of(2) {
        return m == 2;
    }
    let mut d = 3u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest integer r with r^k <= m.
fn integer_kth_root(m: u64, k: u32) -> u64 {
    if k == 1 {
        return m;
    }
    let mut lo = 1u64;
    let mut hi = 1u64 << (64 / k as u64 + 1).min(63);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        match mid.checked_pow(k) {
            Some(p) if p <= m => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

/// Detect m = p^e with p prime and e >= 2, via exact k-th roots for every
/// k up to log2(m).
pub fn is_prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 4 {
        return None;
    }
    for k in 2..=m.ilog2() {
        let root = integer_kth_root(m, k);
        if root >= 2 && root.pow(k) == m && is_prime(root) {
            return Some((root, k));
        }
    }
    None
}

/// The multiplicative order of t modulo m: the least r >= 1 with
/// t^r = 1 (mod m). Requires gcd(t, m) = 1. This is the classical oracle
/// the quantum period-finding path is checked against.
pub fn order_classical(t: u64, m: u64) -> u64 {
    assert!(m > 0 && gcd(t, m) == 1, "order is defined only for units");
    let mut acc = t % m;
    let mut r = 1u64;
    while acc != 1 {
        acc = (acc as u128 * t as u128 % m as u128) as u64;
        r += 1;
    }
    r
}

// --- parameters -----------------------------------------------------------

/// Register geometry for one modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShorParams {
    /// The odd composite to factor.
    pub m: u64,
    /// Frequency register width: the unique n with M^2 < 2^n < 2M^2.
    pub n_freq: usize,
    /// N = 2^n_freq.
    pub big_n: u64,
    /// Residue register width: ceil(log2 M).
    pub residue_bits: usize,
}

impl ShorParams {
    pub fn total_qubits(&self) -> usize {
        self.n_freq + self.residue_bits
    }
}

/// Validate the modulus (odd, composite, not a prime power) and derive the
/// register sizes. The rejection reason is reported exactly.
pub fn choose_params(m: u64) -> Result<ShorParams> {
    if m.is_multiple_of(2) {
        return Err(Error::RejectedModulus {
            m,
            reason: ModulusRejection::Even,
        });
    }
    if m < 15 {
        // 15 is the least odd composite that is not a prime power
        if is_prime(m) {
            return Err(Error::RejectedModulus {
                m,
                reason: ModulusRejection::Prime,
            });
        }
        if let Some((base, exponent)) = is_prime_power(m) {
            return Err(Error::RejectedModulus {
                m,
                reason: ModulusRejection::PrimePower { base, exponent },
            });
        }
        return Err(Error::RejectedModulus {
            m,
            reason: ModulusRejection::TooSmall,
        });
    }
    if is_prime(m) {
        return Err(Error::RejectedModulus {
            m,
            reason: ModulusRejection::Prime,
        });
    }
    if let Some((base, exponent)) = is_prime_power(m) {
        return Err(Error::RejectedModulus {
            m,
            reason: ModulusRejection::PrimePower { base, exponent },
        });
    }
    // M odd makes M^2 odd, so bit_length(M^2) gives the unique n with
    // M^2 < 2^n < 2*M^2.
    let n_freq = ((m * m).ilog2() + 1) as usize;
    let mut residue_bits = 0usize;
    while (1u64 << residue_bits) < m {
        residue_bits += 1;
    }
    Ok(ShorParams {
        m,
        n_freq,
        big_n: 1u64 << n_freq,
        residue_bits,
    })
}

// --- classical post-processing ---------------------------------------------

/// Try to extract a proper divisor of m from a period candidate r: when r is
/// even, compute gcd(t^(r/2) + 1, m) and gcd(t^(r/2) - 1, m) and return
/// whichever is proper. Odd candidates yield nothing.
pub fn classical_postprocess(t: u64, r_candidate: u64, m: u64) -> Option<u64> {
    if r_candidate == 0 || !r_candidate.is_multiple_of(2) {
        return None;
    }
    let half = modpow(t, r_candidate / 2, m);
    [gcd(half + 1, m), gcd(half.wrapping_sub(1), m)]
        .into_iter()
        .find(|&g| g > 1 && g < m)
}

/// [`classical_postprocess`] extended over small multiples of the candidate:
/// when the decoded denominator is a proper divisor of the true period,
/// lambda * r' for lambda in 1..=max_lambda (while <= m) may recover it.
pub fn postprocess_with_multiples(
    t: u64,
    r_candidate: u64,
    m: u64,
    max_lambda: u64,
) -> Option<u64> {
    for lambda in 1..=max_lambda {
        let candidate = r_candidate * lambda;
        if candidate > m {
            break;
        }
        if let Some(f) = classical_postprocess(t, candidate, m) {
            return Some(f);
        }
    }
    None
}

/// Best rational approximation d'/r' to c/N with denominator strictly below
/// `bound`, through the continued-fraction convergents of c/N. Returns the
/// last convergent with denominator < bound provided it satisfies
/// |c/N - d'/r'| < 1/(2N); otherwise `None`. The pair is in lowest terms.
pub fn best_approximation(c: u64, n_den: u64, bound: u64) -> Option<(u64, u64)> {
    assert!(n_den > 0 && c < n_den, "expects 0 <= c < N");
    assert!(bound >= 1);
    // convergent recurrence p_k = a_k p_{k-1} + p_{k-2}
    let (mut p2, mut q2) = (0u64, 1u64);
    let (mut p1, mut q1) = (1u64, 0u64);
    let mut best: Option<(u64, u64)> = None;
    let (mut num, mut den) = (c, n_den);
    while den != 0 {
        let a = num / den;
        let rem = num % den;
        let p = a * p1 + p2;
        let q = a * q1 + q2;
        if q >= bound {
            break;
        }
        best = Some((p, q));
        (p2, q2) = (p1, q1);
        (p1, q1) = (p, q);
        (num, den) = (den, rem);
    }
    let (d, r) = best?;
    // |c/N - d/r| < 1/(2N)  <=>  2|c*r - d*N| < r, checked exactly
    let diff = (c as i128 * r as i128 - d as i128 * n_den as i128).unsigned_abs();
    (2 * diff < r as u128).then_some((d, r))
}

// --- the quantum subroutine -------------------------------------------------

/// The lifted modular-exponentiation step as a basis permutation on the
/// combined register: (a, y) -> (a, y xor (t^a mod M)), with a in the low
/// `n_freq` bits and y in the high `residue_bits` bits. The xor form makes
/// the table an involution, hence trivially a bijection.
pub fn modexp_permutation(t: u64, params: &ShorParams) -> Result<Gate> {
    let n = params.n_freq;
    let big_n = params.big_n as usize;
    let residue_dim = 1usize << params.residue_bits;

    let mut powers = Vec::with_capacity(big_n);
    let mut acc = 1u64 % params.m;
    for _ in 0..big_n {
        powers.push(acc as usize);
        acc = (acc as u128 * t as u128 % params.m as u128) as u64;
    }

    let mut table = vec![0usize; big_n << params.residue_bits];
    for (a, &fa) in powers.iter().enumerate() {
        for y in 0..residue_dim {
            table[(y << n) | a] = ((y ^ fa) << n) | a;
        }
    }
    Gate::permutation(table)
}

/// One observed pair and its classical decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShorOutcome {
    /// Observed frequency, already corrected for the transform's bit order.
    pub c: u64,
    /// Observed residue t^k mod M.
    pub residue: u64,
    /// Numerator of the decoded approximation, when one exists.
    pub d_prime: Option<u64>,
    /// Decoded denominator: the period candidate.
    pub r_prime: Option<u64>,
    /// Proper divisor of M extracted from r_prime, if any.
    pub factor: Option<u64>,
}

/// The prepared pre-measurement state for a fixed (M, t). Preparation runs
/// the initialization, modular-exponentiation, and transform steps once;
/// every sample then observes that state, which is statistically identical
/// to preparing it fresh per run since the steps are deterministic.
pub struct PeriodRunner {
    params: ShorParams,
    t: u64,
    state: StateVector,
}

impl PeriodRunner {
    pub fn new(params: &ShorParams, t: u64, max_qubits: usize) -> Result<PeriodRunner> {
        let total = params.total_qubits();
        let mut state = StateVector::basis_state_capped(total, 0, max_qubits)?;
        // (i) uniform superposition over the frequency register
        for q in 0..params.n_freq {
            state.apply_gate(&Gate::u1(q))?;
        }
        // (ii) reversible evaluation of a -> t^a mod M into the residue register
        state.apply_gate(&modexp_permutation(t, params)?)?;
        // (iii) transform on the frequency register, bit-reversed output
        state.apply_circuit(&qft_circuit_bitrev(params.n_freq))?;
        Ok(PeriodRunner {
            params: *params,
            t,
            state,
        })
    }

    pub fn params(&self) -> &ShorParams {
        &self.params
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// (iv) observe both registers; returns the decoded (c, residue) pair.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(u64, u64)> {
        let outcome = self.state.sample_index(rng)?;
        Ok(self.decode_index(outcome.basis_index))
    }

    fn decode_index(&self, index: usize) -> (u64, u64) {
        let n = self.params.n_freq;
        let c_raw = index & ((1usize << n) - 1);
        let residue = (index >> n) as u64;
        (bit_reverse(c_raw, n) as u64, residue)
    }

    /// One full run: observe, decode the continued fraction, attempt the
    /// gcd extraction.
    pub fn sample_outcome<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ShorOutcome> {
        let (c, residue) = self.sample(rng)?;
        Ok(self.decode(c, residue))
    }

    /// The classical decode of an observed pair.
    pub fn decode(&self, c: u64, residue: u64) -> ShorOutcome {
        let approx = best_approximation(c, self.params.big_n, self.params.m);
        let factor = approx.and_then(|(_, r)| classical_postprocess(self.t, r, self.params.m));
        ShorOutcome {
            c,
            residue,
            d_prime: approx.map(|(d, _)| d),
            r_prime: approx.map(|(_, r)| r),
            factor,
        }
    }

    /// Exact outcome probabilities of the simulated state, one entry per
    /// decoded pair (c, residue), in lexicographic order. This is the
    /// simulation route; [`peak_distribution`] is the independent one.
    pub fn outcome_probabilities(&self) -> Vec<((u64, u64), f64)> {
        let rb = self.params.residue_bits;
        let mut probs = vec![0.0f64; self.state.dim()];
        for index in 0..self.state.dim() {
            let (c, residue) = self.decode_index(index);
            probs[((c as usize) << rb) | residue as usize] = self.state.probability_of(index);
        }
        probs
            .into_iter()
            .enumerate()
            .map(|(key, p)| (((key >> rb) as u64, (key & ((1 << rb) - 1)) as u64), p))
            .collect()
    }
}

/// Simulate the four quantum steps once and observe, returning the decoded
/// outcome. Deterministic given the RNG state.
pub fn quantum_period_run<R: Rng + ?Sized>(
    params: &ShorParams,
    t: u64,
    rng: &mut R,
) -> Result<ShorOutcome> {
    quantum_period_run_capped(params, t, DEFAULT_MAX_QUBITS, rng)
}

pub fn quantum_period_run_capped<R: Rng + ?Sized>(
    params: &ShorParams,
    t: u64,
    max_qubits: usize,
    rng: &mut R,
) -> Result<ShorOutcome> {
    PeriodRunner::new(params, t, max_qubits)?.sample_outcome(rng)
}

/// The exact outcome distribution by direct summation: the probability of
/// observing (c, t^k mod M) is |sum over a = k, k+r, k+2r, ... < N of
/// exp(2 pi i a c / N)|^2 / N^2. Entries are returned for every c and every
/// residue class representative k in 0..r, sorted by (c, residue).
pub fn peak_distribution(params: &ShorParams, t: u64) -> Vec<((u64, u64), f64)> {
    let m = params.m;
    let big_n = params.big_n;
    let r = order_classical(t, m);
    let mut out = Vec::with_capacity((big_n * r) as usize);
    for k in 0..r {
        let residue = modpow(t, k, m);
        for c in 0..big_n {
            let mut re = 0.0f64;
            let mut im = 0.0f64;
            let mut a = k;
            while a < big_n {
                // reduce the phase exponent mod N in exact integer arithmetic
                let angle = std::f64::consts::TAU
                    * ((a as u128 * c as u128 % big_n as u128) as f64)
                    / big_n as f64;
                re += angle.cos();
                im += angle.sin();
                a += r;
            }
            let p = (re * re + im * im) / (big_n as f64 * big_n as f64);
            out.push(((c, residue), p));
        }
    }
    out.sort_by_key(|&((c, residue), _)| (c, residue));
    out
}

// --- the retry loop ---------------------------------------------------------

/// Where period candidates come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeriodSource {
    /// Simulate the quantum subroutine and decode observations.
    #[default]
    Quantum,
    /// Substitute the classical multiplicative order; used to cross-check
    /// the pipeline around the quantum step.
    ClassicalOrder,
}

/// Budgets and switches for the retry loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShorConfig {
    /// Runs to spend on one base before drawing a new one.
    pub max_runs_per_t: u32,
    /// How many bases to try before giving up.
    pub max_t_draws: u32,
    /// Register width cap for the simulation.
    pub max_qubits: usize,
    /// After a failed decode, also try small multiples (2..=4) of r' before
    /// burning another run. Off by default.
    pub try_multiples: bool,
    /// Pin the base instead of drawing randomly; the draw budget collapses
    /// to this single base.
    pub forced_t: Option<u64>,
    pub period_source: PeriodSource,
}

impl ShorConfig {
    /// Default budgets for a modulus: max(4, ceil(3 log2 log2 M)) runs per
    /// base and ceil(log2 M) base draws.
    pub fn for_modulus(m: u64) -> ShorConfig {
        let runs = (3.0 * (m as f64).log2().log2()).ceil() as u32;
        let mut draws = 0u32;
        while (1u64 << draws) < m {
            draws += 1;
        }
        ShorConfig {
            max_runs_per_t: runs.max(4),
            max_t_draws: draws.max(1),
            max_qubits: DEFAULT_MAX_QUBITS,
            try_multiples: false,
            forced_t: None,
            period_source: PeriodSource::Quantum,
        }
    }
}

/// One run's record in a factoring report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunRecord {
    pub t: u64,
    /// Observed frequency; absent on the classical-order path.
    pub c: Option<u64>,
    pub residue: Option<u64>,
    pub r_prime: Option<u64>,
    pub factor: Option<u64>,
    pub success: bool,
}

/// Aggregated result of a factoring attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorReport {
    pub m: u64,
    pub factor: Option<u64>,
    pub cofactor: Option<u64>,
    pub seed: u64,
    pub runs: Vec<RunRecord>,
}

impl FactorReport {
    pub fn runs_used(&self) -> usize {
        self.runs.len()
    }
}

fn draw_base<R: Rng + ?Sized>(rng: &mut R, m: u64) -> u64 {
    loop {
        let t = rng.gen_range(2..m);
        if gcd(t, m) == 1 {
            return t;
        }
    }
}

/// Factor M: loop quantum runs, continued-fraction decode, and gcd
/// extraction until a proper divisor appears or the budgets are exhausted.
/// Budget exhaustion is not an error; it returns a report with no factor.
/// Deterministic for a fixed seed and configuration.
pub fn factor(m: u64, config: &ShorConfig, seed: u64) -> Result<FactorReport> {
    let params = choose_params(m)?;
    if let Some(t) = config.forced_t {
        if t <= 1 || t >= m || gcd(t, m) != 1 {
            return Err(Error::VariableOutOfRange {
                var: t as usize,
                m: m as usize,
            });
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut runs: Vec<RunRecord> = Vec::new();

    let t_draws = if config.forced_t.is_some() {
        1
    } else {
        config.max_t_draws
    };
    for _ in 0..t_draws {
        let t = match config.forced_t {
            Some(t) => t,
            None => draw_base(&mut rng, m),
        };

        match config.period_source {
            PeriodSource::ClassicalOrder => {
                // the oracle path is deterministic per base; one run suffices
                let r = order_classical(t, m);
                let found = classical_postprocess(t, r, m);
                runs.push(RunRecord {
                    t,
                    c: None,
                    residue: None,
                    r_prime: Some(r),
                    factor: found,
                    success: found.is_some(),
                });
                if let Some(f) = found {
                    return Ok(finish(m, seed, runs, Some(f)));
                }
            }
            PeriodSource::Quantum => {
                let runner = PeriodRunner::new(&params, t, config.max_qubits)?;
                for _ in 0..config.max_runs_per_t {
                    let outcome = runner.sample_outcome(&mut rng)?;
                    let mut found = outcome.factor;
                    if found.is_none() && config.try_multiples {
                        if let Some(rp) = outcome.r_prime {
                            found = postprocess_with_multiples(t, rp, m, 4);
                        }
                    }
                    runs.push(RunRecord {
                        t,
                        c: Some(outcome.c),
                        residue: Some(outcome.residue),
                        r_prime: outcome.r_prime,
                        factor: found,
                        success: found.is_some(),
                    });
                    if let Some(f) = found {
                        return Ok(finish(m, seed, runs, Some(f)));
                    }
                }
            }
        }
    }
    Ok(finish(m, seed, runs, None))
}

fn finish(m: u64, seed: u64, runs: Vec<RunRecord>, factor: Option<u64>) -> FactorReport {
    let cofactor = factor.map(|f| m / f);
    FactorReport {
        m,
        factor,
        cofactor,
        seed,
        runs,
    }
}
