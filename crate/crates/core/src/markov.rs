//! Monte Carlo simulation of one-sided cycle shuffles and the bookmark
//! strong stationary time.
//!
//! A deck is a permutation `w` read from top to bottom. One step picks a
//! position `i` with probability `P(i)`, a target `j` uniformly from
//! `{i, ..., n}`, and right-multiplies the deck by `cyc_{i,...,j}`: the card
//! at position `i` moves down to position `j`.
//!
//! A bookmark starts directly above the bottom card. Whenever a card from
//! above the bookmark is inserted below it, the bookmark gains one card
//! beneath it. The first time all `n` cards are below the bookmark is a
//! strong stationary time `τ`.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Geometric;
use rayon::prelude::*;
use serde_json::{json, Value};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation};
use crate::scalar::{format_rational, rational_to_f64, Limits, Rational};
use crate::shuffles::PositionDistribution;

/// Identifier of the generator and stream layout, reported with every result.
pub const RNG_ID: &str = "chacha8/seed_from_u64/stream=trial";

/// Per-trial generator: stream `trial` of ChaCha8 keyed by `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A deck together with the bookmark position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeckState {
    /// `word[p - 1]` is the card at position `p` from the top.
    word: Vec<usize>,
    below: usize,
}

impl DeckState {
    /// Identity deck with the bookmark directly above the bottom card.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDegree);
        }
        Ok(DeckState { word: (1..=n).collect(), below: 1 })
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// Number of cards strictly below the bookmark.
    pub fn bookmark_below_count(&self) -> usize {
        self.below
    }

    pub fn is_done(&self) -> bool {
        self.below == self.word.len()
    }

    pub fn order(&self) -> Permutation {
        Permutation::from_word(&self.word).expect("deck is a permutation")
    }

    /// Moves the card at position `i` to position `j >= i`.
    pub fn step_with_choice(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.n();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        if j < i || j > n {
            return Err(Error::IndexOutOfRange { index: j, max: n });
        }
        self.word[i - 1..j].rotate_left(1);
        // The bookmark sits between positions n - below and n - below + 1.
        let gap = n - self.below;
        if i <= gap && j >= gap && self.below < n {
            self.below += 1;
        }
        Ok(())
    }

    pub fn step<R: Rng + ?Sized>(&mut self, sampler: &PositionSampler, rng: &mut R) {
        let n = self.n();
        let i = sampler.sample(rng);
        let j = rng.random_range(i..=n);
        self.step_with_choice(i, j).expect("sampled positions are valid");
    }
}

/// Draws positions from a [`PositionDistribution`].
#[derive(Debug, Clone)]
pub enum PositionSampler {
    Uniform(usize),
    Weighted(WeightedIndex<f64>),
}

impl PositionSampler {
    pub fn new(p: &PositionDistribution) -> Result<Self> {
        let probs = p.probabilities();
        if probs.iter().all(|q| q == &probs[0]) {
            return Ok(PositionSampler::Uniform(p.n()));
        }
        let weights: Vec<f64> = probs.iter().map(rational_to_f64).collect();
        WeightedIndex::new(weights).map(PositionSampler::Weighted).map_err(|e| Error::InvalidDistribution(e.to_string()))
    }

    /// A position in `[n]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match self {
            PositionSampler::Uniform(n) => rng.random_range(1..=*n),
            PositionSampler::Weighted(w) => w.sample(rng) + 1,
        }
    }
}

/// Aggregated stopping times.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub rng: &'static str,
    pub mean: f64,
    pub stderr: f64,
    /// `E(τ)` for uniform `P`; no formula is known otherwise.
    pub exact: Option<Rational>,
    pub upper_bound: Option<f64>,
    pub conjectured_lower: Option<f64>,
    /// `histogram[t]` is the number of trials with `τ = t`.
    pub histogram: Vec<u64>,
    /// Deck at time `τ`, counted by lexicographic rank, when requested.
    pub final_counts: Option<Vec<u64>>,
}

impl SimulationResult {
    fn from_times(n: usize, seed: u64, times: &[u64], final_counts: Option<Vec<u64>>, uniform: bool) -> Self {
        let trials = times.len() as u64;
        let sum: u128 = times.iter().map(|&t| t as u128).sum();
        let sum_sq: u128 = times.iter().map(|&t| (t as u128) * (t as u128)).sum();
        let (mean, stderr) = mean_and_stderr(trials, sum, sum_sq);
        let max = times.iter().copied().max().unwrap_or(0) as usize;
        let mut histogram = vec![0u64; max + 1];
        for &t in times {
            histogram[t as usize] += 1;
        }
        let (exact, upper_bound, conjectured_lower) = if uniform && n >= 2 {
            let b = bounds(n).expect("n >= 2");
            (exact_expected_tau(n).ok(), Some(b.upper_f64()), Some(b.conjectured_lower_f64()))
        } else {
            (None, None, None)
        };
        SimulationResult {
            n,
            trials,
            seed,
            rng: RNG_ID,
            mean,
            stderr,
            exact,
            upper_bound,
            conjectured_lower,
            histogram,
            final_counts,
        }
    }

    /// Distance of the empirical mean from the exact value, in standard errors.
    pub fn z_score(&self) -> Option<f64> {
        self.exact.as_ref().map(|e| (self.mean - rational_to_f64(e)) / self.stderr)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "rng": self.rng,
            "mean": self.mean,
            "stderr": self.stderr,
            "exact": self.exact.as_ref().map(format_rational),
            "upper_bound": self.upper_bound,
            "conjectured_lower": self.conjectured_lower,
            "histogram": self
                .histogram
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(t, &c)| json!({"tau": t, "count": c}))
                .collect::<Vec<_>>(),
        });
        if let Some(counts) = &self.final_counts {
            v["final_counts"] = json!(counts);
        }
        v
    }
}

fn mean_and_stderr(trials: u64, sum: u128, sum_sq: u128) -> (f64, f64) {
    if trials == 0 {
        return (f64::NAN, f64::NAN);
    }
    let t = trials as f64;
    let mean = sum as f64 / t;
    if trials < 2 {
        return (mean, f64::NAN);
    }
    // Exact integer numerator of the sample variance: t Σx² - (Σx)².
    let numer = (trials as u128) * sum_sq - sum * sum;
    let var = numer as f64 / (t * (t - 1.0));
    (mean, (var / t).sqrt())
}

/// Runs `trials` independent decks from the identity until the bookmark
/// reaches the top. With `record_final`, also counts the deck at time `τ`
/// by lexicographic rank (needs `n` within the algebra cap).
pub fn simulate_sst(
    p: &PositionDistribution,
    trials: u64,
    seed: u64,
    record_final: bool,
    limits: &Limits,
) -> Result<SimulationResult> {
    let n = p.n();
    if p.get(1) == &Rational::from_integer(0.into()) {
        return Err(Error::TopCardFrozen);
    }
    if record_final {
        limits.check_algebra("final deck histogram", n)?;
    }
    let sampler = PositionSampler::new(p)?;
    let runs: Vec<(u64, usize)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let mut deck = DeckState::new(n).expect("n >= 1");
            let mut steps = 0u64;
            while !deck.is_done() {
                deck.step(&sampler, &mut rng);
                steps += 1;
            }
            let rank = if record_final { deck.order().lex_rank() } else { 0 };
            (steps, rank)
        })
        .collect();
    let times: Vec<u64> = runs.iter().map(|r| r.0).collect();
    let final_counts = record_final.then(|| {
        let mut counts = vec![0u64; factorial(n).expect("n within cap")];
        for &(_, rank) in &runs {
            counts[rank] += 1;
        }
        counts
    });
    let uniform = matches!(sampler, PositionSampler::Uniform(_));
    Ok(SimulationResult::from_times(n, seed, &times, final_counts, uniform))
}

/// Climb probability at level `i` (`i - 1` cards below the bookmark) under
/// random-to-below: `(i/n)(H_n - H_{i-1})`.
pub fn climb_probability(n: usize, i: usize) -> Rational {
    let tail: Rational = (i..=n).map(|k| Rational::new(1.into(), (k as i64).into())).sum();
    Rational::new((i as i64).into(), (n as i64).into()) * tail
}

/// `τ` for random-to-below as a sum of independent geometric waiting times,
/// one per level `i = 2, ..., n`.
pub fn fast_bookmark_sim(n: usize, trials: u64, seed: u64) -> Result<SimulationResult> {
    if n == 0 {
        return Err(Error::EmptyDegree);
    }
    let stages: Vec<Geometric> = (2..=n)
        .map(|i| Geometric::new(rational_to_f64(&climb_probability(n, i))).map_err(|e| Error::Internal(e.to_string())))
        .collect::<Result<_>>()?;
    let times: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            // Geometric counts failures before the first success.
            stages.iter().map(|g| g.sample(&mut rng) + 1).sum()
        })
        .collect();
    Ok(SimulationResult::from_times(n, seed, &times, None, true))
}

/// `E(τ) = Σ_{i=2}^n n / (i (H_n - H_{i-1}))` for random-to-below.
pub fn exact_expected_tau(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::IndexOutOfRange { index: n, max: usize::MAX });
    }
    let big_n = Rational::from_integer((n as i64).into());
    let mut tail = Rational::from_integer(0.into());
    let mut total = Rational::from_integer(0.into());
    for i in (2..=n).rev() {
        tail += Rational::new(1.into(), (i as i64).into());
        let denom = Rational::from_integer((i as i64).into()) * &tail;
        total += &big_n / denom;
    }
    Ok(total)
}

/// `E(τ)` in double-double arithmetic (about 106 significant bits).
pub fn expected_tau_extended(n: usize) -> Result<TwoFloat> {
    if n < 2 {
        return Err(Error::IndexOutOfRange { index: n, max: usize::MAX });
    }
    let big_n = TwoFloat::from(n as f64);
    let mut tail = TwoFloat::from(0.0);
    let mut total = TwoFloat::from(0.0);
    for i in (2..=n).rev() {
        let fi = TwoFloat::from(i as f64);
        tail += TwoFloat::from(1.0) / fi;
        total += big_n / (fi * tail);
    }
    Ok(total)
}

/// Proven upper bound and conjectured lower bound on `E(τ)` for random-to-below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauBounds {
    /// `n ln n + n ln ln n + n ln 2 + 1`.
    pub upper: TwoFloat,
    /// `n ln n + n ln ln n`.
    pub conjectured_lower: TwoFloat,
}

impl TauBounds {
    pub fn upper_f64(&self) -> f64 {
        self.upper.hi() + self.upper.lo()
    }

    pub fn conjectured_lower_f64(&self) -> f64 {
        self.conjectured_lower.hi() + self.conjectured_lower.lo()
    }
}

type BigFloat = FBig<HalfEven, 2>;

/// Working precision of the logarithms in the bounds, in bits.
pub const LOG_PRECISION_BITS: usize = 128;

fn to_two_float(x: &BigFloat) -> TwoFloat {
    let hi = x.to_f64().value();
    let rest = x - BigFloat::try_from(hi).expect("finite");
    TwoFloat::new_add(hi, rest.to_f64().value())
}

/// Both bounds, with logarithms evaluated to 128 bits and rounded to
/// double-double; defined for `n >= 2`.
pub fn bounds(n: usize) -> Result<TauBounds> {
    if n < 2 {
        return Err(Error::IndexOutOfRange { index: n, max: usize::MAX });
    }
    let x = BigFloat::from(n as u64).with_precision(LOG_PRECISION_BITS).value();
    let ln_n = x.ln();
    let lower = &x * &ln_n + &x * ln_n.ln();
    let two = BigFloat::from(2u8).with_precision(LOG_PRECISION_BITS).value();
    let upper = &lower + &x * two.ln() + BigFloat::ONE;
    Ok(TauBounds { upper: to_two_float(&upper), conjectured_lower: to_two_float(&lower) })
}

/// Outcome of comparing `E(τ)` with both bounds over a range of `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSweep {
    pub from: usize,
    pub to: usize,
    /// Values of `n` where `E(τ)` exceeds the proven upper bound.
    pub upper_violations: Vec<usize>,
    /// Values of `n >= 3` where `E(τ)` falls below the conjectured lower bound.
    pub lower_violations: Vec<usize>,
    /// Smallest margin `upper - E(τ)` and where it occurs.
    pub min_upper_margin: (usize, f64),
}

/// Evaluates `E(τ)` and the bounds for every `n` in `from..=to`.
pub fn sweep_bounds(from: usize, to: usize) -> Result<BoundSweep> {
    let from = from.max(2);
    let rows = (from..=to)
        .into_par_iter()
        .map(|n| {
            let e = expected_tau_extended(n)?;
            let b = bounds(n)?;
            let margin = b.upper - e;
            let below_lower = n >= 3 && e < b.conjectured_lower;
            Ok((n, margin, below_lower))
        })
        .collect::<Result<Vec<_>>>()?;
    let upper_violations = rows.iter().filter(|r| r.1 < TwoFloat::from(0.0)).map(|r| r.0).collect();
    let lower_violations = rows.iter().filter(|r| r.2).map(|r| r.0).collect();
    let min_upper_margin = rows
        .iter()
        .map(|r| (r.0, r.1.hi() + r.1.lo()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((from, f64::NAN));
    Ok(BoundSweep { from, to, upper_violations, lower_violations, min_upper_margin })
}

/// Thresholds for the statistical checks. The defaults are conventional
/// choices; nothing in the model fixes them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// A simulated mean may sit this many standard errors from the exact value.
    pub mean_stderr: f64,
    /// Two simulated means may differ by this many combined standard errors.
    pub two_sample_stderr: f64,
    /// Smallest acceptable p-value of the uniformity test at `τ`.
    pub chi_square_significance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { mean_stderr: 3.0, two_sample_stderr: 4.0, chi_square_significance: 1e-3 }
    }
}

impl Tolerances {
    pub fn mean_agrees(&self, sim: &SimulationResult) -> Option<bool> {
        sim.z_score().map(|z| z.abs() <= self.mean_stderr)
    }

    /// `|mean_a - mean_b| / sqrt(se_a² + se_b²)` within tolerance.
    pub fn two_sample_agrees(&self, a: &SimulationResult, b: &SimulationResult) -> bool {
        two_sample_gap(a, b) <= self.two_sample_stderr
    }
}

/// Difference of two means in combined standard errors.
pub fn two_sample_gap(a: &SimulationResult, b: &SimulationResult) -> f64 {
    (a.mean - b.mean).abs() / (a.stderr.powi(2) + b.stderr.powi(2)).sqrt()
}

/// Pearson chi-square test of counts against the uniform distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

impl ChiSquareTest {
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value >= significance
    }
}

pub fn chi_square_uniform(counts: &[u64]) -> Result<ChiSquareTest> {
    if counts.len() < 2 {
        return Err(Error::Dimension("chi-square needs at least two cells".into()));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::Dimension("chi-square needs at least one observation".into()));
    }
    let expected = total as f64 / counts.len() as f64;
    let statistic = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let df = counts.len() - 1;
    let dist = ChiSquared::new(df as f64).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(ChiSquareTest { statistic, degrees_of_freedom: df, p_value: dist.sf(statistic) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn forced_move_at_n2() {
        let mut deck = DeckState::new(2).unwrap();
        deck.step_with_choice(1, 2).unwrap();
        assert_eq!(deck.bookmark_below_count(), 2);
        assert!(deck.is_done());
        assert_eq!(deck.order().to_string(), "2,1");
    }

    #[test]
    fn in_place_moves() {
        let mut deck = DeckState::new(4).unwrap();
        // Card above the bookmark but not adjacent to it: nothing happens.
        deck.step_with_choice(1, 1).unwrap();
        assert_eq!(deck.bookmark_below_count(), 1);
        // Card directly above the bookmark, reinserted in place, counts as below it.
        deck.step_with_choice(3, 3).unwrap();
        assert_eq!(deck.bookmark_below_count(), 2);
        assert_eq!(deck.order(), Permutation::identity(4).unwrap());
        // Cards below the bookmark never move it.
        deck.step_with_choice(3, 4).unwrap();
        assert_eq!(deck.bookmark_below_count(), 2);
    }

    #[test]
    fn step_is_right_multiplication_by_cycle() {
        let mut deck = DeckState::new(5).unwrap();
        deck.step_with_choice(2, 4).unwrap();
        let c = Permutation::consecutive_cycle(5, 2, 4).unwrap();
        assert_eq!(deck.order(), Permutation::identity(5).unwrap().compose(&c).unwrap());
    }

    /// Enumerates every (i, j) choice with its probability and compares the
    /// chance of a climb with the closed form.
    #[test]
    fn climb_probability_by_enumeration() {
        for n in 2..=7 {
            for below in 1..n {
                let mut prob = Rational::from_integer(0.into());
                for i in 1..=n {
                    for j in i..=n {
                        let mut deck = DeckState { word: (1..=n).collect(), below };
                        deck.step_with_choice(i, j).unwrap();
                        if deck.below > below {
                            prob += rational(1, (n * (n + 1 - i)) as i64);
                        }
                    }
                }
                assert_eq!(prob, climb_probability(n, below + 1), "n = {n}, below = {below}");
            }
        }
    }

    #[test]
    fn expected_tau_small() {
        assert_eq!(exact_expected_tau(2).unwrap(), rational(2, 1));
        assert_eq!(exact_expected_tau(3).unwrap(), rational(24, 5));
        assert!(exact_expected_tau(1).is_err());
        for n in 2..=30 {
            let exact = rational_to_f64(&exact_expected_tau(n).unwrap());
            let ext = expected_tau_extended(n).unwrap();
            assert!((ext.hi() - exact).abs() <= 1e-12 * exact);
        }
    }

    #[test]
    fn bound_values() {
        let b = bounds(3).unwrap();
        assert!((b.upper_f64() - 6.657).abs() < 1e-3);
        assert!(b.upper_f64() >= 4.8);
        // Reference values to 40 digits.
        let upper3 = TwoFloat::new_add(6.657421890534262, 0.0) - b.upper;
        assert!(upper3.hi().abs() < 1e-15);
        let b = bounds(10_000).unwrap();
        assert!((b.upper - TwoFloat::from(121239.1435890397446)).hi().abs() < 1e-10);
        assert!((b.conjectured_lower - TwoFloat::from(114306.6717834402915)).hi().abs() < 1e-10);
    }

    #[test]
    fn refuses_frozen_top_card() {
        let p = PositionDistribution::new(vec![rational(0, 1), rational(1, 1)]).unwrap();
        assert_eq!(simulate_sst(&p, 10, 1, false, &Limits::default()), Err(Error::TopCardFrozen));
    }

    #[test]
    fn deterministic_given_seed() {
        let p = PositionDistribution::uniform(4).unwrap();
        let a = simulate_sst(&p, 500, 7, true, &Limits::default()).unwrap();
        let b = simulate_sst(&p, 500, 7, true, &Limits::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.histogram.iter().sum::<u64>(), 500);
        assert_eq!(a.final_counts.as_ref().unwrap().iter().sum::<u64>(), 500);
        assert_eq!(fast_bookmark_sim(4, 500, 7).unwrap(), fast_bookmark_sim(4, 500, 7).unwrap());
    }

    #[test]
    fn chi_square() {
        let t = chi_square_uniform(&[100, 100, 100, 100]).unwrap();
        assert_eq!(t.statistic, 0.0);
        assert!((t.p_value - 1.0).abs() < 1e-12);
        let skewed = chi_square_uniform(&[400, 0, 0, 0]).unwrap();
        assert!(!skewed.passes(1e-3));
    }
}
