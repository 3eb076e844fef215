//! Verification suites that recheck the structural results by brute force.

use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::basis::{antipode_matrix, lmul_standard_matrix, rmul_standard_matrix, BasisFamily, BasisKind, BasisOrder};
use crate::error::{Error, Result};
use crate::identities::{commutator_nilpotency, identity_suite};
use crate::lacunar::{m_value, LacunarCatalog};
use crate::linalg::DenseMatrix;
use crate::perm::Permutation;
use crate::scalar::{format_rational, Limits, Rational, Scalar};
use crate::shuffles::{build_t, build_t_prime, one_sided_cycle_shuffle, one_sided_cycle_shuffle_prime, WeightVector};
use crate::spectrum::annihilator_check;
use crate::subset::IndexSubset;

/// Seed of the fixed pseudo-random weight vector used by the suites.
pub const FIXED_WEIGHT_SEED: u64 = 0x5eed_c7c1e;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Triangularity,
    Annihilator,
    Duality,
    Identities,
    BooleanPartition,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Triangularity, Suite::Annihilator, Suite::Duality, Suite::Identities, Suite::BooleanPartition];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Triangularity => "triangularity",
            Suite::Annihilator => "annihilator",
            Suite::Duality => "duality",
            Suite::Identities => "identities",
            Suite::BooleanPartition => "boolean-partition",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidSubset(format!("unknown suite {s:?}")))
    }
}

/// One named check inside a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, failure: Option<String>) -> Self {
        CheckLine { name: name.into(), passed: failure.is_none(), detail: failure.unwrap_or_default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "n": self.n,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  {}  n={}  {}", self.suite, self.n, c.name));
            if !c.detail.is_empty() {
                out.push_str(&format!("  ({})", c.detail));
            }
            out.push('\n');
        }
        out
    }
}

pub fn run_suite(suite: Suite, n: usize, limits: &Limits) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Triangularity => triangularity(n, limits)?,
        Suite::Annihilator => annihilator(n, limits)?,
        Suite::Duality => duality(n, limits)?,
        Suite::Identities => identities(n, limits)?,
        Suite::BooleanPartition => boolean_partition(n)?,
    };
    Ok(SuiteReport { suite, n, checks })
}

/// Nonnegative rational weights with small numerators and denominators,
/// reproducible from `seed`.
pub fn pseudo_random_weights(n: usize, seed: u64) -> Result<WeightVector<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..n)
        .map(|_| Rational::new(rng.random_range(0i64..10).into(), rng.random_range(1i64..10).into()))
        .collect();
    WeightVector::new(weights)
}

/// Position of the first nonzero entry strictly below the diagonal, or a
/// diagonal entry differing from `diag`.
pub fn triangular_defect<S: Scalar>(m: &DenseMatrix<S>, diag: Option<&[S]>) -> Option<String> {
    if let Some((i, j)) = m.first_below_diagonal() {
        return Some(format!("nonzero entry {} at ({i}, {j}) below the diagonal", m.get(i, j)));
    }
    let diag = diag?;
    (0..m.rows())
        .find(|&k| m.get(k, k) != &diag[k])
        .map(|k| format!("diagonal entry {k} is {}, expected {}", m.get(k, k), diag[k]))
}

/// `R(t_ℓ)` is upper-triangular in the `a`-basis ordered by Q-index, with
/// diagonal `m_{Q_{Qind w}, ℓ}`. At `n = 4` also checks the expansion of
/// `a_[4312] t_2`.
pub fn triangularity(n: usize, limits: &Limits) -> Result<Vec<CheckLine>> {
    let fam = BasisFamily::<i64>::new(n, limits)?;
    let order = fam.ordering(BasisOrder::QIndex);
    let mut checks = Vec::new();
    for l in 1..=n {
        let t = build_t::<i64>(n, l)?;
        let m = fam.rmul_matrix(&t, BasisKind::A, BasisOrder::QIndex, None)?;
        let diag = order
            .iter()
            .map(|&r| {
                let q = fam.catalog().set(fam.q_indices().by_rank()[r]);
                m_value(q, n, l).map(|v| v as i64)
            })
            .collect::<Result<Vec<_>>>()?;
        checks.push(CheckLine::new(format!("R(t_{l}) in a-basis, Q-index order"), triangular_defect(&m, Some(&diag))));
    }
    if n == 4 {
        checks.push(CheckLine::new("a_[4312] t_2 expansion", a4312_t2_defect(&fam)?));
    }
    Ok(checks)
}

fn a4312_t2_defect(fam: &BasisFamily<i64>) -> Result<Option<String>> {
    let p = |s: &str| s.parse::<Permutation>();
    let w = p("4312")?;
    let product = fam.a(&w).multiply(&build_t(4, 2)?)?;
    let got = fam.expand_sparse(&product)?;
    let mut expected =
        vec![(p("4312")?, 1), (p("4321")?, 1), (p("4231")?, -1), (p("3241")?, -1), (p("2143")?, -1)];
    expected.sort();
    if got == expected {
        return Ok(None);
    }
    let shown: Vec<String> = got.iter().map(|(v, c)| format!("{c}*a_[{v}]")).collect();
    Ok(Some(format!("got {}", shown.join(" + "))))
}

/// `∏ (t - g_I) = 0` for all-ones weights, random-to-below and one fixed
/// pseudo-random weight vector.
pub fn annihilator(n: usize, limits: &Limits) -> Result<Vec<CheckLine>> {
    let cases = [
        ("all-ones", WeightVector::ones(n)?),
        ("random-to-below", WeightVector::random_to_below(n)?),
        ("fixed pseudo-random", pseudo_random_weights(n, FIXED_WEIGHT_SEED)?),
    ];
    cases
        .into_iter()
        .map(|(label, w)| {
            let check = annihilator_check(&w, limits)?;
            let failure = (!check.passed).then(|| {
                format!(
                    "{} surviving terms, first [{}]",
                    check.residual.len(),
                    check.residual.min_term().map(|(v, _)| v.to_string()).unwrap_or_default()
                )
            });
            let weights: Vec<String> = w.weights().iter().map(format_rational).collect();
            Ok(CheckLine::new(format!("prod (t - g_I) = 0, {label} weights ({})", weights.join(",")), failure))
        })
        .collect()
}

/// Duality of the `a`- and `b`-bases, triangularity of `R(t'_ℓ)` in the
/// `b`-basis under decreasing Q-index, `S(t_ℓ) = t'_ℓ`, and
/// `R(S(x)) = S L(x) S^{-1}` as matrices.
pub fn duality(n: usize, limits: &Limits) -> Result<Vec<CheckLine>> {
    let fam = BasisFamily::<i64>::new(n, limits)?;
    let dual = fam.dual();
    let mut checks = Vec::new();

    let gram_defect = fam.iter().zip(dual.elements()).enumerate().find_map(|(q, (_, b))| {
        let row = fam.expand_dual(b).expect("same degree");
        row.iter()
            .enumerate()
            .find(|&(p, &c)| c != i64::from(p == q))
            .map(|(p, c)| format!("f(a_[{}], b_[{}]) = {c}", fam.permutations()[p], fam.permutations()[q]))
    });
    checks.push(CheckLine::new("f(a_p, b_q) = [p = q]", gram_defect));

    for l in 1..=n {
        let tp = build_t_prime::<i64>(n, l)?;
        let m = fam.rmul_matrix(&tp, BasisKind::B, BasisOrder::QIndexDesc, Some(&dual))?;
        checks.push(CheckLine::new(format!("R(t'_{l}) in b-basis, decreasing Q-index"), triangular_defect(&m, None)));
    }

    for l in 1..=n {
        let t = build_t::<i64>(n, l)?;
        let tp = build_t_prime::<i64>(n, l)?;
        let failure = (t.antipode() != tp).then(|| format!("S(t_{l}) = {}", t.antipode()));
        checks.push(CheckLine::new(format!("S(t_{l}) = t'_{l}"), failure));
    }

    let s = antipode_matrix::<Rational>(n, limits)?;
    for (label, w) in [("all-ones", WeightVector::ones(n)?), ("fixed pseudo-random", pseudo_random_weights(n, FIXED_WEIGHT_SEED)?)] {
        let x = one_sided_cycle_shuffle(&w)?;
        let xp = one_sided_cycle_shuffle_prime(&w)?;
        let lhs = rmul_standard_matrix(&xp, limits)?;
        let rhs = s.mul(&lmul_standard_matrix(&x, limits)?)?.mul(&s)?;
        let failure = (lhs != rhs).then(|| "matrices differ".to_string());
        checks.push(CheckLine::new(format!("R(sum λ t') = S L(sum λ t) S^-1, {label} weights"), failure));
    }
    Ok(checks)
}

/// Product identities and commutator nilpotency.
pub fn identities(n: usize, limits: &Limits) -> Result<Vec<CheckLine>> {
    let mut reports = vec![identity_suite(n, limits)?];
    reports.push(commutator_nilpotency(n, limits)?);
    Ok(reports
        .iter()
        .flat_map(|r| r.checks.iter())
        .map(|c| {
            let params: Vec<String> = c.params.iter().map(usize::to_string).collect();
            let failure = (!c.passed).then(|| {
                format!(
                    "{} surviving terms, first [{}]",
                    c.residual_terms,
                    c.first_survivor.as_ref().map(|w| w.to_string()).unwrap_or_default()
                )
            });
            CheckLine::new(format!("{} ({})", c.name, params.join(",")), failure)
        })
        .collect())
}

/// Every `J ⊆ [n-1]` lies in exactly one interval `[I', [n-1] \ I]`.
pub fn boolean_partition(n: usize) -> Result<Vec<CheckLine>> {
    let catalog = LacunarCatalog::new(n)?;
    let universe = n - 1;
    if universe >= 32 {
        return Err(Error::CapExceeded { what: "boolean partition sweep", n, limit: 33 });
    }
    let mut failure = None;
    for bits in 0..(1u64 << universe) {
        let j = IndexSubset::from_bits(universe, bits)?;
        let matches = catalog.interval_matches(&j);
        if matches.len() != 1 {
            failure = Some(format!("J = {j} lies in {} intervals", matches.len()));
            break;
        }
    }
    Ok(vec![CheckLine::new(format!("each of the {} subsets J lies in exactly one interval", 1u64 << universe), failure)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_small() {
        let limits = Limits::default();
        for n in 1..=4 {
            for suite in Suite::ALL {
                let rep = run_suite(suite, n, &limits).unwrap();
                assert!(rep.passed(), "{}", rep.to_text());
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn random_weights_are_reproducible() {
        let a = pseudo_random_weights(5, 1).unwrap();
        assert_eq!(a, pseudo_random_weights(5, 1).unwrap());
        assert_eq!(a.n(), 5);
    }

    #[test]
    fn defect_reporting() {
        let m = DenseMatrix::from_rows(vec![vec![1i64, 0], vec![2, 1]]).unwrap();
        assert!(triangular_defect(&m, None).unwrap().contains("(1, 0)"));
        let u = DenseMatrix::from_rows(vec![vec![1i64, 5], vec![0, 3]]).unwrap();
        assert!(triangular_defect(&u, Some(&[1, 3])).is_none());
        assert!(triangular_defect(&u, Some(&[1, 2])).is_some());
    }
}
