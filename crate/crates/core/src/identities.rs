//! Exhaustive checks of commutator nilpotency and product identities among
//! the somewhere-to-below shuffles `t_1, ..., t_n`.
//!
//! Everything here has integer coefficients, so the checks run over `i128`.
//! The ℓ¹ norm of `t_ℓ` is at most `n`, so a product of `e` commutators has
//! coefficients bounded by `(2n²)^e`, far inside `i128` for any `n` whose
//! group algebra can be enumerated.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::Limits;
use crate::shuffles::build_t;

type Coeff = i128;
type Elem = AlgebraElement<Coeff>;

/// Outcome of one identity at one index tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub params: Vec<usize>,
    pub passed: bool,
    /// Number of terms in `lhs - rhs` (or in the nonzero product).
    pub residual_terms: usize,
    /// Lexicographically smallest permutation in the residual.
    pub first_survivor: Option<Permutation>,
}

impl IdentityCheck {
    fn expect_zero(name: &str, params: Vec<usize>, residual: &Elem) -> Self {
        IdentityCheck {
            name: name.to_string(),
            params,
            passed: residual.is_zero(),
            residual_terms: residual.len(),
            first_survivor: residual.min_term().map(|(w, _)| w.clone()),
        }
    }

    fn expect_nonzero(name: &str, params: Vec<usize>, value: &Elem) -> Self {
        IdentityCheck {
            name: name.to_string(),
            params,
            passed: !value.is_zero(),
            residual_terms: value.len(),
            first_survivor: value.min_term().map(|(w, _)| w.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "params": self.params,
            "passed": self.passed,
            "residual_terms": self.residual_terms,
            "first_survivor": self.first_survivor.as_ref().map(|w| w.to_string()),
        })
    }
}

/// Ordered list of checks for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub n: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(IdentityCheck::to_json).collect())
    }
}

/// `t_1, ..., t_n` and `s_1, ..., s_{n-1}` over the integers.
struct Generators {
    n: usize,
    t: Vec<Elem>,
    s: Vec<Elem>,
}

impl Generators {
    fn new(n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDegree);
        }
        limits.check_algebra("identity checks", n)?;
        let t = (1..=n).map(|l| build_t(n, l)).collect::<Result<_>>()?;
        let s = (1..n)
            .map(|i| Permutation::simple_transposition(n, i).map(Elem::from_perm))
            .collect::<Result<_>>()?;
        Ok(Generators { n, t, s })
    }

    fn t(&self, l: usize) -> &Elem {
        &self.t[l - 1]
    }

    fn s(&self, i: usize) -> &Elem {
        &self.s[i - 1]
    }

    fn one(&self) -> Elem {
        Elem::one(self.n).expect("n >= 1")
    }

    fn commutator(&self, i: usize, j: usize) -> Elem {
        self.t(i).commutator(self.t(j)).expect("same degree")
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// `min(j - i + 1, ⌈(n - j)/2⌉ + 1)`.
pub fn nilpotency_exponent(n: usize, i: usize, j: usize) -> usize {
    (j - i + 1).min((n - j).div_ceil(2) + 1)
}

/// `[t_i, t_j]^e = 0` for all `i < j`, with each of the two exponents also
/// checked on its own. At `n = 6` also confirms that `[t_1, t_3]^2 ≠ 0`.
pub fn commutator_nilpotency(n: usize, limits: &Limits) -> Result<IdentityReport> {
    let g = Generators::new(n, limits)?;
    let mut checks: Vec<IdentityCheck> = pairs(n)
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let c = g.commutator(i, j);
            let by_gap = j - i + 1;
            let by_tail = (n - j).div_ceil(2) + 1;
            let e = by_gap.min(by_tail);
            vec![
                IdentityCheck::expect_zero("[t_i,t_j]^e = 0", vec![i, j, e], &c.pow(e as u32)),
                IdentityCheck::expect_zero("[t_i,t_j]^(j-i+1) = 0", vec![i, j, by_gap], &c.pow(by_gap as u32)),
                IdentityCheck::expect_zero("[t_i,t_j]^(ceil((n-j)/2)+1) = 0", vec![i, j, by_tail], &c.pow(by_tail as u32)),
            ]
        })
        .collect();
    if n == 6 {
        let c = g.commutator(1, 3);
        checks.push(IdentityCheck::expect_nonzero("[t_1,t_3]^2 != 0", vec![1, 3, 2], &c.pow(2)));
        checks.push(IdentityCheck::expect_zero("[t_1,t_3]^3 = 0", vec![1, 3, 3], &c.pow(3)));
    }
    Ok(IdentityReport { n, checks })
}

/// The six product identities at every admissible index tuple.
pub fn identity_suite(n: usize, limits: &Limits) -> Result<IdentityReport> {
    let g = Generators::new(n, limits)?;
    let one = g.one();
    let minus_one = |x: &Elem| x - &one;

    let mut checks = Vec::new();

    checks.extend((1..n).into_par_iter().map(|i| {
        let rhs = &one + &(g.s(i) * g.t(i + 1));
        IdentityCheck::expect_zero("t_i = 1 + s_i t_(i+1)", vec![i], &(g.t(i) - &rhs))
    }).collect::<Vec<_>>());

    // s_j exists only for j < n; for j = n the commutator vanishes since t_n = 1.
    let below_n: Vec<(usize, usize)> = pairs(n).into_iter().filter(|&(_, j)| j < n).collect();
    checks.extend(below_n.par_iter().map(|&(i, j)| {
        let lhs = &(&one + g.s(j)) * &g.commutator(i, j);
        IdentityCheck::expect_zero("(1 + s_j)[t_i,t_j] = 0", vec![i, j], &lhs)
    }).collect::<Vec<_>>());

    if n >= 2 {
        checks.extend((1..=n).into_par_iter().map(|i| {
            let lhs = g.t(n - 1) * &g.commutator(i, n - 1);
            IdentityCheck::expect_zero("t_(n-1)[t_i,t_(n-1)] = 0", vec![i], &lhs)
        }).collect::<Vec<_>>());
    }

    checks.extend(pairs(n).par_iter().map(|&(i, j)| {
        let word = (i..j).fold(one.clone(), |acc, k| &acc * g.s(k));
        let rhs = &word.commutator(g.t(j)).expect("same degree") * g.t(j);
        IdentityCheck::expect_zero("[t_i,t_j] = [s_i...s_(j-1), t_j] t_j", vec![i, j], &(&g.commutator(i, j) - &rhs))
    }).collect::<Vec<_>>());

    checks.extend((1..n).into_par_iter().map(|i| {
        let lhs = g.t(i + 1) * g.t(i);
        let rhs = &minus_one(g.t(i)) * g.t(i);
        IdentityCheck::expect_zero("t_(i+1) t_i = (t_i - 1) t_i", vec![i], &(&lhs - &rhs))
    }).collect::<Vec<_>>());

    checks.extend((1..n.saturating_sub(1)).into_par_iter().map(|i| {
        let lhs = g.t(i + 2) * &minus_one(g.t(i));
        let rhs = &minus_one(g.t(i)) * &minus_one(g.t(i + 1));
        IdentityCheck::expect_zero("t_(i+2)(t_i - 1) = (t_i - 1)(t_(i+1) - 1)", vec![i], &(&lhs - &rhs))
    }).collect::<Vec<_>>());

    Ok(IdentityReport { n, checks })
}

/// `[t_{k_1}, t_j] [t_{k_2}, t_j] ... [t_{k_m}, t_j]` for a user-supplied
/// sequence, checked against the two vanishing criteria: `m ≥ j - k_m + 1`,
/// or `2m ≥ n - j + 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProductCheck {
    pub j: usize,
    pub ks: Vec<usize>,
    /// Whether either vanishing criterion applies.
    pub premise_holds: bool,
    pub is_zero: bool,
    pub residual_terms: usize,
    pub first_survivor: Option<Permutation>,
}

impl MixedProductCheck {
    /// Fails only when a criterion applies and the product is nonzero.
    pub fn passed(&self) -> bool {
        !self.premise_holds || self.is_zero
    }

    pub fn to_json(&self) -> Value {
        json!({
            "j": self.j,
            "ks": self.ks,
            "premise_holds": self.premise_holds,
            "is_zero": self.is_zero,
            "passed": self.passed(),
            "residual_terms": self.residual_terms,
            "first_survivor": self.first_survivor.as_ref().map(|w| w.to_string()),
        })
    }
}

pub fn mixed_commutator_product(n: usize, j: usize, ks: &[usize], limits: &Limits) -> Result<MixedProductCheck> {
    let g = Generators::new(n, limits)?;
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    let Some(&last) = ks.last() else {
        return Err(Error::InvalidSubset("the index sequence must be nonempty".into()));
    };
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > j) {
        return Err(Error::IndexOutOfRange { index: k, max: j });
    }
    let m = ks.len();
    let premise_holds = m + last > j || 2 * m + j >= n + 2;
    let product = ks.iter().fold(g.one(), |acc, &k| &acc * &g.commutator(k, j));
    Ok(MixedProductCheck {
        j,
        ks: ks.to_vec(),
        premise_holds,
        is_zero: product.is_zero(),
        residual_terms: product.len(),
        first_survivor: product.min_term().map(|(w, _)| w.clone()),
    })
}
