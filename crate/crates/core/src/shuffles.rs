//! Somewhere-to-below shuffles `t_l`, their antipodes `t'_l`, one-sided
//! cycle shuffles and their Markov transition matrices.

use num_traits::{One, Signed, Zero};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::perm::{all_permutations, Permutation};
use crate::scalar::{format_rational, rational_to_f64, Limits, Rational, Scalar};

fn check_position(n: usize, l: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyDegree);
    }
    if l == 0 || l > n {
        return Err(Error::IndexOutOfRange { index: l, max: n });
    }
    Ok(())
}

/// `t_l = cyc_l + cyc_{l,l+1} + ... + cyc_{l,...,n}`.
pub fn build_t<S: Scalar>(n: usize, l: usize) -> Result<AlgebraElement<S>> {
    check_position(n, l)?;
    let perms = (l..=n).map(|j| Permutation::consecutive_cycle(n, l, j)).collect::<Result<Vec<_>>>()?;
    AlgebraElement::sum_of(n, perms)
}

/// `t'_l = cyc_l + cyc_{l+1,l} + ... + cyc_{n,...,l}`.
pub fn build_t_prime<S: Scalar>(n: usize, l: usize) -> Result<AlgebraElement<S>> {
    check_position(n, l)?;
    let perms = (l..=n).map(|j| Permutation::consecutive_cycle_rev(n, l, j)).collect::<Result<Vec<_>>>()?;
    AlgebraElement::sum_of(n, perms)
}

/// Coefficients `(lambda_1, ..., lambda_n)` of a one-sided cycle shuffle.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<S> {
    weights: Vec<S>,
}

impl<S: Scalar> WeightVector<S> {
    pub fn new(weights: Vec<S>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("need at least one weight".into()));
        }
        Ok(WeightVector { weights })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// `lambda_l` for `l` in `[n]`.
    pub fn get(&self, l: usize) -> &S {
        &self.weights[l - 1]
    }

    /// `(1, 0, ..., 0)`: the top-to-random shuffle `t_1`.
    pub fn top_to_random(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|l| if l == 1 { S::one() } else { S::zero() }).collect())
    }

    /// `lambda_l = 1 / (n (n + 1 - l))`, the random-to-below shuffle.
    pub fn random_to_below(n: usize) -> Result<Self> {
        let nn = n as i64;
        Self::new((1..=n as i64).map(|l| S::one() / S::from_int(nn * (nn + 1 - l))).collect())
    }

    /// `lambda_l = 2 / (n (n + 1))`, every move `cyc_{i..j}` equally likely.
    pub fn unweighted(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDegree);
        }
        let nn = n as i64;
        Self::new(vec![S::from_int(2) / S::from_int(nn * (nn + 1)); n])
    }

    /// `(1, 1, ..., 1)`.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![S::one(); n])
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }
}

impl WeightVector<Rational> {
    /// `lambda_l = P(l) / (n + 1 - l)`.
    pub fn from_distribution(p: &PositionDistribution) -> Self {
        let n = p.n() as i64;
        let weights =
            p.probabilities().iter().enumerate().map(|(k, pk)| pk / Rational::from_integer((n - k as i64).into())).collect();
        WeightVector { weights }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.weights.iter().map(format_rational).collect()
    }
}

/// `sum_l lambda_l t_l`.
pub fn one_sided_cycle_shuffle<S: Scalar>(weights: &WeightVector<S>) -> Result<AlgebraElement<S>> {
    combine(weights, build_t)
}

/// `sum_l lambda_l t'_l`.
pub fn one_sided_cycle_shuffle_prime<S: Scalar>(weights: &WeightVector<S>) -> Result<AlgebraElement<S>> {
    combine(weights, build_t_prime)
}

fn combine<S: Scalar>(
    weights: &WeightVector<S>,
    build: fn(usize, usize) -> Result<AlgebraElement<S>>,
) -> Result<AlgebraElement<S>> {
    let n = weights.n();
    let parts = (1..=n).map(|l| build(n, l)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(S, &AlgebraElement<S>)> = weights.weights.iter().cloned().zip(parts.iter()).collect();
    AlgebraElement::linear_combine(n, &pairs)
}

/// A probability distribution `P` on positions `[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution {
    probs: Vec<Rational>,
}

impl PositionDistribution {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        if let Some((k, p)) = probs.iter().enumerate().find(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidDistribution(format!("P({}) = {} is negative", k + 1, p)));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}, not 1")));
        }
        Ok(PositionDistribution { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new((0..n).map(|_| Rational::new(1.into(), (n as i64).into())).collect())
    }

    pub fn point_mass(n: usize, position: usize) -> Result<Self> {
        check_position(n, position)?;
        Self::new((1..=n).map(|k| if k == position { Rational::one() } else { Rational::zero() }).collect())
    }

    /// `P(i) = 2 (n - i + 1) / (n (n + 1))`.
    pub fn unweighted(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDegree);
        }
        let nn = n as i64;
        Self::new((1..=nn).map(|i| Rational::new((2 * (nn - i + 1)).into(), (nn * (nn + 1)).into())).collect())
    }

    pub fn n(&self) -> usize {
        self.probs.len()
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.probs
    }

    /// `P(i)` for `i` in `[n]`.
    pub fn get(&self, i: usize) -> &Rational {
        &self.probs[i - 1]
    }
}

/// `osc(P, n) = sum_l P(l) / (n + 1 - l) t_l`.
pub fn build_osc(p: &PositionDistribution) -> Result<AlgebraElement<Rational>> {
    one_sided_cycle_shuffle(&WeightVector::from_distribution(p))
}

/// Transition matrix of the right random walk driven by `x`: rows and columns
/// are indexed by S_n in lexicographic order and `M[tau][sigma] = [tau^{-1} sigma] x`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    perms: Vec<Permutation>,
    matrix: DenseMatrix<Rational>,
}

impl TransitionMatrix {
    pub fn n(&self) -> usize {
        self.perms[0].degree()
    }

    /// Row and column labels.
    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn matrix(&self) -> &DenseMatrix<Rational> {
        &self.matrix
    }

    /// Lossy floating-point view.
    pub fn to_f64(&self) -> DenseMatrix<f64> {
        self.matrix.map(rational_to_f64)
    }

    /// Header of one-line words, entries as `num/den`.
    pub fn to_csv(&self) -> String {
        let labels: Vec<String> = self.perms.iter().map(|w| w.to_string()).collect();
        self.matrix.to_csv(&labels, format_rational)
    }
}

/// Builds the transition matrix of a probability element `x` of `Q[S_n]`.
pub fn transition_matrix(x: &AlgebraElement<Rational>, limits: &Limits) -> Result<TransitionMatrix> {
    let n = x.degree();
    limits.check_algebra("transition matrix", n)?;
    if let Some((w, c)) = x.terms().find(|(_, c)| c.is_negative()) {
        return Err(Error::NotStochastic(format!("coefficient {c} of [{w}] is negative")));
    }
    let total = x.coefficient_sum();
    if !total.is_one() {
        return Err(Error::NotStochastic(format!("coefficients sum to {total}")));
    }
    let perms = all_permutations(n)?;
    let size = perms.len();
    let mut matrix = DenseMatrix::zeros(size, size);
    for (row, tau) in perms.iter().enumerate() {
        for (g, c) in x.terms() {
            let sigma = tau.compose_unchecked(g);
            matrix.set(row, sigma.lex_rank(), c.clone());
        }
    }
    Ok(TransitionMatrix { perms, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, rational_int};

    type Q = AlgebraElement<Rational>;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn t_terms() {
        let t1: Q = build_t(3, 1).unwrap();
        let expected = Q::sum_of(3, [perm("123"), perm("213"), perm("231")]).unwrap();
        assert_eq!(t1, expected);
        assert!(build_t::<Rational>(4, 4).unwrap().is_one());
        for n in 1..=8 {
            for l in 1..=n {
                assert_eq!(build_t::<Rational>(n, l).unwrap().len(), n - l + 1);
            }
        }
        assert!(build_t::<Rational>(3, 0).is_err());
        assert!(build_t::<Rational>(3, 4).is_err());
    }

    #[test]
    fn t_prime_terms() {
        assert!(build_t_prime::<Rational>(5, 5).unwrap().is_one());
        let tp: Q = build_t_prime(3, 1).unwrap();
        let c321 = Permutation::cycle(3, &[3, 2, 1]).unwrap();
        assert_eq!(tp.coefficient(&c321).unwrap(), rational_int(1));
    }

    #[test]
    fn osc_examples() {
        let t2r = build_osc(&PositionDistribution::point_mass(3, 1).unwrap()).unwrap();
        assert_eq!(t2r, build_t::<Rational>(3, 1).unwrap().scale(&rational(1, 3)));
        let id = Permutation::identity(3).unwrap();
        let rtb = build_osc(&PositionDistribution::uniform(3).unwrap()).unwrap();
        assert_eq!(rtb.coefficient(&id).unwrap(), rational(11, 18));
        let unw = build_osc(&PositionDistribution::unweighted(3).unwrap()).unwrap();
        assert_eq!(unw.coefficient(&id).unwrap(), rational(1, 2));
        assert_eq!(one_sided_cycle_shuffle(&WeightVector::<Rational>::unweighted(3).unwrap()).unwrap(), unw);
        assert_eq!(one_sided_cycle_shuffle(&WeightVector::<Rational>::random_to_below(3).unwrap()).unwrap(), rtb);
    }

    #[test]
    fn distribution_validation() {
        assert!(PositionDistribution::new(vec![rational(1, 2), rational(1, 3)]).is_err());
        assert!(PositionDistribution::new(vec![rational(3, 2), rational(-1, 2)]).is_err());
        assert!(PositionDistribution::new(vec![]).is_err());
    }

    #[test]
    fn identity_element_gives_identity_matrix() {
        let m = transition_matrix(&Q::one(3).unwrap(), &Limits::default()).unwrap();
        assert_eq!(m.matrix(), &DenseMatrix::identity(6));
    }

    #[test]
    fn rejects_non_stochastic() {
        let limits = Limits::default();
        assert!(transition_matrix(&build_t(3, 1).unwrap(), &limits).is_err());
        let neg = Q::from_terms(2, [(perm("12"), rational(3, 2)), (perm("21"), rational(-1, 2))]).unwrap();
        assert!(transition_matrix(&neg, &limits).is_err());
        let small = Limits { algebra_max_n: 2, ..Limits::default() };
        assert!(transition_matrix(&Q::one(3).unwrap(), &small).is_err());
    }
}
