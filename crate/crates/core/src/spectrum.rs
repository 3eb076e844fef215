//! Eigenvalues and multiplicities of one-sided cycle shuffles, annihilating
//! and minimal polynomials, and a sufficient test for diagonalizability.
//!
//! For weights `λ`, right multiplication by `t = Σ λ_ℓ t_ℓ` has eigenvalues
//! `g_i = Σ_ℓ λ_ℓ m_{Q_i,ℓ}` with `g_i` counted `δ_i` times, where `δ_i` is
//! the number of permutations with Q-index `i`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::AlgebraElement;
use crate::basis::rmul_standard_matrix;
use crate::error::{Error, Result};
use crate::lacunar::{m_vector, non_shadow, LacunarCatalog};
use crate::linalg::{characteristic_polynomial, minimal_polynomial_seeded, DenseMatrix, Polynomial};
use crate::perm::all_permutations;
use crate::scalar::{format_rational, Limits, Rational, Scalar};
use crate::shuffles::{one_sided_cycle_shuffle, WeightVector};
use crate::subset::IndexSubset;

/// `Σ_ℓ λ_ℓ m_{I,ℓ}` for a lacunar `I ⊆ [n-1]`, where `n` is the length of `λ`.
pub fn eigenvalue_for_set<S: Scalar>(weights: &WeightVector<S>, set: &IndexSubset) -> Result<S> {
    let n = weights.n();
    if !set.is_lacunar() {
        return Err(Error::NotLacunar(set.to_string()));
    }
    if set.iter().any(|k| k >= n) {
        return Err(Error::InvalidSubset(format!("{set} is not contained in [{}]", n - 1)));
    }
    let m = m_vector(set, n)?;
    Ok(m.iter()
        .zip(weights.weights())
        .filter(|(&k, _)| k != 0)
        .fold(S::zero(), |acc, (&k, w)| acc + S::from_int(k as i64) * w.clone()))
}

fn factorial_big(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `δ_i` by the multinomial product formula.
pub fn delta(i: usize, catalog: &LacunarCatalog) -> Result<BigUint> {
    if i == 0 || i > catalog.len() {
        return Err(Error::IndexOutOfRange { index: i, max: catalog.len() });
    }
    let n = catalog.n();
    let mut cuts = vec![1];
    cuts.extend(catalog.set(i).iter());
    cuts.push(n + 1);
    let parts: Vec<usize> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
    let mut value = factorial_big(n);
    for &j in &parts {
        value /= factorial_big(j);
    }
    for &j in &parts[1..] {
        value *= BigUint::from(j - 1);
    }
    Ok(value)
}

/// `(δ_1, ..., δ_{f_{n+1}})` by the product formula.
pub fn delta_vector(catalog: &LacunarCatalog) -> Vec<BigUint> {
    (1..=catalog.len()).map(|i| delta(i, catalog).expect("valid index")).collect()
}

/// `dim F_1, ..., dim F_{f_{n+1}}` as running sums of `δ`.
pub fn cumulative_dimensions(deltas: &[BigUint]) -> Vec<BigUint> {
    let mut total = BigUint::zero();
    deltas
        .iter()
        .map(|d| {
            total += d;
            total.clone()
        })
        .collect()
}

/// `δ_i` as the number of `w` with ascents at every position of `Q_i` and
/// descents at every position of `Q_i'`.
pub fn delta_by_counting(i: usize, catalog: &LacunarCatalog, limits: &Limits) -> Result<BigUint> {
    if i == 0 || i > catalog.len() {
        return Err(Error::IndexOutOfRange { index: i, max: catalog.len() });
    }
    let n = catalog.n();
    limits.check_algebra("descent counting", n)?;
    let q = catalog.set(i);
    let q_prime = non_shadow(q, n);
    let count = all_permutations(n)?
        .into_iter()
        .filter(|w| {
            let des = w.descent_set();
            q_prime.is_subset(&des) && des.intersection(q).is_empty()
        })
        .count();
    Ok(BigUint::from(count))
}

/// One catalog entry of a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub set: IndexSubset,
    pub m: Vec<usize>,
    pub eigenvalue: Rational,
    pub multiplicity: BigUint,
}

/// Eigenvalues of `R(Σ λ_ℓ t_ℓ)` with algebraic multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub n: usize,
    pub weights: Vec<Rational>,
    /// In catalog order.
    pub rows: Vec<SpectrumRow>,
    /// Distinct eigenvalues in order of first appearance, with summed multiplicities.
    pub aggregate: Vec<(Rational, BigUint)>,
}

impl SpectrumReport {
    pub fn total_multiplicity(&self) -> BigUint {
        self.rows.iter().map(|r| &r.multiplicity).sum()
    }

    pub fn multiplicity_of(&self, value: &Rational) -> BigUint {
        self.aggregate.iter().find(|(v, _)| v == value).map(|(_, m)| m.clone()).unwrap_or_default()
    }

    /// `∏_i (x - g_i)^{δ_i}`. Multiplicities must fit in memory as exponents.
    pub fn spectral_polynomial(&self) -> Result<Polynomial<Rational>> {
        let roots = self
            .aggregate
            .iter()
            .map(|(v, m)| {
                m.to_usize()
                    .map(|e| (v, e))
                    .ok_or_else(|| Error::Dimension(format!("multiplicity {m} is too large for a polynomial exponent")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_roots(roots))
    }

    /// `∏ (x - g)` over the distinct eigenvalues.
    pub fn squarefree_annihilator(&self) -> Polynomial<Rational> {
        Polynomial::from_roots(self.aggregate.iter().map(|(v, _)| (v, 1)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "weights": self.weights.iter().map(format_rational).collect::<Vec<_>>(),
            "rows": self.rows.iter().map(|r| json!({
                "set": r.set.to_vec(),
                "m": r.m,
                "eigenvalue": format_rational(&r.eigenvalue),
                "multiplicity": r.multiplicity.to_string(),
            })).collect::<Vec<_>>(),
            "aggregate": self.aggregate.iter().map(|(v, m)| json!({
                "eigenvalue": format_rational(v),
                "multiplicity": m.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    /// One row per catalog entry: `i  Q_i  m  g_i  δ_i`.
    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}\ni\tQ_i\tm\tg_i\tdelta_i\n", self.n);
        for (k, r) in self.rows.iter().enumerate() {
            let m: Vec<String> = r.m.iter().map(usize::to_string).collect();
            out.push_str(&format!(
                "{}\t{}\t({})\t{}\t{}\n",
                k + 1,
                r.set,
                m.join(","),
                format_rational(&r.eigenvalue),
                r.multiplicity
            ));
        }
        out.push_str("eigenvalue\tmultiplicity\n");
        for (v, m) in &self.aggregate {
            out.push_str(&format!("{}\t{}\n", format_rational(v), m));
        }
        out
    }
}

/// Spectrum of right multiplication by `Σ λ_ℓ t_ℓ`; cost grows with the
/// number of lacunar sets, not with `n!`.
pub fn full_spectrum(weights: &WeightVector<Rational>) -> Result<SpectrumReport> {
    let n = weights.n();
    let catalog = LacunarCatalog::new(n)?;
    let rows = catalog
        .sets()
        .par_iter()
        .enumerate()
        .map(|(k, set)| {
            Ok(SpectrumRow {
                set: *set,
                m: m_vector(set, n)?,
                eigenvalue: eigenvalue_for_set(weights, set)?,
                multiplicity: delta(k + 1, &catalog)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut aggregate: Vec<(Rational, BigUint)> = Vec::new();
    for r in &rows {
        match aggregate.iter_mut().find(|(v, _)| *v == r.eigenvalue) {
            Some((_, m)) => *m += &r.multiplicity,
            None => aggregate.push((r.eigenvalue.clone(), r.multiplicity.clone())),
        }
    }
    Ok(SpectrumReport { n, weights: weights.weights().to_vec(), rows, aggregate })
}

/// Outcome of evaluating `∏_I (t - g_I)` in the group algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnihilatorCheck {
    pub passed: bool,
    /// The evaluated product; zero when `passed`.
    pub residual: AlgebraElement<Rational>,
}

/// Evaluates `∏_{I lacunar} (t - g_I)` with one factor per lacunar set.
pub fn annihilator_check(weights: &WeightVector<Rational>, limits: &Limits) -> Result<AnnihilatorCheck> {
    let n = weights.n();
    limits.check_algebra("annihilator check", n)?;
    let t = one_sided_cycle_shuffle(weights)?;
    let catalog = LacunarCatalog::new(n)?;
    let mut acc = AlgebraElement::one(n)?;
    for set in catalog.sets() {
        let g = eigenvalue_for_set(weights, set)?;
        acc = acc.multiply(&t.add_scalar(&-g))?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(AnnihilatorCheck { passed: acc.is_zero(), residual: acc })
}

/// Minimal polynomial of `y -> y x` on `ℚ[S_n]`, from the Krylov sequence of
/// the identity permutation, verified against the full matrix.
pub fn minimal_polynomial(x: &AlgebraElement<Rational>, limits: &Limits) -> Result<Polynomial<Rational>> {
    limits.check_minpoly(x.degree())?;
    let m = rmul_standard_matrix(x, limits)?;
    let mut seed = vec![Rational::zero(); m.rows()];
    seed[0] = Rational::one();
    minimal_polynomial_seeded(&m, &seed)
}

/// Exact characteristic polynomial `det(xI - M)`, capped by matrix dimension.
pub fn char_poly_oracle(m: &DenseMatrix<Rational>, limits: &Limits) -> Result<Polynomial<Rational>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{} x {} matrix is not square", m.rows(), m.cols())));
    }
    limits.check_matrix("characteristic polynomial", m.rows())?;
    characteristic_polynomial(m)
}

/// Result of the distinct-eigenvalue test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalizabilityCertificate {
    /// All `g_i` are distinct, which suffices for diagonalizability.
    CertifiedDiagonalizable,
    /// Two catalog entries share an eigenvalue; the test says nothing.
    Inconclusive { first: usize, second: usize },
}

impl DiagonalizabilityCertificate {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiagonalizabilityCertificate::CertifiedDiagonalizable => "certified_diagonalizable",
            DiagonalizabilityCertificate::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Certified when the `g_i` are pairwise distinct; otherwise reports the
/// first colliding pair of catalog positions.
pub fn diagonalizable_certificate(weights: &WeightVector<Rational>) -> Result<DiagonalizabilityCertificate> {
    let catalog = LacunarCatalog::new(weights.n())?;
    let mut seen = std::collections::HashMap::with_capacity(catalog.len());
    for (i, set) in catalog.iter() {
        let g = eigenvalue_for_set(weights, set)?;
        if let Some(&first) = seen.get(&g) {
            return Ok(DiagonalizabilityCertificate::Inconclusive { first, second: i });
        }
        seen.insert(g, i);
    }
    Ok(DiagonalizabilityCertificate::CertifiedDiagonalizable)
}

/// Coefficients as `"p/q"` strings, constant term first.
pub fn polynomial_to_json(p: &Polynomial<Rational>) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(format_rational(c))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, rational_int};

    fn ints(v: &[i64]) -> WeightVector<Rational> {
        WeightVector::new(v.iter().map(|&k| rational_int(k)).collect()).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&k| BigUint::from(k)).collect()
    }

    #[test]
    fn delta_tables() {
        assert_eq!(delta_vector(&LacunarCatalog::new(4).unwrap()), big(&[1, 3, 8, 6, 6]));
        assert_eq!(delta_vector(&LacunarCatalog::new(5).unwrap()), big(&[1, 4, 15, 20, 10, 20, 20, 30]));
        assert_eq!(
            delta_vector(&LacunarCatalog::new(6).unwrap()),
            big(&[1, 5, 24, 45, 40, 45, 15, 80, 45, 120, 120, 90, 90])
        );
    }

    #[test]
    fn counting_matches_formula_small() {
        let limits = Limits::default();
        for n in 1..=5 {
            let cat = LacunarCatalog::new(n).unwrap();
            for i in 1..=cat.len() {
                assert_eq!(delta_by_counting(i, &cat, &limits).unwrap(), delta(i, &cat).unwrap());
            }
        }
    }

    #[test]
    fn eigenvalues() {
        let w = ints(&[1, 1, 1, 1]);
        assert_eq!(eigenvalue_for_set(&w, &IndexSubset::empty(3).unwrap()).unwrap(), rational_int(10));
        let bad = IndexSubset::from_elements(3, [1, 2]).unwrap();
        assert!(matches!(eigenvalue_for_set(&w, &bad), Err(Error::NotLacunar(_))));
        let n = 12;
        let r2b = WeightVector::new((1..=n).map(|l| rational(1, (n + 1 - l) as i64)).collect()).unwrap();
        for s in [vec![1, 6, 8, 10], vec![6, 8, 11]] {
            let set = IndexSubset::from_elements(11, s).unwrap();
            assert_eq!(eigenvalue_for_set(&r2b, &set).unwrap(), rational(13573, 3960));
        }
    }

    #[test]
    fn spectrum_aggregates() {
        let rep = full_spectrum(&ints(&[1, 1, 1, 1])).unwrap();
        let agg: Vec<(Rational, BigUint)> =
            [(10, 1u64), (6, 3), (4, 14), (2, 6)].iter().map(|&(v, m)| (rational_int(v), BigUint::from(m))).collect();
        assert_eq!(rep.aggregate, agg);
        assert_eq!(rep.total_multiplicity(), BigUint::from(24u32));
        let zero = full_spectrum(&ints(&[0, 0, 0])).unwrap();
        assert_eq!(zero.aggregate, vec![(rational_int(0), BigUint::from(6u32))]);
    }

    #[test]
    fn annihilator_small() {
        let limits = Limits::default();
        let check = annihilator_check(&ints(&[1, 0]), &limits).unwrap();
        assert!(check.passed);
        for n in 1..=4 {
            assert!(annihilator_check(&ints(&vec![1; n]), &limits).unwrap().passed);
        }
    }

    #[test]
    fn minimal_polynomials() {
        let limits = Limits::default();
        let t = one_sided_cycle_shuffle(&ints(&[1, 1, 1, 1])).unwrap();
        let expected = Polynomial::from_roots([
            (&rational_int(10), 1),
            (&rational_int(6), 1),
            (&rational_int(4), 2),
            (&rational_int(2), 1),
        ]);
        assert_eq!(minimal_polynomial(&t, &limits).unwrap(), expected);
        let t = one_sided_cycle_shuffle(&ints(&[6, 3, 2])).unwrap();
        let expected = Polynomial::from_roots([(&rational_int(8), 2), (&rational_int(26), 1)]);
        assert_eq!(minimal_polynomial(&t, &limits).unwrap(), expected);
        let one = AlgebraElement::one(3).unwrap();
        assert_eq!(minimal_polynomial(&one, &limits).unwrap(), Polynomial::linear(rational_int(1)));
    }

    #[test]
    fn char_poly_of_t1_n3() {
        let limits = Limits::default();
        let t1 = crate::shuffles::build_t::<Rational>(3, 1).unwrap();
        let m = rmul_standard_matrix(&t1, &limits).unwrap();
        let expected = Polynomial::from_roots([(&rational_int(0), 2), (&rational_int(1), 3), (&rational_int(3), 1)]);
        assert_eq!(char_poly_oracle(&m, &limits).unwrap(), expected);
        let small = Limits { matrix_max_dim: 5, ..limits };
        assert!(char_poly_oracle(&m, &small).is_err());
    }

    #[test]
    fn certificates() {
        let n = 12;
        let r2b = WeightVector::new((1..=n).map(|l| rational(1, (n + 1 - l) as i64)).collect()).unwrap();
        assert!(matches!(diagonalizable_certificate(&r2b).unwrap(), DiagonalizabilityCertificate::Inconclusive { .. }));
        let mut t2r = vec![0; 4];
        t2r[0] = 1;
        assert_eq!(diagonalizable_certificate(&ints(&t2r)).unwrap().as_str(), "inconclusive");
        assert_eq!(
            diagonalizable_certificate(&ints(&[1, 1])).unwrap(),
            DiagonalizabilityCertificate::CertifiedDiagonalizable
        );
    }
}
