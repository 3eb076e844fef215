//! The descent-destroying basis `(a_w)`, Q-indices, the Fibonacci filtration,
//! the dual basis `(b_w)` and matrices of right multiplication.
//!
//! `a_w` is the sum of all permutations obtained from `w` by rearranging the
//! entries inside each maximal decreasing block of its one-line word. Since
//! `w` is the lexicographically largest of these, the change of basis from
//! permutations to `(a_w)` is unitriangular in lexicographic order, and
//! expanding in the `a`-basis is plain back-substitution.

use std::cmp::Reverse;

use rayon::prelude::*;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::lacunar::{non_shadow, LacunarCatalog};
use crate::linalg::DenseMatrix;
use crate::perm::{all_permutations, young_subgroup, Permutation};
use crate::scalar::{Limits, Scalar};
use crate::subset::IndexSubset;

/// `a_w = sum_{sigma in G(Des w)} w sigma`, all coefficients 1.
pub fn a_element<S: Scalar>(w: &Permutation) -> AlgebraElement<S> {
    let n = w.degree();
    let group = young_subgroup(n, &w.descent_set()).expect("descent set lies in [n-1]");
    AlgebraElement::sum_of(n, group.iter().map(|sigma| w.compose_unchecked(sigma))).expect("same degree")
}

/// Which basis a right-multiplication matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// The permutations themselves.
    Standard,
    /// The descent-destroying basis `(a_w)`.
    A,
    /// The basis `(b_w)` dual to `(a_w)` under the standard bilinear form.
    B,
}

/// Ordering of basis vectors (rows and columns alike).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisOrder {
    Lex,
    /// Increasing Q-index, ties in lexicographic order.
    QIndex,
    /// Decreasing Q-index, ties in lexicographic order.
    QIndexDesc,
}

/// Q-index of every permutation of S_n, stored by lexicographic rank.
#[derive(Debug, Clone)]
pub struct QIndexTable {
    index: Vec<usize>,
}

impl QIndexTable {
    pub fn get(&self, w: &Permutation) -> usize {
        self.index[w.lex_rank()]
    }

    pub fn by_rank(&self) -> &[usize] {
        &self.index
    }
}

/// Smallest `i` with `Q_i' ⊆ Des w`.
pub fn q_index(w: &Permutation, catalog: &LacunarCatalog) -> Result<usize> {
    if catalog.n() != w.degree() {
        return Err(Error::DegreeMismatch { left: catalog.n(), right: w.degree() });
    }
    catalog
        .first_with_non_shadow_in(&w.descent_set())
        .ok_or_else(|| Error::Internal(format!("no Q-index for [{w}]")))
}

/// The `a`-basis of `k[S_n]` together with the data needed to expand in it.
#[derive(Debug, Clone)]
pub struct BasisFamily<S: Scalar> {
    n: usize,
    catalog: LacunarCatalog,
    perms: Vec<Permutation>,
    qindex: QIndexTable,
    /// Lexicographic ranks of the terms of each `a_w`.
    support: Vec<Vec<usize>>,
    elements: Vec<AlgebraElement<S>>,
}

impl<S: Scalar> BasisFamily<S> {
    pub fn new(n: usize, limits: &Limits) -> Result<Self> {
        limits.check_algebra("descent-destroying basis", n)?;
        let catalog = LacunarCatalog::new(n)?;
        let perms = all_permutations(n)?;
        let index = perms.iter().map(|w| q_index(w, &catalog)).collect::<Result<Vec<_>>>()?;
        let elements: Vec<AlgebraElement<S>> = perms.par_iter().map(a_element).collect();
        let support = elements.iter().map(|a| a.terms().map(|(v, _)| v.lex_rank()).collect()).collect();
        Ok(BasisFamily { n, catalog, perms, qindex: QIndexTable { index }, support, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn catalog(&self) -> &LacunarCatalog {
        &self.catalog
    }

    /// S_n in lexicographic order; position equals lexicographic rank.
    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn q_indices(&self) -> &QIndexTable {
        &self.qindex
    }

    pub fn q_index(&self, w: &Permutation) -> usize {
        self.qindex.get(w)
    }

    pub fn a(&self, w: &Permutation) -> &AlgebraElement<S> {
        &self.elements[w.lex_rank()]
    }

    /// `(w, a_w)` pairs in lexicographic order of `w`.
    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &AlgebraElement<S>)> {
        self.perms.iter().zip(&self.elements)
    }

    fn check(&self, y: &AlgebraElement<S>) -> Result<()> {
        if y.degree() != self.n {
            return Err(Error::DegreeMismatch { left: self.n, right: y.degree() });
        }
        Ok(())
    }

    /// Coefficients of `y` in the `a`-basis, indexed by lexicographic rank.
    pub fn expand(&self, y: &AlgebraElement<S>) -> Result<Vec<S>> {
        self.check(y)?;
        let size = self.perms.len();
        let mut residual = vec![S::zero(); size];
        for (w, c) in y.terms() {
            residual[w.lex_rank()] = c.clone();
        }
        let mut coeffs = vec![S::zero(); size];
        for r in (0..size).rev() {
            if residual[r].is_zero() {
                continue;
            }
            let c = residual[r].clone();
            for &s in &self.support[r] {
                residual[s] = residual[s].clone() - c.clone();
            }
            coeffs[r] = c;
        }
        Ok(coeffs)
    }

    /// Nonzero terms of the `a`-expansion of `y`, in lexicographic order.
    pub fn expand_sparse(&self, y: &AlgebraElement<S>) -> Result<Vec<(Permutation, S)>> {
        Ok(self
            .expand(y)?
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| (self.perms[r].clone(), c))
            .collect())
    }

    /// Change-of-basis matrix: column `w` holds `a_w` in the permutation basis
    /// (lexicographic order), so it is upper unitriangular.
    pub fn change_of_basis(&self) -> DenseMatrix<S> {
        let size = self.perms.len();
        let mut m = DenseMatrix::zeros(size, size);
        for (col, sup) in self.support.iter().enumerate() {
            for &row in sup {
                m.set(row, col, S::one());
            }
        }
        m
    }

    /// The basis `(b_w)` with `f(a_p, b_q) = [p = q]`.
    pub fn dual(&self) -> DualBasis<S> {
        let size = self.perms.len();
        let elements = (0..size)
            .into_par_iter()
            .map(|q| {
                // Solve A^T x = e_q; A^T is lower unitriangular in lex order.
                let mut x = vec![S::zero(); size];
                x[q] = S::one();
                for v in q + 1..size {
                    let mut acc = S::zero();
                    for &u in &self.support[v] {
                        if u != v && !x[u].is_zero() {
                            acc = acc + x[u].clone();
                        }
                    }
                    x[v] = -acc;
                }
                let terms = x
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(r, c)| (self.perms[r].clone(), c));
                AlgebraElement::from_terms(self.n, terms).expect("same degree")
            })
            .collect();
        DualBasis { elements }
    }

    /// Coefficients of `y` in the `b`-basis: the coefficient of `b_q` is `f(a_q, y)`.
    pub fn expand_dual(&self, y: &AlgebraElement<S>) -> Result<Vec<S>> {
        self.check(y)?;
        let size = self.perms.len();
        let mut dense = vec![S::zero(); size];
        for (w, c) in y.terms() {
            dense[w.lex_rank()] = c.clone();
        }
        Ok(self
            .support
            .iter()
            .map(|sup| sup.iter().fold(S::zero(), |acc, &u| acc + dense[u].clone()))
            .collect())
    }

    /// Lexicographic ranks listed in the requested order.
    pub fn ordering(&self, order: BasisOrder) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.perms.len()).collect();
        let q = self.qindex.by_rank();
        match order {
            BasisOrder::Lex => {}
            BasisOrder::QIndex => idx.sort_by_key(|&r| (q[r], r)),
            BasisOrder::QIndexDesc => idx.sort_by_key(|&r| (Reverse(q[r]), r)),
        }
        idx
    }

    /// Matrix of `y -> y x` in the given basis; column `j` is the image of the
    /// `j`-th basis vector in `order`.
    pub fn rmul_matrix(
        &self,
        x: &AlgebraElement<S>,
        kind: BasisKind,
        order: BasisOrder,
        dual: Option<&DualBasis<S>>,
    ) -> Result<DenseMatrix<S>> {
        self.check(x)?;
        let owned;
        let dual = match (kind, dual) {
            (BasisKind::B, None) => {
                owned = self.dual();
                Some(&owned)
            }
            (_, d) => d,
        };
        let size = self.perms.len();
        let columns: Vec<Vec<S>> = (0..size)
            .into_par_iter()
            .map(|r| -> Result<Vec<S>> {
                match kind {
                    BasisKind::Standard => {
                        let image = AlgebraElement::from_perm(self.perms[r].clone()).multiply(x)?;
                        let mut col = vec![S::zero(); size];
                        for (w, c) in image.terms() {
                            col[w.lex_rank()] = c.clone();
                        }
                        Ok(col)
                    }
                    BasisKind::A => self.expand(&self.elements[r].multiply(x)?),
                    BasisKind::B => {
                        let b = &dual.expect("dual basis available").elements[r];
                        self.expand_dual(&b.multiply(x)?)
                    }
                }
            })
            .collect::<Result<_>>()?;
        DenseMatrix::from_columns(columns)?.reorder(&self.ordering(order))
    }

    /// Permutations `w` with `I' ⊆ Des w`, whose `a_w` span `F(I)`.
    pub fn f_family(&self, set: &IndexSubset) -> Result<Vec<&Permutation>> {
        if set.iter().any(|k| k > self.n) {
            return Err(Error::InvalidSubset(format!("{set} is not contained in [{}]", self.n)));
        }
        let shadow = non_shadow(set, self.n);
        Ok(self.perms.iter().filter(|w| shadow.is_subset(&w.descent_set())).collect())
    }

    /// `dim F_0, dim F_1, ..., dim F_{f_{n+1}}` by counting permutations of each Q-index.
    pub fn filtration_dimensions(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.catalog.len() + 1];
        for &q in self.qindex.by_rank() {
            counts[q] += 1;
        }
        let mut dims = Vec::with_capacity(counts.len());
        let mut total = 0;
        for c in counts {
            total += c;
            dims.push(total);
        }
        dims
    }
}

/// The dual basis `(b_w)`, stored by lexicographic rank of `w`.
#[derive(Debug, Clone)]
pub struct DualBasis<S: Scalar> {
    elements: Vec<AlgebraElement<S>>,
}

impl<S: Scalar> DualBasis<S> {
    pub fn b(&self, w: &Permutation) -> &AlgebraElement<S> {
        &self.elements[w.lex_rank()]
    }

    pub fn elements(&self) -> &[AlgebraElement<S>] {
        &self.elements
    }
}

/// Matrix of `y -> y x` in the permutation basis, lexicographic order:
/// entry `(u, w)` is the coefficient of `u` in `w x`.
pub fn rmul_standard_matrix<S: Scalar>(x: &AlgebraElement<S>, limits: &Limits) -> Result<DenseMatrix<S>> {
    let n = x.degree();
    limits.check_algebra("right multiplication matrix", n)?;
    let perms = all_permutations(n)?;
    let size = perms.len();
    let mut m: DenseMatrix<S> = DenseMatrix::zeros(size, size);
    for (col, w) in perms.iter().enumerate() {
        for (g, c) in x.terms() {
            let row = w.compose_unchecked(g).lex_rank();
            let v = m.get(row, col).clone() + c.clone();
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// Matrix of `y -> x y` in the permutation basis, lexicographic order.
pub fn lmul_standard_matrix<S: Scalar>(x: &AlgebraElement<S>, limits: &Limits) -> Result<DenseMatrix<S>> {
    let n = x.degree();
    limits.check_algebra("left multiplication matrix", n)?;
    let perms = all_permutations(n)?;
    let size = perms.len();
    let mut m: DenseMatrix<S> = DenseMatrix::zeros(size, size);
    for (col, w) in perms.iter().enumerate() {
        for (g, c) in x.terms() {
            let row = g.compose_unchecked(w).lex_rank();
            let v = m.get(row, col).clone() + c.clone();
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// Matrix of the antipode `w -> w^{-1}`, an involution, in lexicographic order.
pub fn antipode_matrix<S: Scalar>(n: usize, limits: &Limits) -> Result<DenseMatrix<S>> {
    limits.check_algebra("antipode matrix", n)?;
    let perms = all_permutations(n)?;
    let mut m = DenseMatrix::zeros(perms.len(), perms.len());
    for (col, w) in perms.iter().enumerate() {
        m.set(w.inverse().lex_rank(), col, S::one());
    }
    Ok(m)
}

/// `dim F_0, ..., dim F_{f_{n+1}}` for S_n, by counting Q-indices.
pub fn filtration_dimensions(n: usize, limits: &Limits) -> Result<Vec<usize>> {
    limits.check_algebra("filtration by counting", n)?;
    let catalog = LacunarCatalog::new(n)?;
    let mut counts = vec![0usize; catalog.len() + 1];
    for w in all_permutations(n)? {
        counts[q_index(&w, &catalog)?] += 1;
    }
    let mut total = 0;
    Ok(counts
        .into_iter()
        .map(|c| {
            total += c;
            total
        })
        .collect())
}
