//! Sparse elements of the group algebra `k[S_n]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// `sum_w c_w w` with every stored `c_w` nonzero. Terms are kept in
/// lexicographic order of `w`, so equality is structural.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement<S> {
    n: usize,
    terms: BTreeMap<Permutation, S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    /// The unit, i.e. the identity permutation with coefficient 1.
    pub fn one(n: usize) -> Result<Self> {
        Ok(Self::from_perm(Permutation::identity(n)?))
    }

    pub fn from_perm(w: Permutation) -> Self {
        Self::from_term(w, S::one())
    }

    pub fn from_term(w: Permutation, c: S) -> Self {
        let mut x = Self::zero(w.degree());
        if !c.is_zero() {
            x.terms.insert(w, c);
        }
        x
    }

    /// Sums repeated permutations and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Permutation, S)>>(n: usize, terms: I) -> Result<Self> {
        let mut x = Self::zero(n);
        for (w, c) in terms {
            if w.degree() != n {
                return Err(Error::DegreeMismatch { left: n, right: w.degree() });
            }
            x.add_term(w, c);
        }
        Ok(x)
    }

    /// Sum of the given permutations, each with coefficient 1.
    pub fn sum_of<I: IntoIterator<Item = Permutation>>(n: usize, perms: I) -> Result<Self> {
        Self::from_terms(n, perms.into_iter().map(|w| (w, S::one())))
    }

    pub(crate) fn add_term(&mut self, w: Permutation, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of the permutation.
    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &S)> {
        self.terms.iter()
    }

    /// Lexicographically smallest permutation with a nonzero coefficient.
    pub fn min_term(&self) -> Option<(&Permutation, &S)> {
        self.terms.iter().next()
    }

    pub fn max_term(&self) -> Option<(&Permutation, &S)> {
        self.terms.iter().next_back()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    fn check_perm(&self, w: &Permutation) -> Result<()> {
        if self.n != w.degree() {
            return Err(Error::DegreeMismatch { left: self.n, right: w.degree() });
        }
        Ok(())
    }

    /// `[w] x`, zero when absent.
    pub fn coefficient(&self, w: &Permutation) -> Result<S> {
        self.check_perm(w)?;
        Ok(self.terms.get(w).cloned().unwrap_or_else(S::zero))
    }

    /// `sum_k c_k x_k`.
    pub fn linear_combine(n: usize, pairs: &[(S, &AlgebraElement<S>)]) -> Result<Self> {
        let mut out = Self::zero(n);
        for (c, x) in pairs {
            out.check(x)?;
            if c.is_zero() {
                continue;
            }
            for (w, v) in &x.terms {
                out.add_term(w.clone(), c.clone() * v.clone());
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, v)| (w.clone(), v.clone() * c.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        AlgebraElement { n: self.n, terms }
    }

    /// `self + c * 1`.
    pub fn add_scalar(&self, c: &S) -> Self {
        let mut out = self.clone();
        out.add_term(Permutation::identity(self.n).expect("n >= 1"), c.clone());
        out
    }

    /// Convolution product: `[w](xy) = sum_{uv = w} [u]x [v]y`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: HashMap<Permutation, S> = HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 16));
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let w = u.compose_unchecked(v);
                let c = a.clone() * b.clone();
                match acc.get_mut(&w) {
                    Some(slot) => *slot = slot.clone() + c,
                    None => {
                        acc.insert(w, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(AlgebraElement { n: self.n, terms })
    }

    /// `x^e`, by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.n).expect("n >= 1");
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base).expect("same degree");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same degree");
            }
        }
        result
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.try_sub(&other.multiply(self)?)
    }

    /// The antipode `S`: each `w` is replaced by `w^{-1}`.
    pub fn antipode(&self) -> Self {
        let terms = self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())).collect();
        AlgebraElement { n: self.n, terms }
    }

    /// The standard bilinear form `f(x, y) = sum_w [w]x [w]y`.
    pub fn bilinear_form(&self, other: &Self) -> Result<S> {
        self.check(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut total = S::zero();
        for (w, c) in &small.terms {
            if let Some(d) = large.terms.get(w) {
                total = total + c.clone() * d.clone();
            }
        }
        Ok(total)
    }

    /// Coefficient-wise conversion to another scalar type.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlgebraElement<T> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        AlgebraElement { n: self.n, terms }
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> S {
        self.terms.values().fold(S::zero(), |acc, c| acc + c.clone())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(w, c)| w.is_identity() && c.is_one())
    }
}

impl<S: Scalar> fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "[{w}]")?;
            } else {
                write!(f, "({c})[{w}]")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement(n={}, {})", self.n, self)
    }
}

// Operator sugar. These panic on degree mismatch; use the `try_*` methods
// and `multiply` for fallible arithmetic.

impl<S: Scalar> Add for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn add(self, rhs: Self) -> AlgebraElement<S> {
        self.try_add(rhs).expect("degree mismatch in +")
    }
}

impl<S: Scalar> Sub for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn sub(self, rhs: Self) -> AlgebraElement<S> {
        self.try_sub(rhs).expect("degree mismatch in -")
    }
}

impl<S: Scalar> Mul for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn mul(self, rhs: Self) -> AlgebraElement<S> {
        self.multiply(rhs).expect("degree mismatch in *")
    }
}

impl<S: Scalar> Neg for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn neg(self) -> AlgebraElement<S> {
        self.scale(&-S::one())
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct WireTerm {
    perm: Permutation,
    num: String,
    den: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct WireElement {
    n: usize,
    terms: Vec<WireTerm>,
}

impl AlgebraElement<Rational> {
    /// `{"n": .., "terms": [{"perm": "3,2,4,1", "num": "1", "den": "2"}, ..]}`
    /// with terms in lexicographic order.
    pub fn to_json_value(&self) -> serde_json::Value {
        let wire = WireElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| WireTerm { perm: w.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        };
        serde_json::to_value(wire).expect("serializable")
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self> {
        let wire: WireElement =
            serde_json::from_value(value.clone()).map_err(|e| Error::InvalidPermutation(e.to_string()))?;
        let terms = wire
            .terms
            .into_iter()
            .map(|t| Ok((t.perm, parse_rational(&format!("{}/{}", t.num, t.den))?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(wire.n, terms)
    }

    /// Human-readable form with `p/q` coefficients.
    pub fn to_fraction_string(&self) -> String {
        self.terms.iter().map(|(w, c)| format!("{}[{}]", format_rational(c), w)).collect::<Vec<_>>().join(" + ")
    }
}
