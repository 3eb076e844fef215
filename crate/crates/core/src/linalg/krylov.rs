//! Minimal polynomials from Krylov sequences.


use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Polynomial};
use crate::scalar::Scalar;

/// Monic polynomial `p` of least degree with `p(M) v = 0`.
///
/// Iterates `v, Mv, M^2 v, ...` and stops at the first linear dependence,
/// tracking each reduced vector as a polynomial combination of the sequence.
pub fn local_minimal_polynomial<S: Scalar>(m: &DenseMatrix<S>, v: &[S]) -> Result<Polynomial<S>> {
    if !m.is_square() || m.rows() != v.len() {
        return Err(Error::Dimension("Krylov sequence needs a square matrix and matching vector".into()));
    }
    // Echelon rows: (pivot column, reduced vector with 1 at the pivot, its polynomial).
    let mut basis: Vec<(usize, Vec<S>, Polynomial<S>)> = Vec::new();
    let mut current = v.to_vec();
    let mut power = Polynomial::one();
    for _ in 0..=v.len() {
        let mut reduced = current.clone();
        let mut poly = power.clone();
        for (pivot, row, row_poly) in &basis {
            let c = reduced[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (r, b) in reduced.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r = r.clone() - c.clone() * b.clone();
                }
            }
            poly = poly.sub(&row_poly.scale(&c));
        }
        match reduced.iter().position(|x| !x.is_zero()) {
            None => return Ok(poly.monic()),
            Some(pivot) => {
                let lead = reduced[pivot].clone();
                let row: Vec<S> = reduced.into_iter().map(|x| x / lead.clone()).collect();
                let row_poly = poly.scale(&(S::one() / lead));
                basis.push((pivot, row, row_poly));
            }
        }
        current = m.mul_vec(&current)?;
        power = power.mul(&Polynomial::x());
    }
    Err(Error::Internal("Krylov sequence did not become dependent".into()))
}

/// Minimal polynomial of `M`, seeded at `seed` and verified by evaluating at
/// `M`. When the seeded polynomial does not annihilate `M`, falls back to the
/// least common multiple of the local minimal polynomials of all unit vectors.
pub fn minimal_polynomial_seeded<S: Scalar>(m: &DenseMatrix<S>, seed: &[S]) -> Result<Polynomial<S>> {
    let p = local_minimal_polynomial(m, seed)?;
    if p.eval_matrix(m)?.is_zero() {
        return Ok(p);
    }
    let n = m.rows();
    let mut acc = p;
    for i in 0..n {
        let mut e = vec![S::zero(); n];
        e[i] = S::one();
        acc = acc.lcm(&local_minimal_polynomial(m, &e)?);
    }
    if !acc.eval_matrix(m)?.is_zero() {
        return Err(Error::Internal("lcm of local minimal polynomials does not annihilate".into()));
    }
    Ok(acc)
}
