//! Exact characteristic polynomials by reduction to Hessenberg form.


use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Polynomial};
use crate::scalar::Scalar;

/// Reduces a square matrix to upper Hessenberg form by elementary
/// similarity transformations. Needs exact division.
pub fn hessenberg<S: Scalar>(m: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    if !m.is_square() {
        return Err(Error::Dimension("hessenberg form of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !a.get(i, j).is_zero()) else {
            continue;
        };
        if p != j + 1 {
            swap_rows(&mut a, p, j + 1);
            swap_cols(&mut a, p, j + 1);
        }
        let pivot = a.get(j + 1, j).clone();
        for r in j + 2..n {
            if a.get(r, j).is_zero() {
                continue;
            }
            let f = a.get(r, j).clone() / pivot.clone();
            // row_r -= f * row_{j+1}
            for c in 0..n {
                let v = a.get(r, c).clone() - f.clone() * a.get(j + 1, c).clone();
                a.set(r, c, v);
            }
            // col_{j+1} += f * col_r
            for c in 0..n {
                let v = a.get(c, j + 1).clone() + f.clone() * a.get(c, r).clone();
                a.set(c, j + 1, v);
            }
        }
    }
    Ok(a)
}

fn swap_rows<S: Scalar>(a: &mut DenseMatrix<S>, i: usize, k: usize) {
    for c in 0..a.cols() {
        let t = a.get(i, c).clone();
        a.set(i, c, a.get(k, c).clone());
        a.set(k, c, t);
    }
}

fn swap_cols<S: Scalar>(a: &mut DenseMatrix<S>, i: usize, k: usize) {
    for r in 0..a.rows() {
        let t = a.get(r, i).clone();
        a.set(r, i, a.get(r, k).clone());
        a.set(r, k, t);
    }
}

/// `det(xI - M)`, monic of degree `dim M`.
pub fn characteristic_polynomial<S: Scalar>(m: &DenseMatrix<S>) -> Result<Polynomial<S>> {
    let h = hessenberg(m)?;
    let n = h.rows();
    // p[k] is the characteristic polynomial of the leading k x k block.
    let mut p: Vec<Polynomial<S>> = Vec::with_capacity(n + 1);
    p.push(Polynomial::one());
    for k in 1..=n {
        let diag = h.get(k - 1, k - 1).clone();
        let mut next = Polynomial::linear(diag).mul(&p[k - 1]);
        let mut sub_product = S::one();
        for i in (1..k).rev() {
            sub_product = sub_product * h.get(i, i - 1).clone();
            if sub_product.is_zero() {
                break;
            }
            let c = h.get(i - 1, k - 1).clone() * sub_product.clone();
            if !c.is_zero() {
                next = next.sub(&p[i - 1].scale(&c));
            }
        }
        p.push(next);
    }
    Ok(p.pop().expect("nonempty"))
}
