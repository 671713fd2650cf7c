//! Sylvester resultants over multivariate coefficient rings.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::Rational;

/// Strips vanishing leading coefficients.
fn trimmed(p: &[MultiPoly]) -> &[MultiPoly] {
    let mut n = p.len();
    while n > 0 && p[n - 1].is_zero() {
        n -= 1;
    }
    &p[..n]
}

/// The `(m+n)`-square Sylvester matrix of `p = Σ p[k] t^k` (degree `m`) and
/// `q` (degree `n`), rows ordered from the highest power down.
pub fn sylvester_matrix(p: &[MultiPoly], q: &[MultiPoly]) -> Result<Vec<Vec<MultiPoly>>> {
    let (p, q) = (trimmed(p), trimmed(q));
    if p.is_empty() || q.is_empty() {
        return Err(Error::DegenerateInput(
            "resultant of a polynomial that vanishes identically in t".into(),
        ));
    }
    let vars = p[0].vars().clone();
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (shifts, coeffs) in [(n, p), (m, q)] {
        for s in 0..shifts {
            let mut row = vec![MultiPoly::zero(vars.clone()); size];
            for (k, c) in coeffs.iter().rev().enumerate() {
                row[s + k] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// `Res_t(p, q)` as the Sylvester determinant. A side of degree zero gives
/// the usual `c^{deg}` convention.
pub fn sylvester_resultant(p: &[MultiPoly], q: &[MultiPoly]) -> Result<MultiPoly> {
    let m = sylvester_matrix(p, q)?;
    if m.is_empty() {
        return Ok(MultiPoly::one(trimmed(p)[0].vars().clone()));
    }
    Ok(ring_det(m))
}

/// Eliminates variable `var` from two polynomials in one ring; the result
/// lives in the ring without `var`.
pub fn resultant_in(a: &MultiPoly, b: &MultiPoly, var: usize) -> Result<MultiPoly> {
    a.check_vars(b)?;
    sylvester_resultant(&a.coefficients_in(var), &b.coefficients_in(var))
}

/// Determinant of a square matrix over `Q[x]` by fraction-free Bareiss
/// elimination; every division is exact.
pub fn ring_det(mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    let vars = a[0][0].vars().clone();
    let mut prev = MultiPoly::one(vars.clone());
    let mut negate = false;
    for k in 0..n {
        let Some(pi) = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].num_terms())
        else {
            return MultiPoly::zero(vars);
        };
        if pi != k {
            a.swap(pi, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut v = &a[k][k] * &a[i][j];
                if !a[i][k].is_zero() && !a[k][j].is_zero() {
                    v = &v - &(&a[i][k] * &a[k][j]);
                }
                a[i][j] = v
                    .div_exact(&prev)
                    .expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    if negate {
        -&prev
    } else {
        prev
    }
}

/// Determinant of a small numeric matrix given as nested rows.
pub fn rational_det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    crate::linalg::det_exact(&crate::linalg::Matrix::from_rows(n, rows.to_vec()))
}
