//! Dense matrices, exact reduced echelon forms and float kernels.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::poly::UniPoly;
use crate::roots::{float_real_roots, isolate_real_roots, RealRoot, RootDomain};
use crate::scalar::{denominator_lcm, numerator_gcd, Rational, Scalar};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    nrows: usize,
    ncols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            data: vec![S::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds from rows; all rows must have length `ncols`.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<S>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { nrows, ncols, data }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> + '_ {
        (0..self.nrows).map(move |i| self.row(i))
    }

    pub fn push_row(&mut self, row: Vec<S>) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.data.extend(row);
        self.nrows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Drops column `j`.
    pub fn without_column(&self, j: usize) -> Self {
        let rows = self
            .rows()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        Matrix::from_rows(self.ncols - 1, rows)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.nrows, self.ncols, |i, j| self.get(i, j).to_f64())
    }
}

/// Reduced row echelon form over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    ncols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<Rational>>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Canonical nullspace basis: one vector per free column `f`, with a 1 in
    /// position `f`, zeros in the other free positions, ordered by `f`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (k, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.rows[k][f].clone();
                }
                v
            })
            .collect()
    }

    /// `v` minus its projection along the pivot coordinates; zero exactly
    /// when `v` lies in the row space.
    pub fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, a) in r.iter_mut().zip(&self.rows[k]) {
                if !a.is_zero() {
                    *x -= &f * a;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.residual(v).iter().all(Zero::is_zero)
    }
}

/// Rows above this count go through the modular-guided elimination.
const DIRECT_ROW_LIMIT: usize = 8;

/// Exact RREF. Large matrices are reduced through a modular rank profile
/// followed by exact verification, which gives the same (unique) result as
/// [`rref_direct`] at a fraction of the cost when the rank is small.
pub fn rref(m: &Matrix<Rational>) -> Rref {
    if m.nrows() <= DIRECT_ROW_LIMIT {
        rref_direct(m)
    } else {
        rref_modular(m)
    }
}

/// Fraction-free Gauss–Jordan elimination over the whole matrix.
pub fn rref_direct(m: &Matrix<Rational>) -> Rref {
    let rows = m.rows().map(integer_row).collect();
    IntRref::compute(rows, m.ncols()).into_rref()
}

/// Row selection modulo a prime, exact reduction of the selected rows, then
/// exact verification that every other row lies in their span. Rows that
/// fail verification are added and the reduction repeated.
pub fn rref_modular(m: &Matrix<Rational>) -> Rref {
    let ncols = m.ncols();
    let int_rows: Vec<Vec<BigInt>> = m.rows().map(integer_row).collect();
    let mut selected = modular_row_profile(&int_rows, ncols);
    loop {
        let sub = selected.iter().map(|&i| int_rows[i].clone()).collect();
        let red = IntRref::compute(sub, ncols);
        let failing: Vec<usize> = (0..int_rows.len())
            .filter(|i| !selected.contains(i))
            .filter(|&i| !red.contains(&int_rows[i]))
            .collect();
        if failing.is_empty() {
            return red.into_rref();
        }
        selected.extend(failing);
        selected.sort_unstable();
    }
}

/// Clears denominators and removes content so elimination stays in Z.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = denominator_lcm(row.iter());
    let g = numerator_gcd(row.iter());
    if g.is_zero() {
        return vec![BigInt::zero(); row.len()];
    }
    row.iter()
        .map(|v| (v.numer() * (&lcm / v.denom())) / &g)
        .collect()
}

/// Integer Gauss–Jordan state: every pivot entry equals `denom`, and the
/// rational RREF is `rows / denom`.
struct IntRref {
    ncols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<BigInt>>,
    denom: BigInt,
}

impl IntRref {
    fn compute(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        let m = a.len();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m {
                break;
            }
            let Some(pi) = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].bits())
            else {
                continue;
            };
            a.swap(r, pi);
            let p = a[r][c].clone();
            let (head, tail) = a.split_at_mut(r);
            let (prow, below) = tail.split_first_mut().expect("pivot row");
            for (i, row) in head.iter_mut().chain(below.iter_mut()).enumerate() {
                let start = if i < r { 0 } else { c };
                let f = row[c].clone();
                for j in start..ncols {
                    let mut v = &p * &row[j];
                    if !f.is_zero() && !prow[j].is_zero() {
                        v -= &f * &prow[j];
                    }
                    if !v.is_zero() {
                        v /= &prev;
                    }
                    row[j] = v;
                }
            }
            prev = p;
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        IntRref {
            ncols,
            pivots,
            rows: a,
            denom: prev,
        }
    }

    /// Exact test `denom·x == Σ x[p_k]·rows_k`.
    fn contains(&self, x: &[BigInt]) -> bool {
        let is_pivot = {
            let mut v = vec![false; self.ncols];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        (0..self.ncols).filter(|&j| !is_pivot[j]).all(|j| {
            let mut acc = &self.denom * &x[j];
            for (k, &p) in self.pivots.iter().enumerate() {
                if !x[p].is_zero() && !self.rows[k][j].is_zero() {
                    acc -= &x[p] * &self.rows[k][j];
                }
            }
            acc.is_zero()
        })
    }

    fn into_rref(self) -> Rref {
        let d = self.denom;
        let rows = self
            .rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| Rational::new(v, d.clone()))
                    .collect()
            })
            .collect();
        Rref {
            ncols: self.ncols,
            pivots: self.pivots,
            rows,
        }
    }
}

const MODULUS: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Indices of a maximal set of rows that are independent modulo the prime.
fn modular_row_profile(rows: &[Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let p = BigInt::from(MODULUS);
    let mut work: Vec<(usize, Vec<u64>)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let v = r
                .iter()
                .map(|x| x.mod_floor(&p).to_u64().expect("reduced residue"))
                .collect();
            (i, v)
        })
        .collect();
    let mut selected = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == work.len() {
            break;
        }
        let Some(pi) = (r..work.len()).find(|&i| work[i].1[c] != 0) else {
            continue;
        };
        work.swap(r, pi);
        let inv = powmod(work[r].1[c], MODULUS - 2);
        let prow = work[r].1.clone();
        for (_, row) in work.iter_mut().skip(r + 1) {
            let f = mulmod(row[c], inv);
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                row[j] = (row[j] + MODULUS - mulmod(f, prow[j])) % MODULUS;
            }
        }
        selected.push(work[r].0);
        r += 1;
    }
    selected.sort_unstable();
    selected
}

pub fn rank_exact(m: &Matrix<Rational>) -> usize {
    rref(m).rank()
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn det_exact(m: &Matrix<Rational>) -> Rational {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = Rational::one();
    let mut a: Vec<Vec<BigInt>> = m
        .rows()
        .map(|row| {
            let lcm = denominator_lcm(row.iter());
            scale *= Rational::from_integer(lcm.clone());
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        let Some(pi) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if pi != k {
            a.swap(pi, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Rational::from_integer(sign * prev) / scale
}

/// Sign and natural log of `|det|` via partial-pivoting LU; `(0, -inf)`
/// for singular input.
pub fn log_det_float(m: &Matrix<f64>) -> (f64, f64) {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let lu = m.to_nalgebra().lu();
    let u = lu.u();
    let mut sign = if lu.p().determinant::<f64>() < 0.0 { -1.0 } else { 1.0 };
    let mut log = 0.0;
    for i in 0..u.nrows() {
        let d = u[(i, i)];
        if d == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        if d < 0.0 {
            sign = -sign;
        }
        log += d.abs().ln();
    }
    (sign, log)
}

/// Right singular vectors of a float matrix with singular value below
/// `rel_tol · σ_max`, together with all singular values (descending).
#[derive(Clone, Debug)]
pub struct FloatKernel {
    pub basis: Vec<Vec<f64>>,
    pub singular_values: Vec<f64>,
    pub rank: usize,
}

pub fn svd_kernel(m: &Matrix<f64>, rel_tol: f64) -> FloatKernel {
    let n = m.ncols();
    let rows = m.nrows().max(n);
    let mut a = DMatrix::<f64>::zeros(rows, n);
    for i in 0..m.nrows() {
        for j in 0..n {
            a[(i, j)] = *m.get(i, j);
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let smax = sigma.first().copied().unwrap_or(0.0);
    let rank = sigma.iter().filter(|&&s| s > rel_tol * smax).count();
    let basis = order
        .iter()
        .skip(rank)
        .map(|&i| v_t.row(i).iter().copied().collect())
        .collect();
    FloatKernel {
        basis,
        singular_values: sigma,
        rank,
    }
}

/// Smallest singular value relative to the largest; 0 for rank-deficient
/// square input.
pub fn relative_min_singular_value(m: &Matrix<f64>) -> f64 {
    let k = svd_kernel(m, 0.0);
    let smax = k.singular_values.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0.0;
    }
    let smin = if m.nrows() < m.ncols() {
        0.0
    } else {
        k.singular_values.last().copied().unwrap_or(0.0)
    };
    smin / smax
}

/// Rescales an exact vector to coprime integers with a positive last
/// nonzero entry.
pub fn primitive_vector(v: &[Rational]) -> Vec<Rational> {
    let ints = integer_row(v);
    let flip = ints.iter().rev().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    ints.into_iter()
        .map(|x| Rational::from_integer(if flip { -x } else { x }))
        .collect()
}

/// Kernel basis of a matrix plus its numerical rank.
#[derive(Clone, Debug)]
pub struct KernelBasis<S> {
    pub vectors: Vec<Vec<S>>,
    pub rank: usize,
    /// Float mode only, descending.
    pub singular_values: Option<Vec<f64>>,
}

/// Linear algebra that differs between the exact and float fields.
pub trait Field: Scalar {
    /// Exact: canonical RREF nullspace. Float: right singular vectors with
    /// `σ <= rel_tol·σ_max`.
    fn kernel(m: &Matrix<Self>, rel_tol: f64) -> KernelBasis<Self>;

    /// Pivot columns and nonzero rows of the reduced echelon form.
    fn echelon(m: &Matrix<Self>, rel_tol: f64) -> (Vec<usize>, Vec<Vec<Self>>);

    /// Whether `v` lies in the row space of `m`, with a float score (the
    /// relative singular value gained by appending `v`; 0 when exact).
    fn row_in_span(m: &Matrix<Self>, v: &[Self], rel_tol: f64) -> (bool, Option<f64>);

    /// Rescales a sample row: coprime integers in exact mode, unit max-norm
    /// in float mode.
    fn normalize_row(row: Vec<Self>) -> Vec<Self>;

    /// Real roots in `domain`: certified isolation in exact mode,
    /// eigenvalue-based approximations in float mode.
    fn real_roots(p: &UniPoly<Self>, domain: &RootDomain) -> Result<Vec<RealRoot>>;

    /// The value itself in exact mode.
    fn as_rational(&self) -> Option<&Rational>;
}

impl Field for Rational {
    fn kernel(m: &Matrix<Self>, _rel_tol: f64) -> KernelBasis<Self> {
        let r = rref(m);
        KernelBasis {
            vectors: r.nullspace(),
            rank: r.rank(),
            singular_values: None,
        }
    }

    fn echelon(m: &Matrix<Self>, _rel_tol: f64) -> (Vec<usize>, Vec<Vec<Self>>) {
        let r = rref(m);
        (r.pivots, r.rows)
    }

    fn row_in_span(m: &Matrix<Self>, v: &[Self], _rel_tol: f64) -> (bool, Option<f64>) {
        (rref(m).contains(v), None)
    }

    fn normalize_row(row: Vec<Self>) -> Vec<Self> {
        let ints = integer_row(&row);
        ints.into_iter().map(Rational::from_integer).collect()
    }

    fn real_roots(p: &UniPoly<Self>, domain: &RootDomain) -> Result<Vec<RealRoot>> {
        isolate_real_roots(p, domain)
    }

    fn as_rational(&self) -> Option<&Rational> {
        Some(self)
    }
}

impl Field for f64 {
    fn kernel(m: &Matrix<Self>, rel_tol: f64) -> KernelBasis<Self> {
        let k = svd_kernel(m, rel_tol);
        KernelBasis {
            vectors: k.basis,
            rank: k.rank,
            singular_values: Some(k.singular_values),
        }
    }

    fn echelon(m: &Matrix<Self>, rel_tol: f64) -> (Vec<usize>, Vec<Vec<Self>>) {
        float_rref(m, rel_tol)
    }

    fn row_in_span(m: &Matrix<Self>, v: &[Self], rel_tol: f64) -> (bool, Option<f64>) {
        let mut rows: Vec<Vec<f64>> = m.rows().map(|r| f64::normalize_row(r.to_vec())).collect();
        let base_rank = svd_kernel(&Matrix::from_rows(m.ncols(), rows.clone()), rel_tol).rank;
        rows.push(f64::normalize_row(v.to_vec()));
        let k = svd_kernel(&Matrix::from_rows(m.ncols(), rows), rel_tol);
        let smax = k.singular_values.first().copied().unwrap_or(0.0);
        let gained = k.singular_values.get(base_rank).copied().unwrap_or(0.0);
        let score = if smax > 0.0 { gained / smax } else { 0.0 };
        (score <= rel_tol, Some(score))
    }

    fn normalize_row(row: Vec<Self>) -> Vec<Self> {
        let scale = row.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return row;
        }
        row.into_iter().map(|v| v / scale).collect()
    }

    fn real_roots(p: &UniPoly<Self>, domain: &RootDomain) -> Result<Vec<RealRoot>> {
        float_real_roots(p, domain)
    }

    fn as_rational(&self) -> Option<&Rational> {
        None
    }
}

/// Gauss–Jordan with partial pivoting; entries below `rel_tol·max|a|` are
/// treated as zero.
pub fn float_rref(m: &Matrix<f64>, rel_tol: f64) -> (Vec<usize>, Vec<Vec<f64>>) {
    let mut a: Vec<Vec<f64>> = m.rows().map(<[f64]>::to_vec).collect();
    let tol = rel_tol * m.max_norm();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.ncols() {
        if r == a.len() {
            break;
        }
        let (pi, best) = (r..a.len())
            .map(|i| (i, a[i][c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= tol {
            continue;
        }
        a.swap(r, pi);
        let p = a[r][c];
        for x in a[r].iter_mut() {
            *x /= p;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0.0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= f * y;
            }
            row[c] = 0.0;
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    for row in &mut a {
        for x in row.iter_mut() {
            if x.abs() <= rel_tol {
                *x = 0.0;
            }
        }
    }
    (pivots, a)
}
