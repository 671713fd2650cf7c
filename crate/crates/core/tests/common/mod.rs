//! Small exact oracles written from scratch, independent of the library's
//! linear algebra, resultants and root finding.

#![allow(dead_code)]

use implicitmat::{MultiPoly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    qf(rng.random_range(-num..=num), rng.random_range(1..=den))
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    d
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let piv = m[r][c].clone();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for k in c..cols {
                let v = &f * &m[r][k];
                m[i][k] -= v;
            }
        }
        r += 1;
    }
    r
}

/// A prime near 2^61.
pub const P: u64 = 2_305_843_009_213_693_951;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
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

fn to_fp(x: &Rational) -> u64 {
    let p = BigInt::from(P);
    let n = x.numer().mod_floor(&p).to_u64().unwrap();
    let d = x.denom().mod_floor(&p).to_u64().unwrap();
    assert!(d != 0, "denominator divisible by the test prime");
    mulmod(n, powmod(d, P - 2))
}

/// Rank of the reduction mod `P`; a lower bound for the rational rank.
pub fn rank_mod_p(m: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(to_fp).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(p, r);
        let inv = powmod(a[r][c], P - 2);
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let f = mulmod(a[i][c], inv);
            for k in c..cols {
                let v = mulmod(f, a[r][k]);
                a[i][k] = (a[i][k] + P - v) % P;
            }
        }
        r += 1;
    }
    r
}

/// Monomials of total degree at most `delta` in `n` variables.
pub fn simplex_exponents(n: usize, delta: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for e in 0..=delta {
        for mut rest in simplex_exponents(n - 1, delta - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

pub fn monomial(exps: &[u32], x: &[Rational]) -> Rational {
    exps.iter().zip(x).fold(Rational::one(), |acc, (&e, v)| acc * pow(v, e))
}

pub fn pow(v: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * v)
}

/// Evaluates a library polynomial term by term.
pub fn eval(p: &MultiPoly, x: &[Rational]) -> Rational {
    p.terms().fold(Rational::zero(), |acc, (m, c)| acc + c * monomial(m.exponents(), x))
}

/// Rank of the coefficient vectors of a list of polynomials.
pub fn poly_rank(ps: &[&MultiPoly]) -> usize {
    let mut monos: Vec<Vec<u32>> = ps
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.exponents().to_vec()))
        .collect();
    monos.sort();
    monos.dedup();
    let rows = ps
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); monos.len()];
            for (m, c) in p.terms() {
                let i = monos.binary_search(&m.exponents().to_vec()).unwrap();
                row[i] = c.clone();
            }
            row
        })
        .collect();
    rank(rows)
}

pub fn same_span(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    let ra = poly_rank(&a.iter().collect::<Vec<_>>());
    let rb = poly_rank(&b.iter().collect::<Vec<_>>());
    let rab = poly_rank(&a.iter().chain(b).collect::<Vec<_>>());
    ra == rb && rb == rab
}

/// Dense univariate polynomials, ascending coefficients.
pub type U = Vec<Rational>;

pub fn trim(mut a: U) -> U {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub fn u_eval(a: &[Rational], x: &Rational) -> Rational {
    a.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

pub fn u_add(a: &[Rational], b: &[Rational]) -> U {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

pub fn u_mul(a: &[Rational], b: &[Rational]) -> U {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn u_scale(a: &[Rational], c: &Rational) -> U {
    trim(a.iter().map(|v| v * c).collect())
}

pub fn u_deriv(a: &[Rational]) -> U {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
}

pub fn u_rem(a: &[Rational], b: &[Rational]) -> U {
    let mut r = trim(a.to_vec());
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let f = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r = trim(r);
    }
    r
}

pub fn u_quo(a: &[Rational], b: &[Rational]) -> U {
    let mut r = trim(a.to_vec());
    let lb = b.last().expect("nonzero divisor").clone();
    let mut quo = vec![Rational::zero(); r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let f = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        quo[shift] = f;
        r = trim(r);
    }
    trim(quo)
}

pub fn u_gcd(a: &[Rational], b: &[Rational]) -> U {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = u_rem(&a, &b);
        a = b;
        b = r;
    }
    let lc = a.last().cloned().unwrap_or_else(Rational::one);
    u_scale(&a, &(Rational::one() / lc))
}

fn sign_changes(seq: &[U], x: &Rational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| {
            let v = u_eval(p, x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots of `a` in `(lo, hi]`, by a Sturm sequence of its
/// square-free part.
pub fn count_roots(a: &[Rational], lo: &Rational, hi: &Rational) -> usize {
    let a = trim(a.to_vec());
    if a.len() <= 1 {
        return 0;
    }
    let sf = u_quo(&a, &u_gcd(&a, &u_deriv(&a)));
    let mut seq = vec![sf.clone(), u_deriv(&sf)];
    loop {
        let r = u_rem(&seq[seq.len() - 2], &seq[seq.len() - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.iter().map(|c| -c).collect());
    }
    sign_changes(&seq, lo) - sign_changes(&seq, hi)
}

/// `1 + max |a_i / a_n|`: every root has smaller modulus.
pub fn cauchy_bound(a: &[Rational]) -> Rational {
    let lc = a.last().unwrap().abs();
    Rational::one() + a.iter().map(|c| c.abs() / &lc).fold(Rational::zero(), |m, v| if v > m { v } else { m })
}

/// Multiplicity of the unique root of `a` in `[lo, hi]`.
pub fn multiplicity_in(a: &[Rational], lo: &Rational, hi: &Rational) -> usize {
    let mut g = trim(a.to_vec());
    let mut m = 0;
    loop {
        let here = if lo == hi {
            !g.is_empty() && u_eval(&g, lo).is_zero()
        } else {
            count_roots(&g, lo, hi) > 0 || u_eval(&g, lo).is_zero()
        };
        if !here || g.len() <= 1 {
            return m;
        }
        m += 1;
        g = u_gcd(&g, &u_deriv(&g));
    }
}

/// Sylvester determinant of two polynomials taken with formal degrees
/// `da` and `db` (leading coefficients may vanish).
pub fn sylvester(a: &[Rational], da: usize, b: &[Rational], db: usize) -> Rational {
    let n = da + db;
    let coeff = |p: &[Rational], i: usize| p.get(i).cloned().unwrap_or_default();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for r in 0..db {
        for i in 0..=da {
            m[r][r + i] = coeff(a, da - i);
        }
    }
    for r in 0..da {
        for i in 0..=db {
            m[db + r][r + i] = coeff(b, db - i);
        }
    }
    det(m)
}

/// Exact degree of the polynomial through `(k, values[k])`, from finite
/// differences. Needs more values than the degree.
pub fn degree_from_values(values: &[Rational]) -> Option<usize> {
    let mut diffs = values.to_vec();
    let mut last_nonzero = None;
    for k in 0..values.len() {
        if diffs.iter().any(|v| !v.is_zero()) {
            last_nonzero = Some(k);
        }
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    last_nonzero
}

/// A rational curve given by homogeneous coordinates `F_0..F_n` in `t`.
#[derive(Clone)]
pub struct Curve {
    pub homog: Vec<U>,
}

impl Curve {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Curve {
            homog: rows.iter().map(|r| trim(r.iter().map(|&c| q(c)).collect())).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.homog.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.homog.iter().map(|p| p.len().saturating_sub(1)).max().unwrap()
    }

    pub fn point(&self, t: &Rational) -> Option<Vec<Rational>> {
        let w = u_eval(&self.homog[0], t);
        if w.is_zero() {
            return None;
        }
        Some(self.homog[1..].iter().map(|p| u_eval(p, t) / &w).collect())
    }

    pub fn samples(&self, count: usize, seed: u64) -> Vec<Vec<Rational>> {
        let mut r = rng(seed);
        let mut out = Vec::new();
        while out.len() < count {
            if let Some(p) = self.point(&random_rational(&mut r, 1000, 1000)) {
                out.push(p);
            }
        }
        out
    }

    /// `det [(1, x); rows; (F_0(t), .., F_n(t))]` as a polynomial in `t`.
    pub fn hyperplane(&self, x: &[Rational], rows: &[Vec<Rational>]) -> U {
        let n = self.n();
        let mut top = vec![std::iter::once(Rational::one()).chain(x.iter().cloned()).collect::<Vec<_>>()];
        top.extend(rows.iter().cloned());
        assert_eq!(top.len(), n, "need n rows above the curve row");
        let mut h = Vec::new();
        for j in 0..=n {
            let minor: Vec<Vec<Rational>> = top
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let c = det(minor);
            let c = if (n + j) % 2 == 0 { c } else { -c };
            h = u_add(&h, &u_scale(&self.homog[j], &c));
        }
        h
    }
}

pub fn homogenize(p: &[Rational]) -> Vec<Rational> {
    std::iter::once(Rational::one()).chain(p.iter().cloned()).collect()
}

pub fn twisted_cubic() -> Curve {
    Curve::from_ints(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1]])
}

pub fn two_cylinders() -> Curve {
    Curve::from_ints(&[&[1, 0, 2, 0, 1], &[1, 0, 0, 0, -1], &[0, 2, 0, 2], &[1, 0, -2, 0, 1]])
}

pub fn viviani() -> Curve {
    Curve::from_ints(&[&[1, 0, 2, 0, 1], &[4, 0, -8, 0, 4], &[0, 8, 0, -8], &[0, 8, 0, 8]])
}

pub fn curve4d() -> Curve {
    Curve::from_ints(&[&[1], &[-1, -1, 1], &[0, -1, 2, 1], &[-1, 1, 1], &[3, -2, 0, 1]])
}

/// The ray polynomials `a_i ρ + b_i`.
pub fn ray_lines(ray: &[(Rational, Rational)]) -> Vec<U> {
    ray.iter().map(|(a, b)| trim(vec![b.clone(), a.clone()])).collect()
}

/// `p(a ρ + b)` for a library polynomial over the ambient variables.
pub fn restrict_to_ray(p: &MultiPoly, ray: &[(Rational, Rational)]) -> U {
    let lines = ray_lines(ray);
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let mut t = vec![c.clone()];
        for (e, l) in m.exponents().iter().zip(&lines) {
            for _ in 0..*e {
                t = u_mul(&t, l);
            }
        }
        out = u_add(&out, &t);
    }
    out
}
