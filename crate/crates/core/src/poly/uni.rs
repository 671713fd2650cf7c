use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{Monomial, MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Dense univariate polynomial, `coeffs[k]` multiplying `x^k`.
#[derive(Clone, PartialEq)]
pub struct UniPoly<S: Scalar = Rational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        UniPoly::new(vec![c])
    }

    /// `a·x + b`.
    pub fn linear(a: S, b: S) -> Self {
        UniPoly::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &S) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = S::one() / self.leading_coeff();
        self.scale(&inv)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(UniPoly::constant(S::one()), |acc, _| &acc * self)
    }

    /// Euclidean division over the field of coefficients.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::DegenerateInput("division by zero polynomial".into()))?;
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].clone() / lc.clone();
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * c.clone();
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Lifts to a `MultiPoly` in the single variable `var`.
    pub fn to_multi(&self, var: &str) -> MultiPoly<S> {
        MultiPoly::from_terms(
            Vars::new([var]),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::new(vec![k as u32]), c.clone())),
        )
    }

    /// Reads a polynomial that involves at most variable `var`.
    pub fn from_multi(p: &MultiPoly<S>, var: usize) -> Result<Self> {
        let mut coeffs = vec![S::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            if m.exponents().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(Error::VariableMismatch(
                    "polynomial is not univariate in the requested variable".into(),
                ));
            }
            coeffs[m.exponents()[var] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Drops trailing coefficients that are negligible relative to the
    /// largest one.
    pub fn trim_relative(&self, tol: f64) -> Self {
        let scale = self.max_norm();
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|v| v.is_negligible(scale, tol)) {
            c.pop();
        }
        UniPoly::new(c)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl UniPoly<Rational> {
    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Rescales to integer coefficients with unit content; keeps the sign of
    /// the leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = crate::scalar::denominator_lcm(self.coeffs.iter());
        let gcd = crate::scalar::numerator_gcd(self.coeffs.iter());
        self.scale(&Rational::new(lcm, gcd))
    }

    pub fn to_float(&self) -> UniPoly<f64> {
        self.map(Scalar::to_f64)
    }
}

/// Yun's algorithm: returns `(s_i, i)` with `p = c · Π s_i^i`, every `s_i`
/// monic, square-free, pairwise coprime and non-constant.
pub fn square_free_decomposition(p: &UniPoly<Rational>) -> Result<Vec<(UniPoly<Rational>, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let dp = p.derivative();
    let a = p.gcd(&dp);
    let mut b = p.div_rem(&a)?.0;
    let mut c = dp.div_rem(&a)?.0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let g = b.gcd(&d);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        b = b.div_rem(&g)?.0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_rem(&g)?.0;
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

impl<S: Scalar> fmt::Display for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multi("x"))
    }
}

impl<S: Scalar> fmt::Debug for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl<S: Scalar> Add for &UniPoly<S> {
    type Output = UniPoly<S>;

    fn add(self, rhs: &UniPoly<S>) -> UniPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(S::zero);
                    let b = rhs.coeffs.get(k).cloned().unwrap_or_else(S::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<S: Scalar> Sub for &UniPoly<S> {
    type Output = UniPoly<S>;

    fn sub(self, rhs: &UniPoly<S>) -> UniPoly<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Neg for &UniPoly<S> {
    type Output = UniPoly<S>;

    fn neg(self) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<S: Scalar> Mul for &UniPoly<S> {
    type Output = UniPoly<S>;

    fn mul(self, rhs: &UniPoly<S>) -> UniPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}
