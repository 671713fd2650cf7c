use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{power_table, Monomial, Vars};
use crate::error::{Error, Result};
use crate::scalar::{denominator_lcm, numerator_gcd, Rational, Scalar};

/// Sparse polynomial: a map from graded-lex ordered monomials to nonzero
/// coefficients.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<S: Scalar = Rational> {
    vars: Vars,
    terms: BTreeMap<Monomial, S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic: both operands must live over the same variables.
pub fn poly_arith<S: Scalar>(a: &MultiPoly<S>, b: &MultiPoly<S>, op: ArithOp) -> Result<MultiPoly<S>> {
    a.check_vars(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(vars: Vars) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, S::one())
    }

    pub fn constant(vars: Vars, c: S) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(Monomial::one(n), c)])
    }

    /// The variable with index `index` as a polynomial.
    pub fn var(vars: Vars, index: usize) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(Monomial::var(n, index), S::one())])
    }

    /// Sums the given terms, dropping anything that cancels to zero.
    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), p.vars.len(), "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> S {
        self.leading_term().map_or_else(S::zero, |(_, c)| c.clone())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(format!(
                "{:?} vs {:?}",
                self.vars, other.vars
            )))
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &S) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (k, a) in &self.terms {
            out.add_term(k.mul(m), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars(), "evaluation point arity");
        let max = self
            .terms
            .keys()
            .flat_map(|m| m.exponents().iter().copied())
            .max()
            .unwrap_or(0);
        let powers = power_table(point, max);
        self.terms
            .iter()
            .fold(S::zero(), |acc, (m, c)| acc + c.clone() * m.eval_with_powers(&powers))
    }

    /// Replaces variable `i` by `images[i]`; all images share one target ring.
    pub fn substitute(&self, images: &[MultiPoly<S>]) -> Result<MultiPoly<S>> {
        if images.len() != self.nvars() {
            return Err(Error::VariableMismatch(format!(
                "substitution needs {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(first) => first.vars.clone(),
            None => return Ok(self.clone()),
        };
        for img in images {
            if img.vars != target {
                return Err(Error::VariableMismatch(
                    "substitution images live in different rings".into(),
                ));
            }
        }
        let mut powers: Vec<Vec<MultiPoly<S>>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let max = self.degree_in(i) as usize;
            let mut row = vec![MultiPoly::one(target.clone())];
            for k in 1..=max {
                let next = &row[k - 1] * img;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = MultiPoly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable that actually occurs.
    pub fn embed(&self, target: &Vars) -> Result<MultiPoly<S>> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.degree_in(i) == 0 => map.push(None),
                None => {
                    return Err(Error::VariableMismatch(format!(
                        "variable `{name}` missing from target ring"
                    )))
                }
            }
        }
        let mut out = MultiPoly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += x;
                }
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients with respect to variable `var`, as polynomials over the
    /// remaining variables: `self = Σ_k out[k] · var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly<S>> {
        let rest = self.vars.without(var);
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(rest.clone()); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exponents()[var] as usize;
            let e: Vec<u32> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != var)
                .map(|(_, &x)| x)
                .collect();
            out[k].add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Partial evaluation: fixes variable `var` to `value` and drops it.
    pub fn eval_var(&self, var: usize, value: &S) -> MultiPoly<S> {
        let coeffs = self.coefficients_in(var);
        let mut acc = MultiPoly::zero(self.vars.without(var));
        for c in coeffs.iter().rev() {
            acc = &acc.scale(value) + c;
        }
        acc
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MultiPoly<T> {
        MultiPoly::from_terms(
            self.vars.clone(),
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    pub fn to_float(&self) -> MultiPoly<f64> {
        self.map_coeffs(|c| c.to_f64())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = S::one() / c.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Drops coefficients with `|c| <= tol · max|c|`.
    pub fn chop(&self, tol: f64) -> Self {
        let scale = self.max_norm();
        MultiPoly::from_terms(
            self.vars.clone(),
            self.terms
                .iter()
                .filter(|(_, c)| !c.is_negligible(scale, tol))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Exact quotient `self / divisor`, failing when a remainder would be
    /// left.
    pub fn div_exact(&self, divisor: &MultiPoly<S>) -> Result<MultiPoly<S>> {
        self.check_vars(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DegenerateInput("division by zero polynomial".into())),
        };
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.vars.clone());
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm).ok_or(Error::NotDivisible)?;
            let qc = c.clone() / lc.clone();
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// `num / lin^k` with `lin` of total degree one, computed exactly.
    pub fn exact_divide_power(&self, lin: &MultiPoly<S>, k: u32) -> Result<MultiPoly<S>> {
        if lin.total_degree() != 1 {
            return Err(Error::DegenerateInput(
                "divisor must have total degree 1".into(),
            ));
        }
        let mut q = self.clone();
        for _ in 0..k {
            q = q.div_exact(lin)?;
        }
        Ok(q)
    }

    /// Largest `k <= max_power` with `lin^k | self`, and the quotient.
    pub fn strip_linear_power(&self, lin: &MultiPoly<S>, max_power: u32) -> Result<(MultiPoly<S>, u32)> {
        if lin.total_degree() != 1 {
            return Err(Error::DegenerateInput(
                "divisor must have total degree 1".into(),
            ));
        }
        for k in (1..=max_power).rev() {
            if let Ok(q) = self.exact_divide_power(lin, k) {
                return Ok((q, k));
            }
        }
        Ok((self.clone(), 0))
    }

    fn fmt_coeff(c: &S, f: &mut fmt::Formatter<'_>, first: bool, unit_ok: bool) -> fmt::Result {
        let text = c.format();
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.as_str()),
        };
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        if !(unit_ok && body == "1") {
            f.write_str(body)?;
            if unit_ok {
                f.write_str("*")?;
            }
        }
        Ok(())
    }
}

impl MultiPoly<Rational> {
    /// Integer coefficients with gcd 1 and positive graded-lex leading
    /// coefficient.
    pub fn primitive_part(&self) -> MultiPoly<Rational> {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = denominator_lcm(self.terms.values());
        let scaled: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), (c * Rational::from_integer(lcm.clone())).to_integer()))
            .collect();
        let g = scaled
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| num_integer::Integer::gcd(&acc, c));
        let sign = if scaled.last().is_some_and(|(_, c)| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        MultiPoly::from_terms(
            self.vars.clone(),
            scaled
                .into_iter()
                .map(|(m, c)| (m, Rational::from_integer(&c / &g * &sign))),
        )
    }

    /// Numerator gcd / denominator lcm of the coefficients.
    pub fn content(&self) -> Rational {
        Rational::new(
            numerator_gcd(self.terms.values()),
            denominator_lcm(self.terms.values()),
        )
    }
}

impl<S: Scalar> fmt::Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let is_const = m.degree() == 0;
            Self::fmt_coeff(c, f, i == 0, !is_const)?;
            let mut first_factor = true;
            for (v, &e) in self.vars.names().iter().zip(m.exponents()) {
                if e == 0 {
                    continue;
                }
                if !first_factor {
                    f.write_str("*")?;
                }
                first_factor = false;
                f.write_str(v)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl<S: Scalar> Add for &MultiPoly<S> {
    type Output = MultiPoly<S>;

    fn add(self, rhs: &MultiPoly<S>) -> MultiPoly<S> {
        assert!(self.vars == rhs.vars, "adding polynomials over different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &MultiPoly<S> {
    type Output = MultiPoly<S>;

    fn sub(self, rhs: &MultiPoly<S>) -> MultiPoly<S> {
        assert!(self.vars == rhs.vars, "subtracting polynomials over different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &MultiPoly<S> {
    type Output = MultiPoly<S>;

    fn mul(self, rhs: &MultiPoly<S>) -> MultiPoly<S> {
        assert!(self.vars == rhs.vars, "multiplying polynomials over different rings");
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &MultiPoly<S> {
    type Output = MultiPoly<S>;

    fn neg(self) -> MultiPoly<S> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}
