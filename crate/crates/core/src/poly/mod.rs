//! Sparse multivariate and dense univariate polynomials.

mod multi;
mod parse;
mod uni;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use multi::{poly_arith, ArithOp, MultiPoly};
pub use parse::{parse_poly, parse_poly_decimal, parse_poly_float};
pub use uni::{square_free_decomposition, UniPoly};

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, T>(names: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        Vars(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    /// `prefix1, …, prefixN`.
    pub fn indexed(prefix: &str, count: usize) -> Self {
        Vars::new((1..=count).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn concat(&self, other: &Vars) -> Result<Vars> {
        if let Some(dup) = other.0.iter().find(|v| self.index_of(v).is_some()) {
            return Err(Error::VariableMismatch(format!("duplicate variable `{dup}`")));
        }
        Ok(Vars::new(self.0.iter().chain(other.0.iter()).cloned()))
    }

    pub fn without(&self, index: usize) -> Vars {
        Vars::new(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, v)| v.clone()),
        )
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector, ordered graded-lexicographically with `x1 > x2 > …`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Evaluates the monomial given per-variable power tables
    /// (`powers[i][k] = x_i^k`).
    pub fn eval_with_powers<S: crate::Scalar>(&self, powers: &[Vec<S>]) -> S {
        let mut acc = S::one();
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                acc = acc * powers[i][e as usize].clone();
            }
        }
        acc
    }

    pub fn eval<S: crate::Scalar>(&self, point: &[S]) -> S {
        let mut acc = S::one();
        for (x, &e) in point.iter().zip(&self.0) {
            for _ in 0..e {
                acc = acc * x.clone();
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Power tables `x_i^0 ..= x_i^max` for every coordinate of `point`.
pub fn power_table<S: crate::Scalar>(point: &[S], max: u32) -> Vec<Vec<S>> {
    point
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(max as usize + 1);
            row.push(S::one());
            for k in 1..=max as usize {
                let next = row[k - 1].clone() * x.clone();
                row.push(next);
            }
            row
        })
        .collect()
}
