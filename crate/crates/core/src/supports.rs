//! Monomial supports indexing interpolation matrices.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ParamModel;
use crate::poly::{power_table, Monomial, MultiPoly, Vars};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportOrigin {
    Simplex(u32),
    /// `Σ w_i a_i <= bound`.
    Weighted { weights: Vec<u32>, bound: u32 },
    User,
}

/// Distinct monomials in ascending graded-lex order.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialSupport {
    vars: Vars,
    monomials: Vec<Monomial>,
    origin: SupportOrigin,
}

impl MonomialSupport {
    /// Sorts and checks the list; duplicates are an error.
    pub fn new(vars: Vars, monomials: Vec<Monomial>, origin: SupportOrigin) -> Result<Self> {
        let n = vars.len();
        if let Some(m) = monomials.iter().find(|m| m.nvars() != n) {
            return Err(Error::VariableMismatch(format!(
                "monomial {m:?} does not have {n} exponents"
            )));
        }
        let set: BTreeSet<Monomial> = monomials.iter().cloned().collect();
        if set.len() != monomials.len() {
            return Err(Error::InvalidInput("duplicate monomial in support".into()));
        }
        if set.is_empty() {
            return Err(Error::InvalidInput("empty support".into()));
        }
        Ok(MonomialSupport {
            vars,
            monomials: set.into_iter().collect(),
            origin,
        })
    }

    /// All monomials of total degree at most `delta` over `vars`.
    pub fn simplex_over(vars: Vars, delta: u32) -> Self {
        let weights = vec![1; vars.len()];
        let monomials = weighted_monomials(&weights, delta);
        MonomialSupport::new(vars, monomials, SupportOrigin::Simplex(delta)).expect("simplex support")
    }

    /// Monomials with `Σ w_i a_i <= bound`.
    pub fn weighted(vars: Vars, weights: Vec<u32>, bound: u32) -> Result<Self> {
        if weights.len() != vars.len() || weights.contains(&0) {
            return Err(Error::InvalidInput(
                "one positive weight per variable is required".into(),
            ));
        }
        let monomials = weighted_monomials(&weights, bound);
        MonomialSupport::new(vars, monomials, SupportOrigin::Weighted { weights, bound })
    }

    /// Support file: one monomial per line as whitespace-separated
    /// exponents; blank lines and `#` comments are ignored.
    pub fn parse(text: &str, vars: Vars) -> Result<Self> {
        let mut monomials = Vec::new();
        let mut seen = BTreeSet::new();
        for (ln, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let mut exps = Vec::new();
            let mut offset = 0;
            for tok in body.split_whitespace() {
                let col = body[offset..].find(tok).map_or(0, |i| i + offset);
                offset = col + tok.len();
                let e: u32 = tok.parse().map_err(|_| Error::Parse {
                    line: ln + 1,
                    column: col + 1,
                    message: format!("`{tok}` is not a non-negative integer exponent"),
                })?;
                exps.push(e);
            }
            if exps.len() != vars.len() {
                return Err(Error::Parse {
                    line: ln + 1,
                    column: 1,
                    message: format!("expected {} exponents, found {}", vars.len(), exps.len()),
                });
            }
            let m = Monomial::new(exps);
            if !seen.insert(m.clone()) {
                return Err(Error::Parse {
                    line: ln + 1,
                    column: 1,
                    message: "duplicate monomial".into(),
                });
            }
            monomials.push(m);
        }
        MonomialSupport::new(vars, monomials, SupportOrigin::User)
    }

    /// Inverse of [`MonomialSupport::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for m in &self.monomials {
            let line: Vec<String> = m.exponents().iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn origin(&self) -> &SupportOrigin {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.monomials.last().map_or(0, Monomial::degree)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.binary_search(m).ok()
    }

    /// `S(x)`: every monomial evaluated at `x`.
    pub fn eval_row<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let max = self
            .monomials
            .iter()
            .flat_map(|m| m.exponents().iter().copied())
            .max()
            .unwrap_or(0);
        let powers = power_table(x, max);
        self.monomials.iter().map(|m| m.eval_with_powers(&powers)).collect()
    }

    /// `Σ c_i m_i` for a coefficient vector aligned with the support.
    pub fn poly_from_coeffs<S: Scalar>(&self, coeffs: &[S]) -> MultiPoly<S> {
        MultiPoly::from_terms(
            self.vars.clone(),
            self.monomials.iter().cloned().zip(coeffs.iter().cloned()),
        )
    }

    /// Coefficient vector of `p` over the support; `None` when `p` has a
    /// term outside it.
    pub fn coeffs_of<S: Scalar>(&self, p: &MultiPoly<S>) -> Option<Vec<S>> {
        let mut v = vec![S::zero(); self.len()];
        for (m, c) in p.terms() {
            v[self.index_of(m)?] = c.clone();
        }
        Some(v)
    }
}

/// Ascending graded-lex enumeration of `{a : Σ w_i a_i <= bound}`.
fn weighted_monomials(weights: &[u32], bound: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == weights.len() {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        let w = weights[prefix.len()];
        for e in 0..=left / w {
            prefix.push(e);
            rec(weights, left - e * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, bound, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All monomials of total degree `<= delta` in `x1..xn`.
pub fn simplex_support(n: usize, delta: u32) -> MonomialSupport {
    MonomialSupport::simplex_over(Vars::indexed("x", n), delta)
}

/// `(d+1)·δ^d`: Bézout-type bound on the total degree of the resultant of
/// `d+1` hyperplane pullbacks, with `δ` the parameterization degree.
pub fn resultant_degree_bound(model: &ParamModel) -> u64 {
    degree_bound(model.d() as u32, model.degree())
}

pub fn degree_bound(d: u32, delta: u32) -> u64 {
    (d as u64 + 1) * (delta as u64).pow(d)
}
