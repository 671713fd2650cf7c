//! Real-root isolation.
//!
//! Exact mode: square-free decomposition, then Descartes-rule bisection on
//! each factor and sign-change refinement. Float mode: eigenvalues of the
//! companion matrix, filtered by residual and clustered for multiplicity.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::poly::{square_free_decomposition, UniPoly};
use crate::scalar::{f64_to_rational, Rational};

/// Where to look for roots. `Positive` is the open half-line `x > 0`;
/// `Closed` includes both endpoints.
#[derive(Clone, Debug, PartialEq)]
pub enum RootDomain {
    All,
    Positive,
    Closed(Rational, Rational),
}

impl RootDomain {
    fn admits(&self, x: &Rational) -> bool {
        match self {
            RootDomain::All => true,
            RootDomain::Positive => x.is_positive(),
            RootDomain::Closed(a, b) => a <= x && x <= b,
        }
    }

    fn admits_f64(&self, x: f64) -> bool {
        match f64_to_rational(x) {
            Ok(r) => self.admits(&r),
            Err(_) => false,
        }
    }
}

/// An isolated real root: `interval` contains exactly one distinct root of
/// the input. Exact-mode roots keep their square-free factor so they can be
/// refined further.
#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    pub interval: Interval,
    pub multiplicity: u32,
    factor: Option<UniPoly>,
}

impl RealRoot {
    pub fn approx(&self) -> f64 {
        self.interval.mid_f64()
    }

    /// Whether the root is known exactly (a degenerate interval).
    pub fn is_exact(&self) -> bool {
        self.interval.lo == self.interval.hi
    }

    /// The exact value for rational roots.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.interval.lo)
    }

    /// Bisects until the width is at most `width`. Float roots cannot be
    /// refined and are returned unchanged.
    pub fn refine_to(&mut self, width: &Rational) {
        let Some(f) = &self.factor else { return };
        while !self.is_exact() && &self.interval.width() > width {
            self.interval = bisect_step(f, &self.interval);
        }
    }

    /// One bisection step (no-op for exact or float roots).
    pub fn refine_step(&mut self) {
        self.bisect();
    }

    fn bisect(&mut self) {
        if let Some(f) = &self.factor {
            if !self.is_exact() {
                self.interval = bisect_step(f, &self.interval);
            }
        }
    }
}

/// Default relative target width, `2^-53`.
pub fn default_epsilon() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 53)
}

/// Isolates the distinct real roots of `p` in `domain`, refined to relative
/// width `2^-53`, sorted ascending.
pub fn isolate_real_roots(p: &UniPoly, domain: &RootDomain) -> Result<Vec<RealRoot>> {
    isolate_real_roots_eps(p, domain, &default_epsilon())
}

pub fn isolate_real_roots_eps(p: &UniPoly, domain: &RootDomain, eps: &Rational) -> Result<Vec<RealRoot>> {
    let mut roots = Vec::new();
    for (factor, mult) in square_free_decomposition(p)? {
        let (intervals, deflated) = isolate_squarefree(&factor.primitive(), domain);
        for iv in intervals {
            roots.push(RealRoot {
                interval: iv,
                multiplicity: mult,
                factor: Some(deflated.clone()),
            });
        }
    }
    for r in &mut roots {
        loop {
            let mid = r.interval.mid().abs();
            let target = eps * if mid > Rational::one() { mid } else { Rational::one() };
            if r.is_exact() || r.interval.width() <= target {
                break;
            }
            r.bisect();
        }
    }
    separate(&mut roots);
    roots.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    Ok(roots)
}

/// Refines pairs of overlapping intervals from distinct factors until all
/// intervals are pairwise disjoint.
fn separate(roots: &mut [RealRoot]) {
    loop {
        let mut clash = None;
        'outer: for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if roots[i].interval.overlaps(&roots[j].interval) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { return };
        roots[i].bisect();
        roots[j].bisect();
    }
}

fn sign(p: &UniPoly, x: &Rational) -> i8 {
    let v = p.eval(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// One bisection step on an open interval holding exactly one root. An
/// endpoint may itself be a root (a split point found earlier), in which
/// case the side is chosen by a Descartes count instead of signs.
fn bisect_step(f: &UniPoly, iv: &Interval) -> Interval {
    let m = iv.mid();
    let sm = sign(f, &m);
    if sm == 0 {
        return Interval::point(m);
    }
    let (sl, sh) = (sign(f, &iv.lo), sign(f, &iv.hi));
    let left = if sl != 0 {
        sm != sl
    } else if sh != 0 {
        sm == sh
    } else {
        descartes_bound(f, &iv.lo, &m) == 1
    };
    if left {
        Interval::new(iv.lo.clone(), m)
    } else {
        Interval::new(m, iv.hi.clone())
    }
}

/// Power of two strictly above every root modulus (Cauchy bound).
fn root_bound(p: &UniPoly) -> Rational {
    let lc = p.leading_coeff().abs();
    let mut max = Rational::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let r = c.abs() / &lc;
        if r > max {
            max = r;
        }
    }
    let bound = max + Rational::one();
    let mut b = Rational::one();
    while b <= bound {
        b *= Rational::from_integer(2.into());
    }
    b
}

/// Isolating intervals for a square-free polynomial, plus the polynomial
/// with roots on the domain boundary divided out; endpoints of returned
/// open intervals are never roots of the latter.
fn isolate_squarefree(f: &UniPoly, domain: &RootDomain) -> (Vec<Interval>, UniPoly) {
    let mut f = f.clone();
    let mut out = Vec::new();
    let b = root_bound(&f);
    let (lo, hi) = match domain {
        RootDomain::All => (-b.clone(), b),
        RootDomain::Positive => {
            if f.eval(&Rational::zero()).is_zero() {
                f = f.div_rem(&UniPoly::linear(Rational::one(), Rational::zero())).expect("x").0;
            }
            (Rational::zero(), b)
        }
        RootDomain::Closed(a, c) => {
            for e in [a, c] {
                if f.eval(e).is_zero() && f.degree().unwrap_or(0) > 0 {
                    out.push(Interval::point(e.clone()));
                    f = f.div_rem(&UniPoly::linear(Rational::one(), -e.clone())).expect("x - e").0;
                }
            }
            (a.clone().max(-b.clone()), c.clone().min(b))
        }
    };
    if f.degree().unwrap_or(0) == 0 || lo >= hi {
        return (out, f);
    }
    let mut stack = vec![(lo, hi)];
    while let Some((a, c)) = stack.pop() {
        match descartes_bound(&f, &a, &c) {
            0 => {}
            1 => out.push(Interval::new(a, c)),
            _ => {
                let m = (&a + &c) / Rational::from_integer(2.into());
                if f.eval(&m).is_zero() {
                    out.push(Interval::point(m.clone()));
                }
                stack.push((m.clone(), c));
                stack.push((a, m));
            }
        }
    }
    (out, f)
}

/// Sign variations of `(1+x)^n f((a + c x)/(1 + x))`, an upper bound on the
/// number of roots in the open interval `(a, c)` with the same parity.
fn descartes_bound(f: &UniPoly, a: &Rational, c: &Rational) -> usize {
    let w = c - a;
    let lin = UniPoly::linear(w, a.clone());
    let mut g = UniPoly::zero();
    for k in f.coeffs().iter().rev() {
        g = &(&g * &lin) + &UniPoly::constant(k.clone());
    }
    let mut co: Vec<Rational> = g.into_coeffs();
    co.reverse();
    let n = co.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let v = &co[j] + &co[j + 1];
            co[j] = v;
        }
    }
    let mut changes = 0;
    let mut last = 0i8;
    for v in &co {
        let s = if v.is_zero() {
            continue;
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Tolerances for the float root finder.
#[derive(Clone, Copy, Debug)]
pub struct FloatRootOptions {
    /// Leading coefficients below this fraction of the max-norm are dropped.
    pub lead_tol: f64,
    /// Eigenvalues with `|Im| <= imag_tol·(1+|Re|)` count as real.
    pub imag_tol: f64,
    /// Real candidates within `cluster_tol·(1+|x|)` merge into one root.
    pub cluster_tol: f64,
    /// Accept a candidate when `|p(x)| <= residual_tol · Σ|a_k||x|^k`.
    pub residual_tol: f64,
}

impl Default for FloatRootOptions {
    fn default() -> Self {
        FloatRootOptions {
            lead_tol: 1e-13,
            imag_tol: 1e-5,
            cluster_tol: 1e-5,
            residual_tol: 1e-6,
        }
    }
}

pub fn float_real_roots(p: &UniPoly<f64>, domain: &RootDomain) -> Result<Vec<RealRoot>> {
    float_real_roots_with(p, domain, FloatRootOptions::default())
}

pub fn float_real_roots_with(
    p: &UniPoly<f64>,
    domain: &RootDomain,
    opts: FloatRootOptions,
) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::DegenerateInput("non-finite polynomial coefficient".into()));
    }
    let mut coeffs: Vec<f64> = p.trim_relative(opts.lead_tol).into_coeffs();
    let zeros_at_origin = coeffs.iter().take_while(|c| **c == 0.0).count();
    coeffs.drain(..zeros_at_origin);
    let mut candidates: Vec<f64> = vec![0.0; zeros_at_origin];
    let n = coeffs.len().saturating_sub(1);
    if n > 0 {
        let lead = coeffs[n];
        let mut comp = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            comp[(i, n - 1)] = -coeffs[i] / lead;
        }
        let up = UniPoly::new(coeffs.clone());
        for z in comp.complex_eigenvalues().iter() {
            if z.im.abs() > opts.imag_tol * (1.0 + z.re.abs()) {
                continue;
            }
            let x = polish(&up, z.re);
            let scale: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a.abs() * x.abs().powi(k as i32))
                .sum();
            if up.eval(&x).abs() <= opts.residual_tol * scale {
                candidates.push(x);
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    let mut roots = Vec::new();
    let mut i = 0;
    while i < candidates.len() {
        let mut j = i + 1;
        while j < candidates.len()
            && candidates[j] - candidates[j - 1] <= opts.cluster_tol * (1.0 + candidates[j].abs())
        {
            j += 1;
        }
        let group = &candidates[i..j];
        let center = group.iter().sum::<f64>() / group.len() as f64;
        if domain.admits_f64(center) {
            let pad = 1e-12 * (1.0 + center.abs());
            let lo = group[0].min(center - pad);
            let hi = group[group.len() - 1].max(center + pad);
            roots.push(RealRoot {
                interval: Interval::new(f64_to_rational(lo)?, f64_to_rational(hi)?),
                multiplicity: group.len() as u32,
                factor: None,
            });
        }
        i = j;
    }
    Ok(roots)
}

/// A few guarded Newton steps; keeps the input when they do not help.
fn polish(p: &UniPoly<f64>, x0: f64) -> f64 {
    let dp = p.derivative();
    let mut x = x0;
    let mut fx = p.eval(&x).abs();
    for _ in 0..4 {
        let d = dp.eval(&x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let y = x - p.eval(&x) / d;
        let fy = p.eval(&y).abs();
        if fy.is_nan() || fy >= fx {
            break;
        }
        x = y;
        fx = fy;
    }
    x
}
