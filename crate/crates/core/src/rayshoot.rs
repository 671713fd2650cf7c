//! Ray shooting against an implicitly represented surface.
//!
//! The bordered matrix `M′` is factored once; the last row `w` of `L⁻¹Pᵀ`
//! from `(M′)ᵀ = PLU` satisfies `⟨w, S(x)⟩ = c · det M(x)`, so every ray
//! query reduces to one univariate polynomial `⟨w, S(r(ρ))⟩`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bivariate::{bivariate_solve_with, default_box_width};
use crate::error::{Error, Result};
use crate::interp::{bordered_rows, build_matrix, sample_params, InterpMatrix, Source};
use crate::interval::{eval_box, Interval};
use crate::linalg::{det_exact, log_det_float, Field, Matrix};
use crate::model::ParamModel;
use crate::poly::{MultiPoly, UniPoly, Vars};
use crate::roots::{isolate_real_roots, RealRoot, RootDomain};
use crate::scalar::{parse_rational, rational_to_f64, Mode, Rational, Scalar, DEFAULT_FLOAT_ZERO_TOL};
use crate::supports::MonomialSupport;

/// `x_i = a_i·ρ + b_i`, `ρ > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ray {
    coeffs: Vec<(Rational, Rational)>,
}

impl Ray {
    pub fn new(coeffs: Vec<(Rational, Rational)>) -> Result<Self> {
        if coeffs.iter().all(|(a, _)| a.is_zero()) {
            return Err(Error::InvalidInput("ray direction is zero".into()));
        }
        Ok(Ray { coeffs })
    }

    /// `"a1,b1;a2,b2;…"`; decimals only when `allow_decimal`.
    pub fn parse(text: &str, allow_decimal: bool) -> Result<Self> {
        let mut coeffs = Vec::new();
        let mut col = 1;
        for part in text.split(';') {
            let fields: Vec<&str> = part.split(',').collect();
            if fields.len() != 2 {
                return Err(Error::parse(col, format!("expected `a,b`, found `{}`", part.trim())));
            }
            let a = parse_rational(fields[0], allow_decimal).map_err(|e| Error::parse(col, e.to_string()))?;
            let b = parse_rational(fields[1], allow_decimal)
                .map_err(|e| Error::parse(col + fields[0].len() + 1, e.to_string()))?;
            coeffs.push((a, b));
            col += part.len() + 1;
        }
        Ray::new(coeffs)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[(Rational, Rational)] {
        &self.coeffs
    }

    pub fn at(&self, rho: &Rational) -> Vec<Rational> {
        self.coeffs.iter().map(|(a, b)| a * rho + b).collect()
    }

    /// Componentwise enclosure of `r(ρ)` for `ρ` in `rho`.
    pub fn at_interval(&self, rho: &Interval) -> Vec<Interval> {
        self.coeffs
            .iter()
            .map(|(a, b)| &rho.scale(a) + &Interval::point(b.clone()))
            .collect()
    }

    pub fn at_f64(&self, rho: f64) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|(a, b)| rational_to_f64(a) * rho + rational_to_f64(b))
            .collect()
    }

    pub fn polys<S: Scalar>(&self) -> Vec<UniPoly<S>> {
        self.coeffs
            .iter()
            .map(|(a, b)| UniPoly::linear(S::from_rational(a), S::from_rational(b)))
            .collect()
    }
}

/// Preprocessing controls.
#[derive(Clone, Debug)]
pub struct PreprocOptions<S> {
    pub seed: u64,
    /// Point of the surface used for validation; a row of `M′` otherwise.
    pub on_surface: Option<Vec<S>>,
    /// Float tolerance of the validation checks.
    pub validation_tol: f64,
    /// Pivot ratio above which a float factorization is reported as
    /// ill-conditioned.
    pub ill_conditioned: f64,
}

impl<S> Default for PreprocOptions<S> {
    fn default() -> Self {
        PreprocOptions {
            seed: 0,
            on_surface: None,
            validation_tol: 1e-6,
            ill_conditioned: 1e8,
        }
    }
}

/// The stored row `w` plus what was learned while computing it.
#[derive(Clone, Debug)]
pub struct RayPreproc<S: Scalar> {
    support: MonomialSupport,
    w: Vec<S>,
    diag_nonzero: bool,
    condition: f64,
    constant: Option<S>,
    warning: Option<String>,
}

impl<S: Field> RayPreproc<S> {
    pub fn support(&self) -> &MonomialSupport {
        &self.support
    }

    pub fn w(&self) -> &[S] {
        &self.w
    }

    pub fn diag_nonzero(&self) -> bool {
        self.diag_nonzero
    }

    /// `max|u_ii| / min|u_ii|` over the pivots of `U`.
    pub fn condition_estimate(&self) -> f64 {
        self.condition
    }

    /// `c` in `⟨w, S(x)⟩ = c · det M(x)`, exact mode only.
    pub fn constant(&self) -> Option<&S> {
        self.constant.as_ref()
    }

    /// Set when float validation is unreliable because of conditioning.
    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    /// `⟨w, S(x)⟩`.
    pub fn eval(&self, x: &[S]) -> S {
        dot(&self.w, &self.support.eval_row(x))
    }

    /// The implicit polynomial `⟨w, S(x)⟩`.
    pub fn implicit_poly(&self) -> MultiPoly<S> {
        self.support.poly_from_coeffs(&self.w)
    }
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn preprocess<S: Field>(mprime: &InterpMatrix<S>) -> Result<RayPreproc<S>> {
    preprocess_with(mprime, &PreprocOptions::default())
}

/// Factors `(M′)ᵀ` with partial pivoting, keeps the last row of `L⁻¹Pᵀ`
/// and checks it against `det M(x)` at one point of the surface and at
/// random points off it.
pub fn preprocess_with<S: Field>(mprime: &InterpMatrix<S>, opts: &PreprocOptions<S>) -> Result<RayPreproc<S>> {
    let (rows, cols) = mprime.shape();
    if rows + 1 != cols {
        return Err(Error::InvalidInput(format!(
            "bordered matrix must be (|S|-1) x |S|, got {rows} x {cols}"
        )));
    }
    let (w, pivots) = last_row_of_inverse(mprime.matrix())?;
    let (lo, hi) = pivots
        .iter()
        .map(Scalar::magnitude)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let condition = if pivots.is_empty() { 1.0 } else { hi / lo };
    let mut pre = RayPreproc {
        support: mprime.support().clone(),
        w,
        diag_nonzero: true,
        condition,
        constant: None,
        warning: None,
    };
    let ill = S::MODE == Mode::Float && condition > opts.ill_conditioned;
    if ill {
        pre.warning = Some(format!(
            "ill-conditioned factorization (pivot ratio {condition:.3e}); float results may be inaccurate"
        ));
    }
    match validate(&pre, mprime, opts) {
        Ok(c) => pre.constant = c,
        Err(e) if ill => {
            let note = pre.warning.take().unwrap_or_default();
            pre.warning = Some(format!("{note}; {e}"));
        }
        Err(e) => return Err(e),
    }
    Ok(pre)
}

/// Elimination on `[A | I]` with `A = (M′)ᵀ`; after `|S|-1` pivot steps the
/// last row of the right block is the last row of `L⁻¹Pᵀ`.
fn last_row_of_inverse<S: Field>(mprime: &Matrix<S>) -> Result<(Vec<S>, Vec<S>)> {
    let a = mprime.transpose();
    let n = a.nrows();
    let k = a.ncols();
    let mut rows: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    for c in 0..k {
        let mut best = c;
        for i in c + 1..n {
            if rows[i][c].better_pivot(&rows[best][c]) {
                best = i;
            }
        }
        if rows[best][c].is_zero() {
            return Err(Error::RankDeficient {
                expected: k,
                found: c,
            });
        }
        rows.swap(c, best);
        let p = rows[c][c].clone();
        let (head, tail) = rows.split_at_mut(c + 1);
        let prow = &head[c];
        for r in tail.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let f = r[c].clone() / p.clone();
            for j in c..r.len() {
                if !prow[j].is_zero() {
                    let v = r[j].clone() - f.clone() * prow[j].clone();
                    r[j] = v;
                }
            }
            r[c] = S::zero();
        }
        pivots.push(p);
    }
    let last = rows.pop().expect("nonempty matrix");
    let w = S::normalize_row(last[k..].to_vec());
    Ok((w, pivots))
}

fn validate<S: Field>(pre: &RayPreproc<S>, mprime: &InterpMatrix<S>, opts: &PreprocOptions<S>) -> Result<Option<S>> {
    let sup = &pre.support;
    let on_row = match &opts.on_surface {
        Some(x) => sup.eval_row(x),
        None => mprime.matrix().row(mprime.matrix().nrows().saturating_sub(1)).to_vec(),
    };
    if mprime.matrix().nrows() > 0 || opts.on_surface.is_some() {
        let v = dot(&pre.w, &on_row);
        let bad = match S::MODE {
            Mode::Exact => !v.is_zero(),
            Mode::Float => {
                let s: f64 = pre.w.iter().zip(&on_row).map(|(a, b)| (a.clone() * b.clone()).magnitude()).sum();
                v.magnitude() > opts.validation_tol * s
            }
        };
        if bad {
            return Err(Error::ValidationFailed(
                "stored row does not vanish at a point of the surface".into(),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = sup.vars().len();
    let mut ratios: Vec<(S, f64, f64)> = Vec::new();
    for _ in 0..100 {
        if ratios.len() == 2 {
            break;
        }
        let x: Vec<S> = (0..n).map(|_| S::from_i64(rng.random_range(-10..=10))).collect();
        let row = sup.eval_row(&x);
        let lhs = dot(&pre.w, &row);
        if lhs.is_zero() {
            continue;
        }
        let mut m = mprime.matrix().clone();
        m.push_row(row);
        match S::MODE {
            Mode::Exact => {
                let det = exact_det(&m);
                if det.is_zero() {
                    continue;
                }
                ratios.push((lhs / det, 0.0, 0.0));
            }
            Mode::Float => {
                let mf = m.map(Scalar::to_f64);
                let (sign, logdet) = log_det_float(&mf);
                if sign == 0.0 || !logdet.is_finite() {
                    continue;
                }
                let l = lhs.to_f64();
                ratios.push((S::zero(), l.signum() * sign, l.abs().ln() - logdet));
            }
        }
    }
    if ratios.len() < 2 {
        return Err(Error::ValidationFailed(
            "could not find points off the surface for validation".into(),
        ));
    }
    match S::MODE {
        Mode::Exact => {
            if ratios[0].0 != ratios[1].0 {
                return Err(Error::ValidationFailed(
                    "stored row is not proportional to the bordered determinant".into(),
                ));
            }
            Ok(Some(ratios[0].0.clone()))
        }
        Mode::Float => {
            let (s0, l0) = (ratios[0].1, ratios[0].2);
            let (s1, l1) = (ratios[1].1, ratios[1].2);
            if s0 != s1 || (l0 - l1).abs() > opts.validation_tol.sqrt() {
                return Err(Error::ValidationFailed(format!(
                    "proportionality check failed (log-ratio difference {:.3e})",
                    (l0 - l1).abs()
                )));
            }
            Ok(None)
        }
    }
}

fn exact_det<S: Field>(m: &Matrix<S>) -> S {
    let rows = m
        .rows()
        .map(|r| r.iter().map(|v| v.as_rational().expect("exact entry").clone()).collect())
        .collect();
    S::from_rational(&det_exact(&Matrix::from_rows(m.ncols(), rows)))
}

/// Builds `M′` from `|S|-1` model samples and validates `w` at a further,
/// unused sample.
pub fn preprocess_model<S: Field>(model: &ParamModel, support: &MonomialSupport, seed: u64) -> Result<RayPreproc<S>> {
    let mu = bordered_rows(support);
    let mprime: InterpMatrix<S> = build_matrix(Source::Model(model), support, mu, seed)?;
    let all: Vec<Vec<S>> = sample_params(model, mu + 1, seed)?;
    let t = &all[mu];
    let h: Vec<S> = model.eval_homogeneous(t);
    let x: Vec<S> = h[1..].iter().map(|v| v.clone() / h[0].clone()).collect();
    let opts = PreprocOptions {
        seed: seed.wrapping_add(1),
        on_surface: Some(x),
        ..PreprocOptions::default()
    };
    preprocess_with(&mprime, &opts)
}

/// `p(ρ) = ⟨w, S(r(ρ))⟩`, of degree at most the support degree.
pub fn ray_poly<S: Field>(pre: &RayPreproc<S>, ray: &Ray) -> Result<UniPoly<S>> {
    let sup = &pre.support;
    if ray.dim() != sup.vars().len() {
        return Err(Error::InvalidInput(format!(
            "ray has {} coordinates, surface lives in dimension {}",
            ray.dim(),
            sup.vars().len()
        )));
    }
    let lin = ray.polys::<S>();
    let top = sup
        .monomials()
        .iter()
        .flat_map(|m| m.exponents().iter().copied())
        .max()
        .unwrap_or(0);
    let powers: Vec<Vec<UniPoly<S>>> = lin
        .iter()
        .map(|r| {
            let mut v = vec![UniPoly::constant(S::one())];
            for e in 1..=top as usize {
                let next = &v[e - 1] * r;
                v.push(next);
            }
            v
        })
        .collect();
    let mut p = UniPoly::zero();
    let mut scale = 0.0;
    for (m, w) in sup.monomials().iter().zip(&pre.w) {
        if w.is_zero() {
            continue;
        }
        let mut term = UniPoly::constant(w.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = &term * &powers[i][e as usize];
            }
        }
        scale += term.max_norm();
        p = &p + &term;
    }
    let vanishes = match S::MODE {
        Mode::Exact => p.is_zero(),
        Mode::Float => p.max_norm() <= DEFAULT_FLOAT_ZERO_TOL * scale,
    };
    if vanishes {
        return Err(Error::RayOnSurface);
    }
    Ok(p)
}

/// A parameterized surface restricted to a closed parameter box.
#[derive(Clone, Debug)]
pub struct SurfacePatch {
    model: ParamModel,
    bounds: Vec<(Rational, Rational)>,
}

impl SurfacePatch {
    pub fn new(model: ParamModel, bounds: Vec<(Rational, Rational)>) -> Result<Self> {
        if bounds.len() != model.d() {
            return Err(Error::InvalidInput(format!(
                "patch has {} intervals for {} parameters",
                bounds.len(),
                model.d()
            )));
        }
        if let Some((lo, hi)) = bounds.iter().find(|(lo, hi)| lo > hi) {
            return Err(Error::InvalidInput(format!("empty patch interval [{lo}, {hi}]")));
        }
        Ok(SurfacePatch { model, bounds })
    }

    /// The whole parameter space, approximated by a huge box.
    pub fn unbounded(model: ParamModel) -> Self {
        let big = Rational::from_integer(BigInt::one() << 64);
        let bounds = vec![(-big.clone(), big); model.d()];
        SurfacePatch { model, bounds }
    }

    /// `"t1:lo,hi;t2:lo,hi"`, intervals given in parameter order.
    pub fn parse(model: ParamModel, text: &str) -> Result<Self> {
        let mut bounds = vec![None; model.d()];
        let mut col = 1;
        for part in text.split(';') {
            let (name, range) = part
                .split_once(':')
                .ok_or_else(|| Error::parse(col, format!("expected `name:lo,hi`, found `{}`", part.trim())))?;
            let idx = model
                .params()
                .index_of(name.trim())
                .ok_or_else(|| Error::parse(col, format!("unknown parameter `{}`", name.trim())))?;
            let (lo, hi) = range
                .split_once(',')
                .ok_or_else(|| Error::parse(col + name.len() + 1, "expected `lo,hi`"))?;
            let lo = parse_rational(lo, true).map_err(|e| Error::parse(col + name.len() + 1, e.to_string()))?;
            let hi = parse_rational(hi, true).map_err(|e| Error::parse(col + name.len() + 1, e.to_string()))?;
            bounds[idx] = Some((lo, hi));
            col += part.len() + 1;
        }
        let bounds = bounds
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| Error::InvalidInput(format!("no interval for parameter {}", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        SurfacePatch::new(model, bounds)
    }

    pub fn model(&self) -> &ParamModel {
        &self.model
    }

    pub fn bounds(&self) -> &[(Rational, Rational)] {
        &self.bounds
    }

    /// Closed-box test; boundary points are on the patch.
    pub fn contains(&self, t: &[Rational]) -> bool {
        t.iter().zip(&self.bounds).all(|(v, (lo, hi))| lo <= v && v <= hi)
    }
}

/// One intersection of a ray with the surface.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HitRecord {
    /// Isolating interval of `ρ` (a point for rational or float roots).
    pub rho_lo: String,
    pub rho_hi: String,
    pub rho: f64,
    pub point: Vec<f64>,
    pub preimage: Option<Vec<f64>>,
    pub on_patch: bool,
    pub multiplicity: u32,
    #[serde(skip)]
    pub rho_interval: Interval,
    #[serde(skip)]
    pub preimage_box: Option<Vec<Interval>>,
}

/// Inversion controls.
#[derive(Clone, Debug)]
pub struct ShootOptions {
    /// Relative width to which irrational roots are refined before the
    /// parameter system is solved, as a power of two.
    pub rho_bits: u32,
    /// Float residual threshold, scaled by `1 + ‖r(ρ)‖`.
    pub residual_tol: f64,
}

impl Default for ShootOptions {
    fn default() -> Self {
        ShootOptions {
            rho_bits: 200,
            residual_tol: 1e-6,
        }
    }
}

pub fn shoot<S: Field>(pre: &RayPreproc<S>, patch: &SurfacePatch, ray: &Ray) -> Result<Vec<HitRecord>> {
    shoot_with(pre, patch, ray, &ShootOptions::default())
}

/// Positive roots of the ray polynomial, each inverted to parameter space
/// and tested against the patch.
pub fn shoot_with<S: Field>(pre: &RayPreproc<S>, patch: &SurfacePatch, ray: &Ray, opts: &ShootOptions) -> Result<Vec<HitRecord>> {
    let model = patch.model();
    if model.n() != ray.dim() || model.d() + 1 != model.n() {
        return Err(Error::InvalidInput(format!(
            "patch must be a hypersurface of dimension {} matching the ray",
            ray.dim()
        )));
    }
    let p = ray_poly(pre, ray)?;
    let roots = S::real_roots(&p, &RootDomain::Positive)?;
    let mut hits = Vec::with_capacity(roots.len());
    for mut root in roots {
        let scale = root.interval.mid().abs().max(Rational::one());
        root.refine_to(&(scale * Rational::new(BigInt::one(), BigInt::one() << opts.rho_bits)));
        let preimage = invert(model, ray, &root, S::MODE, opts)?;
        let mid: Vec<Rational> = preimage.iter().map(Interval::mid).collect();
        let rho = root.approx();
        hits.push(HitRecord {
            rho_lo: root.interval.lo.to_string(),
            rho_hi: root.interval.hi.to_string(),
            rho,
            point: ray.at_interval(&root.interval).iter().map(Interval::mid_f64).collect(),
            preimage: Some(preimage.iter().map(Interval::mid_f64).collect()),
            on_patch: patch.contains(&mid),
            multiplicity: root.multiplicity,
            rho_interval: root.interval.clone(),
            preimage_box: Some(preimage),
        });
    }
    Ok(hits)
}

/// Solves `num_i(t) - r_i(ρ)·den_i(t) = 0` on `n-1` of the equations and
/// keeps the solution satisfying the remaining one.
fn invert(model: &ParamModel, ray: &Ray, root: &RealRoot, mode: Mode, opts: &ShootOptions) -> Result<Vec<Interval>> {
    let n = model.n();
    let rho = root.interval.mid();
    let r = ray.at(&rho);
    let eqs: Vec<MultiPoly> = model
        .coords()
        .iter()
        .zip(&r)
        .map(|((num, den), ri)| num - &den.scale(ri))
        .collect();
    let fail = |reason: &str| Error::InversionFailed {
        rho: rational_to_f64(&rho),
        reason: reason.into(),
    };
    let pairs: Vec<(Vec<usize>, usize)> = match n {
        2 => vec![(vec![0], 1), (vec![1], 0)],
        3 => vec![(vec![0, 1], 2), (vec![0, 2], 1), (vec![1, 2], 0)],
        _ => return Err(fail("inversion is implemented for curves in the plane and surfaces in space")),
    };
    let mut degenerate = true;
    for (solve, check) in pairs {
        let candidates = match solve_square(&solve.iter().map(|&i| eqs[i].clone()).collect::<Vec<_>>()) {
            Ok(c) => c,
            Err(Error::NonZeroDimensional) | Err(Error::ZeroPolynomial) => continue,
            Err(e) => return Err(e),
        };
        degenerate = false;
        let chosen = match mode {
            Mode::Exact => exact_choice(model, ray, root, &candidates, check),
            Mode::Float => float_choice(model, ray, root, &candidates, check, opts),
        };
        if let Some(c) = chosen {
            return Ok(c);
        }
    }
    Err(fail(if degenerate {
        "every pair of equations is degenerate"
    } else {
        "no parameter value reproduces the intersection point"
    }))
}

fn solve_square(eqs: &[MultiPoly]) -> Result<Vec<Vec<Interval>>> {
    match eqs.len() {
        1 => {
            let u = UniPoly::from_multi(&eqs[0], 0)?;
            if u.is_zero() {
                return Err(Error::NonZeroDimensional);
            }
            if u.degree() == Some(0) {
                return Ok(Vec::new());
            }
            Ok(isolate_real_roots(&u, &RootDomain::All)?
                .into_iter()
                .map(|mut r| {
                    let s = r.interval.mid().abs().max(Rational::one());
                    r.refine_to(&(s * default_box_width()));
                    vec![r.interval]
                })
                .collect())
        }
        _ => Ok(bivariate_solve_with(&eqs[0], &eqs[1], &default_box_width())?
            .into_iter()
            .map(|s| vec![s.t1, s.t2])
            .collect()),
    }
}

/// The check equation `num_c(t) - r_c(ρ)·den_c(t)` over `(t, ρ)`.
fn check_poly(model: &ParamModel, ray: &Ray, c: usize) -> MultiPoly {
    let params = model.params();
    let vars = params.concat(&Vars::new(["rho"])).expect("rho is a fresh name");
    let (num, den) = &model.coords()[c];
    let num = num.embed(&vars).expect("parameters embed");
    let den = den.embed(&vars).expect("parameters embed");
    let (a, b) = &ray.coeffs()[c];
    let rho = MultiPoly::var(vars.clone(), params.len());
    let rc = &rho.scale(a) + &MultiPoly::constant(vars, b.clone());
    &num - &(&den * &rc)
}

fn exact_choice(model: &ParamModel, ray: &Ray, root: &RealRoot, cands: &[Vec<Interval>], c: usize) -> Option<Vec<Interval>> {
    let g = check_poly(model, ray, c);
    cands
        .iter()
        .find(|bx| {
            let mut full = (*bx).clone();
            full.push(root.interval.clone());
            if full.iter().all(|iv| iv.lo == iv.hi) {
                let pt: Vec<Rational> = full.iter().map(|iv| iv.lo.clone()).collect();
                g.eval(&pt).is_zero()
            } else {
                eval_box(&g, &full).contains_zero()
            }
        })
        .cloned()
}

fn float_choice(
    model: &ParamModel,
    ray: &Ray,
    root: &RealRoot,
    cands: &[Vec<Interval>],
    c: usize,
    opts: &ShootOptions,
) -> Option<Vec<Interval>> {
    let rho = root.approx();
    let r = ray.at_f64(rho);
    let norm = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    let (num, den) = &model.coords()[c];
    let (num, den) = (num.to_float(), den.to_float());
    cands
        .iter()
        .map(|bx| {
            let t: Vec<f64> = bx.iter().map(Interval::mid_f64).collect();
            ((num.eval(&t) / den.eval(&t) - r[c]).abs(), bx)
        })
        .filter(|(res, _)| res.is_finite() && *res <= opts.residual_tol * (1.0 + norm))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, bx)| bx.clone())
}
