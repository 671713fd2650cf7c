//! Interpolation matrices: monomials of a support evaluated at samples of
//! the object. Their kernel holds the coefficients of every implicit
//! equation supported on `S`.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::model::{ParamModel, PointCloud};
use crate::poly::{power_table, MultiPoly};
use crate::scalar::{Mode, Rational, Scalar, DEFAULT_FLOAT_ZERO_TOL};
use crate::supports::MonomialSupport;

/// Parameter sampling controls.
#[derive(Clone, Debug)]
pub struct SamplingOptions {
    /// Exact draws use numerators in `[-bound, bound]` and denominators in
    /// `[1, bound]`.
    pub bound: i64,
    /// Rejections allowed per sample.
    pub retries: usize,
    /// Float draws with a denominator below this are rejected.
    pub float_den_tol: f64,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            bound: 1000,
            retries: 1000,
            float_den_tol: 1e-6,
        }
    }
}

pub fn sample_params<S: Scalar>(model: &ParamModel, count: usize, seed: u64) -> Result<Vec<Vec<S>>> {
    sample_params_with(model, count, seed, &SamplingOptions::default())
}

/// Deterministic parameter samples away from the poles of the model.
/// Exact mode draws small rationals, float mode uniform points of `[-1, 1]^d`.
pub fn sample_params_with<S: Scalar>(
    model: &ParamModel,
    count: usize,
    seed: u64,
    opts: &SamplingOptions,
) -> Result<Vec<Vec<S>>> {
    if opts.bound < 1 {
        return Err(Error::InvalidInput("sampling bound must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<S>> = Vec::with_capacity(count);
    for k in 0..count {
        let mut accepted = None;
        for _ in 0..=opts.retries {
            let tau: Vec<S> = (0..model.d()).map(|_| draw::<S>(&mut rng, opts.bound)).collect();
            if poles_near(model, &tau, opts.float_den_tol) || out.contains(&tau) {
                continue;
            }
            accepted = Some(tau);
            break;
        }
        match accepted {
            Some(t) => out.push(t),
            None => {
                return Err(Error::SamplingFailed(format!(
                    "no admissible parameter for sample {} after {} draws",
                    k + 1,
                    opts.retries + 1
                )))
            }
        }
    }
    Ok(out)
}

fn draw<S: Scalar>(rng: &mut ChaCha8Rng, bound: i64) -> S {
    match S::MODE {
        Mode::Exact => {
            let num = rng.random_range(-bound..=bound);
            let den = rng.random_range(1..=bound);
            S::from_rational(&Rational::new(num.into(), den.into()))
        }
        Mode::Float => S::from_rational(&crate::scalar::f64_to_rational(rng.random_range(-1.0..=1.0)).expect("finite draw")),
    }
}

fn poles_near<S: Scalar>(model: &ParamModel, tau: &[S], tol: f64) -> bool {
    let mut dens = model.denominators_at(tau);
    dens.push(model.eval_homogeneous(tau).swap_remove(0));
    dens.iter().any(|v| match S::MODE {
        Mode::Exact => v.is_zero(),
        Mode::Float => v.to_f64().abs() < tol || !v.is_finite_value(),
    })
}

/// Rows of the interpolation matrix: samples of a model or cloud points.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    Model(&'a ParamModel),
    Cloud(&'a PointCloud),
}

impl Source<'_> {
    fn ambient_dim(&self) -> usize {
        match self {
            Source::Model(m) => m.n(),
            Source::Cloud(c) => c.n(),
        }
    }
}

/// `μ × |S|` matrix with entry `(k, i)` the monomial `m_i` at sample `k`,
/// each row rescaled by a nonzero constant.
#[derive(Clone, Debug)]
pub struct InterpMatrix<S> {
    support: MonomialSupport,
    matrix: Matrix<S>,
    samples: Vec<Vec<S>>,
}

impl<S: Field> InterpMatrix<S> {
    pub fn support(&self) -> &MonomialSupport {
        &self.support
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// Parameter values for model sources, points for clouds.
    pub fn samples(&self) -> &[Vec<S>] {
        &self.samples
    }

    pub fn mode(&self) -> Mode {
        S::MODE
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.matrix.nrows(), self.matrix.ncols())
    }

    /// Assembles a matrix from explicit rows (used for hand-built `M′`).
    pub fn from_matrix(support: MonomialSupport, matrix: Matrix<S>) -> Result<Self> {
        if matrix.ncols() != support.len() {
            return Err(Error::InvalidInput(format!(
                "matrix has {} columns for a support of size {}",
                matrix.ncols(),
                support.len()
            )));
        }
        Ok(InterpMatrix {
            support,
            matrix,
            samples: Vec::new(),
        })
    }
}

/// Row count for kernel computation: `|S|` exact, `2|S|` float.
pub fn kernel_rows<S: Scalar>(support: &MonomialSupport) -> usize {
    match S::MODE {
        Mode::Exact => support.len(),
        Mode::Float => 2 * support.len(),
    }
}

/// Row count of the bordered form `M′`.
pub fn bordered_rows(support: &MonomialSupport) -> usize {
    support.len() - 1
}

pub fn build_matrix<S: Field>(source: Source<'_>, support: &MonomialSupport, mu: usize, seed: u64) -> Result<InterpMatrix<S>> {
    build_matrix_with(source, support, mu, seed, &SamplingOptions::default())
}

pub fn build_matrix_with<S: Field>(
    source: Source<'_>,
    support: &MonomialSupport,
    mu: usize,
    seed: u64,
    opts: &SamplingOptions,
) -> Result<InterpMatrix<S>> {
    if source.ambient_dim() != support.vars().len() {
        return Err(Error::VariableMismatch(format!(
            "support has {} variables, object lives in dimension {}",
            support.vars().len(),
            source.ambient_dim()
        )));
    }
    let (samples, rows) = match source {
        Source::Model(model) => {
            let samples = sample_params_with::<S>(model, mu, seed, opts)?;
            let rows = samples.iter().map(|t| model_row(model, support, t)).collect();
            (samples, rows)
        }
        Source::Cloud(cloud) => {
            if mu > cloud.len() {
                return Err(Error::InvalidInput(format!(
                    "{mu} rows requested from a cloud of {} points",
                    cloud.len()
                )));
            }
            let samples: Vec<Vec<S>> = cloud.points()[..mu]
                .iter()
                .map(|p| p.iter().map(S::from_rational).collect())
                .collect();
            let rows = samples.iter().map(|x| S::normalize_row(support.eval_row(x))).collect();
            (samples, rows)
        }
    };
    Ok(InterpMatrix {
        support: support.clone(),
        matrix: Matrix::from_rows(support.len(), rows),
        samples,
    })
}

/// `Π F_j^{a_j} · F_0^{D−|a|}` over the support: the monomial row at the
/// affine image scaled by `F_0^D`, so no division is needed.
fn model_row<S: Field>(model: &ParamModel, support: &MonomialSupport, t: &[S]) -> Vec<S> {
    let h: Vec<S> = model.eval_homogeneous(t);
    let top = support.max_degree();
    let powers = power_table(&h, top);
    let row = support
        .monomials()
        .iter()
        .map(|m| {
            let e = m.exponents();
            let mut v = powers[0][(top - m.degree()) as usize].clone();
            for (j, &a) in e.iter().enumerate() {
                if a > 0 {
                    v = v * powers[j + 1][a as usize].clone();
                }
            }
            v
        })
        .collect();
    S::normalize_row(row)
}

/// Kernel vectors together with the polynomials they define.
#[derive(Clone, Debug)]
pub struct Kernel<S: Scalar> {
    pub vectors: Vec<Vec<S>>,
    pub polys: Vec<MultiPoly<S>>,
    pub rank: usize,
    pub singular_values: Option<Vec<f64>>,
}

impl<S: Scalar> Kernel<S> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

pub fn kernel<S: Field>(m: &InterpMatrix<S>) -> Kernel<S> {
    kernel_with(m, DEFAULT_FLOAT_ZERO_TOL)
}

/// Exact: canonical echelon nullspace. Float: singular vectors below
/// `rel_tol·σ_max`.
pub fn kernel_with<S: Field>(m: &InterpMatrix<S>, rel_tol: f64) -> Kernel<S> {
    let k = S::kernel(&m.matrix, rel_tol);
    let polys = k.vectors.iter().map(|v| m.support.poly_from_coeffs(v)).collect();
    Kernel {
        vectors: k.vectors,
        polys,
        rank: k.rank,
        singular_values: k.singular_values,
    }
}

/// The implicit polynomial `det [M′; S(x)]`, up to a constant: the kernel
/// of a full-rank `M′`, scaled so the graded-lex leading coefficient is 1.
pub fn implicit_from_det<S: Field>(m: &InterpMatrix<S>) -> Result<MultiPoly<S>> {
    implicit_from_det_with(m, DEFAULT_FLOAT_ZERO_TOL)
}

pub fn implicit_from_det_with<S: Field>(m: &InterpMatrix<S>, rel_tol: f64) -> Result<MultiPoly<S>> {
    let (rows, cols) = m.shape();
    if cols < 1 || rows + 1 != cols {
        return Err(Error::InvalidInput(format!(
            "bordered matrix must be (|S|-1) x |S|, got {rows} x {cols}"
        )));
    }
    let k = kernel_with(m, rel_tol);
    if k.rank != rows || k.dim() != 1 {
        return Err(Error::RankDeficient {
            expected: rows,
            found: k.rank,
        });
    }
    let p = k.polys.into_iter().next().expect("one kernel vector");
    Ok(normalize_leading(&p, rel_tol))
}

/// Exact: leading coefficient 1. Float: the leading coefficient among
/// entries that are not negligible becomes 1.
fn normalize_leading<S: Scalar>(p: &MultiPoly<S>, rel_tol: f64) -> MultiPoly<S> {
    let scale = p.max_norm();
    let lead = p
        .terms()
        .rev()
        .map(|(_, c)| c)
        .find(|c| !c.is_negligible(scale, rel_tol))
        .cloned();
    match lead {
        Some(c) => p.scale(&(S::one() / c)),
        None => p.clone(),
    }
}

/// Outcome of a rank-based membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub member: bool,
    /// Float mode: relative singular value gained by appending `S(q)`.
    pub score: Option<f64>,
}

/// `q` lies on the object iff appending `S(q)` to the matrix keeps its rank.
pub fn membership<S: Field>(m: &InterpMatrix<S>, q: &[S]) -> Result<Membership> {
    membership_with(m, q, DEFAULT_FLOAT_ZERO_TOL)
}

pub fn membership_with<S: Field>(m: &InterpMatrix<S>, q: &[S], rel_tol: f64) -> Result<Membership> {
    if q.len() != m.support.vars().len() {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates, expected {}",
            q.len(),
            m.support.vars().len()
        )));
    }
    let row = m.support.eval_row(q);
    let (member, score) = S::row_in_span(&m.matrix, &row, rel_tol);
    Ok(Membership { member, score })
}

/// What "small" means for a kernel polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    MaxTotalDegree,
    FewestTerms,
}

#[derive(Clone, Debug)]
pub struct KernelSelection<S: Scalar> {
    /// Elements of the reduced basis attaining the smallest criterion value.
    pub minimal: Vec<MultiPoly<S>>,
    /// The whole reduced basis, ordered by leading monomial.
    pub reduced: Vec<MultiPoly<S>>,
    pub criterion: Criterion,
    pub value: u32,
}

/// Echelon reduction of a kernel basis eliminating the highest monomials
/// first, so the pivot of each row is its graded-lex leading monomial.
///
/// For total degree this is optimal: the rows with pivot degree `<= k` span
/// every kernel element of degree `<= k`. For term count it is a heuristic;
/// the true sparsest vector is not searched for.
pub fn select_small_kernel_polys<S: Field>(
    support: &MonomialSupport,
    vectors: &[Vec<S>],
    criterion: Criterion,
) -> KernelSelection<S> {
    select_small_kernel_polys_with(support, vectors, criterion, DEFAULT_FLOAT_ZERO_TOL)
}

pub fn select_small_kernel_polys_with<S: Field>(
    support: &MonomialSupport,
    vectors: &[Vec<S>],
    criterion: Criterion,
    rel_tol: f64,
) -> KernelSelection<S> {
    let n = support.len();
    let flipped: Vec<Vec<S>> = vectors.iter().map(|v| v.iter().rev().cloned().collect()).collect();
    let (_, rows) = S::echelon(&Matrix::from_rows(n, flipped), rel_tol);
    let mut reduced: Vec<MultiPoly<S>> = rows
        .into_iter()
        .map(|r| {
            let coeffs: Vec<S> = r.into_iter().rev().collect();
            support.poly_from_coeffs(&coeffs)
        })
        .collect();
    reduced.reverse();
    let measure = |p: &MultiPoly<S>| match criterion {
        Criterion::MaxTotalDegree => p.total_degree(),
        Criterion::FewestTerms => p.num_terms() as u32,
    };
    let value = reduced.iter().map(measure).min().unwrap_or(0);
    let minimal = reduced.iter().filter(|p| measure(p) == value).cloned().collect();
    KernelSelection {
        minimal,
        reduced,
        criterion,
        value,
    }
}

/// Controls for [`implicitize_model`].
#[derive(Clone, Debug)]
pub struct ImplicitizeOptions {
    /// Matrix rows; defaults to [`kernel_rows`].
    pub rows: Option<usize>,
    pub rel_tol: f64,
    pub criterion: Criterion,
    /// Fresh samples each kernel polynomial must vanish on.
    pub verify_samples: usize,
    /// Extra seeds tried when verification fails.
    pub max_reseeds: usize,
    /// Float verification threshold on the relative residual.
    pub float_residual_tol: f64,
    pub sampling: SamplingOptions,
}

impl Default for ImplicitizeOptions {
    fn default() -> Self {
        ImplicitizeOptions {
            rows: None,
            rel_tol: DEFAULT_FLOAT_ZERO_TOL,
            criterion: Criterion::MaxTotalDegree,
            verify_samples: 20,
            max_reseeds: 5,
            float_residual_tol: 1e-6,
            sampling: SamplingOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Implicitization<S: Scalar> {
    pub shape: (usize, usize),
    pub kernel: Kernel<S>,
    pub selection: KernelSelection<S>,
    /// Seed that produced the accepted matrix.
    pub seed: u64,
    pub reseeds: usize,
    /// Largest residual over the fresh samples: exactly 0 in exact mode
    /// when verification passed.
    pub max_residual: f64,
    pub verified: bool,
}

/// Samples the model, takes the kernel and checks every kernel polynomial
/// on fresh samples. A failing check means the samples were not generic;
/// the run is repeated with the next seed.
pub fn implicitize_model<S: Field>(
    model: &ParamModel,
    support: &MonomialSupport,
    seed: u64,
    opts: &ImplicitizeOptions,
) -> Result<Implicitization<S>> {
    let mu = opts.rows.unwrap_or_else(|| kernel_rows::<S>(support));
    for attempt in 0..=opts.max_reseeds {
        let s = seed.wrapping_add(attempt as u64);
        let all = sample_params_with::<S>(model, mu + opts.verify_samples, s, &opts.sampling)?;
        let rows = all[..mu].iter().map(|t| model_row(model, support, t)).collect();
        let m = InterpMatrix {
            support: support.clone(),
            matrix: Matrix::from_rows(support.len(), rows),
            samples: all[..mu].to_vec(),
        };
        let k = kernel_with(&m, opts.rel_tol);
        let points: Vec<Vec<S>> = all[mu..].iter().map(|t| affine_image(model, t)).collect();
        let max_residual = k
            .polys
            .iter()
            .flat_map(|p| points.iter().map(move |x| relative_residual(p, x)))
            .fold(0.0, f64::max);
        let verified = match S::MODE {
            Mode::Exact => max_residual == 0.0,
            Mode::Float => max_residual <= opts.float_residual_tol,
        };
        if verified || S::MODE == Mode::Float || attempt == opts.max_reseeds {
            if !verified && S::MODE == Mode::Exact {
                return Err(Error::ValidationFailed(format!(
                    "kernel polynomials fail to vanish on fresh samples after {} seeds",
                    opts.max_reseeds + 1
                )));
            }
            let selection = select_small_kernel_polys_with(support, &k.vectors, opts.criterion, opts.rel_tol);
            return Ok(Implicitization {
                shape: m.shape(),
                kernel: k,
                selection,
                seed: s,
                reseeds: attempt,
                max_residual,
                verified,
            });
        }
    }
    unreachable!("loop returns on its last attempt")
}

/// Kernel of a point-cloud matrix, without parametric verification.
pub fn implicitize_cloud<S: Field>(
    cloud: &PointCloud,
    support: &MonomialSupport,
    opts: &ImplicitizeOptions,
) -> Result<Implicitization<S>> {
    let mu = opts.rows.unwrap_or_else(|| kernel_rows::<S>(support)).min(cloud.len());
    let m = build_matrix::<S>(Source::Cloud(cloud), support, mu, 0)?;
    let k = kernel_with(&m, opts.rel_tol);
    let selection = select_small_kernel_polys_with(support, &k.vectors, opts.criterion, opts.rel_tol);
    Ok(Implicitization {
        shape: m.shape(),
        kernel: k,
        selection,
        seed: 0,
        reseeds: 0,
        max_residual: 0.0,
        verified: false,
    })
}

fn affine_image<S: Scalar>(model: &ParamModel, t: &[S]) -> Vec<S> {
    let h: Vec<S> = model.eval_homogeneous(t);
    h[1..].iter().map(|v| v.clone() / h[0].clone()).collect()
}

/// `|p(x)| / Σ|c_i m_i(x)|`; in exact mode 0 or 1.
fn relative_residual<S: Scalar>(p: &MultiPoly<S>, x: &[S]) -> f64 {
    let v = p.eval(x);
    match S::MODE {
        Mode::Exact => {
            if v.is_zero() {
                0.0
            } else {
                1.0
            }
        }
        Mode::Float => {
            let scale: f64 = p.terms().map(|(m, c)| (c.clone() * m.eval(x)).magnitude()).sum();
            if scale == 0.0 {
                0.0
            } else {
                v.magnitude() / scale
            }
        }
    }
}

/// Exact-mode convenience: whether `p` vanishes at `x`.
pub fn vanishes_at(p: &MultiPoly<Rational>, x: &[Rational]) -> bool {
    p.eval(x).is_zero()
}

/// Sign-normalized primitive form: integer coefficients with gcd 1 and a
/// positive leading coefficient.
pub fn content_normalized(p: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    let q = p.primitive_part();
    if q.leading_coeff().is_negative() {
        q.scale(&Rational::from_integer((-1).into()))
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rref;
    use crate::poly::{parse_poly, Vars};
    use crate::scalar::{int, rat};
    use crate::supports::{simplex_support, SupportOrigin};

    fn model(coords: &[(&str, &str)]) -> ParamModel {
        let d = if coords.iter().any(|(a, b)| a.contains("t2") || b.contains("t2")) { 2 } else { 1 };
        let params = if d == 1 { Vars::new(["t"]) } else { Vars::indexed("t", 2) };
        ParamModel::parse(&params, Vars::indexed("x", coords.len()), coords, Mode::Exact).unwrap()
    }

    fn twisted_cubic() -> ParamModel {
        model(&[("t", "1"), ("t^2", "1"), ("t^3", "1")])
    }

    #[test]
    fn samples_are_deterministic_and_distinct() {
        let m = twisted_cubic();
        let a: Vec<Vec<Rational>> = sample_params(&m, 3, 7).unwrap();
        let b: Vec<Vec<Rational>> = sample_params(&m, 3, 7).unwrap();
        assert_eq!(a, b);
        assert!(a[0] != a[1] && a[1] != a[2] && a[0] != a[2]);
        for t in &a {
            assert!(t[0].numer().abs() <= 1000.into() && *t[0].denom() <= 1000.into());
        }
    }

    #[test]
    fn poles_are_rejected() {
        let m = model(&[("1", "t"), ("t", "1")]);
        let opts = SamplingOptions {
            bound: 1,
            ..SamplingOptions::default()
        };
        let s: Vec<Vec<Rational>> = sample_params_with(&m, 2, 3, &opts).unwrap();
        assert!(s.iter().all(|t| !t[0].is_zero()));
        let tiny = SamplingOptions {
            bound: 1,
            retries: 50,
            ..SamplingOptions::default()
        };
        // Only -1 and 1 are admissible, so a third distinct sample cannot exist.
        assert!(matches!(
            sample_params_with::<Rational>(&m, 3, 3, &tiny),
            Err(Error::SamplingFailed(_))
        ));
        let circle = model(&[("1 - t^2", "1 + t^2"), ("2*t", "1 + t^2")]);
        let f: Vec<Vec<f64>> = sample_params(&circle.with_mode(Mode::Float), 50, 1).unwrap();
        assert!(f.iter().all(|t| t[0].abs() <= 1.0));
    }

    #[test]
    fn unit_circle_cloud_kernel() {
        let pts: Vec<Vec<Rational>> = [(3, 4), (4, 3), (5, 12), (12, 5), (8, 15), (15, 8), (7, 24), (24, 7), (20, 21), (21, 20)]
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let c = (a * a + b * b) as f64;
                let c = c.sqrt() as i64;
                let s = if i % 2 == 0 { 1 } else { -1 };
                vec![rat(s * a, c), rat(b, c)]
            })
            .collect();
        let cloud = PointCloud::new(Vars::indexed("x", 2), pts, Mode::Exact).unwrap();
        let sup = simplex_support(2, 2);
        let m: InterpMatrix<Rational> = build_matrix(Source::Cloud(&cloud), &sup, 6, 0).unwrap();
        assert_eq!(m.shape(), (6, 6));
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        let expected = parse_poly("x1^2 + x2^2 - 1", sup.vars()).unwrap();
        // Oracle: the nullspace of the raw evaluation matrix, without scaling.
        let raw = Matrix::from_rows(6, cloud.points()[..6].iter().map(|p| sup.eval_row(p)).collect());
        let oracle = rref(&raw).nullspace();
        assert_eq!(oracle.len(), 1);
        assert_eq!(content_normalized(&sup.poly_from_coeffs(&oracle[0])), expected);
        assert_eq!(content_normalized(&k.polys[0]), expected);
        assert!(build_matrix::<Rational>(Source::Cloud(&cloud), &sup, 11, 0).is_err());
    }

    #[test]
    fn constant_support_gives_unit_matrix() {
        let m = twisted_cubic();
        let sup = simplex_support(3, 0);
        let im: InterpMatrix<Rational> = build_matrix(Source::Model(&m), &sup, 1, 5).unwrap();
        assert_eq!(im.matrix().row(0), &[int(1)]);
    }

    #[test]
    fn identity_has_empty_kernel() {
        let sup = simplex_support(1, 2);
        let im = InterpMatrix::from_matrix(sup, Matrix::<Rational>::identity(3)).unwrap();
        assert_eq!(kernel(&im).dim(), 0);
    }

    fn support_of(vars: &Vars, polys: &[&str]) -> MonomialSupport {
        let ms = polys
            .iter()
            .map(|s| parse_poly(s, vars).unwrap().leading_term().unwrap().0.clone())
            .collect();
        MonomialSupport::new(vars.clone(), ms, SupportOrigin::User).unwrap()
    }

    /// `det [M′; S(x)]` by cofactor expansion along the symbolic row.
    fn cofactor_det(m: &InterpMatrix<Rational>) -> MultiPoly<Rational> {
        let sup = m.support();
        let n = sup.len();
        let mut p = MultiPoly::zero(sup.vars().clone());
        for i in 0..n {
            let minor = crate::linalg::det_exact(&m.matrix().without_column(i));
            let sign = if (n - 1 + i) % 2 == 0 { int(1) } else { int(-1) };
            p = &p + &MultiPoly::from_terms(sup.vars().clone(), [(sup.monomials()[i].clone(), sign * minor)]);
        }
        p
    }

    #[test]
    fn determinant_form_of_small_surfaces() {
        let x3 = Vars::indexed("x", 3);
        let crossed = model(&[("t1", "1"), ("t2", "1"), ("t1^2*t2^2", "1")]);
        let sup = support_of(&x3, &["1", "x1", "x2", "x3", "x1^2*x2^2"]);
        let mp: InterpMatrix<Rational> = build_matrix(Source::Model(&crossed), &sup, 4, 11).unwrap();
        let p = implicit_from_det(&mp).unwrap();
        assert_eq!(p, parse_poly("x1^2*x2^2 - x3", &x3).unwrap());
        assert_eq!(content_normalized(&cofactor_det(&mp)), p);

        let x2 = Vars::indexed("x", 2);
        let parabola = model(&[("t", "1"), ("t^2", "1")]);
        let sup = support_of(&x2, &["x2", "x1^2", "x1", "1"]);
        let mp: InterpMatrix<Rational> = build_matrix(Source::Model(&parabola), &sup, 3, 2).unwrap();
        assert_eq!(implicit_from_det(&mp).unwrap(), parse_poly("x1^2 - x2", &x2).unwrap());
        assert_eq!(content_normalized(&cofactor_det(&mp)), parse_poly("x1^2 - x2", &x2).unwrap());

        let line = model(&[("t", "1"), ("t", "1")]);
        let sup = support_of(&x2, &["x1", "x2"]);
        let mp: InterpMatrix<Rational> = build_matrix(Source::Model(&line), &sup, 1, 2).unwrap();
        assert_eq!(implicit_from_det(&mp).unwrap(), parse_poly("x1 - x2", &x2).unwrap());
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let sup = simplex_support(1, 2);
        let dup = Matrix::from_rows(3, vec![vec![int(1), int(2), int(4)], vec![int(1), int(2), int(4)]]);
        let im = InterpMatrix::from_matrix(sup, dup).unwrap();
        assert_eq!(
            implicit_from_det(&im),
            Err(Error::RankDeficient {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn twisted_cubic_membership() {
        let m = twisted_cubic();
        let sup = simplex_support(3, 3);
        let im: InterpMatrix<Rational> = build_matrix(Source::Model(&m), &sup, sup.len(), 4).unwrap();
        assert!(membership(&im, &[int(2), int(4), int(8)]).unwrap().member);
        assert!(!membership(&im, &[int(1), int(1), int(2)]).unwrap().member);
        let fresh: Vec<Vec<Rational>> = sample_params(&m, 1, 999).unwrap();
        let q = m.eval_exact(&fresh[0]).unwrap();
        assert!(membership(&im, &q).unwrap().member);

        let fm = m.with_mode(Mode::Float);
        let fim: InterpMatrix<f64> = build_matrix(Source::Model(&fm), &sup, 2 * sup.len(), 4).unwrap();
        let on = membership(&fim, &[0.5, 0.25, 0.125]).unwrap();
        let off = membership(&fim, &[1.0, 1.0, 2.0]).unwrap();
        assert!(on.member && !off.member);
        assert!(on.score.unwrap() < 1e-8 && off.score.unwrap() > 1e-6);
    }

    #[test]
    fn twisted_cubic_small_kernel() {
        let m = twisted_cubic();
        let sup = simplex_support(3, 6);
        let r: Implicitization<Rational> = implicitize_model(&m, &sup, 1, &ImplicitizeOptions::default()).unwrap();
        assert_eq!(r.shape, (84, 84));
        assert_eq!(r.kernel.dim(), 65);
        assert!(r.verified);
        assert_eq!(r.selection.value, 2);
        assert_eq!(r.selection.minimal.len(), 3);
        let degrees: std::collections::BTreeSet<u32> = r.selection.reduced.iter().map(MultiPoly::total_degree).collect();
        assert_eq!(degrees, (2..=6).collect());

        let single = vec![r.kernel.vectors[0].clone()];
        let s = select_small_kernel_polys(&sup, &single, Criterion::FewestTerms);
        assert_eq!(s.minimal.len(), 1);
        assert_eq!(content_normalized(&s.minimal[0]), content_normalized(&r.kernel.polys[0]));
    }

    #[test]
    fn float_kernel_matches_exact_dimension() {
        let m = twisted_cubic().with_mode(Mode::Float);
        let sup = simplex_support(3, 3);
        let r: Implicitization<f64> = implicitize_model(&m, &sup, 1, &ImplicitizeOptions::default()).unwrap();
        assert_eq!(r.shape, (40, 20));
        // Cubics through the twisted cubic: 20 - (3·3 + 1) = 10.
        assert_eq!(r.kernel.dim(), 10);
        assert!(r.verified);
        assert_eq!(r.selection.value, 2);
        assert_eq!(r.selection.minimal.len(), 3);
    }

    #[test]
    fn row_scaling_leaves_kernel_unchanged() {
        let m = twisted_cubic();
        let sup = simplex_support(3, 2);
        let im: InterpMatrix<Rational> = build_matrix(Source::Model(&m), &sup, sup.len(), 9).unwrap();
        let mut scaled = im.matrix().clone();
        for j in 0..sup.len() {
            let v = scaled.get(0, j) * rat(-7, 3);
            scaled.set(0, j, v);
        }
        let a = kernel(&im).vectors;
        let b = kernel(&InterpMatrix::from_matrix(sup.clone(), scaled).unwrap()).vectors;
        assert_eq!(a, b);
    }
}
