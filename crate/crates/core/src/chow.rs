//! Randomized implicitization of varieties of codimension at least two.
//!
//! For a curve in space, two planes through a random line `L = (ξ, G)`
//! and random points `P_0`, `P_1` are pulled back to the parameter line.
//! Their resultant vanishes exactly when `L` meets the curve, and after
//! removing the extraneous factor `E_L^δ` it is the cone over the curve
//! with vertex `G`. Three cones with non-collinear vertices cut out the
//! curve.

use num_traits::{One, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interp::{implicitize_model, Criterion, ImplicitizeOptions};
use crate::linalg::{rank_exact, rref, Matrix};
use crate::model::ParamModel;
use crate::poly::{MultiPoly, UniPoly};
use crate::resultant::{resultant_in, ring_det};
use crate::roots::{isolate_real_roots, RootDomain};
use crate::scalar::{int, Rational};
use crate::supports::{resultant_degree_bound, simplex_support};

/// A vertex of the construction: an affine point, or a direction (a point
/// at infinity, which turns cones into cylinders).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Apex {
    Point(#[serde(serialize_with = "ser_point")] Vec<Rational>),
    Direction(#[serde(serialize_with = "ser_point")] Vec<Rational>),
}

fn ser_point<S: serde::Serializer>(p: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(ToString::to_string))
}

impl Apex {
    /// `(1, g)` or `(0, v)`.
    pub fn homogeneous(&self) -> Vec<Rational> {
        match self {
            Apex::Point(g) => std::iter::once(Rational::one()).chain(g.iter().cloned()).collect(),
            Apex::Direction(v) => std::iter::once(Rational::zero()).chain(v.iter().cloned()).collect(),
        }
    }

    /// The point `G + λ(q - G)` on the ruling through `q`, or `q + λv`.
    pub fn ruling_point(&self, q: &[Rational], lambda: &Rational) -> Vec<Rational> {
        match self {
            Apex::Point(g) => g.iter().zip(q).map(|(g, q)| g + lambda * (q - g)).collect(),
            Apex::Direction(v) => q.iter().zip(v).map(|(q, v)| q + lambda * v).collect(),
        }
    }
}

fn homogenize(p: &[Rational]) -> Vec<Rational> {
    std::iter::once(Rational::one()).chain(p.iter().cloned()).collect()
}

/// The random data of one run: `n-d-1` apexes and `d+1` sets of `d` points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointConfig {
    pub apexes: Vec<Apex>,
    #[serde(serialize_with = "ser_sets")]
    pub point_sets: Vec<Vec<Vec<Rational>>>,
    pub seed: u64,
    pub bound: i64,
}

fn ser_sets<S: serde::Serializer>(sets: &[Vec<Vec<Rational>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(sets.iter().map(|set| {
        set.iter()
            .map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    }))
}

/// Controls for [`make_config_with`].
#[derive(Clone, Debug)]
pub struct ConfigOptions {
    pub bound: i64,
    pub retries: usize,
    pub apex_at_infinity: bool,
    /// Equations of the variety, used to reject apexes on it when the
    /// parameterization alone cannot decide.
    pub known_equations: Vec<MultiPoly>,
    /// Hyperplane the apexes must avoid (planar curves).
    pub avoid_plane: Option<MultiPoly>,
}

impl Default for ConfigOptions {
    fn default() -> Self {
        ConfigOptions {
            bound: 10,
            retries: 1000,
            apex_at_infinity: false,
            known_equations: Vec::new(),
            avoid_plane: None,
        }
    }
}

pub fn make_config(model: &ParamModel, seed: u64, bound: i64) -> Result<PointConfig> {
    make_config_with(
        model,
        seed,
        &ConfigOptions {
            bound,
            ..ConfigOptions::default()
        },
    )
}

/// Draws integer points in `[-B, B]^n` until the apexes avoid the variety
/// and every `G ∪ P_i`, as well as `G ∪ P_0 ∪ … ∪ P_d`, is affinely
/// independent.
pub fn make_config_with(model: &ParamModel, seed: u64, opts: &ConfigOptions) -> Result<PointConfig> {
    let (n, d) = (model.n(), model.d());
    if d + 2 > n {
        return Err(Error::InvalidInput(format!(
            "codimension must be at least 2 (d = {d}, n = {n})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        (0..n).map(|_| int(rng.random_range(-opts.bound..=opts.bound))).collect()
    };
    for _ in 0..opts.retries {
        let apexes: Vec<Apex> = (0..n - d - 1)
            .map(|_| {
                let p = draw(&mut rng);
                if opts.apex_at_infinity {
                    Apex::Direction(p)
                } else {
                    Apex::Point(p)
                }
            })
            .collect();
        let point_sets: Vec<Vec<Vec<Rational>>> = (0..=d).map(|_| (0..d).map(|_| draw(&mut rng)).collect()).collect();
        let config = PointConfig {
            apexes,
            point_sets,
            seed,
            bound: opts.bound,
        };
        if config_is_valid(model, &config, opts) {
            return Ok(config);
        }
    }
    Err(Error::RetryExhausted {
        attempts: opts.retries,
        reason: "no admissible point configuration".into(),
    })
}

fn config_is_valid(model: &ParamModel, c: &PointConfig, opts: &ConfigOptions) -> bool {
    let apex_rows: Vec<Vec<Rational>> = c.apexes.iter().map(Apex::homogeneous).collect();
    if apex_rows.iter().any(|r| r.iter().all(Zero::is_zero)) {
        return false;
    }
    let all: Vec<Vec<Rational>> = apex_rows
        .iter()
        .cloned()
        .chain(c.point_sets.iter().flatten().map(|p| homogenize(p)))
        .collect();
    let independent = |rows: Vec<Vec<Rational>>| {
        let k = rows.len();
        k == 0 || rank_exact(&Matrix::from_rows(model.n() + 1, rows)) == k
    };
    // All of G ∪ P_0 ∪ … ∪ P_d spans at most a hyperplane; require it
    // to be as large as possible so every incidence determinant is proper.
    let full = all.len().min(model.n());
    if rank_exact(&Matrix::from_rows(model.n() + 1, all)) < full {
        return false;
    }
    for set in &c.point_sets {
        let rows = apex_rows.iter().cloned().chain(set.iter().map(|p| homogenize(p))).collect();
        if !independent(rows) {
            return false;
        }
    }
    for apex in &c.apexes {
        if let Apex::Point(g) = apex {
            if on_variety(model, g, &opts.known_equations) {
                return false;
            }
            if let Some(plane) = &opts.avoid_plane {
                if plane.eval(g).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact test whether `x` is the image of some (complex) parameter value.
/// Decided by a gcd for curves; known equations decide otherwise, and
/// without them the answer is `false`.
pub fn on_variety(model: &ParamModel, x: &[Rational], known: &[MultiPoly]) -> bool {
    if !known.is_empty() {
        return known.iter().all(|p| p.eval(x).is_zero());
    }
    if model.d() != 1 {
        return false;
    }
    let mut g: Option<UniPoly> = None;
    for ((num, den), xi) in model.coords().iter().zip(x) {
        let e = num - &den.scale(xi);
        let u = UniPoly::from_multi(&e, 0).expect("univariate coordinate");
        if u.is_zero() {
            continue;
        }
        g = Some(match g {
            None => u,
            Some(acc) => acc.gcd(&u),
        });
    }
    let Some(mut g) = g else { return true };
    for (_, den) in model.coords() {
        let dd = UniPoly::from_multi(den, 0).expect("univariate coordinate");
        loop {
            let c = g.gcd(&dd);
            if c.degree().unwrap_or(0) == 0 {
                break;
            }
            g = g.div_rem(&c).expect("nonzero divisor").0;
        }
    }
    g.degree().unwrap_or(0) > 0
}

/// A hyperplane through `ξ`, the apexes and one point set, pulled back by
/// the parameterization.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    /// Coefficients `c_j(ξ)` of the homogeneous coordinates `x_0..x_n`;
    /// affine-linear in `ξ`.
    pub coeffs: Vec<MultiPoly>,
    /// `Σ c_j(ξ) F_j(t)` over the parameters followed by `ξ`.
    pub pulled_back: MultiPoly,
}

/// `det [(1, ξ); G; P_i; (F_0(t), …, F_n(t))]` for each point set.
pub fn build_hyperplanes(config: &PointConfig, model: &ParamModel) -> Result<Vec<Hyperplane>> {
    let xi_vars = model.ambient().clone();
    let all_vars = model.params().concat(&xi_vars)?;
    let n = model.n();
    let homog: Vec<MultiPoly> = model
        .homogenized()
        .iter()
        .map(|f| f.embed(&all_vars))
        .collect::<Result<_>>()?;
    let xi_row: Vec<MultiPoly> = std::iter::once(MultiPoly::one(xi_vars.clone()))
        .chain((0..n).map(|j| MultiPoly::var(xi_vars.clone(), j)))
        .collect();
    let constant_row = |r: Vec<Rational>| -> Vec<MultiPoly> {
        r.into_iter().map(|v| MultiPoly::constant(xi_vars.clone(), v)).collect()
    };
    let mut out = Vec::with_capacity(config.point_sets.len());
    for set in &config.point_sets {
        let mut top = vec![xi_row.clone()];
        top.extend(config.apexes.iter().map(|a| constant_row(a.homogeneous())));
        top.extend(set.iter().map(|p| constant_row(homogenize(p))));
        // Cofactor expansion along the symbolic last row.
        let mut coeffs = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let minor: Vec<Vec<MultiPoly>> = top
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let c = ring_det(minor);
            coeffs.push(if (n + j).is_multiple_of(2) { c } else { -&c });
        }
        if coeffs.iter().all(MultiPoly::is_zero) {
            return Err(Error::DegenerateHyperplane);
        }
        let mut h = MultiPoly::zero(all_vars.clone());
        for (c, f) in coeffs.iter().zip(&homog) {
            h = &h + &(&c.embed(&all_vars)? * f);
        }
        if h.is_zero() {
            return Err(Error::DegenerateHyperplane);
        }
        out.push(Hyperplane { coeffs, pulled_back: h });
    }
    Ok(out)
}

/// The hyperplane through the apexes and every chosen point, linear in `ξ`.
pub fn extraneous_plane(config: &PointConfig, model: &ParamModel) -> Result<MultiPoly> {
    let xi_vars = model.ambient().clone();
    let n = model.n();
    let mut rows = vec![std::iter::once(MultiPoly::one(xi_vars.clone()))
        .chain((0..n).map(|j| MultiPoly::var(xi_vars.clone(), j)))
        .collect::<Vec<_>>()];
    let consts = config
        .apexes
        .iter()
        .map(Apex::homogeneous)
        .chain(config.point_sets.iter().flatten().map(|p| homogenize(p)));
    for r in consts {
        rows.push(r.into_iter().map(|v| MultiPoly::constant(xi_vars.clone(), v)).collect());
    }
    if rows.len() != n + 1 {
        return Err(Error::InvalidInput(
            "the extraneous plane needs exactly n points besides ξ".into(),
        ));
    }
    let e = ring_det(rows);
    if e.total_degree() != 1 {
        return Err(Error::DegenerateHyperplane);
    }
    Ok(e.primitive_part())
}

/// `Res_t(H_0, H_1)` divided by the largest power `E_L^k`, `k <= δ`.
#[derive(Clone, Debug, Serialize)]
pub struct ConicalSurface {
    #[serde(serialize_with = "ser_poly")]
    pub poly: MultiPoly,
    pub apex: Apex,
    #[serde(serialize_with = "ser_poly")]
    pub extraneous: MultiPoly,
    pub exponent: u32,
    pub resultant_degree: u32,
    pub config: PointConfig,
}

fn ser_poly<S: serde::Serializer>(p: &MultiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// One resultant run for a curve (`d = 1`) in any ambient dimension `n >= 3`.
pub fn conical_surface(model: &ParamModel, config: &PointConfig) -> Result<ConicalSurface> {
    if model.d() != 1 || model.n() < 3 {
        return Err(Error::InvalidInput(
            "conical surfaces are built for curves in dimension at least 3".into(),
        ));
    }
    let hs = build_hyperplanes(config, model)?;
    let r = resultant_in(&hs[0].pulled_back, &hs[1].pulled_back, 0)?;
    if r.is_zero() {
        return Err(Error::IdenticallyZeroResultant);
    }
    let e = extraneous_plane(config, model)?;
    let (q, k) = r.strip_linear_power(&e, model.degree())?;
    if k == 0 {
        return Err(Error::NotDivisible);
    }
    Ok(ConicalSurface {
        poly: q.primitive_part(),
        apex: config.apexes[0].clone(),
        extraneous: e,
        exponent: k,
        resultant_degree: r.total_degree(),
        config: config.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimedProperty {
    ContainsV,
    DefinesVSetTheoretically,
}

/// Where a polynomial of a system came from.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Cone(ConicalSurface),
    Kernel { criterion: String, value: u32, kernel_dim: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ImplicitSystem {
    #[serde(serialize_with = "ser_polys")]
    pub polys: Vec<MultiPoly>,
    pub provenance: Vec<Provenance>,
    pub claimed: ClaimedProperty,
}

fn ser_polys<S: serde::Serializer>(ps: &[MultiPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(ToString::to_string))
}

impl ImplicitSystem {
    pub fn surfaces(&self) -> impl Iterator<Item = &ConicalSurface> {
        self.provenance.iter().filter_map(|p| match p {
            Provenance::Cone(c) => Some(c),
            Provenance::Kernel { .. } => None,
        })
    }

    /// The same system with the polynomial at `index` removed.
    pub fn without(&self, index: usize) -> ImplicitSystem {
        let mut s = self.clone();
        s.polys.remove(index);
        s.provenance.remove(index);
        s.claimed = ClaimedProperty::ContainsV;
        s
    }
}

/// Fresh-sample count used to validate each cone before accepting it.
const CONE_CHECK_SAMPLES: usize = 20;

/// Retry budget across all runs of a system.
const RUN_RETRIES: usize = 50;

/// Three cones with pairwise distinct, non-collinear apexes. Planar curves
/// keep their apexes off the plane of the curve.
pub fn space_curve_system(model: &ParamModel, seed: u64) -> Result<ImplicitSystem> {
    space_curve_system_with(model, seed, &ConfigOptions::default())
}

pub fn space_curve_system_with(model: &ParamModel, seed: u64, opts: &ConfigOptions) -> Result<ImplicitSystem> {
    if model.d() != 1 || model.n() != 3 {
        return Err(Error::InvalidInput("space curve systems need a curve in 3-space".into()));
    }
    let mut opts = opts.clone();
    if opts.avoid_plane.is_none() {
        opts.avoid_plane = curve_plane(model, seed)?;
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut cones: Vec<ConicalSurface> = Vec::new();
    let mut attempts = 0;
    while cones.len() < 3 {
        if attempts == RUN_RETRIES {
            return Err(Error::RetryExhausted {
                attempts,
                reason: "could not build three valid conical surfaces".into(),
            });
        }
        attempts += 1;
        let config = make_config_with(model, master.next_u64(), &opts)?;
        let apex = &config.apexes[0];
        let mut apex_rows: Vec<Vec<Rational>> = cones.iter().map(|c| c.apex.homogeneous()).collect();
        apex_rows.push(apex.homogeneous());
        if rank_exact(&Matrix::from_rows(4, apex_rows.clone())) < apex_rows.len() {
            continue;
        }
        let cone = match conical_surface(model, &config) {
            Ok(c) => c,
            Err(Error::IdenticallyZeroResultant | Error::NotDivisible | Error::DegenerateHyperplane) => continue,
            Err(e) => return Err(e),
        };
        if cone.exponent != model.degree() || !cone_is_valid(model, &cone, master.next_u64())? {
            continue;
        }
        cones.push(cone);
    }
    Ok(ImplicitSystem {
        polys: cones.iter().map(|c| c.poly.clone()).collect(),
        provenance: cones.into_iter().map(Provenance::Cone).collect(),
        claimed: ClaimedProperty::DefinesVSetTheoretically,
    })
}

fn cone_is_valid(model: &ParamModel, cone: &ConicalSurface, seed: u64) -> Result<bool> {
    let pts = curve_samples(model, CONE_CHECK_SAMPLES, seed)?;
    let lambdas = ruling_lambdas();
    Ok(pts.iter().all(|q| {
        cone.poly.eval(q).is_zero() && lambdas.iter().all(|l| cone.poly.eval(&cone.apex.ruling_point(q, l)).is_zero())
    }))
}

/// Exact points of the variety from fresh parameter samples.
pub fn curve_samples(model: &ParamModel, count: usize, seed: u64) -> Result<Vec<Vec<Rational>>> {
    let ts: Vec<Vec<Rational>> = crate::interp::sample_params(model, count, seed)?;
    Ok(ts.iter().filter_map(|t| model.eval_exact(t)).collect())
}

fn ruling_lambdas() -> Vec<Rational> {
    [(-3, 1), (-1, 2), (1, 3), (2, 1), (7, 5)]
        .iter()
        .map(|&(a, b)| Rational::new(a.into(), b.into()))
        .collect()
}

/// The plane containing a space curve, if it is planar.
pub fn curve_plane(model: &ParamModel, seed: u64) -> Result<Option<MultiPoly>> {
    let n = model.n();
    let pts = curve_samples(model, 2 * n + 4, seed)?;
    let rows: Vec<Vec<Rational>> = pts.iter().map(|p| homogenize(p)).collect();
    let r = rref(&Matrix::from_rows(n + 1, rows));
    if r.rank() > n {
        return Ok(None);
    }
    let normal = &r.nullspace()[0];
    let vars = model.ambient().clone();
    let mut plane = MultiPoly::constant(vars.clone(), normal[0].clone());
    for j in 0..n {
        plane = &plane + &MultiPoly::var(vars.clone(), j).scale(&normal[j + 1]);
    }
    Ok(Some(plane.primitive_part()))
}

/// How [`general_codim_implicitize`] computes each hypersurface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChowPath {
    /// Sylvester resultants for curves; parameter dimension above one falls
    /// back to interpolation.
    Resultant,
    /// Kernel of an interpolation matrix over a simplex support of the given
    /// degree (the resultant degree bound when absent).
    Interp(Option<u32>),
}

/// `runs` resultant hypersurfaces, or the minimal-degree kernel polynomials.
pub fn general_codim_implicitize(model: &ParamModel, seed: u64, runs: usize, path: ChowPath) -> Result<ImplicitSystem> {
    general_codim_implicitize_with(model, seed, runs, path, &ConfigOptions::default())
}

pub fn general_codim_implicitize_with(
    model: &ParamModel,
    seed: u64,
    runs: usize,
    path: ChowPath,
    opts: &ConfigOptions,
) -> Result<ImplicitSystem> {
    if model.n() < model.d() + 2 {
        return Err(Error::InvalidInput("codimension must be at least 2".into()));
    }
    let path = match path {
        ChowPath::Resultant if model.d() > 1 => ChowPath::Interp(None),
        p => p,
    };
    match path {
        ChowPath::Resultant => resultant_runs(model, seed, runs, opts),
        ChowPath::Interp(delta) => {
            let delta = delta.unwrap_or_else(|| resultant_degree_bound(model) as u32);
            let support = simplex_support(model.n(), delta);
            let r = implicitize_model::<Rational>(&model.with_mode(crate::scalar::Mode::Exact), &support, seed, &ImplicitizeOptions::default())?;
            let kernel_dim = r.kernel.dim();
            let value = r.selection.value;
            let polys: Vec<MultiPoly> = r.selection.minimal.iter().map(MultiPoly::primitive_part).collect();
            Ok(ImplicitSystem {
                provenance: polys
                    .iter()
                    .map(|_| Provenance::Kernel {
                        criterion: format!("{:?}", Criterion::MaxTotalDegree),
                        value,
                        kernel_dim,
                    })
                    .collect(),
                polys,
                claimed: ClaimedProperty::ContainsV,
            })
        }
    }
}

fn resultant_runs(model: &ParamModel, seed: u64, runs: usize, opts: &ConfigOptions) -> Result<ImplicitSystem> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut cones = Vec::with_capacity(runs);
    let mut attempts = 0;
    while cones.len() < runs {
        if attempts == RUN_RETRIES * runs.max(1) {
            return Err(Error::RetryExhausted {
                attempts,
                reason: "resultant runs kept failing".into(),
            });
        }
        attempts += 1;
        let config = make_config_with(model, master.next_u64(), opts)?;
        match conical_surface(model, &config) {
            Ok(c) => {
                if cone_is_valid(model, &c, master.next_u64())? {
                    cones.push(c);
                }
            }
            Err(Error::IdenticallyZeroResultant | Error::NotDivisible | Error::DegenerateHyperplane) => {}
            Err(e) => return Err(e),
        }
    }
    let claimed = if model.n() == 3 && runs >= 3 {
        ClaimedProperty::DefinesVSetTheoretically
    } else {
        ClaimedProperty::ContainsV
    };
    Ok(ImplicitSystem {
        polys: cones.iter().map(|c| c.poly.clone()).collect(),
        provenance: cones.into_iter().map(Provenance::Cone).collect(),
        claimed,
    })
}

/// One named check with an optional counterexample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn point_text(p: &[Rational]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

/// (a) vanishing on fresh samples; (b) random probes off the variety each
/// violate some polynomial; (b-ruling) the same along rulings of each cone,
/// where all but one surface must do the rejecting; (c) every cone contains
/// the rulings through its apex.
pub fn verify_system(system: &ImplicitSystem, model: &ParamModel, seed: u64, on_count: usize, off_count: usize) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = curve_samples(model, on_count, rng.next_u64())?;
    let mut checks = Vec::new();

    let bad = samples
        .iter()
        .find_map(|q| system.polys.iter().position(|p| !p.eval(q).is_zero()).map(|i| (i, q)));
    checks.push(CheckResult {
        name: "vanishing".into(),
        passed: bad.is_none(),
        detail: match bad {
            None => format!("{} polynomials vanish at {} fresh samples", system.polys.len(), samples.len()),
            Some((i, _)) => format!("polynomial {} does not vanish at a sample", i + 1),
        },
        witness: bad.map(|(_, q)| point_text(q)),
    });

    let n = model.n();
    let mut probes = Vec::with_capacity(off_count);
    while probes.len() < off_count {
        let x: Vec<Rational> = (0..n)
            .map(|_| Rational::new(rng.random_range(-100..=100).into(), rng.random_range(1..=10).into()))
            .collect();
        if !on_variety(model, &x, &[]) {
            probes.push(x);
        }
    }
    let caught = probes.iter().find(|x| system.polys.iter().all(|p| p.eval(x).is_zero()));
    checks.push(CheckResult {
        name: "off_variety".into(),
        passed: caught.is_none(),
        detail: match caught {
            None => format!("each of {} random probes violates some polynomial", probes.len()),
            Some(_) => "a probe off the variety satisfies every polynomial".into(),
        },
        witness: caught.map(|x| point_text(x)),
    });

    let surfaces: Vec<&ConicalSurface> = system.surfaces().collect();
    if !surfaces.is_empty() {
        let mut witness = None;
        'outer: for cone in &surfaces {
            for q in samples.iter().take(10) {
                if let Some(w) = ruling_witness(system, cone, q)? {
                    witness = Some(w);
                    break 'outer;
                }
            }
        }
        checks.push(CheckResult {
            name: "ruling_probes".into(),
            passed: witness.is_none(),
            detail: match &witness {
                None => "no common zero off the variety along sampled rulings".into(),
                Some(_) => "the system vanishes at a ruling point off the variety".into(),
            },
            witness: witness.map(|(lo, hi)| vec![lo, hi]),
        });

        let lambdas = ruling_lambdas();
        let mut failure = None;
        for (i, cone) in surfaces.iter().enumerate() {
            for q in samples.iter().take(4) {
                for l in &lambdas {
                    let x = cone.apex.ruling_point(q, l);
                    if !cone.poly.eval(&x).is_zero() && failure.is_none() {
                        failure = Some((i, x));
                    }
                }
            }
        }
        checks.push(CheckResult {
            name: "cone_property".into(),
            passed: failure.is_none(),
            detail: match &failure {
                None => format!("{} surfaces vanish along rulings through their apexes", surfaces.len()),
                Some((i, _)) => format!("surface {} is not a cone over its apex", i + 1),
            },
            witness: failure.map(|(_, x)| point_text(&x)),
        });
    }
    Ok(VerificationReport { checks })
}

/// Along the ruling `G + λ(q - G)` of `cone`, the common real zeros of the
/// whole system other than `q` itself (`λ = 1`). A ruling through a
/// generic apex meets the curve only at `q`, so such a zero lies off the
/// curve. Returns the isolating interval of `λ`.
fn ruling_witness(system: &ImplicitSystem, cone: &ConicalSurface, q: &[Rational]) -> Result<Option<(String, String)>> {
    let lam = crate::poly::Vars::new(["lambda"]);
    let lvar = MultiPoly::var(lam.clone(), 0);
    let line: Vec<MultiPoly> = match &cone.apex {
        Apex::Point(g) => g
            .iter()
            .zip(q)
            .map(|(g, q)| &MultiPoly::constant(lam.clone(), g.clone()) + &lvar.scale(&(q - g)))
            .collect(),
        Apex::Direction(v) => q
            .iter()
            .zip(v)
            .map(|(q, v)| &MultiPoly::constant(lam.clone(), q.clone()) + &lvar.scale(v))
            .collect(),
    };
    let mut g: Option<UniPoly> = None;
    for p in &system.polys {
        let u = UniPoly::from_multi(&p.substitute(&line)?, 0)?;
        if u.is_zero() {
            continue;
        }
        g = Some(match g {
            None => u,
            Some(acc) => acc.gcd(&u),
        });
    }
    let Some(mut g) = g else {
        return Ok(Some(("all".into(), "all".into())));
    };
    let q_lambda = match cone.apex {
        Apex::Point(_) => int(1),
        Apex::Direction(_) => int(0),
    };
    let at_q = UniPoly::linear(int(1), -q_lambda.clone());
    while g.degree().unwrap_or(0) > 0 && g.eval(&q_lambda).is_zero() {
        g = g.div_rem(&at_q)?.0;
    }
    if g.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    Ok(isolate_real_roots(&g, &RootDomain::All)?
        .first()
        .map(|r| (r.interval.lo.to_string(), r.interval.hi.to_string())))
}
