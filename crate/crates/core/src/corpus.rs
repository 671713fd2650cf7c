//! Named example objects with reference checks.

use num_traits::Zero;
use serde::Serialize;

use crate::chow::{
    conical_surface, curve_samples, general_codim_implicitize, make_config, space_curve_system, verify_system,
    CheckResult, ChowPath,
};
use crate::error::{Error, Result};
use crate::interp::{build_matrix, implicit_from_det, implicitize_model, bordered_rows, ImplicitizeOptions, Source};
use crate::linalg::{rank_exact, Matrix};
use crate::model::ParamModel;
use crate::poly::{parse_poly, Monomial, MultiPoly, UniPoly, Vars};
use crate::rayshoot::{preprocess, preprocess_model, ray_poly, shoot, Ray, RayPreproc, SurfacePatch};
use crate::roots::{isolate_real_roots, RootDomain};
use crate::scalar::{int, Mode, Rational};
use crate::supports::{simplex_support, MonomialSupport};

pub const FIXTURE_NAMES: [&str; 7] = [
    "twisted-cubic",
    "two-cylinders",
    "viviani-a2",
    "curve4d",
    "crossed",
    "moebius",
    "bicubic-float",
];

/// A parameterized object plus everything needed to check results on it.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub model: ParamModel,
    pub known_equations: Vec<MultiPoly>,
    pub support: Option<MonomialSupport>,
    pub patch: Option<Vec<(Rational, Rational)>>,
    pub ray: Option<Ray>,
}

fn model(params: Vars, n: usize, coords: &[(&str, &str)], mode: Mode) -> ParamModel {
    ParamModel::parse(&params, Vars::indexed("x", n), coords, mode).expect("fixture model parses")
}

fn equations(vars: &Vars, eqs: &[&str]) -> Vec<MultiPoly> {
    eqs.iter().map(|e| parse_poly(e, vars).expect("fixture equation parses")).collect()
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let t = Vars::new(["t"]);
    let t2 = Vars::indexed("t", 2);
    let x3 = Vars::indexed("x", 3);
    let f = match name {
        "twisted-cubic" => Fixture {
            name: "twisted-cubic",
            model: model(t, 3, &[("t", "1"), ("t^2", "1"), ("t^3", "1")], Mode::Exact),
            known_equations: equations(&x3, &["x1^2 - x2", "x2^2 - x1*x3", "x1*x2 - x3"]),
            support: Some(simplex_support(3, 6)),
            patch: None,
            ray: None,
        },
        "two-cylinders" => Fixture {
            name: "two-cylinders",
            model: model(
                t,
                3,
                &[("1 - t^2", "1 + t^2"), ("2*t", "1 + t^2"), ("(1 - t^2)^2", "(1 + t^2)^2")],
                Mode::Exact,
            ),
            known_equations: equations(&x3, &["x1^2 - x3", "x2^2 + x3 - 1"]),
            support: Some(simplex_support(3, 8)),
            patch: None,
            ray: None,
        },
        "viviani-a2" => Fixture {
            name: "viviani-a2",
            model: model(
                t,
                3,
                &[("4*(1 - t^2)^2", "(1 + t^2)^2"), ("8*t*(1 - t^2)", "(1 + t^2)^2"), ("8*t", "1 + t^2")],
                Mode::Exact,
            ),
            known_equations: equations(&x3, &["x1^2 + x2^2 + x3^2 - 16", "(x1 - 2)^2 + x2^2 - 4"]),
            support: None,
            patch: None,
            ray: None,
        },
        "curve4d" => Fixture {
            name: "curve4d",
            model: model(
                t,
                4,
                &[("t^2 - t - 1", "1"), ("t^3 + 2*t^2 - t", "1"), ("t^2 + t - 1", "1"), ("t^3 - 2*t + 3", "1")],
                Mode::Exact,
            ),
            known_equations: Vec::new(),
            support: None,
            patch: None,
            ray: None,
        },
        "crossed" => Fixture {
            name: "crossed",
            model: model(t2, 3, &[("t1", "1"), ("t2", "1"), ("t1^2*t2^2", "1")], Mode::Exact),
            known_equations: equations(&x3, &["x3 - x1^2*x2^2"]),
            support: Some(user_support(&x3, &["1", "x1", "x2", "x3", "x1^2*x2^2"])),
            patch: Some(vec![(int(-2), int(2)), (int(-2), int(2))]),
            ray: Some(Ray::parse("1,0;0,1;0,1", false)?),
        },
        "moebius" => Fixture {
            name: "moebius",
            model: model(
                t2,
                3,
                &[("(1 + t2)*(1 - t1^2)", "1 + t1^2"), ("2*(1 + t2)*t1", "1 + t1^2"), ("t2*t1", "1")],
                Mode::Exact,
            ),
            known_equations: equations(&x3, &["x1^2*x2 - 2*x1^2*x3 - 2*x1*x3 + x2^3 - 2*x2^2*x3 + x2*x3^2 - x2"]),
            support: Some(simplex_support(3, 3)),
            patch: Some(vec![(int(-1), int(1)), (Rational::new((-1).into(), 2.into()), Rational::new(1.into(), 2.into()))]),
            ray: Some(Ray::parse("1,-1;1/3,0;-1/2,1", false)?),
        },
        "bicubic-float" => Fixture {
            name: "bicubic-float",
            model: model(
                t2,
                3,
                &[
                    ("3*t1*(t1 - 1)^2 + (t2 - 1)^3 + 3*t2", "1"),
                    ("3*t2*(t2 - 1)^2 + t1^3 + 3*t1", "1"),
                    (
                        "-3*t2*(t2^2 - 5*t2 + 5)*t1^3 - 3*(t2^3 + 6*t2^2 - 9*t2 + 1)*t1^2 + t1*(6*t2^3 + 9*t2^2 - 18*t2 + 3) - 3*t2*(t2 - 1)",
                        "1",
                    ),
                ],
                Mode::Float,
            ),
            known_equations: Vec::new(),
            support: Some(MonomialSupport::weighted(x3, vec![1, 1, 2], 18)?),
            patch: Some(vec![(int(0), int(1)), (int(0), int(1))]),
            ray: Some(Ray::parse("1,-13;1,12;-5,3", false)?),
        },
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown fixture `{other}`; expected one of {}",
                FIXTURE_NAMES.join(", ")
            )))
        }
    };
    Ok(f)
}

fn user_support(vars: &Vars, monos: &[&str]) -> MonomialSupport {
    let ms: Vec<Monomial> = monos
        .iter()
        .map(|m| parse_poly(m, vars).expect("monomial").leading_term().expect("nonzero").0.clone())
        .collect();
    MonomialSupport::new(vars.clone(), ms, crate::supports::SupportOrigin::User).expect("distinct monomials")
}

/// Whether two lists of polynomials span the same space of coefficient
/// vectors.
pub fn same_span(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    let mut monos: Vec<Monomial> = a.iter().chain(b).flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rank = |ps: &[&MultiPoly]| {
        let rows: Vec<Vec<Rational>> = ps.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect();
        if rows.is_empty() {
            0
        } else {
            rank_exact(&Matrix::from_rows(monos.len(), rows))
        }
    };
    let ra = rank(&a.iter().collect::<Vec<_>>());
    let rb = rank(&b.iter().collect::<Vec<_>>());
    let rab = rank(&a.iter().chain(b).collect::<Vec<_>>());
    ra == rb && rb == rab
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub mode: Mode,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub polynomials: Vec<String>,
    pub warnings: Vec<String>,
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
            witness: None,
        });
    }
}

/// Runs the fixture's reference checks.
pub fn run_fixture(name: &str, seed: u64) -> Result<FixtureReport> {
    let fx = fixture(name)?;
    let mut checks = Checks(Vec::new());
    let mut polys = Vec::new();
    let mut warnings = Vec::new();
    match fx.name {
        "twisted-cubic" | "two-cylinders" => kernel_fixture(&fx, seed, &mut checks, &mut polys)?,
        "viviani-a2" => {
            let sys = space_curve_system(&fx.model, seed)?;
            let degrees: Vec<u32> = sys.polys.iter().map(MultiPoly::total_degree).collect();
            checks.add("surface_degrees", degrees == [4, 4, 4], format!("degrees {degrees:?}"));
            let samples = curve_samples(&fx.model, 100, seed.wrapping_add(1))?;
            let known_ok = samples
                .iter()
                .all(|q| fx.known_equations.iter().all(|p| p.eval(q).is_zero()));
            checks.add("known_equations", known_ok, "reference equations vanish on 100 samples");
            let rep = verify_system(&sys, &fx.model, seed.wrapping_add(2), 100, 100)?;
            checks.0.extend(rep.checks);
            polys.extend(sys.polys.iter().map(ToString::to_string));
        }
        "curve4d" => {
            let sys = general_codim_implicitize(&fx.model, seed, 5, ChowPath::Resultant)?;
            let cones: Vec<_> = sys.surfaces().collect();
            let structure = cones.len() == 5
                && cones
                    .iter()
                    .all(|c| c.resultant_degree == 6 && c.exponent == 3 && c.poly.total_degree() == 3);
            checks.add("resultant_structure", structure, "5 runs: degree 6 resultants, linear factor cubed, cubic quotients");
            let rep = verify_system(&sys, &fx.model, seed.wrapping_add(2), 100, 200)?;
            checks.0.extend(rep.checks.into_iter().filter(|c| c.name != "ruling_probes"));
            polys.extend(sys.polys.iter().map(ToString::to_string));
        }
        "crossed" | "moebius" => surface_fixture(&fx, seed, &mut checks, &mut polys)?,
        "bicubic-float" => {
            let support = fx.support.clone().expect("bicubic support");
            let pre: RayPreproc<f64> = preprocess_model(&fx.model, &support, seed)?;
            let ray = fx.ray.clone().expect("bicubic ray");
            let p = ray_poly(&pre, &ray)?;
            let deg = p.degree().unwrap_or(0);
            checks.add("preprocessing", true, format!("|S| = {}, pivot ratio {:.3e}", support.len(), pre.condition_estimate()));
            checks.add("ray_poly_degree", deg <= 18, format!("deg p(rho) = {deg}"));
            checks.add("condition_warning", pre.warning().is_some(), "ill-conditioning is reported");
            warnings.extend(pre.warning().map(str::to_string));
            polys.push(p.to_string());
        }
        _ => unreachable!("fixture names are validated"),
    }
    let passed = checks.0.iter().all(|c| c.passed);
    Ok(FixtureReport {
        name: fx.name.into(),
        mode: fx.model.mode(),
        passed,
        checks: checks.0,
        polynomials: polys,
        warnings,
    })
}

fn kernel_fixture(fx: &Fixture, seed: u64, checks: &mut Checks, polys: &mut Vec<String>) -> Result<()> {
    let support = fx.support.clone().expect("kernel fixtures carry a support");
    let (rows, dim, delta) = if fx.name == "twisted-cubic" { (84, 65, 3) } else { (165, 133, 4) };
    let r = implicitize_model::<Rational>(&fx.model, &support, seed, &ImplicitizeOptions::default())?;
    checks.add("matrix_shape", r.shape == (rows, rows), format!("{} x {}", r.shape.0, r.shape.1));
    checks.add("kernel_dim", r.kernel.dim() == dim, format!("kernel dimension {}", r.kernel.dim()));
    checks.add("fresh_samples", r.verified, "kernel polynomials vanish on 20 unused samples");
    let minimal: Vec<MultiPoly> = r.selection.minimal.iter().map(MultiPoly::primitive_part).collect();
    checks.add(
        "minimal_degree",
        r.selection.value == 2 && same_span(&minimal, &fx.known_equations),
        format!("{} polynomials of degree {}", minimal.len(), r.selection.value),
    );
    let config = make_config(&fx.model, seed, 10)?;
    let cone = conical_surface(&fx.model, &config)?;
    checks.add(
        "cone_structure",
        cone.resultant_degree == 2 * delta && cone.exponent == delta && cone.poly.total_degree() == delta,
        format!(
            "resultant degree {}, extraneous exponent {}, cone degree {}",
            cone.resultant_degree,
            cone.exponent,
            cone.poly.total_degree()
        ),
    );
    let sys = space_curve_system(&fx.model, seed)?;
    let rep = verify_system(&sys, &fx.model, seed.wrapping_add(1), 100, 100)?;
    checks.0.extend(rep.checks);
    polys.extend(minimal.iter().map(ToString::to_string));
    Ok(())
}

fn surface_fixture(fx: &Fixture, seed: u64, checks: &mut Checks, polys: &mut Vec<String>) -> Result<()> {
    let support = fx.support.clone().expect("surface fixtures carry a support");
    let mprime = build_matrix::<Rational>(Source::Model(&fx.model), &support, bordered_rows(&support), seed)?;
    let p = implicit_from_det(&mprime)?;
    checks.add(
        "implicit_equation",
        same_span(std::slice::from_ref(&p), &fx.known_equations),
        format!("det M(x) ~ {p}"),
    );
    let pre = preprocess(&mprime)?;
    let ray = fx.ray.clone().expect("surface fixtures carry a ray");
    let patch = SurfacePatch::new(fx.model.clone(), fx.patch.clone().expect("patch"))?;
    let hits = shoot(&pre, &patch, &ray)?;
    let oracle = fx.known_equations[0].substitute(&ray_images(&ray))?;
    let oracle_roots = isolate_real_roots(&UniPoly::from_multi(&oracle, 0)?, &RootDomain::Positive)?;
    let matched = hits.len() == oracle_roots.len()
        && hits
            .iter()
            .zip(&oracle_roots)
            .all(|(h, r)| h.rho_interval.overlaps(&r.interval) && h.multiplicity == r.multiplicity);
    checks.add(
        "ray_roots",
        matched,
        format!("{} hits, {} roots of the substituted equation", hits.len(), oracle_roots.len()),
    );
    let inverted = hits.iter().all(|h| {
        let t: Vec<f64> = h.preimage.clone().unwrap_or_default();
        let x = fx.model.eval_f64(&t);
        x.iter().zip(&h.point).all(|(a, b)| (a - b).abs() <= 1e-9 * (1.0 + b.abs()))
    });
    checks.add("inversion", inverted, "preimages map back to the hit points");
    if fx.name == "crossed" {
        let outside = SurfacePatch::new(fx.model.clone(), vec![(int(2), int(3)); 2])?;
        let off = shoot(&pre, &outside, &ray)?;
        let ok = hits.len() == 1 && hits[0].on_patch && off.len() == 1 && !off[0].on_patch;
        checks.add("patch_filter", ok, "preimage (1, 1) is inside [-2,2]^2 and outside [2,3]^2");
    }
    polys.push(p.to_string());
    Ok(())
}

/// `r_i(ρ)` as polynomials in a single variable.
fn ray_images(ray: &Ray) -> Vec<MultiPoly> {
    ray.polys::<Rational>().iter().map(|u| u.to_multi("rho")).collect()
}
