//! Subcommand handlers.

use std::path::Path;

use implicitmat::chow::{
    general_codim_implicitize_with, space_curve_system_with, verify_system, ChowPath, ConfigOptions, ImplicitSystem,
};
use implicitmat::corpus::{run_fixture, FIXTURE_NAMES};
use implicitmat::interp::{
    build_matrix, implicitize_cloud, implicitize_model, kernel_rows, membership, Criterion, ImplicitizeOptions,
    Implicitization, Source,
};
use implicitmat::linalg::Field;
use implicitmat::model::PointCloud;
use implicitmat::rayshoot::{preprocess_model, ray_poly, shoot, Ray, SurfacePatch};
use implicitmat::supports::MonomialSupport;
use implicitmat::{parse_rational, Error, Mode, Rational, Result, Vars};
use serde_json::json;

use crate::{Cli, Command, CriterionArg, InputArgs, PathArg, RunReport, SupportArgs};
use crate::modelfile::{LoadedModel, ModelFile};

pub fn dispatch(cli: &Cli) -> Result<RunReport> {
    let mode: Mode = cli.global.mode.into();
    let seed = cli.global.seed;
    match &cli.command {
        Command::Implicitize(a) => implicitize(a, mode, seed),
        Command::Rayshoot(a) => rayshoot(a, mode, seed),
        Command::Spacecurve(a) => spacecurve(a, mode, seed),
        Command::Membership(a) => membership_cmd(a, mode, seed),
        Command::Corpus(a) => corpus(&a.name, seed),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

/// Errors from a file get the file name prepended.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        Error::InvalidInput(m) => Error::InvalidInput(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn load_model(path: &Path, mode: Mode) -> Result<LoadedModel> {
    let text = read(path)?;
    in_file(path, ModelFile::parse(&text).and_then(|f| f.load(mode)))
}

enum Input {
    Model(LoadedModel),
    Cloud(PointCloud),
}

impl Input {
    fn load(a: &InputArgs, mode: Mode) -> Result<Input> {
        match (&a.model, &a.cloud) {
            (Some(p), None) => Ok(Input::Model(load_model(p, mode)?)),
            (None, Some(p)) => Ok(Input::Cloud(in_file(p, PointCloud::parse_csv(&read(p)?, mode))?)),
            _ => Err(Error::InvalidInput("exactly one of --model and --cloud is required".into())),
        }
    }

    fn ambient(&self) -> &Vars {
        match self {
            Input::Model(m) => m.model.ambient(),
            Input::Cloud(c) => c.ambient(),
        }
    }

    fn source(&self) -> Source<'_> {
        match self {
            Input::Model(m) => Source::Model(&m.model),
            Input::Cloud(c) => Source::Cloud(c),
        }
    }
}

fn support(a: &SupportArgs, vars: &Vars) -> Result<MonomialSupport> {
    match (a.delta, &a.support, &a.weights) {
        (Some(d), None, None) => Ok(MonomialSupport::simplex_over(vars.clone(), d)),
        (None, Some(p), None) => in_file(p, MonomialSupport::parse(&read(p)?, vars.clone())),
        (None, None, Some(w)) => {
            let bound = a
                .bound
                .ok_or_else(|| Error::InvalidInput("--weights needs --bound".into()))?;
            MonomialSupport::weighted(vars.clone(), w.clone(), bound)
        }
        _ => Err(Error::InvalidInput(
            "give exactly one of --delta, --support and --weights".into(),
        )),
    }
}

fn implicitize(a: &crate::ImplicitizeArgs, mode: Mode, seed: u64) -> Result<RunReport> {
    let mut report = RunReport::new("implicitize", seed, mode);
    let input = Input::load(&a.input, mode)?;
    let s = support(&a.support, input.ambient())?;
    let opts = ImplicitizeOptions {
        criterion: match a.criterion {
            CriterionArg::Degree => Criterion::MaxTotalDegree,
            CriterionArg::Terms => Criterion::FewestTerms,
        },
        ..ImplicitizeOptions::default()
    };
    report.outputs = match mode {
        Mode::Exact => implicitize_in::<Rational>(&mut report, &input, &s, seed, &opts)?,
        Mode::Float => implicitize_in::<f64>(&mut report, &input, &s, seed, &opts)?,
    };
    Ok(report)
}

fn implicitize_in<S: Field>(
    report: &mut RunReport,
    input: &Input,
    s: &MonomialSupport,
    seed: u64,
    opts: &ImplicitizeOptions,
) -> Result<serde_json::Value> {
    let r: Implicitization<S> = report.stage("kernel", || match input {
        Input::Model(m) => implicitize_model(&m.model, s, seed, opts),
        Input::Cloud(c) => implicitize_cloud(c, s, opts),
    })?;
    if let Input::Model(_) = input {
        if !r.verified {
            report.warnings.push(format!(
                "kernel polynomials reach relative residual {:.3e} on fresh samples",
                r.max_residual
            ));
        }
    }
    if r.kernel.dim() == 0 {
        report.warnings.push("the kernel is trivial; try a larger support".into());
    }
    let show = |p: &implicitmat::MultiPoly<S>| match S::MODE {
        Mode::Exact => p
            .map_coeffs(|c| c.as_rational().cloned().expect("exact coefficients"))
            .primitive_part()
            .to_string(),
        Mode::Float => p.to_string(),
    };
    Ok(json!({
        "support_size": s.len(),
        "shape": [r.shape.0, r.shape.1],
        "kernel_dim": r.kernel.dim(),
        "rank": r.kernel.rank,
        "accepted_seed": r.seed,
        "verified": r.verified,
        "max_residual": r.max_residual,
        "criterion_value": r.selection.value,
        "polynomials": r.selection.minimal.iter().map(show).collect::<Vec<_>>(),
        "reduced_basis_size": r.selection.reduced.len(),
    }))
}

fn rayshoot(a: &crate::RayshootArgs, mode: Mode, seed: u64) -> Result<RunReport> {
    let mut report = RunReport::new("rayshoot", seed, mode);
    let loaded = load_model(&a.model, mode)?;
    if loaded.model.d() + 1 != loaded.model.n() {
        return Err(Error::InvalidInput("ray shooting needs a hypersurface model".into()));
    }
    let s = support(&a.support, loaded.model.ambient())?;
    let ray = Ray::parse(&a.ray, mode == Mode::Float)?;
    let patch = match (&a.patch, &loaded.patch) {
        (Some(text), _) => SurfacePatch::parse(loaded.model.clone(), text)?,
        (None, Some(b)) => SurfacePatch::new(loaded.model.clone(), b.clone())?,
        (None, None) => SurfacePatch::unbounded(loaded.model.clone()),
    };
    report.outputs = match mode {
        Mode::Exact => shoot_in::<Rational>(&mut report, &loaded, &s, &patch, &ray, seed)?,
        Mode::Float => shoot_in::<f64>(&mut report, &loaded, &s, &patch, &ray, seed)?,
    };
    Ok(report)
}

fn shoot_in<S: Field>(
    report: &mut RunReport,
    loaded: &LoadedModel,
    s: &MonomialSupport,
    patch: &SurfacePatch,
    ray: &Ray,
    seed: u64,
) -> Result<serde_json::Value> {
    let pre = report.stage("preprocess", || preprocess_model::<S>(&loaded.model, s, seed))?;
    if let Some(w) = pre.warning() {
        report.warnings.push(w.to_string());
    }
    let p = ray_poly(&pre, ray)?;
    let hits = report.stage("shoot", || shoot(&pre, patch, ray))?;
    Ok(json!({
        "support_size": s.len(),
        "condition_estimate": pre.condition_estimate(),
        "ray_poly_degree": p.degree(),
        "hits": hits,
    }))
}

fn spacecurve(a: &crate::SpacecurveArgs, mode: Mode, seed: u64) -> Result<RunReport> {
    if mode == Mode::Float {
        return Err(Error::InvalidInput("spacecurve runs in exact mode only".into()));
    }
    let mut report = RunReport::new("spacecurve", seed, mode);
    let loaded = load_model(&a.model, mode)?;
    let model = &loaded.model;
    let opts = ConfigOptions {
        bound: a.box_bound,
        known_equations: loaded.known_equations.clone(),
        ..ConfigOptions::default()
    };
    let three_cones = a.path == PathArg::Resultant && a.runs == 3 && model.d() == 1 && model.n() == 3;
    let sys: ImplicitSystem = report.stage("system", || {
        if three_cones {
            space_curve_system_with(model, seed, &opts)
        } else {
            let path = match a.path {
                PathArg::Resultant => ChowPath::Resultant,
                PathArg::Interp => ChowPath::Interp(a.delta),
            };
            general_codim_implicitize_with(model, seed, a.runs, path, &opts)
        }
    })?;
    let rep = report.stage("verify", || {
        verify_system(&sys, model, seed.wrapping_add(1), a.probes, a.probes)
    })?;
    report.add_checks(rep.checks);
    let apexes: Vec<_> = sys.surfaces().map(|c| serde_json::to_value(&c.apex).expect("apex serializes")).collect();
    report.outputs = json!({
        "polynomials": sys.polys.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "degrees": sys.polys.iter().map(|p| p.total_degree()).collect::<Vec<_>>(),
        "apexes": apexes,
        "extraneous": sys.surfaces().map(|c| json!({
            "plane": c.extraneous.to_string(),
            "exponent": c.exponent,
            "resultant_degree": c.resultant_degree,
        })).collect::<Vec<_>>(),
        "claimed": sys.claimed,
    });
    Ok(report)
}

fn membership_cmd(a: &crate::MembershipArgs, mode: Mode, seed: u64) -> Result<RunReport> {
    let mut report = RunReport::new("membership", seed, mode);
    let input = Input::load(&a.input, mode)?;
    let s = support(&a.support, input.ambient())?;
    let q = a
        .point
        .split(',')
        .enumerate()
        .map(|(i, v)| parse_rational(v, mode == Mode::Float).map_err(|e| Error::InvalidInput(format!("--point coordinate {}: {e}", i + 1))))
        .collect::<Result<Vec<Rational>>>()?;
    if q.len() != input.ambient().len() {
        return Err(Error::InvalidInput(format!(
            "--point has {} coordinates, expected {}",
            q.len(),
            input.ambient().len()
        )));
    }
    let m = match mode {
        Mode::Exact => {
            let mat = report.stage("matrix", || build_matrix::<Rational>(input.source(), &s, kernel_rows::<Rational>(&s), seed))?;
            membership(&mat, &q)?
        }
        Mode::Float => {
            let mat = report.stage("matrix", || build_matrix::<f64>(input.source(), &s, kernel_rows::<f64>(&s), seed))?;
            let qf: Vec<f64> = q.iter().map(implicitmat::rational_to_f64).collect();
            membership(&mat, &qf)?
        }
    };
    report.outputs = json!({ "member": m.member, "score": m.score });
    Ok(report)
}

fn corpus(name: &str, seed: u64) -> Result<RunReport> {
    let names: Vec<&str> = if name == "all" { FIXTURE_NAMES.to_vec() } else { vec![name] };
    let mut report = RunReport::new("corpus", seed, Mode::Exact);
    let mut fixtures = Vec::new();
    for n in names {
        let r = report.stage(n, || run_fixture(n, seed))?;
        if name != "all" {
            report.mode = r.mode;
        }
        for c in &r.checks {
            let mut c = c.clone();
            c.name = format!("{}/{}", r.name, c.name);
            report.add_checks([c]);
        }
        report.warnings.extend(r.warnings.iter().map(|w| format!("{}: {w}", r.name)));
        fixtures.push(json!({
            "name": r.name,
            "mode": r.mode,
            "passed": r.passed,
            "polynomials": r.polynomials,
        }));
    }
    report.outputs = json!({ "fixtures": fixtures });
    Ok(report)
}
