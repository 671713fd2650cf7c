//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Expected values come from the oracles in `common`, which share no code
//! with the library's elimination, resultant or root-isolation routines.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use implicitmat::chow::{
    conical_surface, general_codim_implicitize, make_config, make_config_with, space_curve_system, Apex, ChowPath,
    ConfigOptions, ConicalSurface, PointConfig,
};
use implicitmat::corpus::fixture;
use implicitmat::interp::{bordered_rows, build_matrix, implicitize_model, ImplicitizeOptions, Source};
use implicitmat::model::ParamModel;
use implicitmat::poly::parse_poly;
use implicitmat::rayshoot::{preprocess, preprocess_model, ray_poly, shoot, Ray, SurfacePatch};
use implicitmat::supports::{simplex_support, MonomialSupport};
use implicitmat::{parse_rational, Error, Mode, MultiPoly, Rational, Vars};
use num_traits::Zero;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: implicitmat::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn polys(eqs: &[&str]) -> Vec<MultiPoly> {
    let v = Vars::indexed("x", 3);
    eqs.iter().map(|e| parse_poly(e, &v).unwrap()).collect()
}

fn kernel_case(name: &str, curve: Curve, delta: u32, size: usize, dim: usize, known: &[&str]) -> Outcome {
    let model = fixture(name).unwrap().model;
    let support = simplex_support(3, delta);
    let r = lib(implicitize_model::<Rational>(&model, &support, 1, &ImplicitizeOptions::default()))?;
    ensure!(r.shape == (size, size), "{name}: shape {:?}", r.shape);
    ensure!(r.kernel.dim() == dim, "{name}: kernel dimension {}", r.kernel.dim());

    // Local interpolation matrix on independent samples. Its rank mod p
    // bounds the rational rank from below; the library's kernel vectors,
    // checked to vanish on the same samples, bound it from above.
    let exps = simplex_exponents(3, delta);
    let pts = curve.samples(size + 20, 101);
    let m: Vec<Vec<Rational>> = pts.iter().map(|x| exps.iter().map(|e| monomial(e, x)).collect()).collect();
    for p in &r.kernel.polys {
        ensure!(pts.iter().all(|x| eval(p, x).is_zero()), "{name}: a kernel polynomial misses a sample");
    }
    let independent = poly_rank(&r.kernel.polys.iter().collect::<Vec<_>>());
    let lower = rank_mod_p(&m);
    ensure!(
        lower + independent == exps.len(),
        "{name}: rank bounds {lower} and {} do not meet",
        exps.len() - independent
    );
    let minimal = &r.selection.minimal;
    let known = polys(known);
    ensure!(
        minimal.iter().all(|p| p.total_degree() == 2) && minimal.len() == known.len(),
        "{name}: minimal selection has {} polynomials of degree {}",
        minimal.len(),
        r.selection.value
    );
    ensure!(same_span(minimal, &known), "{name}: span differs from the reference quadrics");
    Ok(format!("{name}: {size}x{size}, kernel {dim}, {} quadrics", minimal.len()))
}

fn crit1() -> Outcome {
    kernel_case("twisted-cubic", twisted_cubic(), 6, 84, 65, &["x1^2 - x2", "x2^2 - x1*x3", "x1*x2 - x3"])
}

fn crit2() -> Outcome {
    kernel_case("two-cylinders", two_cylinders(), 8, 165, 133, &["x1^2 - x3", "x2^2 + x3 - 1"])
}

/// The rows `G_1..G_k, P` of a hyperplane, homogenized.
fn fixed_rows(cfg: &PointConfig, extra: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    cfg.apexes
        .iter()
        .map(Apex::homogeneous)
        .chain(extra.iter().map(|p| homogenize(p)))
        .collect()
}

/// Recomputes `Res_t(H_0, H_1)` pointwise and checks it against
/// `E_L^k * poly` and the claimed degrees.
fn resultant_oracle(curve: &Curve, cone: &ConicalSurface, k: u32, seed: u64) -> Result<(), String> {
    let cfg = &cone.config;
    let delta = curve.degree();
    let n = curve.n();
    let all_points: Vec<Vec<Rational>> = cfg.point_sets.iter().flatten().cloned().collect();
    let e_rows = fixed_rows(cfg, &all_points);
    let e_at = |x: &[Rational]| {
        let mut m = vec![homogenize(x)];
        m.extend(e_rows.iter().cloned());
        det(m)
    };
    let r_at = |x: &[Rational]| {
        let h0 = curve.hyperplane(x, &fixed_rows(cfg, &cfg.point_sets[0]));
        let h1 = curve.hyperplane(x, &fixed_rows(cfg, &cfg.point_sets[1]));
        sylvester(&h0, delta, &h1, delta)
    };
    let mut g = rng(seed);
    let mut ratio: Option<Rational> = None;
    for _ in 0..30 {
        let x: Vec<Rational> = (0..n).map(|_| random_rational(&mut g, 40, 7)).collect();
        let rhs = pow(&e_at(&x), k) * eval(&cone.poly, &x);
        let lhs = r_at(&x);
        if rhs.is_zero() {
            ensure!(lhs.is_zero(), "resultant nonzero where E^k * poly vanishes");
            continue;
        }
        let c = lhs / rhs;
        ensure!(!c.is_zero(), "resultant vanishes off the claimed factors");
        match &ratio {
            None => ratio = Some(c),
            Some(r) => ensure!(*r == c, "resultant is not a constant multiple of E^k * poly"),
        }
    }
    ensure!(ratio.is_some(), "no usable evaluation point");
    let a: Vec<Rational> = (0..n).map(|_| random_rational(&mut g, 20, 5)).collect();
    let b: Vec<Rational> = (0..n).map(|_| random_rational(&mut g, 20, 5)).collect();
    let along: Vec<Rational> = (0..2 * delta + 4)
        .map(|s| {
            let x: Vec<Rational> = a.iter().zip(&b).map(|(a, b)| a + b * q(s as i64)).collect();
            r_at(&x)
        })
        .collect();
    let d = degree_from_values(&along);
    ensure!(d == Some(2 * delta), "resultant degree along a line is {d:?}, expected {}", 2 * delta);
    Ok(())
}

fn crit3() -> Outcome {
    let mut detail = Vec::new();
    for (name, curve) in [("twisted-cubic", twisted_cubic()), ("two-cylinders", two_cylinders())] {
        let model = fixture(name).unwrap().model;
        let delta = curve.degree() as u32;
        let samples = curve.samples(100, 202);
        for seed in 1..=10u64 {
            let cfg = lib(make_config(&model, seed, 10))?;
            let cone = lib(conical_surface(&model, &cfg))?;
            ensure!(
                cone.resultant_degree == 2 * delta && cone.exponent == delta && cone.poly.total_degree() == delta,
                "{name} seed {seed}: degrees {}/{}/{}",
                cone.resultant_degree,
                cone.exponent,
                cone.poly.total_degree()
            );
            resultant_oracle(&curve, &cone, delta, 300 + seed).map_err(|e| format!("{name} seed {seed}: {e}"))?;
            ensure!(
                samples.iter().all(|x| eval(&cone.poly, x).is_zero()),
                "{name} seed {seed}: quotient misses a curve sample"
            );
        }
        detail.push(format!("{name}: resultant {} = E^{delta} * degree {delta}", 2 * delta));
    }
    Ok(format!("{} over 10 seeds each", detail.join("; ")))
}

/// Integer probes in `[-10, 10]^n` that are not on the object.
fn off_probes(count: usize, n: usize, seed: u64, on: impl Fn(&[Rational]) -> bool) -> Vec<Vec<Rational>> {
    let mut g = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let x: Vec<Rational> = (0..n).map(|_| q(g.random_range(-10..=10))).collect();
        if !on(&x) {
            out.push(x);
        }
    }
    out
}

fn crit4() -> Outcome {
    let mut detail = Vec::new();
    for (name, curve) in [
        ("twisted-cubic", twisted_cubic()),
        ("two-cylinders", two_cylinders()),
        ("viviani-a2", viviani()),
    ] {
        let fx = fixture(name).unwrap();
        let known = fx.known_equations.clone();
        let sys = lib(space_curve_system(&fx.model, 1))?;
        ensure!(sys.polys.len() == 3, "{name}: {} surfaces", sys.polys.len());
        let apexes: Vec<Vec<Rational>> = sys.surfaces().map(|c| c.apex.homogeneous()).collect();
        ensure!(rank(apexes) == 3, "{name}: apexes are collinear");
        let on = curve.samples(100, 404);
        ensure!(
            on.iter().all(|x| sys.polys.iter().all(|p| eval(p, x).is_zero())),
            "{name}: a curve sample is not on every surface"
        );
        let probes = off_probes(200, 3, 505, |x| known.iter().all(|p| eval(p, x).is_zero()));
        let caught = probes
            .iter()
            .filter(|x| sys.polys.iter().any(|p| !eval(p, x).is_zero()))
            .count();
        ensure!(caught == probes.len(), "{name}: {} of 200 probes satisfy all three", probes.len() - caught);
        detail.push(name);
    }
    Ok(format!("{}: 100 on-curve samples, 200 off-curve probes rejected", detail.join(", ")))
}

fn cone_probe(curve: &Curve, cone: &ConicalSurface, seed: u64) -> Result<(), String> {
    let mut g = rng(seed);
    let h = cone.apex.homogeneous();
    for q0 in curve.samples(20, seed) {
        let lambda = random_rational(&mut g, 50, 9);
        let x: Vec<Rational> = if h[0].is_zero() {
            q0.iter().zip(&h[1..]).map(|(q, v)| q + &lambda * v).collect()
        } else {
            q0.iter().zip(&h[1..]).map(|(q, a)| a + &lambda * (q - a)).collect()
        };
        ensure!(eval(&cone.poly, &x).is_zero(), "nonzero at a ruling point");
    }
    Ok(())
}

fn crit5() -> Outcome {
    let mut count = 0;
    for (name, curve) in [
        ("twisted-cubic", twisted_cubic()),
        ("two-cylinders", two_cylinders()),
        ("viviani-a2", viviani()),
    ] {
        let model = fixture(name).unwrap().model;
        let sys = lib(space_curve_system(&model, 2))?;
        for (i, cone) in sys.surfaces().enumerate() {
            cone_probe(&curve, cone, 600 + i as u64).map_err(|e| format!("{name} system cone {i}: {e}"))?;
            count += 1;
        }
        if name != "viviani-a2" {
            for seed in 1..=3 {
                let cone = lib(make_config(&model, seed, 10).and_then(|c| conical_surface(&model, &c)))?;
                cone_probe(&curve, &cone, 700 + seed).map_err(|e| format!("{name} seed {seed}: {e}"))?;
                count += 1;
            }
            let opts = ConfigOptions {
                apex_at_infinity: true,
                ..ConfigOptions::default()
            };
            let cone = lib(make_config_with(&model, 9, &opts).and_then(|c| conical_surface(&model, &c)))?;
            ensure!(matches!(cone.apex, Apex::Direction(_)), "{name}: expected a cylinder");
            cone_probe(&curve, &cone, 800).map_err(|e| format!("{name} cylinder: {e}"))?;
            count += 1;
        }
    }
    let curve = curve4d();
    let model = fixture("curve4d").unwrap().model;
    let sys = lib(general_codim_implicitize(&model, 3, 2, ChowPath::Resultant))?;
    for (i, cone) in sys.surfaces().enumerate() {
        cone_probe(&curve, cone, 900 + i as u64).map_err(|e| format!("curve4d cone {i}: {e}"))?;
        count += 1;
    }
    Ok(format!("{count} surfaces (cones and cylinders), 20 ruling points each"))
}

struct Surface {
    name: &'static str,
    model: ParamModel,
    support: MonomialSupport,
    implicit: MultiPoly,
}

fn surfaces() -> Vec<Surface> {
    let t = Vars::indexed("t", 2);
    let x = Vars::indexed("x", 3);
    let plane = ParamModel::parse(&t, x.clone(), &[("t1", "1"), ("t2", "1"), ("t1 + 2*t2 - 1", "1")], Mode::Exact)
        .unwrap();
    let sphere = ParamModel::parse(
        &t,
        x.clone(),
        &[
            ("2*t1", "1 + t1^2 + t2^2"),
            ("2*t2", "1 + t1^2 + t2^2"),
            ("t1^2 + t2^2 - 1", "1 + t1^2 + t2^2"),
        ],
        Mode::Exact,
    )
    .unwrap();
    let crossed = fixture("crossed").unwrap();
    let moebius = fixture("moebius").unwrap();
    vec![
        Surface {
            name: "crossed",
            support: crossed.support.clone().unwrap(),
            implicit: crossed.known_equations[0].clone(),
            model: crossed.model,
        },
        Surface {
            name: "plane",
            model: plane,
            support: MonomialSupport::parse("0 0 0\n1 0 0\n0 1 0\n0 0 1\n", x.clone()).unwrap(),
            implicit: polys(&["x3 - x1 - 2*x2 + 1"]).remove(0),
        },
        Surface {
            name: "sphere",
            model: sphere,
            support: simplex_support(3, 2),
            implicit: polys(&["x1^2 + x2^2 + x3^2 - 1"]).remove(0),
        },
        Surface {
            name: "moebius",
            support: moebius.support.clone().unwrap(),
            implicit: moebius.known_equations[0].clone(),
            model: moebius.model,
        },
    ]
}

/// Compares `shoot` with the positive roots of the implicit equation
/// restricted to the ray. Returns the number of hits.
fn compare_ray(s: &Surface, pre: &implicitmat::rayshoot::RayPreproc<Rational>, coeffs: &[(Rational, Rational)]) -> Result<usize, String> {
    let ray = lib(Ray::new(coeffs.to_vec()))?;
    let mut g = restrict_to_ray(&s.implicit, coeffs);
    let patch = SurfacePatch::unbounded(s.model.clone());
    if g.is_empty() {
        ensure!(matches!(shoot(pre, &patch, &ray), Err(Error::RayOnSurface)), "ray on surface not reported");
        return Ok(0);
    }
    while g.first().is_some_and(Zero::is_zero) {
        g.remove(0);
    }
    let expected = if g.len() <= 1 { 0 } else { count_roots(&g, &Rational::zero(), &cauchy_bound(&g)) };
    let hits = lib(shoot(pre, &patch, &ray))?;
    ensure!(hits.len() == expected, "{} hits, oracle has {expected} positive roots", hits.len());
    let mut prev_hi: Option<Rational> = None;
    for h in &hits {
        let lo = parse_rational(&h.rho_lo, false).unwrap();
        let hi = parse_rational(&h.rho_hi, false).unwrap();
        ensure!(lo > Rational::zero() || (lo.is_zero() && hi > lo), "non-positive rho {lo}");
        if let Some(p) = &prev_hi {
            ensure!(*p < lo, "hit intervals overlap");
        }
        let contains = if lo == hi {
            u_eval(&g, &lo).is_zero()
        } else {
            count_roots(&g, &lo, &hi) == 1 && !u_eval(&g, &lo).is_zero()
        };
        ensure!(contains, "interval [{lo}, {hi}] does not isolate an oracle root");
        let m = multiplicity_in(&g, &lo, &hi);
        ensure!(m == h.multiplicity as usize, "multiplicity {} vs oracle {m}", h.multiplicity);
        if let Some(t) = &h.preimage {
            let x = s.model.eval_f64(t);
            let close = x.iter().zip(&h.point).all(|(a, b)| (a - b).abs() <= 1e-6 * (1.0 + b.abs()));
            ensure!(close, "preimage does not map to the hit point");
        }
        prev_hi = Some(hi);
    }
    Ok(hits.len())
}

fn crit6() -> Outcome {
    let mut detail = Vec::new();
    for s in surfaces().into_iter().filter(|s| s.name != "moebius") {
        let mprime = lib(build_matrix::<Rational>(Source::Model(&s.model), &s.support, bordered_rows(&s.support), 11))?;
        let pre = lib(preprocess(&mprime))?;
        let mut g = rng(1000);
        let mut total = 0;
        let mut rays = 0;
        while rays < 20 {
            let coeffs: Vec<(Rational, Rational)> = (0..3)
                .map(|_| (q(g.random_range(-5..=5)), qf(g.random_range(-8..=8), 4)))
                .collect();
            if coeffs.iter().all(|(a, _)| a.is_zero()) {
                continue;
            }
            if s.name == "sphere" {
                // The parameterization misses the north pole.
                let d: Vec<Rational> = coeffs.iter().map(|(a, _)| a.clone()).collect();
                let w: Vec<Rational> = coeffs
                    .iter()
                    .zip([q(0), q(0), q(1)])
                    .map(|((_, b), p)| p - b)
                    .collect();
                let cross = [
                    &d[1] * &w[2] - &d[2] * &w[1],
                    &d[2] * &w[0] - &d[0] * &w[2],
                    &d[0] * &w[1] - &d[1] * &w[0],
                ];
                if cross.iter().all(Zero::is_zero) {
                    continue;
                }
            }
            total += compare_ray(&s, &pre, &coeffs).map_err(|e| format!("{} ray {rays}: {e}", s.name))?;
            rays += 1;
        }
        detail.push(format!("{} {total} hits", s.name));
        if s.name == "sphere" {
            let tangent = [(q(0), q(1)), (q(1), q(-1)), (q(1), q(-1))];
            let ray = lib(Ray::new(tangent.to_vec()))?;
            let hits = lib(shoot(&pre, &SurfacePatch::unbounded(s.model.clone()), &ray))?;
            ensure!(
                hits.len() == 1 && hits[0].multiplicity == 2 && hits[0].rho_lo == "1",
                "tangent ray: {hits:?}"
            );
            compare_ray(&s, &pre, &tangent)?;
        }
        if s.name == "crossed" {
            let ray = lib(Ray::parse("1,0;0,1;0,1", false))?;
            let inside = lib(SurfacePatch::new(s.model.clone(), vec![(q(-2), q(2)); 2]))?;
            let outside = lib(SurfacePatch::new(s.model.clone(), vec![(q(2), q(3)); 2]))?;
            let a = lib(shoot(&pre, &inside, &ray))?;
            let b = lib(shoot(&pre, &outside, &ray))?;
            ensure!(
                a.len() == 1 && a[0].on_patch && a[0].preimage == Some(vec![1.0, 1.0]),
                "patch test inside: {a:?}"
            );
            ensure!(b.len() == 1 && !b[0].on_patch, "patch test outside: {b:?}");
        }
    }
    Ok(format!("20 rays each: {}; tangent multiplicity 2; patch filter", detail.join(", ")))
}

fn crit7() -> Outcome {
    let mut detail = Vec::new();
    for s in surfaces() {
        ensure!(s.support.len() <= 20, "{}: |S| = {}", s.name, s.support.len());
        let mprime = lib(build_matrix::<Rational>(Source::Model(&s.model), &s.support, bordered_rows(&s.support), 5))?;
        let pre = lib(preprocess(&mprime))?;
        let exps: Vec<Vec<u32>> = s.support.monomials().iter().map(|m| m.exponents().to_vec()).collect();
        let mut g = rng(77);
        let mut ratio: Option<Rational> = None;
        let mut used = 0;
        let mut tries = 0;
        while used < 20 {
            tries += 1;
            ensure!(tries < 1000, "{}: too many singular evaluation points", s.name);
            let x: Vec<Rational> = (0..3).map(|_| random_rational(&mut g, 50, 7)).collect();
            let row: Vec<Rational> = exps.iter().map(|e| monomial(e, &x)).collect();
            let lhs = pre.w().iter().zip(&row).fold(Rational::zero(), |acc, (w, r)| acc + w * r);
            let mut m: Vec<Vec<Rational>> = mprime.matrix().rows().map(<[Rational]>::to_vec).collect();
            m.push(row);
            let d = det(m);
            if d.is_zero() {
                ensure!(lhs.is_zero(), "{}: <w, S(x)> nonzero where det M(x) = 0", s.name);
                continue;
            }
            let c = lhs / d;
            ensure!(!c.is_zero(), "{}: zero ratio", s.name);
            match &ratio {
                None => ratio = Some(c),
                Some(r) => ensure!(*r == c, "{}: ratio changes", s.name),
            }
            used += 1;
        }
        detail.push(format!("{} (|S| = {})", s.name, s.support.len()));
    }
    Ok(format!("constant ratio at 20 points: {}", detail.join(", ")))
}

fn on_curve4d(curve: &Curve, x: &[Rational]) -> bool {
    // x3 - x1 = 2t on this curve.
    let t = (&x[2] - &x[0]) / q(2);
    curve.point(&t).is_some_and(|p| p == x)
}

fn crit8() -> Outcome {
    let curve = curve4d();
    let model = fixture("curve4d").unwrap().model;
    let sys = lib(general_codim_implicitize(&model, 1, 5, ChowPath::Resultant))?;
    let cones: Vec<&ConicalSurface> = sys.surfaces().collect();
    ensure!(cones.len() == 5, "{} runs", cones.len());
    for (i, c) in cones.iter().enumerate() {
        ensure!(
            c.resultant_degree == 6 && c.exponent == 3 && c.poly.total_degree() == 3,
            "run {i}: degrees {}/{}/{}",
            c.resultant_degree,
            c.exponent,
            c.poly.total_degree()
        );
        resultant_oracle(&curve, c, 3, 40 + i as u64).map_err(|e| format!("run {i}: {e}"))?;
    }
    let on = curve.samples(100, 808);
    ensure!(
        on.iter().all(|x| sys.polys.iter().all(|p| eval(p, x).is_zero())),
        "a quotient misses a curve sample"
    );
    let probes = off_probes(200, 4, 909, |x| on_curve4d(&curve, x));
    let missed = probes.iter().filter(|x| sys.polys.iter().all(|p| eval(p, x).is_zero())).count();
    ensure!(missed == 0, "{missed} of 200 off-curve probes satisfy all quotients");
    Ok("5 runs: degree 6 = (linear)^3 * cubic; 100 samples vanish, 200 probes rejected".into())
}

fn crit9() -> Outcome {
    let fx = fixture("bicubic-float").unwrap();
    let support = fx.support.clone().unwrap();
    let expected = (0..=18u32)
        .flat_map(|a| (0..=18 - a).flat_map(move |b| (0..=(18 - a - b) / 2).map(move |c| (a, b, c))))
        .count();
    ensure!(support.len() == 715 && expected == 715, "support sizes {} / {expected}", support.len());
    let pre = lib(preprocess_model::<f64>(&fx.model, &support, 1))?;
    let ray = lib(Ray::parse("1,-13;1,12;-5,3", false))?;
    let p = lib(ray_poly(&pre, &ray))?;
    let deg = p.degree().unwrap_or(0);
    ensure!(deg <= 18, "deg p(rho) = {deg}");
    let warning = pre.warning().ok_or("no condition warning")?;
    Ok(format!(
        "|S| = 715, deg p(rho) = {deg}, pivot ratio {:.2e}, warning: {warning}",
        pre.condition_estimate()
    ))
}

fn main() {
    let criteria: [(u32, &str, bool, fn() -> Outcome); 9] = [
        (1, "twisted cubic kernel", true, crit1),
        (2, "two-cylinders kernel", true, crit2),
        (3, "cone degree structure", true, crit3),
        (4, "three surfaces at probe level", true, crit4),
        (5, "cone property", true, crit5),
        (6, "ray shooting oracle", true, crit6),
        (7, "bordered determinant proportionality", true, crit7),
        (8, "4D curve", true, crit8),
        (9, "bicubic float stress (non-blocking)", false, crit9),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut blocking_failures = 0;
    for (id, name, blocking, f) in criteria {
        if filter.is_some_and(|k| k != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS {id} {name} ({secs:.1}s): {d}"),
            Err(e) => {
                println!("FAIL {id} {name} ({secs:.1}s): {e}");
                if blocking {
                    blocking_failures += 1;
                }
            }
        }
    }
    if blocking_failures > 0 {
        std::process::exit(1);
    }
}
