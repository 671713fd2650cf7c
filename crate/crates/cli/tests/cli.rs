use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_implicitmat"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn twisted_cubic_kernel_dimension() {
    let r = run(&["implicitize", "--model", &data("twisted_cubic.json"), "--delta", "6"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["outputs"]["kernel_dim"], 65);
    assert_eq!(j["outputs"]["shape"], serde_json::json!([84, 84]));
    assert_eq!(j["outputs"]["criterion_value"], 2);
    assert_eq!(j["outputs"]["polynomials"].as_array().unwrap().len(), 3);
}

#[test]
fn unit_circle_from_model_and_cloud() {
    for input in [["--model", "unit_circle.json"], ["--cloud", "circle_cloud.csv"]] {
        let r = run(&["implicitize", input[0], &data(input[1]), "--delta", "2"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let j = r.json();
        assert_eq!(j["outputs"]["kernel_dim"], 1);
        assert_eq!(j["outputs"]["polynomials"][0], "x1^2 + x2^2 - 1");
    }
}

#[test]
fn float_mode_circle() {
    let r = run(&["--mode", "float", "implicitize", "--model", &data("unit_circle.json"), "--delta", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["mode"], "float");
    assert_eq!(j["outputs"]["kernel_dim"], 1);
    assert_eq!(j["outputs"]["verified"], true);
}

#[test]
fn malformed_inputs_exit_3() {
    let r = run(&["implicitize", "--cloud", &data("bad_cloud.csv"), "--delta", "2"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
    let r = run(&["implicitize", "--model", &data("missing.json"), "--delta", "2"]);
    assert_eq!(r.code, 3);
    let r = run(&["implicitize", "--model", &data("twisted_cubic.json")]);
    assert_eq!(r.code, 3, "no support flag");
    let r = run(&["implicitize", "--model", &data("twisted_cubic.json"), "--delta", "two"]);
    assert_eq!(r.code, 3);
    let r = run(&["no-such-command"]);
    assert_eq!(r.code, 3);
    let r = run(&["rayshoot", "--model", &data("crossed.json"), "--delta", "4", "--ray", "1,0;0"]);
    assert_eq!(r.code, 3);
}

#[test]
fn help_exits_0() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    for cmd in ["implicitize", "rayshoot", "spacecurve", "membership", "corpus"] {
        assert!(r.stdout.contains(cmd), "{cmd}");
    }
}

#[test]
fn crossed_ray_and_patch() {
    let support = data("crossed.support");
    let model = data("crossed.json");
    let r = run(&["rayshoot", "--model", &model, "--support", &support, "--ray", "1,0;0,1;0,1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let hits = r.json()["outputs"]["hits"].clone();
    assert_eq!(hits.as_array().unwrap().len(), 1);
    assert_eq!(hits[0]["rho"], 1.0);
    assert_eq!(hits[0]["on_patch"], true);
    assert_eq!(hits[0]["preimage"], serde_json::json!([1.0, 1.0]));

    let r = run(&[
        "rayshoot", "--model", &model, "--support", &support, "--ray", "1,0;0,1;0,1", "--patch", "t1:2,3;t2:2,3",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["outputs"]["hits"][0]["on_patch"], false);
}

#[test]
fn ray_on_surface_exits_4() {
    let r = run(&[
        "rayshoot",
        "--model",
        &data("crossed.json"),
        "--support",
        &data("crossed.support"),
        "--ray",
        "1,0;0,0;0,0",
    ]);
    assert_eq!(r.code, 4, "{}", r.stderr);
}

#[test]
fn exact_reports_are_reproducible() {
    let args = ["--seed", "7", "implicitize", "--model", &data("twisted_cubic.json"), "--delta", "3"];
    let a = run(&args).json();
    let b = run(&args).json();
    assert_eq!(a["digest"], b["digest"]);
    let strip = |mut v: Value| {
        v["timings"] = Value::Null;
        v
    };
    assert_eq!(strip(a), strip(b));
}

#[test]
fn out_file_and_quiet() {
    let path = std::env::temp_dir().join(format!("implicitmat-cli-{}.json", std::process::id()));
    let p = path.display().to_string();
    let r = run(&["--quiet", "--out", &p, "membership", "--model", &data("twisted_cubic.json"), "--delta", "2", "--point", "2,4,8"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(j["outputs"]["member"], true);
    let r = run(&["membership", "--model", &data("twisted_cubic.json"), "--delta", "2", "--point", "2,4,9"]);
    assert_eq!(r.json()["outputs"]["member"], false);
}

#[test]
fn spacecurve_twisted_cubic() {
    let r = run(&["spacecurve", "--model", &data("twisted_cubic.json"), "--seed", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["outputs"]["degrees"], serde_json::json!([3, 3, 3]));
    assert_eq!(j["outputs"]["apexes"].as_array().unwrap().len(), 3);
    assert_eq!(j["passed"], true);
    let names: Vec<&str> = j["verification"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"off_variety") && names.contains(&"cone_property"), "{names:?}");
}

#[test]
fn spacecurve_interp_path() {
    let r = run(&["spacecurve", "--model", &data("twisted_cubic.json"), "--path", "interp", "--delta", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["outputs"]["degrees"], serde_json::json!([2, 2, 2]));
}

#[test]
fn corpus_fixtures() {
    for name in ["twisted-cubic", "two-cylinders", "crossed"] {
        let r = run(&["corpus", name]);
        assert_eq!(r.code, 0, "{name}: {}", r.stdout);
        assert_eq!(r.json()["passed"], true);
    }
    let r = run(&["corpus", "bicubic-float"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let j = r.json();
    assert_eq!(j["mode"], "float");
    assert!(!j["warnings"].as_array().unwrap().is_empty());
    assert!(r.stderr.contains("warning"));
    assert_eq!(run(&["corpus", "no-such-fixture"]).code, 3);
}
