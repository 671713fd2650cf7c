//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::time::Instant;

use implicitmat::chow::CheckResult;
use implicitmat::Mode;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub mode: Mode,
    pub passed: bool,
    pub outputs: serde_json::Value,
    pub verification: Vec<CheckResult>,
    pub warnings: Vec<String>,
    /// Wall-clock seconds per stage. Excluded from the digest.
    pub timings: BTreeMap<String, f64>,
    /// SHA-256 of the report with `timings` and `digest` emptied.
    pub digest: String,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, mode: Mode) -> Self {
        RunReport {
            command: command.into(),
            seed,
            mode,
            passed: true,
            outputs: serde_json::Value::Null,
            verification: Vec::new(),
            warnings: Vec::new(),
            timings: BTreeMap::new(),
            digest: String::new(),
        }
    }

    /// Runs `f`, recording its duration under `name`.
    pub fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(name.into(), start.elapsed().as_secs_f64());
        out
    }

    pub fn add_checks(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        for c in checks {
            self.passed &= c.passed;
            self.verification.push(c);
        }
    }

    pub fn compute_digest(&self) -> String {
        let mut stripped = self.clone();
        stripped.timings.clear();
        stripped.digest.clear();
        let bytes = serde_json::to_vec(&stripped).expect("reports serialize");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn seal(mut self) -> Self {
        self.digest = self.compute_digest();
        self
    }
}
