use serde_json::{json, Value};
use sextic_core::families::FamilySpec;
use sextic_core::lattice::{fixed_locus_predict, FixedLocusData, LatticeError, NikulinInvariant};
use sha2::{Digest, Sha256};
use std::time::Instant;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Retry = 2,
    Io = 3,
    Mismatch = 4,
    Genericity = 5,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Machine-readable reason code, set on failure.
    pub reason: Option<String>,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, reason: &str, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, reason: (!pass).then(|| reason.to_string()), detail: detail.into() }
    }
}

pub struct RunReport {
    pub command: &'static str,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
    pub result: Option<Value>,
    /// Extra human-readable text printed before the checks.
    pub summary: Option<String>,
    pub exit: Exit,
    started: Instant,
}

impl RunReport {
    pub fn new(command: &'static str, inputs: Value) -> RunReport {
        RunReport { command, inputs, checks: vec![], artifacts: vec![], result: None, summary: None, exit: Exit::Ok, started: Instant::now() }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn fail(&mut self, exit: Exit, name: &str, reason: &str, detail: impl Into<String>) {
        self.checks.push(Check::new(name, false, reason, detail));
        self.exit = exit;
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": "sextic",
            "version": env!("CARGO_PKG_VERSION"),
            "expected_table_hash": expected_table_hash(),
            "command": self.command,
            "inputs": self.inputs,
            "exit_code": self.exit as i32,
            "pass": self.all_pass() && self.exit == Exit::Ok,
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "reason": c.reason, "detail": c.detail})).collect::<Vec<_>>(),
            "timing_ms": self.started.elapsed().as_millis() as u64,
            "artifacts": self.artifacts,
            "result": self.result,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = self.summary.clone().unwrap_or_default();
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            let reason = c.reason.as_deref().map(|r| format!(" [{r}]")).unwrap_or_default();
            s += &format!("{mark} {}{reason}: {}\n", c.name, c.detail);
        }
        for a in &self.artifacts {
            s += &format!("wrote {a}\n");
        }
        s
    }
}

/// The expected (r, a, δ) and predicted (g, k) rows, one line per family.
pub fn expected_table() -> Vec<String> {
    (3..=18)
        .map(|r| {
            let spec = FamilySpec::get(r).expect("label in range");
            let (r, a, d) = spec.invariants;
            let gk = predicted_gk(r, a, d).map(|f| format!("{} {}", f.g, f.k)).unwrap_or_else(|e| e.to_string());
            format!("{r} {a} {d} {gk} {}", spec.description)
        })
        .collect()
}

pub fn predicted_gk(r: u32, a: u32, delta: u32) -> Result<FixedLocusData, LatticeError> {
    fixed_locus_predict(&NikulinInvariant { r, a, delta, signature: (1, r - 1) })
}

pub fn expected_table_hash() -> String {
    let mut h = Sha256::new();
    for line in expected_table() {
        h.update(line.as_bytes());
        h.update(b"\n");
    }
    format!("{:x}", h.finalize())
}
