//! Structured check reports: stable, versioned records that CI can diff.
//!
//! The JSON form is deterministic for identical inputs and seed (no
//! timestamps, no hash-map ordering); the markdown renderer is for humans.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
    Info,
    Inconclusive,
}

#[derive(Serialize, Clone, Debug)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub got: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    pub status: Status,
}

impl Check {
    pub fn bool(name: impl Into<String>, pass: bool) -> Check {
        Check {
            name: name.into(),
            expected: None,
            got: None,
            residual: None,
            threshold: None,
            status: if pass { Status::Pass } else { Status::Fail },
        }
    }

    pub fn compare<T: PartialEq + std::fmt::Debug>(
        name: impl Into<String>,
        expected: T,
        got: T,
    ) -> Check {
        let status = if expected == got {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name: name.into(),
            expected: Some(format!("{expected:?}")),
            got: Some(format!("{got:?}")),
            residual: None,
            threshold: None,
            status,
        }
    }

    pub fn residual(name: impl Into<String>, residual: f64, threshold: f64) -> Check {
        Check {
            name: name.into(),
            expected: None,
            got: None,
            residual: Some(residual),
            threshold: Some(threshold),
            status: if residual <= threshold {
                Status::Pass
            } else {
                Status::Fail
            },
        }
    }

    pub fn info(name: impl Into<String>, note: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            expected: None,
            got: Some(note.into()),
            residual: None,
            threshold: None,
            status: Status::Info,
        }
    }

    pub fn warn(name: impl Into<String>, note: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            expected: None,
            got: Some(note.into()),
            residual: None,
            threshold: None,
            status: Status::Warn,
        }
    }

    pub fn with_status(mut self, status: Status) -> Check {
        self.status = status;
        self
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct Section {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(name: impl Into<String>, checks: Vec<Check>) -> Section {
        Section {
            name: name.into(),
            checks,
        }
    }

    pub fn failed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new() -> Report {
        Report {
            schema: SCHEMA_VERSION,
            tool: "sympcoh".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input: None,
            input_sha256: None,
            seed: None,
            sections: Vec::new(),
        }
    }

    pub fn with_input(mut self, path: &str, bytes: &[u8]) -> Report {
        use sha2::Digest;
        let mut hasher = sha2::Sha256::new();
        hasher.update(bytes);
        self.input = Some(path.to_string());
        self.input_sha256 = Some(format!("{:x}", hasher.finalize()));
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Report {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn overall(&self) -> Status {
        let mut status = Status::Pass;
        for s in &self.sections {
            for c in &s.checks {
                match c.status {
                    Status::Fail => return Status::Fail,
                    Status::Inconclusive => status = Status::Inconclusive,
                    _ => {}
                }
            }
        }
        status
    }

    /// Exit-code convention: 0 all-pass, 1 failure, 3 inconclusive numerics.
    pub fn exit_code(&self) -> i32 {
        match self.overall() {
            Status::Fail => 1,
            Status::Inconclusive => 3,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "# {} v{} report", self.tool, self.version).unwrap();
        if let Some(input) = &self.input {
            writeln!(out, "- input: `{input}`").unwrap();
        }
        if let Some(digest) = &self.input_sha256 {
            writeln!(out, "- input sha256: `{digest}`").unwrap();
        }
        if let Some(seed) = self.seed {
            writeln!(out, "- seed: {seed}").unwrap();
        }
        writeln!(out, "- overall: **{:?}**", self.overall()).unwrap();
        for s in &self.sections {
            writeln!(out, "\n## {}", s.name).unwrap();
            for c in &s.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Warn => "WARN",
                    Status::Info => "INFO",
                    Status::Inconclusive => "INCONCLUSIVE",
                };
                write!(out, "- [{tag}] {}", c.name).unwrap();
                if let (Some(e), Some(g)) = (&c.expected, &c.got) {
                    write!(out, " (expected {e}, got {g})").unwrap();
                } else if let Some(g) = &c.got {
                    write!(out, " — {g}").unwrap();
                }
                if let (Some(r), Some(t)) = (c.residual, c.threshold) {
                    write!(out, " (residual {r:.3e}, threshold {t:.3e})").unwrap();
                }
                writeln!(out).unwrap();
            }
        }
        out
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}
