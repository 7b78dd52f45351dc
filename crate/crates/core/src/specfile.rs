//! The on-disk spec format: a TOML document with the structure constants,
//! the symplectic form, and optional Morse / torsion / family-parameter
//! sections.
//!
//! ```toml
//! name = "example1"
//! dim = 4
//! d = [[3, [1, 2], 1], [4, [1, 3], 1]]       # d e_k = Σ c · e_i ∧ e_j
//! omega = [[[1, 4], 1], [[2, 3], 1]]          # ω = Σ c · e_i ∧ e_j
//! morse = [1, 2, 4, 2, 1]                     # optional m_0..m_{2n}
//! torsion = [0, 0, 0, 0, 0]                   # optional τ_0..τ_{2n}
//! ```
//!
//! Coefficients are exact rationals: plain integers or strings "p/q".
//! A parametric family file replaces the complex with an `[example2]`
//! table carrying `q` and `p`.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::linalg::{parse_rat, rat_i, Rat};
use crate::nilmanifold::LieAlgebraSpec;

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid field in {path}: {message}")]
    Validation { path: String, message: String },
    #[error("invalid algebra in {path}: {source}")]
    Algebra {
        path: String,
        source: crate::nilmanifold::SpecError,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CoeffValue {
    Int(i64),
    Frac(String),
}

impl CoeffValue {
    pub fn to_rat(&self) -> Option<Rat> {
        match self {
            CoeffValue::Int(v) => Some(rat_i(*v)),
            CoeffValue::Frac(s) => parse_rat(s),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct DEntry(pub usize, pub (usize, usize), pub CoeffValue);

#[derive(Debug, Clone, Deserialize)]
pub struct OmegaEntry(pub (u32, u32), pub CoeffValue);

#[derive(Debug, Clone, Deserialize)]
pub struct Example2Params {
    pub q: i64,
    pub p: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub name: String,
    pub dim: Option<usize>,
    #[serde(default)]
    pub d: Vec<DEntry>,
    #[serde(default)]
    pub omega: Vec<OmegaEntry>,
    pub morse: Option<Vec<u64>>,
    pub torsion: Option<Vec<u64>>,
    pub example2: Option<Example2Params>,
}

/// A parsed and validated spec file: the raw bytes (for digests), the
/// document, and the constructed algebra when the file defines one.
pub struct LoadedSpec {
    pub path: String,
    pub bytes: Vec<u8>,
    pub file: SpecFile,
    pub algebra: Option<LieAlgebraSpec>,
}

pub fn load_spec(path: &Path) -> Result<LoadedSpec, SpecFileError> {
    let path_str = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| SpecFileError::Io {
        path: path_str.clone(),
        source,
    })?;
    let text = String::from_utf8_lossy(&bytes);
    let file: SpecFile = toml::from_str(&text).map_err(|e| SpecFileError::Parse {
        path: path_str.clone(),
        message: e.to_string(),
    })?;
    let algebra = if let Some(dim) = file.dim {
        let d_entries: Vec<(usize, (usize, usize), Rat)> = file
            .d
            .iter()
            .map(|DEntry(k, ij, c)| {
                c.to_rat()
                    .map(|r| (*k, *ij, r))
                    .ok_or_else(|| SpecFileError::Validation {
                        path: path_str.clone(),
                        message: format!("bad coefficient in d entry for e_{k}"),
                    })
            })
            .collect::<Result<_, _>>()?;
        let omega_entries: Vec<((u32, u32), Rat)> = file
            .omega
            .iter()
            .map(|OmegaEntry(ij, c)| {
                c.to_rat()
                    .map(|r| (*ij, r))
                    .ok_or_else(|| SpecFileError::Validation {
                        path: path_str.clone(),
                        message: format!("bad coefficient in omega entry {ij:?}"),
                    })
            })
            .collect::<Result<_, _>>()?;
        if omega_entries.is_empty() {
            return Err(SpecFileError::Validation {
                path: path_str,
                message: "a complex needs a nonzero omega".into(),
            });
        }
        Some(
            LieAlgebraSpec::new(&file.name, dim, &d_entries, &omega_entries).map_err(
                |source| SpecFileError::Algebra {
                    path: path_str.clone(),
                    source,
                },
            )?,
        )
    } else {
        None
    };
    Ok(LoadedSpec {
        path: path_str,
        bytes,
        file,
        algebra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_example1_shape() {
        let f = write_temp(
            r#"
name = "example1"
dim = 4
d = [[3, [1, 2], 1], [4, [1, 3], 1]]
omega = [[[1, 4], 1], [[2, 3], 1]]
morse = [1, 2, 4, 2, 1]
"#,
        );
        let loaded = load_spec(f.path()).unwrap();
        let alg = loaded.algebra.unwrap();
        assert_eq!(alg.betti_numbers(), vec![1, 2, 2, 2, 1]);
        assert_eq!(loaded.file.morse.unwrap(), vec![1, 2, 4, 2, 1]);
    }

    #[test]
    fn parses_rational_strings() {
        let f = write_temp(
            r#"
name = "halves"
dim = 2
d = []
omega = [[[1, 2], "2/2"]]
"#,
        );
        let loaded = load_spec(f.path()).unwrap();
        assert!(loaded.algebra.is_some());
    }

    #[test]
    fn parses_example2_family() {
        let f = write_temp(
            r#"
name = "mcmullen-taubes"

[example2]
q = 2
p = 0
"#,
        );
        let loaded = load_spec(f.path()).unwrap();
        assert!(loaded.algebra.is_none());
        let e2 = loaded.file.example2.unwrap();
        assert_eq!((e2.q, e2.p), (2, 0));
    }

    #[test]
    fn malformed_file_is_a_parse_error() {
        let f = write_temp("name = [unclosed");
        match load_spec(f.path()) {
            Err(SpecFileError::Parse { .. }) => {}
            other => panic!("expected parse error, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn bad_jacobi_is_an_algebra_error() {
        let f = write_temp(
            r#"
name = "bad"
dim = 4
d = [[1, [2, 3], 1], [2, [1, 3], 1]]
omega = [[[1, 4], 1], [[2, 3], 1]]
"#,
        );
        match load_spec(f.path()) {
            Err(SpecFileError::Algebra { .. }) => {}
            _ => panic!("expected algebra error"),
        }
    }

    #[test]
    fn incompatible_omega_rejected() {
        let f = write_temp(
            r#"
name = "scaled"
dim = 2
d = []
omega = [[[1, 2], 2]]
"#,
        );
        assert!(matches!(
            load_spec(f.path()),
            Err(SpecFileError::Algebra { .. })
        ));
    }
}
