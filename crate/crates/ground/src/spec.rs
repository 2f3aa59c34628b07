//! The structure-spec grammar used on the command line, e.g. `subspace:q=2,n=3`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::custom::{load_lattice_file, sample};
use crate::error::{GroundError, Result};
use crate::formed::{formed_space, FormKind, Involution};
use crate::lattices::{boolean_lattice, partition_lattice, subspace_lattice, uniform_matroid_flats};
use crate::structure::GroundStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureSpec {
    Boolean { n: usize },
    Partition { n: usize },
    Subspace { q: u64, n: usize },
    Uniform { n: usize, k: usize },
    Unitary { q: u64, n: usize },
    Symplectic { q: u64, n: usize },
    Json { path: PathBuf },
    Form { q: u64, gram: PathBuf, sigma: Involution },
    Sample { name: String },
}

fn spec_error(spec: &str, reason: impl Into<String>) -> GroundError {
    GroundError::Spec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn parse_params(spec: &str, body: &str, allowed: &[&str]) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    if body.is_empty() {
        return Ok(out);
    }
    for item in body.split(',') {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| spec_error(spec, format!("expected key=value, got {item:?}")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(spec_error(spec, format!("unknown parameter {k:?}")));
        }
        if out.insert(k.to_string(), v.trim().to_string()).is_some() {
            return Err(spec_error(spec, format!("parameter {k:?} given twice")));
        }
    }
    Ok(out)
}

fn required<T: FromStr>(spec: &str, params: &BTreeMap<String, String>, key: &str) -> Result<T> {
    let raw = params
        .get(key)
        .ok_or_else(|| spec_error(spec, format!("missing parameter {key:?}")))?;
    raw.parse()
        .map_err(|_| spec_error(spec, format!("parameter {key}={raw:?} is not a valid number")))
}

impl FromStr for StructureSpec {
    type Err = GroundError;

    fn from_str(spec: &str) -> Result<StructureSpec> {
        let (kind, body) = spec
            .split_once(':')
            .ok_or_else(|| spec_error(spec, "expected <kind>:<parameters>"))?;
        match kind {
            "json" => {
                if body.is_empty() {
                    return Err(spec_error(spec, "missing path"));
                }
                Ok(StructureSpec::Json { path: body.into() })
            }
            "sample" => Ok(StructureSpec::Sample { name: body.to_string() }),
            "boolean" => {
                let p = parse_params(spec, body, &["n"])?;
                Ok(StructureSpec::Boolean { n: required(spec, &p, "n")? })
            }
            "partition" => {
                let p = parse_params(spec, body, &["n"])?;
                Ok(StructureSpec::Partition { n: required(spec, &p, "n")? })
            }
            "subspace" | "unitary" | "symplectic" => {
                let p = parse_params(spec, body, &["q", "n"])?;
                let q = required(spec, &p, "q")?;
                let n = required(spec, &p, "n")?;
                Ok(match kind {
                    "subspace" => StructureSpec::Subspace { q, n },
                    "unitary" => StructureSpec::Unitary { q, n },
                    _ => StructureSpec::Symplectic { q, n },
                })
            }
            "uniform" => {
                let p = parse_params(spec, body, &["n", "k"])?;
                Ok(StructureSpec::Uniform {
                    n: required(spec, &p, "n")?,
                    k: required(spec, &p, "k")?,
                })
            }
            "form" => {
                let p = parse_params(spec, body, &["q", "gram", "sigma"])?;
                let sigma = match p.get("sigma").map(String::as_str) {
                    Some("frobenius") => Involution::Frobenius,
                    Some("identity") => Involution::Identity,
                    Some(other) => {
                        return Err(spec_error(spec, format!("unknown sigma {other:?}")))
                    }
                    None => return Err(spec_error(spec, "missing parameter \"sigma\"")),
                };
                let gram = p
                    .get("gram")
                    .ok_or_else(|| spec_error(spec, "missing parameter \"gram\""))?;
                Ok(StructureSpec::Form {
                    q: required(spec, &p, "q")?,
                    gram: gram.into(),
                    sigma,
                })
            }
            other => Err(spec_error(spec, format!("unknown structure kind {other:?}"))),
        }
    }
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureSpec::Boolean { n } => write!(f, "boolean:n={n}"),
            StructureSpec::Partition { n } => write!(f, "partition:n={n}"),
            StructureSpec::Subspace { q, n } => write!(f, "subspace:q={q},n={n}"),
            StructureSpec::Uniform { n, k } => write!(f, "uniform:n={n},k={k}"),
            StructureSpec::Unitary { q, n } => write!(f, "unitary:q={q},n={n}"),
            StructureSpec::Symplectic { q, n } => write!(f, "symplectic:q={q},n={n}"),
            StructureSpec::Json { path } => write!(f, "json:{}", path.display()),
            StructureSpec::Form { q, gram, sigma } => write!(
                f,
                "form:q={q},gram={},sigma={}",
                gram.display(),
                match sigma {
                    Involution::Identity => "identity",
                    Involution::Frobenius => "frobenius",
                }
            ),
            StructureSpec::Sample { name } => write!(f, "sample:{name}"),
        }
    }
}

/// Reads a Gram matrix given as a JSON array of rows of integers.
pub fn read_gram(path: &Path) -> Result<Vec<Vec<u64>>> {
    let text = std::fs::read_to_string(path).map_err(|e| GroundError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| GroundError::Io {
        path: path.display().to_string(),
        reason: format!("expected a JSON array of integer rows: {e}"),
    })
}

impl StructureSpec {
    pub fn build(&self) -> Result<GroundStructure> {
        match self {
            StructureSpec::Boolean { n } => boolean_lattice(*n),
            StructureSpec::Partition { n } => partition_lattice(*n),
            StructureSpec::Subspace { q, n } => subspace_lattice(*q, *n),
            StructureSpec::Uniform { n, k } => uniform_matroid_flats(*n, *k),
            StructureSpec::Unitary { q, n } => formed_space(&FormKind::Unitary, *q, *n),
            StructureSpec::Symplectic { q, n } => formed_space(&FormKind::Symplectic, *q, *n),
            StructureSpec::Json { path } => load_lattice_file(path),
            StructureSpec::Form { q, gram, sigma } => {
                let matrix = read_gram(gram)?;
                let dim = matrix.len();
                formed_space(
                    &FormKind::Gram {
                        matrix,
                        involution: *sigma,
                    },
                    *q,
                    dim,
                )
            }
            StructureSpec::Sample { name } => sample(name),
        }
    }
}

/// Parses and builds a structure spec in one step.
pub fn build_structure(spec: &str) -> Result<GroundStructure> {
    spec.parse::<StructureSpec>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "boolean:n=3",
            "partition:n=4",
            "subspace:q=2,n=3",
            "uniform:n=4,k=3",
            "unitary:q=2,n=2",
            "symplectic:q=3,n=4",
            "json:/tmp/x.json",
            "form:q=3,gram=/tmp/g.json,sigma=identity",
            "sample:weak",
        ] {
            assert_eq!(s.parse::<StructureSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn malformed() {
        for s in ["boolean", "boolean:m=3", "boolean:n=x", "subspace:q=2", "torus:n=2", "form:q=3,gram=g"] {
            assert!(s.parse::<StructureSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn builds() {
        assert_eq!(build_structure("uniform:n=4,k=3").unwrap().len(), 12);
        assert_eq!(build_structure("subspace:q=2,n=2").unwrap().name(), "subspace:q=2,n=2");
    }
}
