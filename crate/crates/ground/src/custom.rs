//! Ground structures read from a poset document, and two small built-in examples.

use std::path::Path;

use dlat_poset::io::PosetDocument;
use dlat_poset::{BoundedPoset, Poset, PosetError};

use crate::error::{GroundError, Result};
use crate::structure::{meet_is_bottom_relation, GroundStructure, Kind, Metadata};

/// Wraps a bounded poset as a custom ground structure: two elements are compatible when
/// their only common lower bound is the bottom.
pub fn custom_structure(name: impl Into<String>, poset: Poset) -> Result<GroundStructure> {
    let base = BoundedPoset::new(poset)?;
    let compatible = meet_is_bottom_relation(&base);
    GroundStructure::new(name, Kind::Custom, base, compatible, None, Metadata::default())
}

/// Builds a custom structure from a poset document, honouring optional bottom/top hints.
pub fn load_lattice(doc: &PosetDocument) -> Result<GroundStructure> {
    let poset = doc.to_poset()?;
    for (hint, actual, which) in [
        (&doc.bottom, poset.bottom(), "minimum"),
        (&doc.top, poset.top(), "maximum"),
    ] {
        if let Some(label) = hint {
            let idx = poset.expect_index(label)?;
            if actual != Some(idx) {
                return Err(PosetError::Unbounded(which).into());
            }
        }
    }
    let name = if doc.name.is_empty() { "custom" } else { &doc.name };
    custom_structure(name, poset)
}

pub fn load_lattice_str(text: &str) -> Result<GroundStructure> {
    load_lattice(&PosetDocument::parse(text)?)
}

pub fn load_lattice_file(path: &Path) -> Result<GroundStructure> {
    let text = std::fs::read_to_string(path).map_err(|e| GroundError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let mut doc = PosetDocument::parse(&text)?;
    if doc.name.is_empty() {
        doc.name = format!("json:{}", path.display());
    }
    load_lattice(&doc)
}

/// Names accepted by [`sample`].
pub const SAMPLE_NAMES: [&str; 2] = ["exchange-failure", "weak"];

/// Built-in examples.
///
/// * `exchange-failure`: `0 < a, b, c`, `a, b < d`, `b, c < e`, `d, e < 1`.
/// * `weak`: `0 < a, b`, `a < c`, `b < d`, `c, d < 1`.
pub fn sample(name: &str) -> Result<GroundStructure> {
    let poset = match name {
        "exchange-failure" => Poset::new(
            vec!["0", "a", "b", "c", "d", "e", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (4, 6), (5, 6)],
        )?,
        "weak" => Poset::new(
            vec!["0", "a", "b", "c", "d", "1"],
            &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)],
        )?,
        other => {
            return Err(GroundError::InvalidParameter(format!(
                "unknown sample {other:?}; expected one of {SAMPLE_NAMES:?}"
            )))
        }
    };
    custom_structure(format!("sample:{name}"), poset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_maxima_rejected() {
        let text = r#"{"name":"v","elements":["0","a","b"],"covers":[[0,1],[0,2]]}"#;
        assert!(matches!(
            load_lattice_str(text),
            Err(GroundError::Poset(PosetError::Unbounded("maximum")))
        ));
    }

    #[test]
    fn wrong_hint_rejected() {
        let text = r#"{"name":"c","elements":["0","1"],"covers":[[0,1]],"top":"0"}"#;
        assert!(load_lattice_str(text).is_err());
        let ok = r#"{"name":"c","elements":["0","1"],"covers":[[0,1]],"top":"1"}"#;
        assert_eq!(load_lattice_str(ok).unwrap().len(), 2);
    }

    #[test]
    fn samples() {
        let ex = sample("exchange-failure").unwrap();
        assert_eq!(ex.len(), 7);
        assert_eq!(ex.rank(), 3);
        let a = ex.index_of("a").unwrap();
        let e = ex.index_of("e").unwrap();
        assert!(ex.compatible(a, e));
        assert!(!ex.compatible(ex.index_of("d").unwrap(), e));
        assert_eq!(sample("weak").unwrap().len(), 6);
        assert!(sample("nope").is_err());
    }
}
