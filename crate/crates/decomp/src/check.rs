//! Direct validation of a candidate decomposition against the definition.

use std::fmt;

use dlat_ground::GroundStructure;

use crate::error::{DecompError, Result};
use crate::ops::Ops;

/// Strict decompositions require heights to add up along every subset join; weak ones do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Strict,
    Weak,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::Weak => "weak",
        }
    }
}

/// The first reason a candidate fails, with element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Empty,
    ContainsBottom,
    Repeated(String),
    TooLarge(usize),
    Incompatible(String, String),
    NoJoin(Vec<String>),
    HeightNotAdditive { subset: Vec<String>, join: String },
    JoinsCoincide(Vec<String>, Vec<String>),
    MeetMismatch(Vec<String>, Vec<String>),
    NotSpanning(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &[String]| format!("{{{}}}", s.join(","));
        match self {
            Failure::Empty => write!(f, "empty set of parts"),
            Failure::ContainsBottom => write!(f, "contains the minimum"),
            Failure::Repeated(x) => write!(f, "part {x} listed twice"),
            Failure::TooLarge(k) => write!(f, "{k} parts exceed the supported size"),
            Failure::Incompatible(a, b) => write!(f, "{a} and {b} are not compatible"),
            Failure::NoJoin(s) => write!(f, "{} has no join", set(s)),
            Failure::HeightNotAdditive { subset, join } => {
                write!(f, "join {join} of {} has the wrong height", set(subset))
            }
            Failure::JoinsCoincide(a, b) => {
                write!(f, "{} and {} have the same join", set(a), set(b))
            }
            Failure::MeetMismatch(a, b) => write!(
                f,
                "meet of the joins of {} and {} is not the join of their intersection",
                set(a),
                set(b)
            ),
            Failure::NotSpanning(j) => write!(f, "parts join to {j}, not the maximum"),
        }
    }
}

/// Largest number of parts examined; a decomposition has at most `rank` parts anyway.
pub const MAX_PARTS: usize = 20;

fn labels_of(gs: &GroundStructure, parts: &[usize], mask: usize) -> Vec<String> {
    (0..parts.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| gs.label(parts[i]).to_string())
        .collect()
}

/// Checks every clause of the definition for `parts`, returning the first failure.
///
/// Index errors are reported as `Err`; a well-formed but invalid candidate yields
/// `Ok(Some(failure))`.
pub fn check_decomposition(
    gs: &GroundStructure,
    parts: &[usize],
    mode: Mode,
) -> Result<Option<Failure>> {
    check_with(&Ops::new(gs), parts, mode)
}

pub(crate) fn check_with(ops: &Ops<'_>, parts: &[usize], mode: Mode) -> Result<Option<Failure>> {
    let gs = ops.structure();
    if let Some(&bad) = parts.iter().find(|&&x| x >= gs.len()) {
        return Err(DecompError::UnknownElement(format!("#{bad}")));
    }
    Ok(find_failure(ops, parts, mode))
}

fn find_failure(ops: &Ops<'_>, parts: &[usize], mode: Mode) -> Option<Failure> {
    let gs = ops.structure();
    let k = parts.len();
    if k == 0 {
        return Some(Failure::Empty);
    }
    if k > MAX_PARTS {
        return Some(Failure::TooLarge(k));
    }
    if parts.contains(&gs.bottom()) {
        return Some(Failure::ContainsBottom);
    }
    for i in 0..k {
        if parts[i + 1..].contains(&parts[i]) {
            return Some(Failure::Repeated(gs.label(parts[i]).to_string()));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if !gs.compatible(parts[i], parts[j]) {
                return Some(Failure::Incompatible(
                    gs.label(parts[i]).to_string(),
                    gs.label(parts[j]).to_string(),
                ));
            }
        }
    }
    let full = (1usize << k) - 1;
    let mut joins = vec![0usize; full + 1];
    for mask in 0..=full {
        let subset: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| parts[i]).collect();
        let Some(j) = ops.join_set(&subset) else {
            return Some(Failure::NoJoin(labels_of(gs, parts, mask)));
        };
        if mode == Mode::Strict {
            let hsum: usize = subset.iter().map(|&x| gs.height(x)).sum();
            if gs.height(j) != hsum {
                return Some(Failure::HeightNotAdditive {
                    subset: labels_of(gs, parts, mask),
                    join: gs.label(j).to_string(),
                });
            }
        }
        joins[mask] = j;
    }
    let mut owner = vec![usize::MAX; gs.len()];
    for (mask, &j) in joins.iter().enumerate() {
        if owner[j] != usize::MAX {
            return Some(Failure::JoinsCoincide(
                labels_of(gs, parts, owner[j]),
                labels_of(gs, parts, mask),
            ));
        }
        owner[j] = mask;
    }
    for a in 0..=full {
        for b in a + 1..=full {
            if ops.meet(joins[a], joins[b]) != Some(joins[a & b]) {
                return Some(Failure::MeetMismatch(
                    labels_of(gs, parts, a),
                    labels_of(gs, parts, b),
                ));
            }
        }
    }
    if joins[full] != gs.top() {
        return Some(Failure::NotSpanning(gs.label(joins[full]).to_string()));
    }
    None
}

/// True when `parts` is a full decomposition in the given mode.
pub fn is_full_decomposition(gs: &GroundStructure, parts: &[usize], mode: Mode) -> Result<bool> {
    Ok(check_decomposition(gs, parts, mode)?.is_none())
}

/// Resolves labels to indices.
pub fn parse_parts(gs: &GroundStructure, labels: &[&str]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| {
            gs.index_of(l)
                .ok_or_else(|| DecompError::UnknownElement(l.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dlat_ground::{boolean_lattice, sample};

    #[test]
    fn boolean_atoms_decompose() {
        let b = boolean_lattice(3).unwrap();
        let parts = parse_parts(&b, &["{1}", "{2}", "{3}"]).unwrap();
        assert_eq!(check_decomposition(&b, &parts, Mode::Strict).unwrap(), None);
        let two = parse_parts(&b, &["{1}", "{2,3}"]).unwrap();
        assert!(is_full_decomposition(&b, &two, Mode::Strict).unwrap());
        let overlap = parse_parts(&b, &["{1,2}", "{2,3}"]).unwrap();
        assert!(!is_full_decomposition(&b, &overlap, Mode::Strict).unwrap());
    }

    #[test]
    fn weak_only_candidate() {
        let s = sample("weak").unwrap();
        let parts = parse_parts(&s, &["a", "b"]).unwrap();
        assert_eq!(check_decomposition(&s, &parts, Mode::Weak).unwrap(), None);
        assert!(matches!(
            check_decomposition(&s, &parts, Mode::Strict).unwrap(),
            Some(Failure::HeightNotAdditive { .. })
        ));
    }

    #[test]
    fn reasons() {
        let b = boolean_lattice(2).unwrap();
        let bottom = b.bottom();
        assert_eq!(check_decomposition(&b, &[], Mode::Strict).unwrap(), Some(Failure::Empty));
        assert_eq!(
            check_decomposition(&b, &[bottom], Mode::Strict).unwrap(),
            Some(Failure::ContainsBottom)
        );
        let one = parse_parts(&b, &["{1}"]).unwrap();
        assert!(matches!(
            check_decomposition(&b, &one, Mode::Strict).unwrap(),
            Some(Failure::NotSpanning(_))
        ));
        assert!(check_decomposition(&b, &[99], Mode::Strict).is_err());
    }
}
