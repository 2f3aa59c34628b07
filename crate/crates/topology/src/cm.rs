//! Homological Cohen-Macaulay test for posets.

use rayon::prelude::*;
use serde::Serialize;

use dlat_poset::Poset;

use crate::error::Result;
use crate::homology::{homology_poset, HomologyResult, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Interval {
    Whole,
    Below { x: String },
    Above { x: String },
    Open { x: String, y: String },
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Interval::Whole => write!(f, "whole poset"),
            Interval::Below { x } => write!(f, "P_<{x}"),
            Interval::Above { x } => write!(f, "P_>{x}"),
            Interval::Open { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmCertificate {
    pub interval: Interval,
    pub expected_dim: i64,
    pub homology: HomologyResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub ring: Ring,
    pub is_cm: bool,
    pub intervals_checked: usize,
    pub certificate: Option<CmCertificate>,
}

#[derive(Clone, Copy)]
enum Job {
    Whole,
    Below(usize),
    Above(usize),
    Open(usize, usize),
}

/// Checks that `Δ(P)` is homologically spherical of dimension `h(P)` and that every
/// `P_<x`, `P_>x` and open interval `(x, y)` is spherical of dimension `h(x) - 1`,
/// `h(P) - h(x) - 1` and `h(y) - h(x) - 2` respectively. The certificate names the first
/// failing interval in the order: whole, then for each `x` in index order `P_<x`, `P_>x`,
/// then the open intervals `(x, y)`.
pub fn homological_cm(p: &Poset, ring: Ring, budget: usize) -> Result<CmReport> {
    let hp = if p.is_empty() { -1 } else { p.poset_height() as i64 };
    let mut jobs = vec![Job::Whole];
    for x in 0..p.len() {
        jobs.push(Job::Below(x));
        jobs.push(Job::Above(x));
    }
    for x in 0..p.len() {
        for &y in p.above(x) {
            jobs.push(Job::Open(x, y));
        }
    }
    let total = jobs.len();
    let check = |job: &Job| -> Result<Option<CmCertificate>> {
        let (sub, expected, interval) = match *job {
            Job::Whole => (p.clone(), hp, Interval::Whole),
            Job::Below(x) => (
                p.induced(p.below(x)).0,
                p.height(x) as i64 - 1,
                Interval::Below { x: p.label(x).to_string() },
            ),
            Job::Above(x) => (
                p.induced(p.above(x)).0,
                hp - p.height(x) as i64 - 1,
                Interval::Above { x: p.label(x).to_string() },
            ),
            Job::Open(x, y) => (
                p.filter(|z| p.lt(x, z) && p.lt(z, y)).0,
                p.height(y) as i64 - p.height(x) as i64 - 2,
                Interval::Open {
                    x: p.label(x).to_string(),
                    y: p.label(y).to_string(),
                },
            ),
        };
        if sub.is_empty() && expected == -1 {
            return Ok(None);
        }
        let h = homology_poset(&sub, ring, budget)?;
        if h.is_spherical(expected) {
            Ok(None)
        } else {
            Ok(Some(CmCertificate {
                interval,
                expected_dim: expected,
                homology: h,
            }))
        }
    };
    let first = jobs
        .par_iter()
        .map(check)
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match first {
        None => Ok(CmReport {
            ring,
            is_cm: true,
            intervals_checked: total,
            certificate: None,
        }),
        Some(Err(e)) => Err(e),
        Some(Ok(cert)) => Ok(CmReport {
            ring,
            is_cm: false,
            intervals_checked: total,
            certificate: cert,
        }),
    }
}
