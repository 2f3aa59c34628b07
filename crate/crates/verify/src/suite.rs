//! The acceptance matrix: every criterion as a list of independent cases.

use std::time::Instant;

use dlat_decomp::{height_certificate, lattice_pair, Analysis, DecompKind, Property};
use dlat_derived::{
    charney_beta, frame_complexes, g_map, injective_words, ordered_version, partial_basis_complexes,
};
use dlat_ground::{build_structure, GroundStructure, Kind};
use dlat_poset::Poset;
use dlat_topology::{homological_cm, homology_poset, Ring};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, VerifyError};
use crate::identity::{homology_string, kv, run_identity, spec_params, IdentityReport, Limits};
use crate::objects::{restrict, Part};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Fast,
}

impl std::str::FromStr for Scope {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Scope> {
        match s {
            "all" => Ok(Scope::All),
            "fast" => Ok(Scope::Fast),
            other => Err(VerifyError::Usage(format!("unknown scope {other:?}, expected all or fast"))),
        }
    }
}

pub struct CaseOutcome {
    pub pass: bool,
    pub detail: String,
}

type CaseFn = Box<dyn Fn(&Limits) -> Result<CaseOutcome> + Send + Sync>;

pub struct Case {
    pub label: String,
    /// Included in the fast scope.
    pub fast: bool,
    run: CaseFn,
}

pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    pub cases: Vec<Case>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub criterion: String,
    pub case: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: String,
    pub title: String,
    pub pass: bool,
    pub cases: Vec<CaseReport>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub scope: String,
    pub pass: bool,
    pub criteria: Vec<CriterionReport>,
}

/// Lattice and formed-space families of the corpus with their fast-scope flag.
pub const CORPUS: &[(&str, bool)] = &[
    ("boolean:n=1", true),
    ("boolean:n=2", true),
    ("boolean:n=3", true),
    ("boolean:n=4", false),
    ("partition:n=2", true),
    ("partition:n=3", true),
    ("partition:n=4", false),
    ("subspace:q=2,n=2", true),
    ("subspace:q=2,n=3", false),
    ("subspace:q=3,n=2", false),
    ("uniform:n=4,k=3", true),
    ("unitary:q=2,n=2", true),
    ("unitary:q=2,n=3", false),
    ("symplectic:q=3,n=4", false),
];

pub const SAMPLES: &[&str] = &["sample:exchange-failure", "sample:weak"];

const FORMED: &[(&str, bool)] = &[
    ("unitary:q=2,n=2", true),
    ("unitary:q=2,n=3", false),
    ("symplectic:q=3,n=4", false),
];

fn case(label: impl Into<String>, fast: bool, run: impl Fn(&Limits) -> Result<CaseOutcome> + Send + Sync + 'static) -> Case {
    Case {
        label: label.into(),
        fast,
        run: Box::new(run),
    }
}

fn describe(r: &IdentityReport) -> String {
    let show = |v: &crate::identity::Values| {
        v.iter().map(|(k, x)| format!("{k}={x}")).collect::<Vec<_>>().join("; ")
    };
    if r.pass {
        show(&r.computed)
    } else {
        format!("computed {} but formula {}", show(&r.computed), show(&r.formula))
    }
}

fn identity_case(name: &'static str, params: &[(&str, &str)], fast: bool) -> Case {
    let params = kv(params);
    let label = if params.is_empty() {
        name.to_string()
    } else {
        format!(
            "{name} {}",
            params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
        )
    };
    case(label, fast, move |limits| {
        let r = run_identity(name, &params, limits)?;
        Ok(CaseOutcome {
            pass: r.pass,
            detail: describe(&r),
        })
    })
}

fn spec_identity_case(name: &'static str, spec: &'static str, fast: bool) -> Case {
    case(format!("{name} spec={spec}"), fast, move |limits| {
        let r = run_identity(name, &spec_params(spec), limits)?;
        Ok(CaseOutcome {
            pass: r.pass,
            detail: describe(&r),
        })
    })
}

/// Builds the structure and its analysis, then runs `f`.
fn with_analysis<T>(spec: &str, limits: &Limits, f: impl FnOnce(&Analysis<'_>) -> Result<T>) -> Result<T> {
    let gs: GroundStructure = build_structure(spec)?;
    let budget = limits.budget();
    let an = Analysis::new(&gs, &budget)?;
    f(&an)
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<CaseOutcome> {
    Ok(CaseOutcome {
        pass,
        detail: detail.into(),
    })
}

fn cm_outcome(p: &Poset, expect: bool, limits: &Limits) -> Result<CaseOutcome> {
    let report = homological_cm(p, Ring::Rationals, limits.faces)?;
    let detail = match &report.certificate {
        None => format!("Cohen-Macaulay over Q ({} intervals)", report.intervals_checked),
        Some(c) => format!(
            "not Cohen-Macaulay over Q: {} has homology {} (expected dimension {})",
            c.interval,
            homology_string(&c.homology),
            c.expected_dim
        ),
    };
    outcome(report.is_cm == expect, detail)
}

#[derive(Clone, Copy)]
enum CmObject {
    D,
    OD,
    F,
    PB,
    OF,
}

fn cm_case(spec: &'static str, object: CmObject, fast: bool) -> Case {
    let name = match object {
        CmObject::D => "D",
        CmObject::OD => "OD",
        CmObject::F => "F",
        CmObject::PB => "PB",
        CmObject::OF => "OF",
    };
    case(format!("{name} of {spec} Cohen-Macaulay over Q"), fast, move |limits| {
        with_analysis(spec, limits, |an| {
            let p = match object {
                CmObject::D => an.full().poset().clone(),
                CmObject::OD => ordered_version(an, DecompKind::Full)?.poset().clone(),
                CmObject::F => frame_complexes(an)?.full.face_poset(limits.faces)?,
                CmObject::PB => {
                    let fr = frame_complexes(an)?;
                    partial_basis_complexes(an, &fr)?.0.complex.face_poset(limits.faces)?
                }
                CmObject::OF => injective_words(&frame_complexes(an)?.full, limits.faces)?.poset().clone(),
            };
            cm_outcome(&p, true, limits)
        })
    })
}

/// Every criterion of the acceptance matrix, in order.
pub fn criteria() -> Vec<Criterion> {
    let mut out = Vec::new();

    out.push(Criterion {
        id: "1",
        title: "proper ordered partial decompositions of GF(q)^n: Euler characteristic -q^(n(n-1))",
        cases: vec![
            identity_case("opd-gl", &[("q", "2"), ("n", "2")], true),
            identity_case("opd-gl", &[("q", "3"), ("n", "2")], false),
            identity_case("opd-gl", &[("q", "2"), ("n", "3")], false),
        ],
    });
    out.push(Criterion {
        id: "2",
        title: "proper partial decompositions of GF(q)^n: Euler characteristic formula",
        cases: vec![
            identity_case("pd-gl", &[("q", "2"), ("n", "2")], true),
            identity_case("pd-gl", &[("q", "3"), ("n", "2")], false),
            identity_case("pd-gl", &[("q", "2"), ("n", "3")], false),
        ],
    });
    out.push(Criterion {
        id: "3",
        title: "decompositions of GF(q)^n without maximum: f_n(q) positive integers, f_2 = q + 2",
        cases: vec![
            identity_case("d-gl-shape", &[("n", "2"), ("qs", "2,3,4,5")], true),
            identity_case("d-gl-shape", &[("n", "3"), ("qs", "2,3,4,5")], false),
        ],
    });
    let mut ordered_frame_cases = Vec::new();
    let mut frame_cases = Vec::new();
    for (n, q) in [("2", "2"), ("2", "3"), ("3", "2"), ("3", "3")] {
        let fast = n == "2" && q == "2";
        ordered_frame_cases.push(identity_case("table-ordered-frames", &[("q", q), ("n", n)], fast));
        frame_cases.push(identity_case("table-frames", &[("q", q), ("n", n)], fast));
    }
    out.push(Criterion {
        id: "4",
        title: "Euler characteristic of ordered frames matches the table",
        cases: ordered_frame_cases,
    });
    out.push(Criterion {
        id: "5",
        title: "Euler characteristic of frame complexes matches the table",
        cases: frame_cases,
    });
    out.push(Criterion {
        id: "6",
        title: "partition lattices: hypertree and hyperforest Euler characteristics",
        cases: vec![
            identity_case("hypertree", &[("n", "3")], true),
            identity_case("hypertree", &[("n", "4")], true),
            identity_case("hypertree", &[("n", "5")], false),
            identity_case("hyperforest", &[("n", "3")], true),
            identity_case("hyperforest", &[("n", "4")], true),
        ],
    });

    let mut boolean = Vec::new();
    for n in 2..=4usize {
        boolean.push(case(format!("proper PD(B_{n}) acyclic"), n <= 3, move |limits| {
            with_analysis(&format!("boolean:n={n}"), limits, |an| {
                let p = restrict(an.partial().poset(), Part::Proper)?;
                let h = homology_poset(&p, Ring::Integers, limits.faces)?;
                outcome(h.is_acyclic(), format!("homology {}", homology_string(&h)))
            })
        }));
    }
    for n in ["2", "3", "4"] {
        boolean.push(identity_case("od-boolean-sphere", &[("n", n)], n != "4"));
    }
    for n in ["2", "3"] {
        boolean.push(identity_case("opd-boolean-sphere", &[("n", n)], true));
    }
    out.push(Criterion {
        id: "7",
        title: "Boolean lattices: PD contractible, OD and OPD homology spheres",
        cases: boolean,
    });
    out.push(Criterion {
        id: "8",
        title: "U_{4,3}: proper PD homology free of rank 1 in degree 2; D not Cohen-Macaulay",
        cases: vec![
            identity_case("uniform-pd-rank", &[("n", "4"), ("k", "3")], true),
            case("D(U_{4,3}) not Cohen-Macaulay over Q", true, |limits| {
                with_analysis("uniform:n=4,k=3", limits, |an| cm_outcome(an.full().poset(), false, limits))
            }),
        ],
    });
    let mut bergman: Vec<Case> = (1..=4)
        .map(|n| {
            let spec: &'static str = ["boolean:n=1", "boolean:n=2", "boolean:n=3", "boolean:n=4"][n - 1];
            spec_identity_case("bergman-fullframes", spec, n <= 3)
        })
        .collect();
    bergman.push(spec_identity_case("bergman-fullframes", "subspace:q=2,n=2", true));
    bergman.push(spec_identity_case("bergman-fullframes", "subspace:q=2,n=3", false));
    bergman.push(spec_identity_case("bergman-fullframes", "uniform:n=4,k=3", true));
    out.push(Criterion {
        id: "9",
        title: "augmented Bergman complex: homology free on the full frames in the top degree",
        cases: bergman,
    });
    out.push(Criterion {
        id: "10",
        title: "injective words on an m-simplex: top homology rank is the derangement number",
        cases: ["1", "2", "3", "4"]
            .into_iter()
            .map(|m| identity_case("derangement-fiber", &[("m", m)], true))
            .collect(),
    });
    out.push(Criterion {
        id: "11",
        title: "the four wedge and inflation Euler identities on every corpus structure",
        cases: CORPUS
            .iter()
            .map(|&(spec, fast)| spec_identity_case("wedge-identities", spec, fast))
            .collect(),
    });

    let mut formed = Vec::new();
    for &(spec, fast) in FORMED {
        formed.push(spec_identity_case("opd-unique-minus-one", spec, fast));
        formed.push(case(format!("proper PD and D without maximum of {spec} have equal homology"), fast, move |limits| {
            with_analysis(spec, limits, |an| {
                let pd = homology_poset(&restrict(an.partial().poset(), Part::Proper)?, Ring::Integers, limits.faces)?;
                let d = homology_poset(&restrict(an.full().poset(), Part::Redm)?, Ring::Integers, limits.faces)?;
                outcome(
                    pd.same_groups(&d),
                    format!("PD {} and D {}", homology_string(&pd), homology_string(&d)),
                )
            })
        }));
    }
    formed.push(identity_case("unitary-d-euler", &[("q", "2"), ("n", "2")], true));
    formed.push(identity_case("unitary-d-euler", &[("q", "2"), ("n", "3")], false));
    formed.push(identity_case("unitary-d-euler", &[("q", "3"), ("n", "2")], false));
    formed.push(identity_case("symplectic-d-euler", &[("q", "3"), ("n", "4")], false));
    out.push(Criterion {
        id: "12",
        title: "formed spaces: OPD Euler characteristic -1, PD retracts to D, Ennola-type Euler formulas",
        cases: formed,
    });

    let mut maps = Vec::new();
    for (spec, iso, fast) in [
        ("subspace:q=2,n=3", true, false),
        ("subspace:q=3,n=2", true, false),
        ("sample:exchange-failure", false, true),
    ] {
        maps.push(case(format!("beta isomorphism on {spec}: {iso}"), fast, move |limits| {
            with_analysis(spec, limits, |an| {
                let od = ordered_version(an, DecompKind::Full)?;
                let v = charney_beta(an, &od, limits.faces)?;
                outcome(
                    v.is_isomorphism() == iso && v.is_embedding() && v.downward_closed && v.rank_preserving,
                    format!("{v:?}"),
                )
            })
        }));
    }
    let g_cases: Vec<(&'static str, bool, bool)> = vec![
        ("boolean:n=1", true, true),
        ("boolean:n=2", true, true),
        ("boolean:n=3", true, true),
        ("boolean:n=4", true, false),
        ("unitary:q=2,n=2", true, true),
        ("unitary:q=2,n=3", true, false),
        ("symplectic:q=3,n=4", true, false),
        ("subspace:q=2,n=2", false, true),
        ("subspace:q=2,n=3", false, false),
        ("subspace:q=3,n=2", false, false),
    ];
    for (spec, iso, fast) in g_cases {
        maps.push(case(format!("G isomorphism on {spec}: {iso}"), fast, move |limits| {
            with_analysis(spec, limits, |an| {
                let od = ordered_version(an, DecompKind::Full)?;
                let v = g_map(an, &od, limits.faces)?;
                outcome(v.is_isomorphism() == iso && v.order_preserving, format!("{v:?}"))
            })
        }));
    }
    out.push(Criterion {
        id: "13",
        title: "beta and G isomorphism verdicts",
        cases: maps,
    });

    let mut matrix = Vec::new();
    for (spec, fast) in [("subspace:q=2,n=2", true), ("subspace:q=2,n=3", false), ("subspace:q=3,n=2", false)] {
        matrix.push(case(format!("EX and CM hold on {spec}"), fast, move |limits| {
            with_analysis(spec, limits, |an| {
                let ex = an.check(Property::Ex)?;
                let cm = an.check(Property::Cm)?;
                outcome(ex.holds && cm.holds, format!("EX {} CM {}", ex.holds, cm.holds))
            })
        }));
    }
    matrix.push(case("EX and CM fail with certificates on sample:exchange-failure", true, |limits| {
        with_analysis("sample:exchange-failure", limits, |an| {
            let ex = an.check(Property::Ex)?;
            let cm = an.check(Property::Cm)?;
            let certified = [&ex, &cm].iter().all(|r| r.holds || r.witness.is_some());
            outcome(
                !(ex.holds && cm.holds) && certified,
                format!(
                    "EX {} ({}), CM {} ({})",
                    ex.holds,
                    ex.witness.clone().unwrap_or_default(),
                    cm.holds,
                    cm.witness.clone().unwrap_or_default()
                ),
            )
        })
    }));
    for &(spec, fast) in CORPUS.iter() {
        matrix.push(case(format!("UNIQUE and LI on {spec}"), fast, move |limits| {
            with_analysis(spec, limits, |an| {
                let kind = an.structure().kind();
                let unique = an.check(Property::Unique)?.holds;
                let li = an.check(Property::Li)?;
                // the two-block partition lattice is the Boolean lattice of rank one
                let expect_unique = matches!(kind, Kind::Boolean | Kind::Formed) || an.structure().rank() <= 1;
                outcome(
                    unique == expect_unique && li.holds,
                    format!("UNIQUE {unique}, LI {} {}", li.holds, li.witness.clone().unwrap_or_default()),
                )
            })
        }));
    }
    for &spec in SAMPLES {
        matrix.push(case(format!("UNIQUE fails on {spec}"), true, move |limits| {
            with_analysis(spec, limits, |an| {
                let unique = an.check(Property::Unique)?;
                outcome(!unique.holds, format!("UNIQUE {}", unique.holds))
            })
        }));
    }
    out.push(Criterion {
        id: "14",
        title: "property matrix: EX, CM, UNIQUE and LI",
        cases: matrix,
    });

    let mut cm = Vec::new();
    for (spec, fast) in [("subspace:q=2,n=2", true), ("subspace:q=2,n=3", false)] {
        for object in [CmObject::D, CmObject::OD, CmObject::F, CmObject::PB, CmObject::OF] {
            cm.push(cm_case(spec, object, fast));
        }
    }
    for (spec, fast) in [("partition:n=2", true), ("partition:n=3", true), ("partition:n=4", false)] {
        cm.push(cm_case(spec, CmObject::D, fast));
    }
    out.push(Criterion {
        id: "15",
        title: "homological Cohen-Macaulay over Q",
        cases: cm,
    });

    let structures: Vec<(&'static str, bool)> =
        CORPUS.iter().copied().chain(SAMPLES.iter().map(|&s| (s, true))).collect();
    out.push(Criterion {
        id: "implications",
        title: "corpus-wide implications: UNIQUE and EX give CM, PD lattice gives Sub_h lattice, height certificates, Sub_h routes",
        cases: structures
            .into_iter()
            .map(|(spec, fast)| {
                case(format!("implications on {spec}"), fast, move |limits| {
                    with_analysis(spec, limits, |an| {
                        let unique = an.check(Property::Unique)?.holds;
                        let ex = an.check(Property::Ex)?.holds;
                        let cm = an.check(Property::Cm)?.holds;
                        let (pd_lattice, subh_lattice) = lattice_pair(an);
                        let heights = height_certificate(an);
                        let routes = an.sub_h().routes_agree();
                        let pass = (!(unique && ex) || cm) && (!pd_lattice || subh_lattice) && heights.consistent() && routes;
                        outcome(
                            pass,
                            format!(
                                "UNIQUE {unique} EX {ex} CM {cm}; PD lattice {pd_lattice} Sub_h lattice {subh_lattice}; {heights:?}; routes agree {routes}"
                            ),
                        )
                    })
                })
            })
            .collect(),
    });
    out
}

/// Runs the selected cases on the rayon pool; report order follows the criterion list.
pub fn run_suite(scope: Scope, limits: &Limits) -> SuiteReport {
    run_criteria(criteria(), scope, limits)
}

pub fn run_criteria(criteria: Vec<Criterion>, scope: Scope, limits: &Limits) -> SuiteReport {
    let jobs: Vec<(usize, &Case)> = criteria
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.cases.iter().map(move |k| (i, k)))
        .filter(|(_, k)| scope == Scope::All || k.fast)
        .collect();
    let results: Vec<(usize, CaseReport)> = jobs
        .par_iter()
        .map(|&(i, k)| {
            let start = Instant::now();
            let (pass, detail) = match (k.run)(limits) {
                Ok(o) => (o.pass, o.detail),
                Err(e) => (false, format!("error: {e}")),
            };
            (
                i,
                CaseReport {
                    criterion: criteria[i].id.to_string(),
                    case: k.label.clone(),
                    pass,
                    detail,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                },
            )
        })
        .collect();
    let mut reports: Vec<CriterionReport> = criteria
        .iter()
        .map(|c| CriterionReport {
            id: c.id.to_string(),
            title: c.title.to_string(),
            pass: true,
            cases: Vec::new(),
            elapsed_ms: 0,
        })
        .collect();
    for (i, r) in results {
        let c = &mut reports[i];
        c.pass &= r.pass;
        c.elapsed_ms += r.elapsed_ms;
        c.cases.push(r);
    }
    reports.retain(|c| !c.cases.is_empty());
    SuiteReport {
        scope: match scope {
            Scope::All => "all".into(),
            Scope::Fast => "fast".into(),
        },
        pass: reports.iter().all(|c| c.pass),
        criteria: reports,
    }
}
