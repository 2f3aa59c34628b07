//! Building the objects named on the command line and computing statistics of them.

use std::fmt;
use std::str::FromStr;

use dlat_decomp::{Analysis, Budget, DecompKind, DecompPoset};
use dlat_derived::{
    atom_fibers, augmented_bergman, charney_poset, frame_complexes, injective_words, ordered_version,
    partial_basis_complexes,
};
use dlat_ground::GroundStructure;
use dlat_poset::{io::to_dot, io::PosetDocument, BoundedPoset, Poset};
use dlat_topology::{
    homology_complex, homology_poset, reduced_euler_complex, reduced_euler_poset, HomologyResult, Ring,
    SimplicialComplex,
};
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Result, VerifyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    Base,
    SubH,
    D,
    PD,
    Dw,
    PDw,
    OD,
    OPD,
    F,
    PF,
    B,
    PB,
    OF,
    OB,
    OPB,
    Bergman,
    Charney,
}

impl ObjectKind {
    pub const ALL: [ObjectKind; 17] = [
        ObjectKind::Base,
        ObjectKind::SubH,
        ObjectKind::D,
        ObjectKind::PD,
        ObjectKind::Dw,
        ObjectKind::PDw,
        ObjectKind::OD,
        ObjectKind::OPD,
        ObjectKind::F,
        ObjectKind::PF,
        ObjectKind::B,
        ObjectKind::PB,
        ObjectKind::OF,
        ObjectKind::OB,
        ObjectKind::OPB,
        ObjectKind::Bergman,
        ObjectKind::Charney,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ObjectKind::Base => "base",
            ObjectKind::SubH => "subh",
            ObjectKind::D => "D",
            ObjectKind::PD => "PD",
            ObjectKind::Dw => "Dw",
            ObjectKind::PDw => "PDw",
            ObjectKind::OD => "OD",
            ObjectKind::OPD => "OPD",
            ObjectKind::F => "F",
            ObjectKind::PF => "PF",
            ObjectKind::B => "B",
            ObjectKind::PB => "PB",
            ObjectKind::OF => "OF",
            ObjectKind::OB => "OB",
            ObjectKind::OPB => "OPB",
            ObjectKind::Bergman => "bergman",
            ObjectKind::Charney => "charney",
        }
    }
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ObjectKind {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<ObjectKind> {
        ObjectKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| VerifyError::Usage(format!("unknown object {s:?}")))
    }
}

/// Which part of a poset a statistic is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Part {
    #[default]
    Whole,
    /// Without the minimum and the maximum.
    Proper,
    /// Without the maximum.
    Redm,
}

impl Part {
    pub fn suffix(self) -> &'static str {
        match self {
            Part::Whole => "",
            Part::Proper => " (proper part)",
            Part::Redm => " (maximum removed)",
        }
    }
}

/// A built object: either a poset (for complexes given by a face order we keep both).
#[derive(Clone, Debug)]
pub enum Built {
    Poset(Poset),
    /// Decomposition posets keep their elements for JSON export.
    Decompositions(DecompPoset),
    Complex(SimplicialComplex),
}

impl Built {
    pub fn size(&self) -> usize {
        match self {
            Built::Poset(p) => p.len(),
            Built::Decompositions(d) => d.len(),
            Built::Complex(k) => k.num_vertices(),
        }
    }

    /// The poset underlying the object; complexes give their face posets.
    pub fn as_poset(&self, budget: usize) -> Result<Poset> {
        Ok(match self {
            Built::Poset(p) => p.clone(),
            Built::Decompositions(d) => d.poset().clone(),
            Built::Complex(k) => k.face_poset(budget)?,
        })
    }
}

/// Restricts a poset to the selected part.
pub fn restrict(p: &Poset, part: Part) -> Result<Poset> {
    Ok(match part {
        Part::Whole => p.clone(),
        Part::Proper => {
            let bottom = p.bottom();
            let top = p.top();
            if bottom.is_none() && top.is_none() {
                return Err(VerifyError::Usage("--proper needs a minimum or a maximum".into()));
            }
            p.filter(|z| Some(z) != bottom && Some(z) != top).0
        }
        Part::Redm => {
            let top = p
                .top()
                .ok_or_else(|| VerifyError::Usage("--redm needs a poset with a maximum".into()))?;
            p.filter(|z| z != top).0
        }
    })
}

fn bases_required(gs: &GroundStructure) -> Result<()> {
    atom_fibers(gs).map(|_| ()).map_err(|_| {
        VerifyError::Usage(format!("{} has no atom basis sets; B, PB, OB and OPB need them", gs.name()))
    })
}

/// Builds one object of a ground structure.
pub fn build_object(gs: &GroundStructure, kind: ObjectKind, budget: &Budget, faces: usize) -> Result<Built> {
    match kind {
        ObjectKind::Base => return Ok(Built::Poset(gs.poset().clone())),
        ObjectKind::Dw => return Ok(Built::Decompositions(DecompPoset::build(gs, DecompKind::WeakFull, budget)?)),
        ObjectKind::PDw => {
            return Ok(Built::Decompositions(DecompPoset::build(gs, DecompKind::WeakPartial, budget)?))
        }
        ObjectKind::B | ObjectKind::PB | ObjectKind::OB | ObjectKind::OPB => bases_required(gs)?,
        _ => {}
    }
    let an = Analysis::new(gs, budget)?;
    Ok(match kind {
        ObjectKind::SubH => Built::Poset(an.sub_h().poset),
        ObjectKind::D => Built::Decompositions(an.full().clone()),
        ObjectKind::PD => Built::Decompositions(an.partial().clone()),
        ObjectKind::OD => Built::Poset(ordered_version(&an, DecompKind::Full)?.poset().clone()),
        ObjectKind::OPD => Built::Poset(ordered_version(&an, DecompKind::Partial)?.poset().clone()),
        ObjectKind::F => Built::Complex(frame_complexes(&an)?.full),
        ObjectKind::PF => Built::Complex(frame_complexes(&an)?.partial),
        ObjectKind::OF => {
            let fr = frame_complexes(&an)?;
            Built::Poset(injective_words(&fr.full, faces)?.poset().clone())
        }
        ObjectKind::B | ObjectKind::PB | ObjectKind::OB | ObjectKind::OPB => {
            let fr = frame_complexes(&an)?;
            let (pb, b) = partial_basis_complexes(&an, &fr)?;
            match kind {
                ObjectKind::B => Built::Complex(b.complex),
                ObjectKind::PB => Built::Complex(pb.complex),
                ObjectKind::OB => Built::Poset(injective_words(&b.complex, faces)?.poset().clone()),
                _ => Built::Poset(injective_words(&pb.complex, faces)?.poset().clone()),
            }
        }
        ObjectKind::Bergman => {
            let fr = frame_complexes(&an)?;
            Built::Complex(augmented_bergman(&an, &fr, faces)?)
        }
        ObjectKind::Charney => Built::Poset(charney_poset(&an)?.0),
        ObjectKind::Base | ObjectKind::Dw | ObjectKind::PDw => unreachable!("handled above"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stat {
    Euler,
    Homology,
    Mobius,
}

impl FromStr for Stat {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Stat> {
        match s {
            "euler" => Ok(Stat::Euler),
            "homology" => Ok(Stat::Homology),
            "mobius" => Ok(Stat::Mobius),
            other => Err(VerifyError::Usage(format!("unknown statistic {other:?}"))),
        }
    }
}

/// Result of `dlat compute`.
#[derive(Clone, Debug, Serialize)]
pub struct StatReport {
    pub structure: String,
    pub object: String,
    pub part: String,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "dlat_topology::json::optional")]
    pub euler: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "dlat_topology::json::optional")]
    pub mobius: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologyResult>,
    pub convention: &'static str,
}

pub const CONVENTION: &str = "reduced; the empty complex has Euler characteristic -1";

/// Computes one statistic. Complexes accept only the whole part.
pub fn compute_stat(built: &Built, part: Part, stat: Stat, ring: Ring, faces: usize) -> Result<(usize, StatValue)> {
    if let Built::Complex(k) = built {
        if part != Part::Whole {
            return Err(VerifyError::Usage("--proper and --redm apply to posets only".into()));
        }
        let value = match stat {
            Stat::Euler => StatValue::Euler(reduced_euler_complex(k, faces)?),
            Stat::Homology => StatValue::Homology(homology_complex(k, ring, faces)?),
            // the face poset with a bottom and top adjoined has μ(0,1) = χ̃(K)
            Stat::Mobius => StatValue::Mobius(reduced_euler_complex(k, faces)?),
        };
        return Ok((k.num_vertices(), value));
    }
    let p = restrict(&built.as_poset(faces)?, part)?;
    let value = match stat {
        Stat::Euler => StatValue::Euler(reduced_euler_poset(&p)),
        Stat::Homology => StatValue::Homology(homology_poset(&p, ring, faces)?),
        Stat::Mobius => StatValue::Mobius(match BoundedPoset::new(p.clone()) {
            Ok(b) if part == Part::Whole && p.len() > 1 => b.mobius_number(),
            _ => reduced_euler_poset(&p),
        }),
    };
    Ok((p.len(), value))
}

#[derive(Clone, Debug)]
pub enum StatValue {
    Euler(BigInt),
    Mobius(BigInt),
    Homology(HomologyResult),
}

/// Byte-deterministic JSON or DOT rendering of a built object.
pub fn export_object(gs: &GroundStructure, kind: ObjectKind, built: &Built, part: Part, dot: bool, faces: usize) -> Result<String> {
    let name = format!("{}/{}", gs.name(), kind);
    if dot {
        let p = restrict(&built.as_poset(faces)?, part)?;
        return Ok(to_dot(&name, &p));
    }
    Ok(match (built, part) {
        (Built::Decompositions(d), Part::Whole) => d.to_json(gs),
        (Built::Complex(k), Part::Whole) => {
            serde_json::to_string(&k.to_document()).expect("complex documents serialize")
        }
        _ => PosetDocument::from_poset(&name, &restrict(&built.as_poset(faces)?, part)?).to_json(),
    })
}
