//! Exhaustive checks of (LI), (E1)/(E2), (EX), (CM) and unique downward
//! (⊔,h)-complementation, each returning the first counterexample in label order.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::sync::Arc;

use dlat_ground::GroundStructure;
use dlat_poset::{direct_product, pair_label, Poset, PosetMap};
use serde::Serialize;

use crate::budget::Budget;
use crate::check::Mode;
use crate::complement::{complements_with, sub_h, SubH};
use crate::enumerate::{enumerate_with, partial_decompositions, Decomposition};
use crate::error::Result;
use crate::ops::Ops;
use crate::poset::{DecompKind, DecompPoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Li,
    E1E2,
    Ex,
    Cm,
    Unique,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Li,
        Property::E1E2,
        Property::Ex,
        Property::Cm,
        Property::Unique,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Li => "LI",
            Property::E1E2 => "E1E2",
            Property::Ex => "EX",
            Property::Cm => "CM",
            Property::Unique => "UNIQUE",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown property {s:?} (expected LI, E1E2, EX, CM or UNIQUE)"))
    }
}

/// Outcome of an exhaustive property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub structure: String,
    pub property: String,
    pub holds: bool,
    /// Number of quantified instances examined.
    pub instances: u64,
    pub witness: Option<String>,
}

impl PropertyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// Decompositions of a lower interval `[0, y]`.
pub struct LowerInterval {
    pub structure: GroundStructure,
    /// Full decompositions, in ground-structure indices of the enclosing structure.
    pub full: Vec<Decomposition>,
    /// Partial decompositions, indexed by the lower structure.
    pub partial: DecompPoset,
    to_outer: Vec<usize>,
    from_outer: HashMap<usize, usize>,
}

impl LowerInterval {
    /// Re-expresses a set of outer elements (all below `y`) in lower indices.
    pub fn localize(&self, d: &Decomposition) -> Option<Decomposition> {
        d.parts()
            .iter()
            .map(|x| self.from_outer.get(x).copied())
            .collect::<Option<Vec<_>>>()
            .map(Decomposition::new)
    }

    pub fn globalize(&self, d: &Decomposition) -> Decomposition {
        Decomposition::new(d.parts().iter().map(|&x| self.to_outer[x]).collect())
    }
}

/// D, PD and lower-interval data of one structure, shared by all checks.
pub struct Analysis<'a> {
    gs: &'a GroundStructure,
    ops: Ops<'a>,
    budget: &'a Budget,
    full: DecompPoset,
    partial: DecompPoset,
    lower: RefCell<HashMap<usize, Rc<LowerInterval>>>,
}

fn set_label(gs: &GroundStructure, d: &Decomposition) -> String {
    d.label(gs)
}

impl<'a> Analysis<'a> {
    pub fn new(gs: &'a GroundStructure, budget: &'a Budget) -> Result<Analysis<'a>> {
        let ops = Ops::new(gs);
        let full_list = enumerate_with(&ops, Mode::Strict, budget)?;
        let partial_list = partial_decompositions(&full_list, budget)?;
        let full = DecompPoset::from_elements(gs, DecompKind::Full, full_list)?;
        let partial = DecompPoset::from_elements(gs, DecompKind::Partial, partial_list)?;
        Ok(Analysis {
            gs,
            ops,
            budget,
            full,
            partial,
            lower: RefCell::new(HashMap::new()),
        })
    }

    pub fn structure(&self) -> &'a GroundStructure {
        self.gs
    }

    pub fn budget(&self) -> &'a Budget {
        self.budget
    }

    pub fn ops(&self) -> &Ops<'a> {
        &self.ops
    }

    /// The poset D of full decompositions.
    pub fn full(&self) -> &DecompPoset {
        &self.full
    }

    /// The poset PD of partial decompositions.
    pub fn partial(&self) -> &DecompPoset {
        &self.partial
    }

    pub fn sub_h(&self) -> SubH {
        sub_h(self.gs, self.full.elements(), self.partial.elements())
    }

    pub fn lower(&self, y: usize) -> Result<Rc<LowerInterval>> {
        if let Some(l) = self.lower.borrow().get(&y) {
            return Ok(l.clone());
        }
        let structure = self.gs.lower_interval(y)?;
        let to_outer: Vec<usize> = (0..structure.len())
            .map(|i| {
                self.gs
                    .index_of(structure.label(i))
                    .expect("interval labels come from the enclosing structure")
            })
            .collect();
        let from_outer = to_outer.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let lower_full = enumerate_with(&Ops::new(&structure), Mode::Strict, self.budget)?;
        let lower_partial = partial_decompositions(&lower_full, self.budget)?;
        let partial = DecompPoset::from_elements(&structure, DecompKind::Partial, lower_partial)?;
        let mut li = LowerInterval {
            structure,
            full: Vec::new(),
            partial,
            to_outer,
            from_outer,
        };
        li.full = lower_full.iter().map(|d| li.globalize(d)).collect();
        let li = Rc::new(li);
        self.lower.borrow_mut().insert(y, li.clone());
        Ok(li)
    }

    pub fn check(&self, property: Property) -> Result<PropertyReport> {
        let (instances, witness) = match property {
            Property::Li => self.check_li()?,
            Property::E1E2 => self.check_e1e2()?,
            Property::Ex => self.check_ex()?,
            Property::Cm => self.check_cm()?,
            Property::Unique => self.check_unique()?,
        };
        Ok(PropertyReport {
            structure: self.gs.name().to_string(),
            property: property.as_str().to_string(),
            holds: witness.is_none(),
            instances,
            witness,
        })
    }

    fn below_in_partial(&self, s: usize) -> Vec<usize> {
        let p = self.partial.poset();
        (0..p.len()).filter(|&t| p.leq(t, s)).collect()
    }

    fn check_li(&self) -> Result<(u64, Option<String>)> {
        let gs = self.gs;
        let pd = &self.partial;
        let mut instances = 0;
        for s in 0..pd.len() {
            instances += 1;
            self.budget.tick()?;
            let sigma = pd.element(s);
            let below_idx = self.below_in_partial(s);
            let (below, bmap) = pd.poset().induced(&below_idx);
            let lowers = sigma
                .parts()
                .iter()
                .map(|&y| self.lower(y))
                .collect::<Result<Vec<_>>>()?;
            let product = lowers
                .iter()
                .map(|l| l.partial.poset().clone())
                .reduce(|acc, q| direct_product(&acc, &q))
                .unwrap_or_else(|| Poset::new(vec!["()"], &[]).expect("a point is a poset"));
            let mut image = Vec::with_capacity(below.len());
            for &t in &bmap {
                let tau = pd.element(t);
                let mut label: Option<String> = None;
                for (l, &y) in lowers.iter().zip(sigma.parts()) {
                    let restricted = Decomposition::new(
                        tau.parts()
                            .iter()
                            .copied()
                            .filter(|&x| gs.poset().leq(x, y))
                            .collect(),
                    );
                    let local = l.localize(&restricted).and_then(|d| l.partial.index_of(&d));
                    let Some(local) = local else {
                        return Ok((
                            instances,
                            Some(format!(
                                "sigma={} tau={}: restriction below {} is not a partial decomposition there",
                                set_label(gs, sigma),
                                set_label(gs, tau),
                                gs.label(y)
                            )),
                        ));
                    };
                    let part = l.partial.poset().label(local);
                    label = Some(match label {
                        None => part.to_string(),
                        Some(acc) => pair_label(&acc, part),
                    });
                }
                let label = label.unwrap_or_else(|| "()".to_string());
                image.push(product.index_of(&label).expect("tuple labels match the product"));
            }
            let verdict = match PosetMap::new(Arc::new(below), Arc::new(product), image) {
                Err(_) => Some("restriction map is not order-preserving"),
                Ok(f) if !f.is_injective() => Some("restriction map is not injective"),
                Ok(f) if !f.is_surjective() => Some("restriction map is not surjective"),
                Ok(f) if !f.reflects_order() => Some("restriction map does not reflect the order"),
                Ok(_) => None,
            };
            if let Some(reason) = verdict {
                return Ok((instances, Some(format!("sigma={}: {reason}", set_label(gs, sigma)))));
            }
        }
        Ok((instances, None))
    }

    fn check_e1e2(&self) -> Result<(u64, Option<String>)> {
        let gs = self.gs;
        let pd = &self.partial;
        let mut instances = 0;
        let mut parts: BTreeSet<usize> = BTreeSet::new();
        for d in pd.elements() {
            parts.extend(d.parts().iter().copied());
        }
        let mut ordered: Vec<usize> = parts.into_iter().collect();
        ordered.sort_by(|&a, &b| gs.label(a).cmp(gs.label(b)));
        for x in ordered {
            instances += 1;
            let l = self.lower(x)?;
            let local: BTreeSet<String> = l
                .partial
                .elements()
                .iter()
                .map(|d| set_label(gs, &l.globalize(d)))
                .collect();
            let single = pd
                .index_of(&Decomposition::new(vec![x]))
                .expect("parts of partial decompositions are singletons of PD");
            let global: BTreeSet<String> = self
                .below_in_partial(single)
                .into_iter()
                .map(|t| set_label(gs, pd.element(t)))
                .collect();
            if local != global {
                let extra = local.symmetric_difference(&global).next().cloned().unwrap_or_default();
                return Ok((
                    instances,
                    Some(format!("E1 fails at x={}: {extra} lies in only one side", gs.label(x))),
                ));
            }
        }
        for s in 0..pd.len() {
            let sigma = pd.element(s);
            let lowers = sigma
                .parts()
                .iter()
                .map(|&y| self.lower(y))
                .collect::<Result<Vec<_>>>()?;
            let sizes: Vec<usize> = lowers.iter().map(|l| l.partial.len()).collect();
            let mut digits = vec![0usize; sizes.len()];
            loop {
                instances += 1;
                self.budget.tick()?;
                let mut union = Vec::new();
                for (l, &i) in lowers.iter().zip(&digits) {
                    union.extend(l.globalize(l.partial.element(i)).parts().iter().copied());
                }
                let tau = Decomposition::new(union);
                let ok = pd
                    .index_of(&tau)
                    .is_some_and(|t| pd.poset().leq(t, s));
                if !ok {
                    return Ok((
                        instances,
                        Some(format!(
                            "E2 fails at sigma={}: union {} is not below it in PD",
                            set_label(gs, sigma),
                            set_label(gs, &tau)
                        )),
                    ));
                }
                let mut pos = 0;
                while pos < digits.len() {
                    digits[pos] += 1;
                    if digits[pos] < sizes[pos] {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos == digits.len() {
                    break;
                }
            }
        }
        Ok((instances, None))
    }

    fn check_ex(&self) -> Result<(u64, Option<String>)> {
        let gs = self.gs;
        let pd = &self.partial;
        let mut instances = 0;
        for s in 0..pd.len() {
            let sigma = pd.element(s);
            for &y in sigma.parts() {
                let l = self.lower(y)?;
                for tau in &l.full {
                    instances += 1;
                    self.budget.tick()?;
                    let mut parts: Vec<usize> = sigma.parts().iter().copied().filter(|&p| p != y).collect();
                    parts.extend(tau.parts().iter().copied());
                    let candidate = Decomposition::new(parts);
                    if !pd.contains(&candidate) {
                        return Ok((
                            instances,
                            Some(format!(
                                "sigma={} y={} tau={}: {} is not a partial decomposition",
                                set_label(gs, sigma),
                                gs.label(y),
                                set_label(gs, tau),
                                set_label(gs, &candidate)
                            )),
                        ));
                    }
                }
            }
        }
        Ok((instances, None))
    }

    fn check_cm(&self) -> Result<(u64, Option<String>)> {
        let gs = self.gs;
        let p = gs.poset();
        let pairs: Vec<(usize, usize)> = self
            .full
            .elements()
            .iter()
            .filter(|d| d.len() == 2)
            .flat_map(|d| {
                let (a, b) = (d.parts()[0], d.parts()[1]);
                [(a, b), (b, a)]
            })
            .collect();
        let mut instances = 0;
        for &(x, y) in &pairs {
            for &(x2, y2) in &pairs {
                if !(p.leq(x, x2) && p.leq(y2, y)) {
                    continue;
                }
                instances += 1;
                self.budget.tick()?;
                let names = || {
                    format!(
                        "x={} y={} x'={} y'={}",
                        gs.label(x),
                        gs.label(y),
                        gs.label(x2),
                        gs.label(y2)
                    )
                };
                let Some(m) = self.ops.meet(x2, y) else {
                    return Ok((instances, Some(format!("{}: x' and y have no meet", names()))));
                };
                let parts: Vec<usize> = [m, x, y2].into_iter().filter(|&e| e != gs.bottom()).collect();
                let candidate = Decomposition::new(parts);
                if !self.full.contains(&candidate) {
                    return Ok((
                        instances,
                        Some(format!(
                            "{}: {} is not a decomposition",
                            names(),
                            set_label(gs, &candidate)
                        )),
                    ));
                }
            }
        }
        Ok((instances, None))
    }

    fn check_unique(&self) -> Result<(u64, Option<String>)> {
        let gs = self.gs;
        let p = gs.poset();
        let mut order: Vec<usize> = (0..gs.len()).collect();
        order.sort_by(|&a, &b| gs.label(a).cmp(gs.label(b)));
        let mut instances = 0;
        for &y in &order {
            for &z in &order {
                if !p.leq(z, y) {
                    continue;
                }
                instances += 1;
                self.budget.tick()?;
                let c = complements_with(&self.ops, z, y)?;
                if c.len() != 1 {
                    let listed: Vec<&str> = c.iter().map(|&w| gs.label(w)).collect();
                    return Ok((
                        instances,
                        Some(format!(
                            "z={} in y={} has {} complements [{}]",
                            gs.label(z),
                            gs.label(y),
                            c.len(),
                            listed.join(", ")
                        )),
                    ));
                }
            }
        }
        Ok((instances, None))
    }
}

/// Convenience wrapper building a fresh [`Analysis`].
pub fn check_property(gs: &GroundStructure, property: Property, budget: &Budget) -> Result<PropertyReport> {
    Analysis::new(gs, budget)?.check(property)
}
