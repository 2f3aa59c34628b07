//! JSON and Graphviz DOT serialization of posets.

use serde::{Deserialize, Serialize};

use crate::error::{PosetError, Result};
use crate::poset::Poset;

/// Wire format: `{"name", "elements": [labels], "covers": [[i, j]]}` with `i < j` meaning
/// element `i` lies below element `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
}

impl PosetDocument {
    pub fn from_poset(name: &str, p: &Poset) -> PosetDocument {
        PosetDocument {
            name: name.to_string(),
            elements: p.labels().to_vec(),
            covers: p.cover_pairs().into_iter().map(|(i, j)| [i, j]).collect(),
            bottom: None,
            top: None,
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        let pairs: Vec<(usize, usize)> = self.covers.iter().map(|c| (c[0], c[1])).collect();
        Poset::new(self.elements.clone(), &pairs)
    }

    pub fn parse(text: &str) -> Result<PosetDocument> {
        serde_json::from_str(text).map_err(|e| PosetError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("poset documents always serialize")
    }
}

fn quote(label: &str) -> String {
    let mut s = String::with_capacity(label.len() + 2);
    s.push('"');
    for ch in label.chars() {
        if ch == '"' || ch == '\\' {
            s.push('\\');
        }
        s.push(ch);
    }
    s.push('"');
    s
}

/// Hasse diagram in DOT: one node per element, one edge per cover, nodes of equal height
/// grouped into a shared rank.
pub fn to_dot(name: &str, p: &Poset) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quote(name));
    for h in 0..=p.poset_height() {
        let level: Vec<String> = (0..p.len())
            .filter(|&i| p.height(i) == h)
            .map(|i| quote(p.label(i)))
            .collect();
        if !level.is_empty() {
            out.push_str(&format!("  {{ rank=same; {}; }}\n", level.join("; ")));
        }
    }
    for (i, j) in p.cover_pairs() {
        out.push_str(&format!("  {} -> {};\n", quote(p.label(i)), quote(p.label(j))));
    }
    out.push_str("}\n");
    out
}
