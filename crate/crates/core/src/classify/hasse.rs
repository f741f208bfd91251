use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use super::{label, visible_primes, Exponent, GeneralizedFactorization};
use crate::families::Family;
use crate::transfer::{same_family, TransferSystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HasseError {
    #[error("system listed twice: {0}")]
    Duplicate(String),
    #[error("systems from different families")]
    FamilyMismatch,
}

#[derive(Debug, Clone)]
pub struct HasseNode {
    /// The label, suffixed `#2`, `#3`, ... when labels repeat.
    pub name: String,
    pub label: GeneralizedFactorization,
    pub system: TransferSystem,
}

/// Inclusion order on a set of systems, reduced to covering pairs.
#[derive(Debug, Clone)]
pub struct HasseDiagram {
    pub nodes: Vec<HasseNode>,
    /// `(smaller, larger)` node indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct HasseJson<'a> {
    family: String,
    nodes: Vec<&'a str>,
    edges: Vec<[&'a str; 2]>,
}

fn grid_key(n: &GeneralizedFactorization, primes: &[u64]) -> Vec<Exponent> {
    primes.iter().map(|&p| n.get(p)).collect()
}

impl HasseDiagram {
    pub fn new(systems: &[TransferSystem]) -> Result<Self, HasseError> {
        let mut sorted = systems.to_vec();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(HasseError::Duplicate(format!("{:?}", w[0])));
        }
        let Some(first) = sorted.first() else {
            return Ok(Self {
                nodes: Vec::new(),
                edges: Vec::new(),
            });
        };
        let family: Arc<Family> = first.family().clone();
        if sorted.iter().any(|t| !same_family(t.family(), &family)) {
            return Err(HasseError::FamilyMismatch);
        }
        let primes: Vec<u64> = visible_primes(&family).into_keys().collect();
        let mut keyed: Vec<(Vec<Exponent>, usize, GeneralizedFactorization, TransferSystem)> = sorted
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                let n = label(&t);
                (grid_key(&n, &primes), i, n, t)
            })
            .collect();
        keyed.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));

        let mut nodes: Vec<HasseNode> = Vec::with_capacity(keyed.len());
        for (_, _, n, t) in keyed {
            let base = n.to_string();
            let repeats = nodes.iter().filter(|m| m.label == n).count();
            let name = if repeats == 0 { base } else { format!("{base}#{}", repeats + 1) };
            nodes.push(HasseNode { name, label: n, system: t });
        }

        let count = nodes.len();
        let below: Vec<Vec<bool>> = (0..count)
            .map(|i| {
                (0..count)
                    .map(|j| i != j && nodes[i].system.bits().is_subset(nodes[j].system.bits()))
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..count {
            for j in 0..count {
                if below[i][j] && !(0..count).any(|m| below[i][m] && below[m][j]) {
                    edges.push((i, j));
                }
            }
        }
        Ok(Self { nodes, edges })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n");
        for n in &self.nodes {
            let _ = writeln!(out, "  \"{}\";", n.name);
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.nodes[a].name, self.nodes[b].name);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let value = HasseJson {
            family: self
                .nodes
                .first()
                .map(|n| n.system.family().spec().to_string())
                .unwrap_or_default(),
            nodes: self.nodes.iter().map(|n| n.name.as_str()).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.nodes[a].name.as_str(), self.nodes[b].name.as_str()])
                .collect(),
        };
        serde_json::to_string_pretty(&value).expect("plain data serializes")
    }
}
