//! Minor models: disjoint connected branch sets realising every pattern edge.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct MinorModel {
    pub host: Graph,
    pub pattern: Graph,
    /// Branch set of each pattern vertex, in pattern vertex order.
    pub branch_sets: Vec<BTreeSet<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MinorViolation {
    WrongBranchSetCount { expected: usize, got: usize },
    EmptyBranchSet(String),
    UnknownHostVertex(String),
    Disjointness { first: String, second: String, shared: String },
    Connectivity(String),
    MissingEdge(String, String),
}

impl fmt::Display for MinorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorViolation::WrongBranchSetCount { expected, got } => {
                write!(f, "{got} branch sets for {expected} pattern vertices")
            }
            MinorViolation::EmptyBranchSet(v) => write!(f, "branch set of `{v}` is empty"),
            MinorViolation::UnknownHostVertex(v) => write!(f, "branch set of `{v}` names a non-host vertex"),
            MinorViolation::Disjointness { first, second, shared } => {
                write!(f, "Disjointness: branch sets of `{first}` and `{second}` share `{shared}`")
            }
            MinorViolation::Connectivity(v) => write!(f, "branch set of `{v}` is not connected"),
            MinorViolation::MissingEdge(u, v) => write!(f, "no host edge between branch sets of `{u}` and `{v}`"),
        }
    }
}

impl MinorModel {
    pub fn branch_set_ids(&self) -> Vec<(String, Vec<String>)> {
        self.branch_sets
            .iter()
            .enumerate()
            .map(|(i, s)| (self.pattern.id(i).to_string(), s.iter().map(|&v| self.host.id(v).to_string()).collect()))
            .collect()
    }

    /// Host with each branch set contracted to its pattern vertex.
    pub fn contracted(&self) -> Graph {
        self.host.contract(self.pattern.ids(), &self.branch_sets)
    }
}

pub fn verify_minor_model(m: &MinorModel) -> std::result::Result<(), MinorViolation> {
    let np = m.pattern.len();
    if m.branch_sets.len() != np {
        return Err(MinorViolation::WrongBranchSetCount { expected: np, got: m.branch_sets.len() });
    }
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (i, set) in m.branch_sets.iter().enumerate() {
        let name = m.pattern.id(i).to_string();
        if set.is_empty() {
            return Err(MinorViolation::EmptyBranchSet(name));
        }
        for &v in set {
            if v >= m.host.len() {
                return Err(MinorViolation::UnknownHostVertex(name));
            }
            if let Some(&j) = owner.get(&v) {
                return Err(MinorViolation::Disjointness {
                    first: m.pattern.id(j).into(),
                    second: name,
                    shared: m.host.id(v).into(),
                });
            }
            owner.insert(v, i);
        }
    }
    for (i, set) in m.branch_sets.iter().enumerate() {
        let start = *set.iter().next().expect("nonempty");
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in m.host.neighbors(u) {
                if set.contains(&v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        if seen.len() != set.len() {
            return Err(MinorViolation::Connectivity(m.pattern.id(i).into()));
        }
    }
    for (a, b) in m.pattern.edges() {
        let linked = m.branch_sets[a].iter().any(|&u| m.host.neighbors(u).any(|v| m.branch_sets[b].contains(&v)));
        if !linked {
            return Err(MinorViolation::MissingEdge(m.pattern.id(a).into(), m.pattern.id(b).into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]).unwrap()
    }

    #[test]
    fn identity_model_is_valid() {
        let g = triangle();
        let m = MinorModel { host: g.clone(), pattern: g, branch_sets: (0..3).map(|v| BTreeSet::from([v])).collect() };
        assert_eq!(verify_minor_model(&m), Ok(()));
        assert_eq!(m.contracted().edge_count(), 3);
    }

    #[test]
    fn overlap_is_reported() {
        let g = triangle();
        let m = MinorModel {
            host: g.clone(),
            pattern: g,
            branch_sets: vec![BTreeSet::from([0, 1]), BTreeSet::from([1]), BTreeSet::from([2])],
        };
        assert!(matches!(verify_minor_model(&m), Err(MinorViolation::Disjointness { .. })));
    }

    #[test]
    fn contracting_a_path_edge() {
        let host = Graph::from_edges(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        let m = MinorModel {
            host,
            pattern: triangle(),
            branch_sets: vec![BTreeSet::from([0, 1]), BTreeSet::from([2]), BTreeSet::from([3])],
        };
        assert_eq!(verify_minor_model(&m), Ok(()));
        let disconnected = MinorModel { branch_sets: vec![BTreeSet::from([0, 2]), BTreeSet::from([1]), BTreeSet::from([3])], ..m };
        assert_eq!(verify_minor_model(&disconnected), Err(MinorViolation::Connectivity("x".into())));
    }
}
