//! Simple undirected graphs with opaque string vertex ids.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Undirected simple graph. Vertex order is the construction order and is
/// used for every deterministic tie-break.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let mut g = Graph { ids: Vec::new(), index: HashMap::new(), adj: Vec::new() };
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        Ok(g)
    }

    pub fn from_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Graph::new(vertices)?;
        for (u, v) in edges {
            let (u, v) = (g.require(u.as_ref())?, g.require(v.as_ref())?);
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize> {
        if self.index.contains_key(id) {
            return Err(Error::DuplicateElement(id.to_string()));
        }
        let i = self.ids.len();
        self.ids.push(id.to_string());
        self.index.insert(id.to_string(), i);
        self.adj.push(BTreeSet::new());
        Ok(i)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::Input(format!("self-loop at `{}`", self.ids[u])));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_ids(&self) -> Vec<(String, String)> {
        self.edges().into_iter().map(|(u, v)| (self.ids[u].clone(), self.ids[v].clone())).collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = c;
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `keep`, preserving vertex order.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Graph {
        let ids: Vec<&str> = keep.iter().map(|&v| self.ids[v].as_str()).collect();
        let mut g = Graph::new(&ids).expect("ids are unique");
        for &u in keep {
            for v in self.neighbors(u) {
                if u < v && keep.contains(&v) {
                    let (a, b) = (g.index[&self.ids[u]], g.index[&self.ids[v]]);
                    g.add_edge(a, b).expect("no loops");
                }
            }
        }
        g
    }

    /// Shortest path between `from` and `to` using only vertices allowed by
    /// `allowed` (endpoints exempt). Neighbours are explored in index order.
    pub fn shortest_path(&self, from: usize, to: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.len()];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut x = to;
                while x != from {
                    x = prev[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            for v in self.neighbors(u) {
                if prev[v] == usize::MAX && (v == to || allowed(v)) {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Contract each branch set into a single vertex named by `names`;
    /// used to check minor models. Vertices outside every branch set are
    /// dropped.
    pub fn contract(&self, names: &[String], branch_sets: &[BTreeSet<usize>]) -> Graph {
        let mut owner = vec![usize::MAX; self.len()];
        for (i, set) in branch_sets.iter().enumerate() {
            for &v in set {
                owner[v] = i;
            }
        }
        let mut g = Graph::new(names).expect("pattern names are unique");
        for (u, v) in self.edges() {
            let (a, b) = (owner[u], owner[v]);
            if a != usize::MAX && b != usize::MAX && a != b {
                g.add_edge(a, b).expect("distinct");
            }
        }
        g
    }
}
