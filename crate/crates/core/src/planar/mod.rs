//! Combinatorial plane embeddings: rotation systems with a designated
//! exterior face per component.
//!
//! Rotations list neighbours counterclockwise. Faces are traced by
//! `next(u → v) = (v → w)` where `w` precedes `u` in the rotation at `v`, so
//! every face lies to the left of its darts: bounded faces come out
//! counterclockwise and the exterior face clockwise.

mod cycles;
mod minor;
mod search;

pub use cycles::{nested_kelly_cycles, CycleSides, NestedCycles, Side};
pub use minor::{verify_minor_model, MinorModel, MinorViolation};
pub use search::{find_planar_embedding, min_outerplanarity, MinOuterplanarity};

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// First violated embedding invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    UnknownVertex(String),
    MissingRotation(String),
    NonNeighborInRotation { at: String, listed: String },
    DuplicateInRotation { at: String, listed: String },
    EdgeMissingFromRotation { at: String, missing: String },
    FaceIncidenceMismatch { incidences: usize, expected: usize },
    EulerViolated { component: String, v: usize, e: usize, f: usize },
    OuterFaceNotFound(Vec<String>),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UnknownVertex(v) => write!(f, "rotation given for unknown vertex `{v}`"),
            Diagnostic::MissingRotation(v) => write!(f, "no rotation for vertex `{v}`"),
            Diagnostic::NonNeighborInRotation { at, listed } => {
                write!(f, "rotation at `{at}` lists non-neighbour `{listed}`")
            }
            Diagnostic::DuplicateInRotation { at, listed } => write!(f, "rotation at `{at}` lists `{listed}` twice"),
            Diagnostic::EdgeMissingFromRotation { at, missing } => {
                write!(f, "EdgeMissingFromRotation: rotation at `{at}` omits neighbour `{missing}`")
            }
            Diagnostic::FaceIncidenceMismatch { incidences, expected } => {
                write!(f, "faces cover {incidences} darts, expected {expected}")
            }
            Diagnostic::EulerViolated { component, v, e, f: faces } => {
                write!(f, "component of `{component}` has V - E + F = {v} - {e} + {faces} != 2")
            }
            Diagnostic::OuterFaceNotFound(w) => write!(f, "outer face walk [{}] is not a face", w.join(", ")),
        }
    }
}

impl From<Diagnostic> for Error {
    fn from(d: Diagnostic) -> Self {
        Error::InvalidEmbedding(d.to_string())
    }
}

/// The designated exterior of one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exterior {
    Face(usize),
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
}

#[derive(Clone, Debug)]
pub struct Embedding {
    graph: Graph,
    rot: Vec<Vec<usize>>,
    pos: Vec<HashMap<usize, usize>>,
    faces: Vec<Vec<(usize, usize)>>,
    dart_face: Vec<Vec<usize>>,
    comps: Vec<Vec<usize>>,
    comp_of: Vec<usize>,
    face_comp: Vec<usize>,
    exterior: Vec<Exterior>,
    nested: Vec<bool>,
    /// The embedding this one was induced from, with the vertex map into
    /// it. Further restrictions are taken from there, so nesting is judged
    /// against the original drawing rather than a restricted one.
    origin: Option<Arc<(Embedding, Vec<usize>)>>,
}

impl PartialEq for Embedding {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.rot == other.rot && self.exterior == other.exterior
    }
}

impl Embedding {
    /// Builds an embedding from counterclockwise rotations (one list per
    /// vertex, in vertex order). Every component gets its longest face as
    /// exterior until told otherwise.
    pub fn from_rotations(graph: Graph, rot: Vec<Vec<usize>>) -> std::result::Result<Self, Diagnostic> {
        let n = graph.len();
        if rot.len() != n {
            return Err(Diagnostic::MissingRotation(graph.id(rot.len().min(n.saturating_sub(1))).to_string()));
        }
        let mut pos = Vec::with_capacity(n);
        for v in 0..n {
            let mut m = HashMap::new();
            for (i, &u) in rot[v].iter().enumerate() {
                if u >= n || !graph.has_edge(v, u) {
                    let listed = if u < n { graph.id(u).to_string() } else { format!("#{u}") };
                    return Err(Diagnostic::NonNeighborInRotation { at: graph.id(v).into(), listed });
                }
                if m.insert(u, i).is_some() {
                    return Err(Diagnostic::DuplicateInRotation { at: graph.id(v).into(), listed: graph.id(u).into() });
                }
            }
            if let Some(u) = graph.neighbors(v).find(|u| !m.contains_key(u)) {
                return Err(Diagnostic::EdgeMissingFromRotation { at: graph.id(v).into(), missing: graph.id(u).into() });
            }
            pos.push(m);
        }
        let (faces, dart_face) = trace_faces(&rot, &pos);
        let incidences: usize = faces.iter().map(Vec::len).sum();
        if incidences != 2 * graph.edge_count() {
            return Err(Diagnostic::FaceIncidenceMismatch { incidences, expected: 2 * graph.edge_count() });
        }
        let comps = graph.components();
        let mut comp_of = vec![0; n];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        let face_comp: Vec<usize> = faces.iter().map(|f| comp_of[f[0].0]).collect();
        let mut face_count = vec![0usize; comps.len()];
        for &c in &face_comp {
            face_count[c] += 1;
        }
        for (c, members) in comps.iter().enumerate() {
            let v = members.len();
            let e: usize = members.iter().map(|&x| graph.degree(x)).sum::<usize>() / 2;
            let f = if e == 0 { 1 } else { face_count[c] };
            if v + f != e + 2 {
                return Err(Diagnostic::EulerViolated { component: graph.id(members[0]).into(), v, e, f });
            }
        }
        let exterior = comps
            .iter()
            .enumerate()
            .map(|(c, members)| {
                if members.len() == 1 {
                    return Exterior::Vertex(members[0]);
                }
                let mut best = usize::MAX;
                for (fi, f) in faces.iter().enumerate() {
                    if face_comp[fi] == c && (best == usize::MAX || f.len() > faces[best].len()) {
                        best = fi;
                    }
                }
                Exterior::Face(best)
            })
            .collect();
        let nested = vec![false; comps.len()];
        Ok(Embedding { graph, rot, pos, faces, dart_face, comps, comp_of, face_comp, exterior, nested, origin: None })
    }

    /// Builds from id-keyed rotations; vertices of degree 0 may be omitted.
    pub fn from_id_rotations(
        graph: Graph,
        rotations: &BTreeMap<String, Vec<String>>,
    ) -> std::result::Result<Self, Diagnostic> {
        let mut rot = vec![Vec::new(); graph.len()];
        for (v, list) in rotations {
            let vi = graph.index_of(v).ok_or_else(|| Diagnostic::UnknownVertex(v.clone()))?;
            rot[vi] = list
                .iter()
                .map(|u| graph.index_of(u).ok_or_else(|| Diagnostic::UnknownVertex(u.clone())))
                .collect::<std::result::Result<_, _>>()?;
        }
        for v in 0..graph.len() {
            if graph.degree(v) > 0 && !rotations.contains_key(graph.id(v)) {
                return Err(Diagnostic::MissingRotation(graph.id(v).into()));
            }
        }
        Embedding::from_rotations(graph, rot)
    }

    /// Designates the face traced by `walk` (vertex sequence in traversal
    /// order, any starting point) as the exterior of its component.
    pub fn with_outer_walk(mut self, walk: &[usize]) -> std::result::Result<Self, Diagnostic> {
        let not_found = || Diagnostic::OuterFaceNotFound(walk.iter().map(|&v| self.graph.id(v).to_string()).collect());
        let Some(&first) = walk.first() else { return Err(not_found()) };
        let c = self.comp_of[first];
        if walk.len() == 1 && self.comps[c].len() == 1 {
            return Ok(self);
        }
        let found = (0..self.faces.len()).find(|&f| {
            let tails: Vec<usize> = self.faces[f].iter().map(|d| d.0).collect();
            tails.len() == walk.len() && (0..tails.len()).any(|s| (0..tails.len()).all(|i| tails[(s + i) % tails.len()] == walk[i]))
        });
        match found {
            Some(f) => {
                self.exterior[c] = Exterior::Face(f);
                self.origin = None;
                Ok(self)
            }
            None => Err(not_found()),
        }
    }

    pub fn with_outer_ids<S: AsRef<str>>(self, walk: &[S]) -> std::result::Result<Self, Diagnostic> {
        let idx: Option<Vec<usize>> = walk.iter().map(|s| self.graph.index_of(s.as_ref())).collect();
        match idx {
            Some(idx) => self.with_outer_walk(&idx),
            None => Err(Diagnostic::OuterFaceNotFound(walk.iter().map(|s| s.as_ref().to_string()).collect())),
        }
    }

    /// Designates face `f` as the exterior of its component.
    pub fn with_outer_face(mut self, f: usize) -> Self {
        let c = self.face_comp[f];
        self.exterior[c] = Exterior::Face(f);
        self.origin = None;
        self
    }

    /// Re-derives every invariant from the rotation system.
    pub fn validate(&self) -> std::result::Result<ValidationReport, Diagnostic> {
        let fresh = Embedding::from_rotations(self.graph.clone(), self.rot.clone())?;
        for (c, ext) in self.exterior.iter().enumerate() {
            if let Exterior::Face(f) = *ext {
                if f >= fresh.faces.len() || fresh.faces[f] != self.faces[f] || fresh.face_comp[f] != c {
                    return Err(Diagnostic::OuterFaceNotFound(self.face_walk_ids(f)));
                }
            }
        }
        Ok(self.report())
    }

    pub fn report(&self) -> ValidationReport {
        let isolated = self.comps.iter().filter(|c| c.len() == 1).count();
        ValidationReport {
            vertices: self.graph.len(),
            edges: self.graph.edge_count(),
            faces: self.faces.len() + isolated,
            components: self.comps.len(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    pub fn rotation_ids(&self) -> BTreeMap<String, Vec<String>> {
        (0..self.graph.len())
            .map(|v| (self.graph.id(v).to_string(), self.rot[v].iter().map(|&u| self.graph.id(u).to_string()).collect()))
            .collect()
    }

    pub fn faces(&self) -> &[Vec<(usize, usize)>] {
        &self.faces
    }

    /// Face to the left of dart `u → v`.
    pub fn face_of(&self, u: usize, v: usize) -> usize {
        self.dart_face[u][self.pos[u][&v]]
    }

    /// Vertices of face `f` in traversal order (repeats allowed).
    pub fn face_walk(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|d| d.0).collect()
    }

    pub fn face_walk_ids(&self, f: usize) -> Vec<String> {
        self.face_walk(f).into_iter().map(|v| self.graph.id(v).to_string()).collect()
    }

    pub fn face_component(&self, f: usize) -> usize {
        self.face_comp[f]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.comps
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.comp_of[v]
    }

    pub fn exterior(&self, c: usize) -> Exterior {
        self.exterior[c]
    }

    /// Whether component `c` sits inside a bounded face of another one.
    pub fn is_nested(&self, c: usize) -> bool {
        self.nested[c]
    }

    pub fn is_exterior_face(&self, f: usize) -> bool {
        self.exterior[self.face_comp[f]] == Exterior::Face(f)
    }

    /// Exterior walk of a component.
    pub fn exterior_walk(&self, c: usize) -> Vec<usize> {
        match self.exterior[c] {
            Exterior::Face(f) => self.face_walk(f),
            Exterior::Vertex(v) => vec![v],
        }
    }

    /// Vertices on the exterior face of the whole drawing.
    pub fn outer_vertices(&self) -> BTreeSet<usize> {
        (0..self.comps.len()).filter(|&c| !self.nested[c]).flat_map(|c| self.exterior_walk(c)).collect()
    }

    /// Vertices on the exterior of their own component.
    pub fn component_exterior_vertices(&self, c: usize) -> BTreeSet<usize> {
        self.exterior_walk(c).into_iter().collect()
    }

    pub fn is_outer(&self, v: usize) -> bool {
        !self.nested[self.comp_of[v]] && self.component_exterior_vertices(self.comp_of[v]).contains(&v)
    }

    /// Neighbour after `u` counterclockwise around `v`.
    pub fn ccw_succ(&self, v: usize, u: usize) -> usize {
        let r = &self.rot[v];
        r[(self.pos[v][&u] + 1) % r.len()]
    }

    /// Neighbour before `u` counterclockwise around `v`.
    pub fn ccw_pred(&self, v: usize, u: usize) -> usize {
        let r = &self.rot[v];
        r[(self.pos[v][&u] + r.len() - 1) % r.len()]
    }

    /// Position of `u` in the rotation at `v`.
    pub fn rotation_index(&self, v: usize, u: usize) -> usize {
        self.pos[v][&u]
    }

    /// Going counterclockwise around `v` starting just after `from`, which
    /// of `x`, `y` comes first.
    pub fn ccw_first(&self, v: usize, from: usize, x: usize, y: usize) -> usize {
        let d = self.rot[v].len();
        let base = self.pos[v][&from];
        let off = |u: usize| (self.pos[v][&u] + d - base) % d;
        if off(x) <= off(y) { x } else { y }
    }

    /// Face of the component `members` (a sub-embedding's view) containing
    /// the angular sector at `h` in which neighbour `q` lies: walk clockwise
    /// from `q` to the first neighbour in `members`.
    fn sector_face(&self, h: usize, q: usize, members: &BTreeSet<usize>) -> Option<usize> {
        let mut p = q;
        for _ in 0..self.rot[h].len() {
            p = self.ccw_pred(h, p);
            if members.contains(&p) {
                return Some(p);
            }
        }
        None
    }

    /// Embedding of the subgraph induced by `keep` under inherited
    /// rotations. Each component's exterior is the face containing the
    /// region where the old exterior was; components lying in a bounded
    /// face of another component are marked nested.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Embedding {
        if let Some(o) = &self.origin {
            let (root, map) = (&o.0, &o.1);
            return root.induced(&keep.iter().map(|&v| map[v]).collect());
        }
        let h_graph = self.graph.induced(keep);
        let old: Vec<usize> = keep.iter().copied().collect();
        let new_of: HashMap<usize, usize> = old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rot: Vec<Vec<usize>> = old
            .iter()
            .map(|&v| self.rot[v].iter().filter_map(|u| new_of.get(u).copied()).collect())
            .collect();
        let mut sub = Embedding::from_rotations(h_graph, rot).expect("induced rotations of a plane embedding are plane");
        let old_comps: Vec<BTreeSet<usize>> =
            sub.comps.iter().map(|c| c.iter().map(|&v| old[v]).collect()).collect();
        for (k, members) in old_comps.iter().enumerate() {
            if members.len() == 1 {
                continue;
            }
            let (h, p) = self.exterior_anchor(members);
            sub.exterior[k] = Exterior::Face(sub.face_of(new_of[&h], new_of[&p]));
        }
        for (k, members) in old_comps.iter().enumerate() {
            let c = self.comp_of[*members.iter().next().expect("nonempty")];
            if self.nested[c] {
                sub.nested[k] = true;
                continue;
            }
            let probe = *members.iter().next().expect("nonempty");
            sub.nested[k] = old_comps.iter().enumerate().any(|(k2, other)| {
                if k2 == k || other.len() < 3 || self.comp_of[*other.iter().next().unwrap()] != c {
                    return false;
                }
                match self.locate(probe, other) {
                    Some((t, p)) => {
                        let f = sub.face_of(new_of[&t], new_of[&p]);
                        sub.exterior[k2] != Exterior::Face(f)
                    }
                    None => false,
                }
            });
        }
        sub.origin = Some(Arc::new((self.clone(), old)));
        sub
    }

    /// A dart `h → p` inside `members` whose left face in the sub-embedding
    /// on `members` contains the old exterior region.
    fn exterior_anchor(&self, members: &BTreeSet<usize>) -> (usize, usize) {
        let first = *members.iter().next().expect("nonempty");
        let c = self.comp_of[first];
        let Exterior::Face(f) = self.exterior[c] else { unreachable!("multi-vertex component has a face") };
        for &(u, w) in &self.faces[f] {
            if members.contains(&u) && members.contains(&w) {
                return (u, w);
            }
        }
        for &(u, w) in &self.faces[f] {
            if members.contains(&u) {
                let p = self.sector_face(u, w, members).expect("component vertex has a neighbour inside");
                return (u, p);
            }
        }
        let starts: Vec<usize> = self.face_walk(f);
        let (t, q) = self.bfs_hit(&starts, members).expect("component is reachable from the exterior");
        (t, self.sector_face(t, q, members).expect("component vertex has a neighbour inside"))
    }

    /// Breadth-first search from `starts` through vertices outside `target`;
    /// returns the first `target` vertex reached and its predecessor.
    fn bfs_hit(&self, starts: &[usize], target: &BTreeSet<usize>) -> Option<(usize, usize)> {
        let mut seen = vec![false; self.graph.len()];
        let mut queue = VecDeque::new();
        for &s in starts {
            if !seen[s] && !target.contains(&s) {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.rot[u] {
                if target.contains(&v) {
                    return Some((v, u));
                }
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// For a vertex `x` outside `members`, a dart `t → p` of the
    /// sub-embedding on `members` whose left face contains `x`.
    fn locate(&self, x: usize, members: &BTreeSet<usize>) -> Option<(usize, usize)> {
        let (t, q) = self.bfs_hit(&[x], members)?;
        Some((t, self.sector_face(t, q, members)?))
    }

    /// Face of the sub-embedding on `members` containing vertex `x` (not in
    /// `members`), as a dart of that sub-embedding in old indices.
    pub fn locate_in(&self, x: usize, members: &BTreeSet<usize>) -> Option<(usize, usize)> {
        self.locate(x, members)
    }

    /// The exterior dart of the sub-embedding on `members`, in old indices.
    pub fn exterior_dart_of(&self, members: &BTreeSet<usize>) -> Option<(usize, usize)> {
        if members.len() < 2 {
            return None;
        }
        Some(self.exterior_anchor(members))
    }

    pub fn layering(&self) -> Layering {
        let mut layers = Vec::new();
        let mut remaining: BTreeSet<usize> = (0..self.graph.len()).collect();
        let mut first = true;
        while !remaining.is_empty() {
            let layer: BTreeSet<usize> = if first {
                self.outer_vertices()
            } else {
                let sub = self.induced(&remaining);
                let old: Vec<usize> = remaining.iter().copied().collect();
                sub.outer_vertices().into_iter().map(|v| old[v]).collect()
            };
            first = false;
            for v in &layer {
                remaining.remove(v);
            }
            layers.push(layer);
        }
        Layering { layers }
    }

    /// Number of nonempty layers.
    pub fn outerplanarity(&self) -> usize {
        self.layering().layers.len()
    }
}

fn trace_faces(rot: &[Vec<usize>], pos: &[HashMap<usize, usize>]) -> (Vec<Vec<(usize, usize)>>, Vec<Vec<usize>>) {
    let mut dart_face: Vec<Vec<usize>> = rot.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let mut faces = Vec::new();
    for v in 0..rot.len() {
        for i in 0..rot[v].len() {
            if dart_face[v][i] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut face = Vec::new();
            let (mut a, mut ai) = (v, i);
            while dart_face[a][ai] == usize::MAX {
                dart_face[a][ai] = f;
                let b = rot[a][ai];
                face.push((a, b));
                let d = rot[b].len();
                let j = (pos[b][&a] + d - 1) % d;
                a = b;
                ai = j;
            }
            faces.push(face);
        }
    }
    (faces, dart_face)
}

/// Sets `V_1, V_2, ...` of successive exterior vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    pub layers: Vec<BTreeSet<usize>>,
}

impl Layering {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Layer number (0-based) of every vertex.
    pub fn level(&self, n: usize) -> Vec<usize> {
        let mut lv = vec![usize::MAX; n];
        for (i, l) in self.layers.iter().enumerate() {
            for &v in l {
                lv[v] = i;
            }
        }
        lv
    }

    /// Partition of the vertex set, and every edge inside one layer or
    /// between consecutive ones.
    pub fn check(&self, g: &Graph) -> bool {
        let lv = self.level(g.len());
        let total: usize = self.layers.iter().map(BTreeSet::len).sum();
        total == g.len()
            && lv.iter().all(|&l| l != usize::MAX)
            && g.edges().iter().all(|&(u, v)| lv[u].abs_diff(lv[v]) <= 1)
    }

    pub fn ids(&self, g: &Graph) -> Vec<Vec<String>> {
        self.layers.iter().map(|l| l.iter().map(|&v| g.id(v).to_string()).collect()).collect()
    }
}

/// Rotation system of a straight-line drawing: neighbours sorted by angle.
pub fn rotations_from_coordinates(g: &Graph, xy: &[(f64, f64)]) -> Vec<Vec<usize>> {
    (0..g.len())
        .map(|v| {
            let mut nb: Vec<usize> = g.neighbors(v).collect();
            let angle = |u: usize| (xy[u].1 - xy[v].1).atan2(xy[u].0 - xy[v].0);
            nb.sort_by(|&a, &b| angle(a).partial_cmp(&angle(b)).expect("finite coordinates"));
            nb
        })
        .collect()
}

/// The clockwise face of a connected straight-line drawing.
pub fn unbounded_face(e: &Embedding, xy: &[(f64, f64)], c: usize) -> Option<usize> {
    (0..e.faces().len())
        .filter(|&f| e.face_component(f) == c)
        .map(|f| {
            let area: f64 = e.faces()[f]
                .iter()
                .map(|&(u, v)| xy[u].0 * xy[v].1 - xy[v].0 * xy[u].1)
                .sum();
            (f, area)
        })
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
        .map(|(f, _)| f)
}

/// `validate_embedding` on raw id data, with an optional exterior walk.
pub fn validate_embedding(
    graph: &Graph,
    rotations: &BTreeMap<String, Vec<String>>,
    outer: Option<&[String]>,
) -> std::result::Result<ValidationReport, Diagnostic> {
    let mut e = Embedding::from_id_rotations(graph.clone(), rotations)?;
    if let Some(w) = outer {
        e = e.with_outer_ids(w)?;
    }
    e.validate()
}

/// The embedding draws exactly `g`, with the same vertex order.
pub fn require_embeds(e: &Embedding, g: &Graph) -> Result<()> {
    if e.graph().ids() != g.ids() {
        return Err(Error::InvalidEmbedding("embedding vertex set differs from the cover graph".into()));
    }
    if e.graph().edges() != g.edges() {
        return Err(Error::InvalidEmbedding("embedding edge set differs from the cover graph".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
