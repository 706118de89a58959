//! Instance families: standard examples, Kelly posets with their concentric
//! drawing, random layered and forest posets, and doubly exposed instances.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dimension::IncPairSet;
use crate::error::{Error, Result};
use crate::planar::{rotations_from_coordinates, unbounded_face, Embedding};
use crate::poset::Poset;

/// `S_n`: elements `a1..an, b1..bn` with `a_i < b_j` iff `i != j`.
pub fn standard_example(n: i64) -> Result<Poset> {
    if n < 1 {
        return Err(Error::NonPositive(n));
    }
    let n = n as usize;
    let mut elements: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    elements.extend((1..=n).map(|i| format!("b{i}")));
    let mut relations = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                relations.push((format!("a{i}"), format!("b{j}")));
            }
        }
    }
    Poset::from_relations(&elements, &relations)
}

/// Subset model of `K_n`: `a_i = {i}`, `b_i = [n] - {i}`, `c_i = {1..i}`,
/// `d_i = {i+1..n}`, with `c_1 = a_1`, `c_{n-1} = b_n`, `d_1 = b_1` and
/// `d_{n-1} = a_n`.
#[derive(Clone, Debug)]
pub struct KellyModel {
    pub n: usize,
    pub elements: Vec<(String, BTreeSet<usize>)>,
}

impl KellyModel {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooSmall(n));
        }
        let mut elements = Vec::with_capacity(4 * n - 6);
        for i in 1..=n {
            elements.push((format!("a{i}"), BTreeSet::from([i])));
        }
        for i in 1..=n {
            elements.push((format!("b{i}"), (1..=n).filter(|&j| j != i).collect()));
        }
        for i in 2..=n - 2 {
            elements.push((format!("c{i}"), (1..=i).collect()));
        }
        for i in 2..=n - 2 {
            elements.push((format!("d{i}"), (i + 1..=n).collect()));
        }
        Ok(KellyModel { n, elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element id of a role, resolving the four identifications.
    pub fn canonical_id(&self, role: &str) -> Option<String> {
        let n = self.n;
        let kind = role.chars().next()?;
        let i: usize = role.get(1..)?.parse().ok()?;
        match kind {
            'a' | 'b' if (1..=n).contains(&i) => Some(role.to_string()),
            'c' if i == 1 => Some("a1".into()),
            'c' if i == n - 1 => Some(format!("b{n}")),
            'd' if i == 1 => Some("b1".into()),
            'd' if i == n - 1 => Some(format!("a{n}")),
            'c' | 'd' if (2..n - 1).contains(&i) => Some(role.to_string()),
            _ => None,
        }
    }

    pub fn subset_of(&self, role: &str) -> Option<&BTreeSet<usize>> {
        let id = self.canonical_id(role)?;
        self.elements.iter().find(|(e, _)| *e == id).map(|(_, s)| s)
    }

    pub fn poset(&self) -> Poset {
        let ids: Vec<&str> = self.elements.iter().map(|(e, _)| e.as_str()).collect();
        let mut relations = Vec::new();
        for (x, sx) in &self.elements {
            for (y, sy) in &self.elements {
                if sx != sy && sx.is_subset(sy) {
                    relations.push((x.as_str(), y.as_str()));
                }
            }
        }
        Poset::from_relations(&ids, &relations).expect("containment is a strict order")
    }

    /// Concentric straight-line drawing: `c_i` right and `d_i` left of the
    /// origin at distance `i + 1/2`, `a_i` above and `b_i` below at
    /// distance `i`.
    pub fn coordinates(&self) -> Vec<(f64, f64)> {
        let n = self.n as f64;
        self.elements
            .iter()
            .map(|(id, _)| {
                let i: f64 = id[1..].parse().expect("numeric suffix");
                match (&id[..1], id[1..].parse::<usize>().expect("numeric")) {
                    ("a", 1) => (1.5, 0.0),
                    ("b", 1) => (-1.5, 0.0),
                    ("a", j) if j == self.n => (-(n - 0.5), 0.0),
                    ("b", j) if j == self.n => (n - 0.5, 0.0),
                    ("a", _) => (0.0, i),
                    ("b", _) => (0.0, -i),
                    ("c", _) => (i + 0.5, 0.0),
                    _ => (-(i + 0.5), 0.0),
                }
            })
            .collect()
    }
}

/// `K_n` with its concentric drawing; the exterior face is the hexagon
/// `H_{n-1}`.
pub fn kelly(n: usize) -> Result<(Poset, Embedding)> {
    let model = KellyModel::new(n)?;
    let p = model.poset();
    let g = p.cover_graph();
    let xy = model.coordinates();
    let rot = rotations_from_coordinates(&g, &xy);
    let e = Embedding::from_rotations(g, rot).map_err(|d| Error::ConstructionFailed(d.to_string()))?;
    let outer = unbounded_face(&e, &xy, 0).ok_or_else(|| Error::ConstructionFailed("no exterior face".into()))?;
    Ok((p, e.with_outer_face(outer)))
}

/// Closure of a random DAG on `levels` levels with edges between adjacent
/// levels kept with probability `edge_prob`. Element ids are `v0, v1, ...`.
pub fn random_layered_poset(seed: u64, n: usize, levels: usize, edge_prob: f64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let levels = levels.max(1);
    let level: Vec<usize> = (0..n).map(|_| rng.gen_range(0..levels)).collect();
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut relations = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if level[y] == level[x] + 1 && rng.gen_bool(edge_prob.clamp(0.0, 1.0)) {
                relations.push((ids[x].clone(), ids[y].clone()));
            }
        }
    }
    Poset::from_relations(&ids, &relations).expect("level-increasing relations are acyclic")
}

/// Layered model with about `sqrt(n)` levels.
pub fn random_poset(seed: u64, n: usize, edge_prob: f64) -> Poset {
    let levels = ((n as f64).sqrt().ceil() as usize).max(2);
    random_layered_poset(seed, n, levels, edge_prob)
}

/// A random tree on `n` elements, each edge oriented at random and dropped
/// with probability 1/8; the cover graph is exactly the resulting forest.
pub fn random_forest_poset(seed: u64, n: usize) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut relations = Vec::new();
    for child in 1..n {
        let parent = rng.gen_range(0..child);
        if rng.gen_bool(0.125) {
            continue;
        }
        if rng.gen_bool(0.5) {
            relations.push((ids[parent].clone(), ids[child].clone()));
        } else {
            relations.push((ids[child].clone(), ids[parent].clone()));
        }
    }
    Poset::from_relations(&ids, &relations).expect("orientations of a forest are acyclic")
}

/// A doubly exposed instance with its drawing.
#[derive(Clone, Debug)]
pub struct DoublyExposed {
    pub poset: Poset,
    pub embedding: Embedding,
    pub x0: String,
    pub y0: String,
    pub pairs: IncPairSet,
}

/// `K_{m+1}` redrawn with the hexagon `H_2` (which carries `a1` and `b1`)
/// as exterior, a pendant `x0` below `a1` and `y0` above `b1` in that face,
/// and `I = {(a_i, b_i) : 2 <= i <= m+1}`. The seed subdivides random cover
/// edges and hangs extra pendants at random corners.
pub fn doubly_exposed_family(seed: u64, m: usize) -> Result<DoublyExposed> {
    if m < 2 {
        return Err(Error::TooSmall(m));
    }
    let n = m + 1;
    let (k, ke) = kelly(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::from(&k, &ke);
    let (a1, b1) = (b.idx("a1"), b.idx("b1"));
    let inner = (0..ke.faces().len())
        .find(|&f| {
            let w = ke.face_walk(f);
            !ke.is_exterior_face(f) && w.contains(&a1) && w.contains(&b1)
        })
        .ok_or_else(|| Error::ConstructionFailed("no bounded face through a1 and b1".into()))?;
    let mut outer_dart = ke.faces()[inner][0];

    let subdivisions = rng.gen_range(0..=m);
    for s in 0..subdivisions {
        let edges = b.cover_edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        let w = b.subdivide(u, v, &format!("s{s}"));
        if outer_dart == (u, v) {
            outer_dart = (u, w);
        } else if outer_dart == (v, u) {
            outer_dart = (v, w);
        }
    }
    let pendants = rng.gen_range(0..=m);
    for t in 0..pendants {
        let w = rng.gen_range(0..b.ids.len());
        if b.rot[w].is_empty() {
            continue;
        }
        let after = b.rot[w][rng.gen_range(0..b.rot[w].len())];
        // Keep Min and Max unchanged: hang below only what already has a
        // lower cover, above only what already has an upper one.
        let has_lower = b.covers.iter().any(|&(_, hi)| hi == w);
        let has_upper = b.covers.iter().any(|&(lo, _)| lo == w);
        let coin = rng.gen_bool(0.5);
        let below = if has_lower && has_upper { coin } else { has_lower };
        b.pendant(w, after, &format!("t{t}"), below);
    }
    // x0 and y0 go into the exterior corners at a1 and b1.
    let corner = |b: &Builder, h: usize, dart: (usize, usize)| -> usize {
        let e = b.embedding();
        let f = e.face_of(dart.0, dart.1);
        let darts = &e.faces()[f];
        let i = darts.iter().position(|d| d.0 == h).expect("vertex on the exterior face");
        darts[i].1
    };
    let after = corner(&b, a1, outer_dart);
    let x0 = b.pendant(a1, after, "x0", true);
    let outer_dart = (a1, x0);
    let after = corner(&b, b1, outer_dart);
    b.pendant(b1, after, "y0", false);

    let poset = b.poset()?;
    let embedding = b.embedding();
    let f = embedding.face_of(a1, x0);
    let embedding = embedding.with_outer_face(f);
    let pairs: Vec<(String, String)> = (2..=n).map(|i| (format!("a{i}"), format!("b{i}"))).collect();
    let pairs = IncPairSet::from_ids(&poset, &pairs).map_err(|e| Error::ConstructionFailed(e.to_string()))?;
    let inst = DoublyExposed { poset, embedding, x0: "x0".into(), y0: "y0".into(), pairs };
    if !crate::reductions::is_doubly_exposed(&inst.poset, &inst.embedding, &inst.pairs, &inst.x0, &inst.y0)? {
        return Err(Error::ConstructionFailed("instance is not doubly exposed".into()));
    }
    Ok(inst)
}

/// An embedded poset under construction, kept as covers plus rotations.
pub(crate) struct Builder {
    pub ids: Vec<String>,
    /// `(lower, upper)` cover pairs.
    pub covers: Vec<(usize, usize)>,
    pub rot: Vec<Vec<usize>>,
}

impl Builder {
    pub fn from(p: &Poset, e: &Embedding) -> Self {
        Builder { ids: p.ids().to_vec(), covers: p.covers().to_vec(), rot: e.rotations().to_vec() }
    }

    pub fn idx(&self, id: &str) -> usize {
        self.ids.iter().position(|x| x == id).expect("known id")
    }

    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        self.covers.clone()
    }

    /// Replaces the cover `u < v` by `u < w < v`.
    pub fn subdivide(&mut self, u: usize, v: usize, id: &str) -> usize {
        let w = self.ids.len();
        self.ids.push(id.to_string());
        self.covers.retain(|&c| c != (u, v));
        self.covers.push((u, w));
        self.covers.push((w, v));
        for (a, b) in [(u, v), (v, u)] {
            let i = self.rot[a].iter().position(|&x| x == b).expect("edge present");
            self.rot[a][i] = w;
        }
        self.rot.push(vec![u, v]);
        w
    }

    /// Adds a degree-1 element below (or above) `h`, placed counterclockwise
    /// right after neighbour `after` at `h`.
    pub fn pendant(&mut self, h: usize, after: usize, id: &str, below: bool) -> usize {
        let w = self.ids.len();
        self.ids.push(id.to_string());
        self.covers.push(if below { (w, h) } else { (h, w) });
        let i = self.rot[h].iter().position(|&x| x == after).map_or(0, |i| i + 1);
        self.rot[h].insert(i, w);
        self.rot.push(vec![h]);
        w
    }

    pub fn poset(&self) -> Result<Poset> {
        let rel: Vec<(String, String)> =
            self.covers.iter().map(|&(a, b)| (self.ids[a].clone(), self.ids[b].clone())).collect();
        Poset::from_relations(&self.ids, &rel)
    }

    /// Embedding over the builder's vertex order (which is the poset's).
    pub fn embedding(&self) -> Embedding {
        let p = self.poset().expect("builder keeps an order");
        Embedding::from_rotations(p.cover_graph(), self.rot.clone()).expect("operations preserve planarity")
    }
}
