//! Structure of doubly exposed standard examples in a planar drawing.
//!
//! The blue tree `T` grows upward from `x0` to the maximal elements above
//! it, the red tree `S` grows downward from `y0` to the minimal elements
//! below it. Everything here is phrased over an [`ExposedInstance`], which
//! owns the (possibly augmented) poset, its drawing and both trees.

mod enclosure;
mod minor;
mod predicates;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::dimension::StandardExample;
use crate::error::{Error, Result};
use crate::planar::{require_embeds, Embedding};
use crate::poset::{ElemSet, Poset};
use crate::reductions::Drawn;

pub use enclosure::{is_enclosed, EnclosureMode};
pub use minor::kelly_minor_model;
pub use predicates::{check_rho_kappa_bound, BoundReport, LemmaCheck, LemmaReport};

/// A rooted tree inside the cover graph whose root paths are chains.
#[derive(Clone, Debug)]
pub struct WitnessTree {
    pub root: usize,
    /// Grows along upper covers (blue) or lower covers (red).
    pub upward: bool,
    parent: Vec<Option<usize>>,
    member: Vec<bool>,
    depth: Vec<usize>,
    children: Vec<Vec<usize>>,
    pub leaves: Vec<usize>,
}

impl WitnessTree {
    /// BFS along covers from `root`, children in element order, pruned to
    /// the branches that reach a maximal (or minimal) element.
    fn grow(p: &Poset, root: usize, upward: bool) -> Self {
        let n = p.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = vec![root];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let mut next: Vec<usize> = if upward { p.upper_covers(u).to_vec() } else { p.lower_covers(u).to_vec() };
            next.sort_unstable();
            for v in next {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    order.push(v);
                    queue.push_back(v);
                }
            }
        }
        let extremal = |v: usize| if upward { p.is_maximal(v) } else { p.is_minimal(v) };
        let mut keep = vec![false; n];
        for &v in order.iter().rev() {
            if v != root && extremal(v) {
                keep[v] = true;
            }
            if keep[v] {
                if let Some(u) = parent[v] {
                    keep[u] = true;
                }
            }
        }
        keep[root] = true;
        let mut depth = vec![0; n];
        let mut children = vec![Vec::new(); n];
        for &v in &order {
            if v == root || !keep[v] {
                continue;
            }
            let u = parent[v].expect("non-root vertices have parents");
            depth[v] = depth[u] + 1;
            children[u].push(v);
        }
        for v in 0..n {
            if !keep[v] {
                parent[v] = None;
            }
        }
        let leaves = order.iter().copied().filter(|&v| v != root && keep[v] && children[v].is_empty()).collect();
        WitnessTree { root, upward, parent, member: keep, depth, children, leaves }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.member.get(v).copied().unwrap_or(false)
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.member.len()).filter(|&v| self.member[v])
    }

    /// The tree path from the root to `v`.
    pub fn root_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut x = v;
        while let Some(u) = self.parent[x] {
            path.push(u);
            x = u;
        }
        path.reverse();
        path
    }

    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        let mut x = v;
        while self.depth[x] > self.depth[u] {
            x = self.parent[x].expect("depth > 0");
        }
        x == u
    }

    fn lca(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].expect("depth > 0");
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].expect("depth > 0");
        }
        while u != v {
            u = self.parent[u].expect("below the root");
            v = self.parent[v].expect("below the root");
        }
        u
    }

    /// Child of `w` on the path towards descendant `v`.
    fn child_towards(&self, w: usize, v: usize) -> usize {
        let mut x = v;
        while self.parent[x] != Some(w) {
            x = self.parent[x].expect("descendant of w");
        }
        x
    }
}

/// Blue tree `T` (from `x0`) and red tree `S` (from `y0`).
#[derive(Clone, Debug)]
pub struct WitnessTreePair {
    pub blue: WitnessTree,
    pub red: WitnessTree,
}

impl WitnessTreePair {
    /// Structural violations: roots, single child at the root, leaf sets
    /// equal to `Up(x0) ∩ Max` and `Down(y0) ∩ Min`, cover edges along
    /// chains.
    pub fn check(&self, p: &Poset) -> Vec<String> {
        let mut bad = Vec::new();
        for (name, t) in [("blue", &self.blue), ("red", &self.red)] {
            if t.children(t.root).len() != 1 {
                bad.push(format!("{name} root `{}` has {} children", p.id(t.root), t.children(t.root).len()));
            }
            let expected: BTreeSet<usize> = if t.upward {
                p.upset_of(t.root).into_iter().filter(|&v| v != t.root && p.is_maximal(v)).collect()
            } else {
                p.downset_of(t.root).into_iter().filter(|&v| v != t.root && p.is_minimal(v)).collect()
            };
            let leaves: BTreeSet<usize> = t.leaves.iter().copied().collect();
            if leaves != expected {
                bad.push(format!("{name} leaves differ from the extremal elements reachable from the root"));
            }
            for v in t.vertices() {
                if let Some(u) = t.parent(v) {
                    let ok = if t.upward { p.covers_pair(u, v) } else { p.covers_pair(v, u) };
                    if !ok {
                        bad.push(format!("{name} edge `{}`-`{}` is not a cover in the tree direction", p.id(u), p.id(v)));
                    }
                }
            }
        }
        bad
    }
}

/// Builds both trees; `x0` and `y0` must already be extremal of degree 1.
pub fn build_trees(p: &Poset, e: &Embedding, x0: usize, y0: usize) -> Result<WitnessTreePair> {
    require_embeds(e, &p.cover_graph())?;
    let g = e.graph();
    if !p.is_minimal(x0) || g.degree(x0) != 1 {
        return Err(Error::NotDoublyExposed(format!("`{}` is not a minimal element of degree 1", p.id(x0))));
    }
    if !p.is_maximal(y0) || g.degree(y0) != 1 {
        return Err(Error::NotDoublyExposed(format!("`{}` is not a maximal element of degree 1", p.id(y0))));
    }
    if !e.is_outer(x0) || !e.is_outer(y0) {
        return Err(Error::NotDoublyExposed("exposing pair is not on the exterior face".into()));
    }
    Ok(WitnessTreePair { blue: WitnessTree::grow(p, x0, true), red: WitnessTree::grow(p, y0, false) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clockwise {
    Before,
    After,
    Incomparable,
}

/// The clockwise order `≺` on the vertices of one tree.
#[derive(Clone, Copy, Debug)]
pub struct ClockwiseOrder<'a> {
    pub tree: &'a WitnessTree,
    pub embedding: &'a Embedding,
}

/// `u ≺ v` when the paths from the lowest common ancestor `w` towards the
/// root, towards `u` and towards `v` leave `w` in clockwise order.
pub fn clockwise_compare(order: &ClockwiseOrder, u: usize, v: usize) -> Result<Clockwise> {
    let t = order.tree;
    let g = order.embedding.graph();
    for x in [u, v] {
        if x >= g.len() || !t.contains(x) {
            return Err(Error::NotInTree(g.id(x.min(g.len().saturating_sub(1))).to_string()));
        }
    }
    if u == v || t.is_ancestor(u, v) || t.is_ancestor(v, u) {
        return Ok(Clockwise::Incomparable);
    }
    let w = t.lca(u, v);
    let up = t.parent(w).ok_or_else(|| Error::NotDoublyExposed("tree root branches".into()))?;
    let (cu, cv) = (t.child_towards(w, u), t.child_towards(w, v));
    // Clockwise (up, cu, cv) is counterclockwise (up, cv, cu).
    Ok(if order.embedding.ccw_first(w, up, cu, cv) == cv { Clockwise::Before } else { Clockwise::After })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PathSide {
    Left,
    Right,
    On,
}

/// Side of every vertex relative to the `x0`-`y0` path `n`; `None` for
/// vertices with no path to `n`. Each component of the graph minus `n` is
/// classified through every edge attaching it to `n`, and disagreeing
/// probes are reported as a classification failure.
pub fn side_map(e: &Embedding, n: &[usize]) -> Result<Vec<Option<PathSide>>> {
    let g = e.graph();
    let mut pos = vec![usize::MAX; g.len()];
    for (i, &x) in n.iter().enumerate() {
        pos[x] = i;
    }
    let mut side: Vec<Option<PathSide>> = vec![None; g.len()];
    let mut done = vec![false; g.len()];
    for &x in n {
        side[x] = Some(PathSide::On);
        done[x] = true;
    }
    for s in 0..g.len() {
        if done[s] {
            continue;
        }
        done[s] = true;
        let mut comp = vec![s];
        let mut found: Option<PathSide> = None;
        let mut i = 0;
        while i < comp.len() {
            let m = comp[i];
            i += 1;
            for t in e.rotation(m).iter().copied() {
                if pos[t] == usize::MAX {
                    if !done[t] {
                        done[t] = true;
                        comp.push(t);
                    }
                    continue;
                }
                let k = pos[t];
                if k == 0 || k + 1 == n.len() {
                    return Err(Error::ClassificationFailed(format!("`{}` attaches to an end of the path", g.id(m))));
                }
                let (pred, succ) = (n[k - 1], n[k + 1]);
                // Clockwise (pred, m, succ) is counterclockwise (pred, succ, m).
                let here = if e.ccw_first(t, pred, succ, m) == succ { PathSide::Left } else { PathSide::Right };
                if found.is_some_and(|f| f != here) {
                    return Err(Error::ClassificationFailed(format!(
                        "probes through `{}` disagree on the side of `{}`",
                        g.id(t),
                        g.id(s)
                    )));
                }
                found = Some(here);
            }
        }
        for &m in &comp {
            side[m] = found;
        }
    }
    Ok(side)
}

/// Side of `w` relative to the `x0`-`y0` path `n`.
pub fn side_of(e: &Embedding, n: &[usize], w: usize) -> Result<PathSide> {
    side_map(e, n)?[w].ok_or_else(|| Error::Disconnected(e.graph().id(w).to_string()))
}

/// Which portion of an N-path a vertex sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Portion {
    Blue,
    Black,
    Red,
}

/// `N(a, b) = x0 T u W v S y0`.
#[derive(Clone, Debug)]
pub struct NPath {
    pub a: usize,
    pub b: usize,
    pub u: usize,
    pub v: usize,
    /// Vertices from `x0` to `y0`.
    pub path: Vec<usize>,
    /// Index of `u` in `path`.
    pub iu: usize,
    /// Index of `v` in `path`.
    pub iv: usize,
    /// The witnessing path `W(a, b) = a S v W u T b`.
    pub witness: Vec<usize>,
}

impl NPath {
    pub fn blue(&self) -> &[usize] {
        &self.path[..=self.iu]
    }

    pub fn black(&self) -> &[usize] {
        &self.path[self.iu..=self.iv]
    }

    pub fn red(&self) -> &[usize] {
        &self.path[self.iv..]
    }

    pub fn portions_of(&self, x: usize) -> Vec<Portion> {
        let Some(i) = self.path.iter().position(|&y| y == x) else { return Vec::new() };
        let mut out = Vec::new();
        if i <= self.iu {
            out.push(Portion::Blue);
        }
        if (self.iu..=self.iv).contains(&i) {
            out.push(Portion::Black);
        }
        if i >= self.iv {
            out.push(Portion::Red);
        }
        out
    }

    pub fn labelled_ids(&self, p: &Poset) -> Vec<(String, Vec<Portion>)> {
        self.path.iter().map(|&x| (p.id(x).to_string(), self.portions_of(x))).collect()
    }
}

/// An embedded poset with a degree-1 exposing pair and its two trees.
#[derive(Clone, Debug)]
pub struct ExposedInstance {
    pub poset: Poset,
    pub embedding: Embedding,
    pub x0: usize,
    pub y0: usize,
    /// Pendants added so that the exposing pair has degree 1.
    pub augmented: Vec<String>,
    pub trees: WitnessTreePair,
}

fn fresh(p: &Poset, base: String) -> String {
    let mut id = base;
    while p.index_of(&id).is_some() {
        id.push('\'');
    }
    id
}

impl ExposedInstance {
    /// Attaches new degree-1 extremal elements in the exterior face when
    /// `x0` or `y0` is not already one, then grows the trees.
    pub fn new(p: &Poset, e: &Embedding, x0: &str, y0: &str) -> Result<Self> {
        require_embeds(e, &p.cover_graph())?;
        let (x, y) = (p.require(x0)?, p.require(y0)?);
        if !e.is_outer(x) || !e.is_outer(y) {
            return Err(Error::NotDoublyExposed(format!("`{x0}` or `{y0}` is not on the exterior face")));
        }
        let mut d = Drawn::new(p.clone(), e.clone())?;
        let mut augmented = Vec::new();
        let (mut xr, mut yr) = (x, y);
        if !(p.is_minimal(x) && e.graph().degree(x) == 1) {
            let id = fresh(&d.poset, format!("{x0}^-"));
            d = d.add_exterior_pendant(&d.poset.all(), x, &id, true)?;
            xr = d.poset.require(&id)?;
            augmented.push(id);
        }
        if !(p.is_maximal(y) && d.embedding.graph().degree(y) == 1) {
            let id = fresh(&d.poset, format!("{y0}^+"));
            d = d.add_exterior_pendant(&d.poset.all(), y, &id, false)?;
            yr = d.poset.require(&id)?;
            augmented.push(id);
        }
        let trees = build_trees(&d.poset, &d.embedding, xr, yr)?;
        Ok(ExposedInstance { poset: d.poset, embedding: d.embedding, x0: xr, y0: yr, augmented, trees })
    }

    pub fn blue_order(&self) -> ClockwiseOrder<'_> {
        ClockwiseOrder { tree: &self.trees.blue, embedding: &self.embedding }
    }

    pub fn red_order(&self) -> ClockwiseOrder<'_> {
        ClockwiseOrder { tree: &self.trees.red, embedding: &self.embedding }
    }

    /// `A = Down(y0) ∩ Min`.
    pub fn a_side(&self) -> ElemSet {
        self.trees.red.leaves.iter().copied().collect()
    }

    /// `B = Up(x0) ∩ Max`.
    pub fn b_side(&self) -> ElemSet {
        self.trees.blue.leaves.iter().copied().collect()
    }

    /// Resolves a standard example inside `Inc(A, B)` to index pairs.
    pub fn resolve(&self, se: &StandardExample) -> Result<Vec<(usize, usize)>> {
        let p = &self.poset;
        if !se.verify(p) {
            return Err(Error::PreconditionFailed("pairs do not form a standard example".into()));
        }
        let (a_side, b_side) = (self.a_side(), self.b_side());
        se.pairs
            .iter()
            .map(|(a, b)| {
                let (ai, bi) = (p.require(a)?, p.require(b)?);
                if !a_side.contains(&ai) || !b_side.contains(&bi) {
                    return Err(Error::NotDoublyExposed(format!("pair (`{a}`, `{b}`) is not in Inc(A, B)")));
                }
                Ok((ai, bi))
            })
            .collect()
    }

    /// Pairs sorted by the blue order of their maximal elements.
    pub fn sorted(&self, pairs: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
        let order = self.blue_order();
        let mut out = pairs.to_vec();
        let mut err = None;
        out.sort_by(|x, y| match clockwise_compare(&order, x.1, y.1) {
            Ok(Clockwise::Before) => Ordering::Less,
            Ok(Clockwise::After) => Ordering::Greater,
            Ok(Clockwise::Incomparable) => Ordering::Equal,
            Err(e) => {
                err.get_or_insert(e);
                Ordering::Equal
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    pub fn ids(&self, pairs: &[(usize, usize)]) -> Vec<(String, String)> {
        pairs.iter().map(|&(a, b)| (self.poset.id(a).to_string(), self.poset.id(b).to_string())).collect()
    }

    /// Shortest black portion: a multi-source BFS upward from `a S y0`
    /// through `Down(b)` until it meets `x0 T b`.
    pub fn n_path(&self, a: usize, b: usize) -> Result<NPath> {
        let p = &self.poset;
        if !p.lt(a, b) {
            return Err(Error::NotComparable(p.id(a).to_string(), p.id(b).to_string()));
        }
        let (t, s) = (&self.trees.blue, &self.trees.red);
        if !s.contains(a) || !t.contains(b) {
            return Err(Error::NotInTree(p.id(if s.contains(a) { b } else { a }).to_string()));
        }
        let mut red_up = s.root_path(a);
        red_up.reverse(); // a .. y0
        let blue = t.root_path(b); // x0 .. b
        let on_blue: BTreeSet<usize> = blue.iter().copied().collect();
        let mut prev = vec![usize::MAX; p.len()];
        let mut queue = VecDeque::new();
        for &x in &red_up {
            if p.le(x, b) && prev[x] == usize::MAX {
                prev[x] = x;
                queue.push_back(x);
            }
        }
        let mut hit = None;
        while let Some(x) = queue.pop_front() {
            if on_blue.contains(&x) {
                hit = Some(x);
                break;
            }
            let mut ups = p.upper_covers(x).to_vec();
            ups.sort_unstable();
            for y in ups {
                if prev[y] == usize::MAX && p.le(y, b) {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let u = hit.expect("a < b, so a chain from a S y0 reaches x0 T b");
        let mut black = vec![u]; // u down to v
        let mut x = u;
        while prev[x] != x {
            x = prev[x];
            black.push(x);
        }
        let v = x;
        let mut path = t.root_path(u);
        let iu = path.len() - 1;
        path.extend_from_slice(&black[1..]);
        let iv = path.len() - 1;
        let mut v_up = s.root_path(v);
        v_up.reverse();
        path.extend_from_slice(&v_up[1..]);

        let mut witness: Vec<usize> = red_up.iter().copied().take_while(|&y| y != v).collect();
        witness.extend(black.iter().rev());
        let ib = blue.iter().position(|&y| y == u).expect("u on x0 T b");
        witness.extend_from_slice(&blue[ib + 1..]);
        Ok(NPath { a, b, u, v, path, iu, iv, witness })
    }

    /// Replays the defining conditions of an N-path.
    pub fn check_n_path(&self, np: &NPath) -> Vec<String> {
        let p = &self.poset;
        let g = self.embedding.graph();
        let mut bad = Vec::new();
        let path = &np.path;
        if path.first() != Some(&self.x0) || path.last() != Some(&self.y0) {
            bad.push("path does not run from x0 to y0".into());
        }
        if path.iter().collect::<BTreeSet<_>>().len() != path.len() {
            bad.push("path repeats a vertex".into());
        }
        if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            bad.push("consecutive vertices are not adjacent".into());
        }
        if np.blue() != self.trees.blue.root_path(np.u).as_slice() {
            bad.push("blue portion is not x0 T u".into());
        }
        let mut red = self.trees.red.root_path(np.v);
        red.reverse();
        if np.red() != red.as_slice() {
            bad.push("red portion is not v S y0".into());
        }
        let w = &np.witness;
        if w.first() != Some(&np.a) || w.last() != Some(&np.b) || w.windows(2).any(|x| !p.covers_pair(x[0], x[1])) {
            bad.push("W(a, b) is not a witnessing path from a to b".into());
        }
        let red_a: BTreeSet<usize> = self.trees.red.root_path(np.a).into_iter().collect();
        let blue_b: BTreeSet<usize> = self.trees.blue.root_path(np.b).into_iter().collect();
        let black = np.black();
        if black.len() > 2 && black[1..black.len() - 1].iter().any(|x| red_a.contains(x) || blue_b.contains(x)) {
            bad.push("black portion meets a S y0 or x0 T b internally".into());
        }
        if red_a.iter().any(|x| blue_b.contains(x)) && np.u != np.v {
            bad.push("a S y0 meets x0 T b but u != v".into());
        }
        bad
    }

    /// `T(I) ∩ S(I) = ∅`.
    pub fn is_separated(&self, pairs: &[(usize, usize)]) -> bool {
        let t: BTreeSet<usize> = pairs.iter().flat_map(|&(_, b)| self.trees.blue.root_path(b)).collect();
        pairs.iter().flat_map(|&(a, _)| self.trees.red.root_path(a)).all(|x| !t.contains(&x))
    }

    /// `D(I)` on the pairs in blue order.
    pub fn digraph(&self, pairs: &[(usize, usize)]) -> Result<ExposedDigraph> {
        let sorted = self.sorted(pairs)?;
        let m = sorted.len();
        let reds: Vec<BTreeSet<usize>> = sorted.iter().map(|&(a, _)| self.trees.red.root_path(a).into_iter().collect()).collect();
        let blues: Vec<Vec<usize>> = sorted.iter().map(|&(_, b)| self.trees.blue.root_path(b)).collect();
        let mut arcs = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i != j && blues[j].iter().any(|x| reds[i].contains(x)) {
                    arcs.push((i, j));
                }
            }
        }
        let mut inc = vec![1usize; m];
        for i in (0..m).rev() {
            for &(x, y) in &arcs {
                if x == i && y > i {
                    inc[i] = inc[i].max(inc[y] + 1);
                }
            }
        }
        let mut dec = vec![1usize; m];
        for i in 0..m {
            for &(x, y) in &arcs {
                if x == i && y < i {
                    dec[i] = dec[i].max(dec[y] + 1);
                }
            }
        }
        Ok(ExposedDigraph { pairs: self.ids(&sorted), order: sorted, arcs, p: inc, q: dec })
    }

    /// The largest class of equal `(p, q)` labels; it spans no arc of
    /// `D(I)` and is therefore separated. Requires `|I| >= 36n + 1`.
    pub fn extract_separated(&self, pairs: &[(usize, usize)], n: usize) -> Result<Vec<(usize, usize)>> {
        if n == 0 || pairs.len() < 36 * n + 1 {
            return Err(Error::PreconditionFailed(format!("{} pairs, need at least {}", pairs.len(), 36 * n + 1)));
        }
        let d = self.digraph(pairs)?;
        if let Some(i) = (0..d.order.len()).find(|&i| d.p[i] > 6 || d.q[i] > 6) {
            return Err(Error::PigeonholeFailed(format!("label ({}, {}) outside [6] x [6]", d.p[i], d.q[i])));
        }
        let out = d.largest_class();
        if out.len() < n + 1 {
            return Err(Error::PigeonholeFailed(format!("largest class has {} pairs, need {}", out.len(), n + 1)));
        }
        if !self.is_separated(&out) {
            return Err(Error::PigeonholeFailed("class with no arcs is not separated".into()));
        }
        Ok(out)
    }
}

/// `D(I)`: an arc `i -> j` when `a_i S y0` meets `x0 T b_j`.
#[derive(Clone, Debug, Serialize)]
pub struct ExposedDigraph {
    /// Pairs in blue order.
    pub pairs: Vec<(String, String)>,
    #[serde(skip)]
    pub order: Vec<(usize, usize)>,
    pub arcs: Vec<(usize, usize)>,
    /// Longest increasing path starting at each pair.
    pub p: Vec<usize>,
    /// Longest decreasing path starting at each pair.
    pub q: Vec<usize>,
}

impl ExposedDigraph {
    pub fn max_label(&self) -> usize {
        self.p.iter().chain(&self.q).copied().max().unwrap_or(0)
    }

    /// Pairs of the most frequent `(p, q)` label, smallest label on ties,
    /// in blue order.
    pub fn largest_class(&self) -> Vec<(usize, usize)> {
        let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for i in 0..self.order.len() {
            classes.entry((self.p[i], self.q[i])).or_default().push(i);
        }
        let best = classes.values().max_by(|x, y| x.len().cmp(&y.len()).then(Ordering::Greater)).cloned().unwrap_or_default();
        best.into_iter().map(|i| self.order[i]).collect()
    }
}
