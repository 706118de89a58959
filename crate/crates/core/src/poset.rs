//! Finite posets: order queries, cover relation, subposets and linear
//! extensions.
//!
//! Elements are opaque string ids. Internally every element is addressed by
//! its index in the input order, and that order drives all tie-breaks.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A set of element indices of one poset.
pub type ElemSet = BTreeSet<usize>;

/// A finite poset with a dense strict-order table and its cover relation.
#[derive(Clone, Debug)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.above == other.above
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds the poset generated by `relations`, each pair read as `x < y`.
    /// Relations need not be covers; the order is closed transitively and the
    /// cover relation is its transitive reduction.
    pub fn from_relations<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let n = elements.len();
        let mut ids = Vec::with_capacity(n);
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            let e = e.as_ref().to_string();
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e));
            }
            ids.push(e);
        }
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (x, y) in relations {
            let xi = *index.get(x.as_ref()).ok_or_else(|| Error::UnknownElement(x.as_ref().to_string()))?;
            let yi = *index.get(y.as_ref()).ok_or_else(|| Error::UnknownElement(y.as_ref().to_string()))?;
            if xi == yi {
                return Err(Error::CycleDetected(vec![ids[xi].clone(), ids[xi].clone()]));
            }
            succ[xi].push(yi);
        }
        for s in succ.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        let order = topological_order(&succ).map_err(|cycle| {
            Error::CycleDetected(cycle.into_iter().map(|i| ids[i].clone()).collect())
        })?;
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            for &y in &succ[x] {
                row.insert(y);
                row.union_with(&above[y]);
            }
            above[x] = row;
        }
        Ok(Self::from_closure(ids, index, above))
    }

    /// Builds a poset from an already transitive, irreflexive table.
    fn from_closure(ids: Vec<String>, index: HashMap<String, usize>, above: Vec<FixedBitSet>) -> Self {
        let n = ids.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in above.iter().enumerate() {
            for y in row.ones() {
                below[y].insert(x);
            }
        }
        let mut covers = Vec::new();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            for y in above[x].ones() {
                if above[x].is_disjoint(&below[y]) {
                    covers.push((x, y));
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                }
            }
        }
        for l in lower_covers.iter_mut() {
            l.sort_unstable();
        }
        Poset { ids, index, above, below, covers, upper_covers, lower_covers }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn require_all<S: AsRef<str>>(&self, ids: &[S]) -> Result<ElemSet> {
        ids.iter().map(|s| self.require(s.as_ref())).collect()
    }

    pub fn ids_of<'a>(&'a self, set: impl IntoIterator<Item = &'a usize>) -> Vec<String> {
        set.into_iter().map(|&x| self.ids[x].clone()).collect()
    }

    /// Translates a set of `other`'s elements into this poset by id, dropping
    /// ids this poset does not have.
    pub fn translate(&self, other: &Poset, set: &ElemSet) -> ElemSet {
        set.iter().filter_map(|&x| self.index_of(other.id(x))).collect()
    }

    pub fn all(&self) -> ElemSet {
        (0..self.len()).collect()
    }

    /// `x < y`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    /// `x <= y`.
    pub fn le(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.lt(y, x)
    }

    /// Distinct and not comparable.
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y)
    }

    /// Strict up-set of `x` as a bit row.
    pub fn above(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    /// Strict down-set of `x` as a bit row.
    pub fn below(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    /// Cover pairs `(x, y)` meaning `y` covers `x`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covering `x`, in index order.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    /// Elements covered by `x`, in index order.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn covers_pair(&self, x: usize, y: usize) -> bool {
        self.upper_covers[x].binary_search(&y).is_ok()
    }

    pub fn upset(&self, set: &ElemSet) -> ElemSet {
        let mut row = FixedBitSet::with_capacity(self.len());
        for &x in set {
            row.insert(x);
            row.union_with(&self.above[x]);
        }
        row.ones().collect()
    }

    pub fn downset(&self, set: &ElemSet) -> ElemSet {
        let mut row = FixedBitSet::with_capacity(self.len());
        for &x in set {
            row.insert(x);
            row.union_with(&self.below[x]);
        }
        row.ones().collect()
    }

    pub fn upset_of(&self, x: usize) -> ElemSet {
        self.upset(&ElemSet::from([x]))
    }

    pub fn downset_of(&self, x: usize) -> ElemSet {
        self.downset(&ElemSet::from([x]))
    }

    /// `Up(S)` by ids.
    pub fn upset_ids<S: AsRef<str>>(&self, set: &[S]) -> Result<Vec<String>> {
        Ok(self.ids_of(&self.upset(&self.require_all(set)?)))
    }

    /// `Down(S)` by ids.
    pub fn downset_ids<S: AsRef<str>>(&self, set: &[S]) -> Result<Vec<String>> {
        Ok(self.ids_of(&self.downset(&self.require_all(set)?)))
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.below[x].is_clear()
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.above[x].is_clear()
    }

    pub fn mins(&self) -> ElemSet {
        (0..self.len()).filter(|&x| self.is_minimal(x)).collect()
    }

    pub fn maxs(&self) -> ElemSet {
        (0..self.len()).filter(|&x| self.is_maximal(x)).collect()
    }

    pub fn mins_maxs(&self) -> (ElemSet, ElemSet) {
        (self.mins(), self.maxs())
    }

    /// Size of a largest chain, by longest path in the cover DAG.
    pub fn height(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyPoset);
        }
        Ok(self.chain_depths().into_iter().max().unwrap_or(1))
    }

    /// For each element, the size of a largest chain ending at it.
    pub fn chain_depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.len()];
        for x in self.linear_extension_order() {
            depth[x] = 1 + self.lower_covers[x].iter().map(|&z| depth[z]).max().unwrap_or(0);
        }
        depth
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|x| (x + 1..self.len()).all(|y| self.comparable(x, y)))
    }

    /// `x, z in Q` and `x < y < z` imply `y in Q`.
    pub fn is_convex(&self, members: &ElemSet) -> bool {
        members.iter().all(|&x| {
            members.iter().all(|&z| {
                if !self.lt(x, z) {
                    return true;
                }
                let mut between = self.above[x].clone();
                between.intersect_with(&self.below[z]);
                between.ones().all(|y| members.contains(&y))
            })
        })
    }

    /// Shortest chain of covers from `x` to `y`; ties resolved towards
    /// smaller element indices.
    pub fn witnessing_path(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        if !self.le(x, y) {
            return Err(Error::NotComparable(self.ids[x].clone(), self.ids[y].clone()));
        }
        let mut prev = vec![usize::MAX; self.len()];
        prev[x] = x;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            if u == y {
                break;
            }
            for &v in &self.upper_covers[u] {
                if prev[v] == usize::MAX && self.le(v, y) {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut path = vec![y];
        let mut cur = y;
        while cur != x {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    pub fn witnessing_path_ids(&self, x: &str, y: &str) -> Result<Vec<String>> {
        let p = self.witnessing_path(self.require(x)?, self.require(y)?)?;
        Ok(self.ids_of(&p))
    }

    /// Undirected Hasse diagram on the same ids.
    pub fn cover_graph(&self) -> Graph {
        let mut g = Graph::new(&self.ids).expect("poset ids are unique");
        for &(x, y) in &self.covers {
            g.add_edge(x, y).expect("covers are irreflexive");
        }
        g
    }

    /// Components of the cover graph, as element sets in index order.
    pub fn components(&self) -> Vec<ElemSet> {
        self.cover_graph().components().into_iter().map(|c| c.into_iter().collect()).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subposet induced by `members`, keeping ids and their relative order.
    pub fn induced(&self, members: &ElemSet) -> Poset {
        let old: Vec<usize> = members.iter().copied().collect();
        let ids: Vec<String> = old.iter().map(|&x| self.ids[x].clone()).collect();
        let index: HashMap<String, usize> = ids.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let n = old.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (i, &x) in old.iter().enumerate() {
            for (j, &y) in old.iter().enumerate() {
                if self.lt(x, y) {
                    above[i].insert(j);
                }
            }
        }
        Poset::from_closure(ids, index, above)
    }

    /// This poset with extra elements appended and extra `x < y` generators.
    pub fn extended<S: AsRef<str>>(&self, new_elements: &[S], new_relations: &[(S, S)]) -> Result<Poset> {
        let mut elements: Vec<String> = self.ids.clone();
        elements.extend(new_elements.iter().map(|s| s.as_ref().to_string()));
        let mut relations: Vec<(String, String)> = self.cover_ids();
        relations.extend(new_relations.iter().map(|(x, y)| (x.as_ref().to_string(), y.as_ref().to_string())));
        Poset::from_relations(&elements, &relations)
    }

    pub fn cover_ids(&self) -> Vec<(String, String)> {
        self.covers.iter().map(|&(x, y)| (self.ids[x].clone(), self.ids[y].clone())).collect()
    }

    /// A topological order of the elements that always picks the smallest
    /// available index.
    pub fn linear_extension_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg: Vec<usize> = (0..n).map(|x| self.lower_covers[x].len()).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            out.push(x);
            for &y in &self.upper_covers[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        out
    }

    pub fn default_extension(&self) -> LinearExtension {
        LinearExtension::new(self.ids_of(&self.linear_extension_order()))
    }

    /// True when `ext` is a permutation of the ground set compatible with
    /// the order.
    pub fn is_linear_extension(&self, ext: &LinearExtension) -> bool {
        if ext.order.len() != self.len() {
            return false;
        }
        let mut pos = vec![usize::MAX; self.len()];
        for (i, id) in ext.order.iter().enumerate() {
            match self.index_of(id) {
                Some(x) if pos[x] == usize::MAX => pos[x] = i,
                _ => return false,
            }
        }
        self.covers.iter().all(|&(x, y)| pos[x] < pos[y])
    }
}

/// Kahn's algorithm on a successor list; on failure returns a directed cycle.
pub(crate) fn topological_order(succ: &[Vec<usize>]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &y in s {
            indeg[y] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(x) = ready.pop_first() {
        out.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                ready.insert(y);
            }
        }
    }
    if out.len() == n {
        return Ok(out);
    }
    // Every leftover vertex has a leftover predecessor; walk backwards
    // until a vertex repeats.
    let done: HashSet<usize> = out.into_iter().collect();
    let mut pred = vec![usize::MAX; n];
    for x in 0..n {
        if done.contains(&x) {
            continue;
        }
        for &y in &succ[x] {
            if !done.contains(&y) && pred[y] == usize::MAX {
                pred[y] = x;
            }
        }
    }
    let start = (0..n).find(|x| !done.contains(x)).expect("leftover exists");
    let mut seen = HashMap::new();
    let mut walk = Vec::new();
    let mut cur = start;
    while !seen.contains_key(&cur) {
        seen.insert(cur, walk.len());
        walk.push(cur);
        cur = pred[cur];
    }
    let mut cycle: Vec<usize> = walk[seen[&cur]..].to_vec();
    cycle.reverse();
    cycle.push(cycle[0]);
    Err(cycle)
}

/// A linear order on a ground set, stored by element id.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct LinearExtension {
    pub order: Vec<String>,
}

impl LinearExtension {
    pub fn new(order: Vec<String>) -> Self {
        LinearExtension { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn positions(&self) -> HashMap<&str, usize> {
        self.order.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
    }

    /// `b` precedes `a`.
    pub fn reverses(&self, a: &str, b: &str) -> bool {
        let pos = self.positions();
        matches!((pos.get(a), pos.get(b)), (Some(pa), Some(pb)) if pb < pa)
    }

    pub fn restricted_to(&self, keep: &HashSet<&str>) -> LinearExtension {
        LinearExtension::new(self.order.iter().filter(|s| keep.contains(s.as_str())).cloned().collect())
    }

    pub fn reversed(&self) -> LinearExtension {
        LinearExtension::new(self.order.iter().rev().cloned().collect())
    }
}

/// `[L1 < L2 < ... < Lk]`: the orders placed one after another.
pub fn concat_extensions(parts: &[LinearExtension]) -> Result<LinearExtension> {
    let mut seen = HashSet::new();
    let mut order = Vec::new();
    for part in parts {
        for id in &part.order {
            if !seen.insert(id.as_str()) {
                return Err(Error::OverlappingGroundSets(id.clone()));
            }
            order.push(id.clone());
        }
    }
    Ok(LinearExtension::new(order))
}

/// A subset of a parent poset, viewed with the induced order.
#[derive(Clone, Debug)]
pub struct SubposetView<'a> {
    pub parent: &'a Poset,
    pub members: ElemSet,
}

impl<'a> SubposetView<'a> {
    pub fn new(parent: &'a Poset, members: ElemSet) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&x| x >= parent.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(SubposetView { parent, members })
    }

    pub fn is_convex(&self) -> bool {
        self.parent.is_convex(&self.members)
    }

    pub fn to_poset(&self) -> Poset {
        self.parent.induced(&self.members)
    }

    pub fn ids(&self) -> Vec<String> {
        self.parent.ids_of(&self.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::from_relations(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]).unwrap()
    }

    #[test]
    fn chain_reduces_to_two_covers() {
        let p = chain3();
        assert_eq!(p.cover_ids(), vec![("x".into(), "y".into()), ("y".into(), "z".into())]);
        assert!(p.lt(0, 2));
        assert_eq!(p.height().unwrap(), 3);
        assert_eq!(p.mins_maxs(), (ElemSet::from([0]), ElemSet::from([2])));
        assert_eq!(p.downset_ids(&["y"]).unwrap(), vec!["x", "y"]);
    }

    #[test]
    fn singleton_and_antichain() {
        let p = Poset::from_relations::<&str>(&["a"], &[]).unwrap();
        assert!(p.covers().is_empty());
        assert!(p.above(0).is_clear());
        let q = Poset::from_relations::<&str>(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(q.height().unwrap(), 1);
        assert_eq!(q.mins(), q.maxs());
    }

    #[test]
    fn detects_cycles_and_duplicates() {
        let err = Poset::from_relations(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
        match err {
            Error::CycleDetected(c) => {
                assert_eq!(c.first(), c.last());
                assert_eq!(c.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            Poset::from_relations::<&str>(&["x", "x"], &[]).unwrap_err(),
            Error::DuplicateElement("x".into())
        );
        assert!(matches!(
            Poset::from_relations(&["x"], &[("x", "q")]).unwrap_err(),
            Error::UnknownElement(_)
        ));
        assert_eq!(Poset::from_relations::<&str>(&[], &[]).unwrap().height(), Err(Error::EmptyPoset));
    }

    #[test]
    fn convexity() {
        let p = chain3();
        assert!(!p.is_convex(&ElemSet::from([0, 2])));
        assert!(p.is_convex(&ElemSet::from([0, 1])));
    }

    #[test]
    fn witnessing_paths() {
        let p = chain3();
        assert_eq!(p.witnessing_path_ids("x", "z").unwrap(), vec!["x", "y", "z"]);
        assert_eq!(p.witnessing_path_ids("y", "y").unwrap(), vec!["y"]);
        assert!(matches!(p.witnessing_path_ids("z", "x"), Err(Error::NotComparable(..))));
    }

    #[test]
    fn concatenation() {
        let l = |v: &[&str]| LinearExtension::new(v.iter().map(|s| s.to_string()).collect());
        assert_eq!(concat_extensions(&[l(&["x"]), l(&["y"])]).unwrap(), l(&["x", "y"]));
        assert_eq!(
            concat_extensions(&[l(&["a", "b"]), l(&["c"]), l(&["d", "e"])]).unwrap(),
            l(&["a", "b", "c", "d", "e"])
        );
        assert_ne!(
            concat_extensions(&[l(&["x"]), l(&["y"])]).unwrap(),
            concat_extensions(&[l(&["y"]), l(&["x"])]).unwrap()
        );
        assert_eq!(concat_extensions(&[l(&[]), l(&["y"])]).unwrap(), concat_extensions(&[l(&["y"]), l(&[])]).unwrap());
        assert!(matches!(concat_extensions(&[l(&["a"]), l(&["a"])]), Err(Error::OverlappingGroundSets(_))));
    }

    #[test]
    fn chain_cover_graph_is_a_path() {
        let g = chain3().cover_graph();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn induced_subposet_keeps_order() {
        let p = chain3();
        let q = SubposetView::new(&p, ElemSet::from([0, 2])).unwrap().to_poset();
        assert_eq!(q.ids(), &["x", "z"]);
        assert!(q.lt(0, 1));
        assert_eq!(q.covers(), &[(0, 1)]);
    }
}
