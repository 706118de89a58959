//! Exact dimension of incomparable-pair sets and posets.
//!
//! `dim_of` partitions a pair set into the fewest reversible classes by
//! iterative deepening over class assignments. Each open class carries the
//! reflexive closure of `P` plus its reversed pairs, so a pair `(a, b)` fits
//! a class exactly when `a` is not already below `b` there.

mod substructure;

pub use substructure::{bound_f, bound_height, default_kappa_cap, find_kelly, kappa, kappa_with, rho, rho_with, KellyWitness, StandardExample};

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{topological_order, ElemSet, LinearExtension, Poset};

/// Default node budget shared by the exact searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Ordered pairs `(a, b)` of incomparable elements.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IncPairSet {
    pairs: Vec<(usize, usize)>,
}

impl IncPairSet {
    /// Checks incomparability and rejects repeated pairs.
    pub fn new(p: &Poset, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(a, b) in &pairs {
            if a >= p.len() || b >= p.len() {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            if !p.incomparable(a, b) {
                return Err(Error::NotIncomparable(p.id(a).into(), p.id(b).into()));
            }
            if !seen.insert((a, b)) {
                return Err(Error::DuplicatePair(p.id(a).into(), p.id(b).into()));
            }
        }
        Ok(IncPairSet { pairs })
    }

    pub fn from_ids<S: AsRef<str>>(p: &Poset, pairs: &[(S, S)]) -> Result<Self> {
        let idx = pairs
            .iter()
            .map(|(a, b)| Ok((p.require(a.as_ref())?, p.require(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        IncPairSet::new(p, idx)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn subset(&self, keep: impl Fn(usize, (usize, usize)) -> bool) -> IncPairSet {
        IncPairSet {
            pairs: self.pairs.iter().enumerate().filter(|&(i, &pr)| keep(i, pr)).map(|(_, &pr)| pr).collect(),
        }
    }

    pub fn to_ids(&self, p: &Poset) -> Vec<(String, String)> {
        self.pairs.iter().map(|&(a, b)| (p.id(a).to_string(), p.id(b).to_string())).collect()
    }

    /// The same pairs looked up by id in another poset.
    pub fn transfer(&self, from: &Poset, to: &Poset) -> Result<IncPairSet> {
        IncPairSet::from_ids(to, &self.to_ids(from))
    }
}

/// `Inc(P) ∩ (A × B)` in row-major order of `A` then `B`.
pub fn inc_pairs(p: &Poset, a_set: &ElemSet, b_set: &ElemSet) -> IncPairSet {
    let mut pairs = Vec::new();
    for &a in a_set {
        for &b in b_set {
            if p.incomparable(a, b) {
                pairs.push((a, b));
            }
        }
    }
    IncPairSet { pairs }
}

/// All incomparable pairs of `P`.
pub fn inc_all(p: &Poset) -> IncPairSet {
    let all = p.all();
    inc_pairs(p, &all, &all)
}

/// Pairs between minimal and maximal elements.
pub fn inc_min_max(p: &Poset) -> IncPairSet {
    let (mins, maxs) = p.mins_maxs();
    inc_pairs(p, &mins, &maxs)
}

/// Critical pairs: `a ∥ b`, `Down(a) ⊆ Down(b)` and `Up(b) ⊆ Up(a)`.
/// Reversing them is equivalent to reversing all of `Inc(P)`.
pub fn critical_pairs(p: &Poset) -> IncPairSet {
    let mut pairs = Vec::new();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.incomparable(a, b) && p.below(a).is_subset(p.below(b)) && p.above(b).is_subset(p.above(a)) {
                pairs.push((a, b));
            }
        }
    }
    IncPairSet { pairs }
}

/// Outcome of a reversibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reversibility {
    /// A linear extension of `P` placing `b` before `a` for every pair.
    Reversible(LinearExtension),
    /// A closed directed walk `v0 → v1 → ... → v0` in the order plus reversed
    /// pairs; it alternates order chains with reversed pairs.
    Cycle(Vec<String>),
}

impl Reversibility {
    pub fn is_reversible(&self) -> bool {
        matches!(self, Reversibility::Reversible(_))
    }
}

pub fn is_reversible(p: &Poset, pairs: &IncPairSet) -> Reversibility {
    let mut succ: Vec<Vec<usize>> = (0..p.len()).map(|x| p.upper_covers(x).to_vec()).collect();
    for &(a, b) in pairs.pairs() {
        succ[b].push(a);
    }
    for s in succ.iter_mut() {
        s.sort_unstable();
        s.dedup();
    }
    match topological_order(&succ) {
        Ok(order) => Reversibility::Reversible(LinearExtension::new(p.ids_of(&order))),
        Err(cycle) => Reversibility::Cycle(p.ids_of(&cycle)),
    }
}

/// A partition of a pair set into reversible classes with one reversing
/// extension per class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realizer {
    pub classes: Vec<Vec<(String, String)>>,
    pub extensions: Vec<LinearExtension>,
}

impl Realizer {
    /// Every extension is a linear extension of `P` and reverses its class;
    /// the classes cover `pairs`.
    pub fn verify(&self, p: &Poset, pairs: &IncPairSet) -> bool {
        if self.classes.len() != self.extensions.len() {
            return false;
        }
        let mut covered = HashSet::new();
        for (class, ext) in self.classes.iter().zip(&self.extensions) {
            if !p.is_linear_extension(ext) {
                return false;
            }
            let pos = ext.positions();
            for (a, b) in class {
                if pos[b.as_str()] >= pos[a.as_str()] {
                    return false;
                }
                covered.insert((a.clone(), b.clone()));
            }
        }
        pairs.to_ids(p).into_iter().all(|pr| covered.contains(&pr))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimResult {
    pub d: usize,
    pub realizer: Realizer,
    /// Search nodes expanded.
    pub nodes: u64,
}

/// Reflexive order closure of one class.
#[derive(Clone)]
struct Closure {
    rows: Vec<FixedBitSet>,
}

impl Closure {
    fn base(p: &Poset) -> Self {
        let rows = (0..p.len())
            .map(|x| {
                let mut r = p.above(x).clone();
                r.insert(x);
                r
            })
            .collect();
        Closure { rows }
    }

    fn le(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// Adds the arc `b → a`.
    fn add(&mut self, a: usize, b: usize) {
        let ra = self.rows[a].clone();
        for row in self.rows.iter_mut() {
            if row.contains(b) {
                row.union_with(&ra);
            }
        }
    }

    fn extension(&self, p: &Poset) -> LinearExtension {
        let n = self.rows.len();
        let mut down = vec![0usize; n];
        for row in &self.rows {
            for y in row.ones() {
                down[y] += 1;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (down[x], x));
        LinearExtension::new(p.ids_of(&order))
    }
}

struct Solver<'a> {
    p: &'a Poset,
    pairs: Vec<(usize, usize)>,
    base: Closure,
    budget: u64,
    nodes: u64,
    classes: Vec<Closure>,
    assign: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn search(&mut self, k: usize, opened: usize, d: usize) -> Result<bool> {
        if k == self.pairs.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let (a, b) = self.pairs[k];
        for c in 0..(opened + 1).min(d) {
            if c < opened {
                if self.classes[c].le(a, b) {
                    continue;
                }
                let saved = self.classes[c].clone();
                self.classes[c].add(a, b);
                self.assign[k] = c;
                if self.search(k + 1, opened, d)? {
                    return Ok(true);
                }
                self.classes[c] = saved;
            } else {
                let mut fresh = self.base.clone();
                fresh.add(a, b);
                self.classes.push(fresh);
                self.assign[k] = c;
                if self.search(k + 1, opened + 1, d)? {
                    return Ok(true);
                }
                self.classes.pop();
            }
        }
        Ok(false)
    }

    fn first_fit(&self) -> (Vec<Closure>, Vec<usize>) {
        let mut classes: Vec<Closure> = Vec::new();
        let mut assign = Vec::with_capacity(self.pairs.len());
        for &(a, b) in &self.pairs {
            match classes.iter().position(|c| !c.le(a, b)) {
                Some(c) => {
                    classes[c].add(a, b);
                    assign.push(c);
                }
                None => {
                    let mut fresh = self.base.clone();
                    fresh.add(a, b);
                    classes.push(fresh);
                    assign.push(classes.len() - 1);
                }
            }
        }
        (classes, assign)
    }

    fn realizer(&self, classes: &[Closure], assign: &[usize]) -> Realizer {
        let mut members = vec![Vec::new(); classes.len()];
        for (k, &c) in assign.iter().enumerate() {
            let (a, b) = self.pairs[k];
            members[c].push((k, (self.p.id(a).to_string(), self.p.id(b).to_string())));
        }
        let classes_out = members
            .into_iter()
            .map(|mut m| {
                m.sort_by_key(|(k, _)| *k);
                m.into_iter().map(|(_, pr)| pr).collect()
            })
            .collect();
        Realizer { classes: classes_out, extensions: classes.iter().map(|c| c.extension(self.p)).collect() }
    }
}

/// Two pairs that cannot share a class.
fn conflicting(p: &Poset, (a1, b1): (usize, usize), (a2, b2): (usize, usize)) -> bool {
    p.le(a1, b2) && p.le(a2, b1)
}

pub fn dim_of(p: &Poset, pairs: &IncPairSet) -> Result<DimResult> {
    dim_of_with(p, pairs, DEFAULT_BUDGET)
}

/// Exact `dim_P(I)` with a node budget. `dim_P(∅) = 0`.
pub fn dim_of_with(p: &Poset, pairs: &IncPairSet, budget: u64) -> Result<DimResult> {
    let m = pairs.len();
    let input = pairs.pairs();
    let degree: Vec<usize> =
        (0..m).map(|i| (0..m).filter(|&j| j != i && conflicting(p, input[i], input[j])).count()).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(degree[i]), i));
    let sorted: Vec<(usize, usize)> = order.iter().map(|&i| input[i]).collect();

    // Greedy clique in the conflict graph along the sorted order.
    let mut clique: Vec<(usize, usize)> = Vec::new();
    for &pr in &sorted {
        if clique.iter().all(|&q| conflicting(p, pr, q)) {
            clique.push(pr);
        }
    }
    let lower = clique.len();

    let mut solver = Solver {
        p,
        base: Closure::base(p),
        pairs: sorted,
        budget,
        nodes: 0,
        classes: Vec::new(),
        assign: vec![0; m],
    };
    let (greedy, greedy_assign) = solver.first_fit();
    let upper = greedy.len();
    for d in lower..upper {
        solver.classes.clear();
        if solver.search(0, 0, d)? {
            let classes = std::mem::take(&mut solver.classes);
            let assign = solver.assign.clone();
            return Ok(DimResult { d, realizer: solver.realizer(&classes, &assign), nodes: solver.nodes });
        }
    }
    Ok(DimResult { d: upper, realizer: solver.realizer(&greedy, &greedy_assign), nodes: solver.nodes })
}

/// `dim_P(A, B)`.
pub fn dim_sets(p: &Poset, a_set: &ElemSet, b_set: &ElemSet, budget: u64) -> Result<usize> {
    Ok(dim_of_with(p, &inc_pairs(p, a_set, b_set), budget)?.d)
}

/// `dim_P(Min P, Max P)`.
pub fn dim_min_max(p: &Poset, budget: u64) -> Result<usize> {
    let (mins, maxs) = p.mins_maxs();
    dim_sets(p, &mins, &maxs, budget)
}

pub fn dim_poset(p: &Poset) -> Result<DimResult> {
    dim_poset_with(p, DEFAULT_BUDGET)
}

/// `dim(P)`: 1 for chains, otherwise the dimension of the critical pairs.
pub fn dim_poset_with(p: &Poset, budget: u64) -> Result<DimResult> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    if p.is_chain() {
        return Ok(DimResult {
            d: 1,
            realizer: Realizer { classes: vec![Vec::new()], extensions: vec![p.default_extension()] },
            nodes: 0,
        });
    }
    dim_of_with(p, &critical_pairs(p), budget)
}

#[cfg(test)]
mod tests;
