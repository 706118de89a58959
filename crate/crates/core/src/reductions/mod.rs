//! The reduction pipeline: min-max reduction, component selection,
//! unfolding with explicit extensions, convex-subposet extraction and the
//! reduction to a doubly exposed instance. Every step can log a
//! [`TraceStep`] carrying the inequality it claims and whether the solver
//! confirmed it.

mod exposing;
mod planar_steps;

pub use exposing::{doubly_exposed_reduce, DoublyExposedOptions, DoublyExposedResult};
pub use planar_steps::{height_pipeline, unfold_planar, HeightReport, PlanarSide, UnfoldPlanar};

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::dimension::{dim_of_with, inc_min_max, inc_pairs, IncPairSet};
use crate::error::{Error, Result};
use crate::planar::{require_embeds, Embedding};
use crate::poset::{concat_extensions, ElemSet, LinearExtension, Poset};

/// One link of a reduction: the claim and whether it was re-checked.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub lemma: String,
    pub inputs: Value,
    pub outputs: Value,
    pub inequality: String,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
    pub verified: bool,
    /// False when the run was forced past a hypothesis of the step.
    pub hypothesis_met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn all_verified(&self) -> bool {
        self.steps.iter().all(|s| s.verified)
    }

    pub fn unverified(&self) -> Vec<&TraceStep> {
        self.steps.iter().filter(|s| !s.verified).collect()
    }

    /// Steps whose hypotheses held are all verified.
    pub fn sound(&self) -> bool {
        self.steps.iter().all(|s| s.verified || !s.hypothesis_met)
    }
}

/// A dimension value that may have run out of budget.
pub(crate) fn budgeted(r: Result<usize>) -> Result<Option<usize>> {
    match r {
        Ok(d) => Ok(Some(d)),
        Err(Error::BudgetExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Builds a trace step for `lhs REL rhs`; a computed violation aborts with
/// the step id, a budget miss leaves the step unverified.
pub(crate) fn link(
    lemma: &str,
    inputs: Value,
    outputs: Value,
    inequality: &str,
    lhs: Option<u64>,
    rhs: Option<u64>,
    holds: impl Fn(u64, u64) -> bool,
) -> Result<TraceStep> {
    let verified = match (lhs, rhs) {
        (Some(l), Some(r)) => {
            if !holds(l, r) {
                return Err(Error::StepFailed {
                    step: lemma.to_string(),
                    detail: format!("{inequality} fails with lhs = {l}, rhs = {r}"),
                });
            }
            true
        }
        _ => false,
    };
    let note = (!verified).then(|| "solver budget exhausted".to_string());
    Ok(TraceStep {
        lemma: lemma.into(),
        inputs,
        outputs,
        inequality: inequality.into(),
        lhs,
        rhs,
        verified,
        hypothesis_met: true,
        note,
    })
}

/// Like [`link`], but with `hypothesis_met = false` a violated inequality
/// is recorded as unverified instead of aborting.
#[allow(clippy::too_many_arguments)]
pub(crate) fn link_as(
    hypothesis_met: bool,
    lemma: &str,
    inputs: Value,
    outputs: Value,
    inequality: &str,
    lhs: Option<u64>,
    rhs: Option<u64>,
    holds: impl Fn(u64, u64) -> bool,
) -> Result<TraceStep> {
    if hypothesis_met {
        return link(lemma, inputs, outputs, inequality, lhs, rhs, holds);
    }
    let ok = lhs.zip(rhs).map(|(l, r)| holds(l, r));
    let note = match ok {
        Some(true) => "holds although a hypothesis is unmet",
        Some(false) => "fails; a hypothesis is unmet",
        None => "solver budget exhausted; a hypothesis is unmet",
    };
    Ok(TraceStep {
        lemma: lemma.into(),
        inputs,
        outputs,
        inequality: inequality.into(),
        lhs,
        rhs,
        verified: ok == Some(true),
        hypothesis_met: false,
        note: Some(note.into()),
    })
}

pub(crate) fn step_failed(step: &str, detail: impl Into<String>) -> Error {
    Error::StepFailed { step: step.into(), detail: detail.into() }
}

pub(crate) fn min_max_dim(p: &Poset, budget: u64) -> Result<usize> {
    Ok(dim_of_with(p, &inc_min_max(p), budget)?.d)
}

pub(crate) fn set_dim(p: &Poset, a: &ElemSet, b: &ElemSet, budget: u64) -> Result<usize> {
    Ok(dim_of_with(p, &inc_pairs(p, a, b), budget)?.d)
}

/// Minimal (maximal) elements of the subposet on `members`.
pub(crate) fn sub_mins(p: &Poset, members: &ElemSet) -> ElemSet {
    members.iter().copied().filter(|&x| !members.iter().any(|&y| p.lt(y, x))).collect()
}

pub(crate) fn sub_maxs(p: &Poset, members: &ElemSet) -> ElemSet {
    members.iter().copied().filter(|&x| !members.iter().any(|&y| p.lt(x, y))).collect()
}

/// A poset together with a drawing of its cover graph; vertex orders agree.
#[derive(Clone, Debug)]
pub struct Drawn {
    pub poset: Poset,
    pub embedding: Embedding,
}

impl Drawn {
    pub fn new(poset: Poset, embedding: Embedding) -> Result<Self> {
        require_embeds(&embedding, &poset.cover_graph())?;
        Ok(Drawn { poset, embedding })
    }

    /// Restriction to a convex set (whose cover graph is the induced one).
    pub fn induced(&self, set: &ElemSet) -> Result<Drawn> {
        Drawn::new(self.poset.induced(set), self.embedding.induced(set))
    }

    /// Adds degree-1 elements `(host, id, below)`, each in a corner where it
    /// joins the layer of its host, so no layer count grows.
    pub fn add_pendants(&self, specs: &[(usize, String, bool)]) -> Result<Drawn> {
        let corners = pendant_corners(&self.embedding, &specs.iter().map(|s| s.0).collect::<Vec<_>>());
        let mut rot = self.embedding.rotations().to_vec();
        let base = self.poset.len();
        for (k, ((host, _, _), after)) in specs.iter().zip(&corners).enumerate() {
            let w = base + k;
            let at = after.map_or(rot[*host].len(), |a| rot[*host].iter().position(|&x| x == a).expect("neighbour") + 1);
            rot[*host].insert(at, w);
            rot.push(vec![*host]);
        }
        let names: Vec<&str> = specs.iter().map(|s| s.1.as_str()).collect();
        let rels: Vec<(&str, &str)> = specs
            .iter()
            .map(|(h, id, below)| if *below { (id.as_str(), self.poset.id(*h)) } else { (self.poset.id(*h), id.as_str()) })
            .collect();
        let poset = self.poset.extended(&names, &rels)?;
        let mut embedding = Embedding::from_rotations(poset.cover_graph(), rot)?;
        for c in 0..self.embedding.components().len() {
            if let crate::planar::Exterior::Face(f) = self.embedding.exterior(c) {
                let (u, v) = self.embedding.faces()[f][0];
                // The dart's face now also passes any pendant put into it.
                let nf = embedding.face_of(u, v);
                embedding = embedding.with_outer_face(nf);
            }
        }
        Drawn::new(poset, embedding)
    }

    /// Adds one degree-1 element in the exterior corner at `host` of the
    /// sub-drawing on `members`.
    pub fn add_exterior_pendant(&self, members: &ElemSet, host: usize, id: &str, below: bool) -> Result<Drawn> {
        let e = &self.embedding;
        let after = if members.len() < 2 || e.rotation(host).is_empty() {
            e.rotation(host).last().copied()
        } else {
            let sub = e.induced(members);
            let old: Vec<usize> = members.iter().copied().collect();
            let nh = old.iter().position(|&v| v == host).expect("host in members");
            let c = sub.component_of(nh);
            match sub.exterior(c) {
                crate::planar::Exterior::Face(f) => {
                    sub.faces()[f].iter().find(|d| d.0 == nh).map(|d| old[d.1]).or_else(|| e.rotation(host).last().copied())
                }
                crate::planar::Exterior::Vertex(_) => e.rotation(host).last().copied(),
            }
        };
        let mut rot = e.rotations().to_vec();
        let w = self.poset.len();
        let at = after.map_or(0, |a| rot[host].iter().position(|&x| x == a).expect("neighbour") + 1);
        rot[host].insert(at, w);
        rot.push(vec![host]);
        let rel = if below { (id, self.poset.id(host)) } else { (self.poset.id(host), id) };
        let poset = self.poset.extended(&[id], &[rel])?;
        let mut embedding = Embedding::from_rotations(poset.cover_graph(), rot)?;
        for c in 0..e.components().len() {
            if let crate::planar::Exterior::Face(f) = e.exterior(c) {
                let (u, v) = e.faces()[f][0];
                let nf = embedding.face_of(u, v);
                embedding = embedding.with_outer_face(nf);
            }
        }
        Drawn::new(poset, embedding)
    }
}

/// For each host, the neighbour after which a pendant keeps the host's
/// layer: a corner of the exterior face of the sub-drawing that still
/// contains the host's layer.
fn pendant_corners(e: &Embedding, hosts: &[usize]) -> Vec<Option<usize>> {
    let layering = e.layering();
    let level = layering.level(e.graph().len());
    let mut cache: BTreeMap<usize, (Embedding, Vec<usize>)> = BTreeMap::new();
    hosts
        .iter()
        .map(|&v| {
            if e.rotation(v).is_empty() {
                return None;
            }
            let i = level[v];
            let (sub, old) = cache.entry(i).or_insert_with(|| {
                let remaining: BTreeSet<usize> = (0..e.graph().len()).filter(|&x| level[x] >= i).collect();
                let old: Vec<usize> = remaining.iter().copied().collect();
                (e.induced(&remaining), old)
            });
            let nv = old.iter().position(|&x| x == v).expect("host remains at its own level");
            let c = sub.component_of(nv);
            match sub.exterior(c) {
                crate::planar::Exterior::Face(f) => sub.faces()[f].iter().find(|d| d.0 == nv).map(|d| old[d.1]),
                crate::planar::Exterior::Vertex(_) => e.rotation(v).last().copied(),
            }
        })
        .collect()
}

/// Output of the min-max reduction.
#[derive(Clone, Debug)]
pub struct MinMaxReduced {
    pub poset: Poset,
    pub a_prime: ElemSet,
    pub b_prime: ElemSet,
    /// `(new element, element it hangs from, below?)`.
    pub added: Vec<(String, String, bool)>,
}

fn fresh_id(taken: &mut HashSet<String>, base: String) -> String {
    let mut id = base;
    while taken.contains(&id) {
        id.push('\'');
    }
    taken.insert(id.clone());
    id
}

fn min_max_plan(p: &Poset, a_set: &ElemSet, b_set: &ElemSet) -> Vec<(usize, String, bool)> {
    let mut taken: HashSet<String> = p.ids().iter().cloned().collect();
    let mut plan = Vec::new();
    for &a in a_set {
        if !p.is_minimal(a) {
            plan.push((a, fresh_id(&mut taken, format!("{}^-", p.id(a))), true));
        }
    }
    for &b in b_set {
        if !p.is_maximal(b) {
            plan.push((b, fresh_id(&mut taken, format!("{}^+", p.id(b))), false));
        }
    }
    plan
}

fn min_max_finish(
    p: &Poset,
    poset: Poset,
    a_set: &ElemSet,
    b_set: &ElemSet,
    plan: &[(usize, String, bool)],
) -> MinMaxReduced {
    let lookup = |x: usize, below: bool| -> usize {
        plan.iter()
            .find(|(h, _, bl)| *h == x && *bl == below)
            .map_or_else(|| poset.index_of(p.id(x)).expect("kept"), |(_, id, _)| poset.index_of(id).expect("added"))
    };
    let a_prime = a_set.iter().map(|&a| lookup(a, true)).collect();
    let b_prime = b_set.iter().map(|&b| lookup(b, false)).collect();
    let added = plan.iter().map(|(h, id, below)| (id.clone(), p.id(*h).to_string(), *below)).collect();
    MinMaxReduced { poset, a_prime, b_prime, added }
}

/// Hangs `a^-` below every non-minimal `a` in `A` and `b^+` above every
/// non-maximal `b` in `B`.
pub fn min_max_reduce(p: &Poset, a_set: &ElemSet, b_set: &ElemSet) -> Result<MinMaxReduced> {
    if let Some(&bad) = a_set.iter().chain(b_set).find(|&&x| x >= p.len()) {
        return Err(Error::UnknownElement(format!("#{bad}")));
    }
    let plan = min_max_plan(p, a_set, b_set);
    let names: Vec<&str> = plan.iter().map(|s| s.1.as_str()).collect();
    let rels: Vec<(&str, &str)> =
        plan.iter().map(|(h, id, below)| if *below { (id.as_str(), p.id(*h)) } else { (p.id(*h), id.as_str()) }).collect();
    let poset = p.extended(&names, &rels)?;
    Ok(min_max_finish(p, poset, a_set, b_set, &plan))
}

/// The same reduction on a drawn poset; pendants keep every layer count.
pub fn min_max_reduce_drawn(d: &Drawn, a_set: &ElemSet, b_set: &ElemSet) -> Result<(MinMaxReduced, Drawn)> {
    let plan = min_max_plan(&d.poset, a_set, b_set);
    let drawn = d.add_pendants(&plan)?;
    let red = min_max_finish(&d.poset, drawn.poset.clone(), a_set, b_set, &plan);
    Ok((red, drawn))
}

/// Structural items of the min-max reduction that do not need the solver;
/// returns the violated ones.
pub fn check_min_max(p: &Poset, a_set: &ElemSet, b_set: &ElemSet, r: &MinMaxReduced) -> Vec<String> {
    let q = &r.poset;
    let mut bad = Vec::new();
    let old: Vec<usize> = (0..p.len()).map(|x| q.index_of(p.id(x)).expect("superposet")).collect();
    let mut old_edges: Vec<(usize, usize)> = p.covers().iter().map(|&(x, y)| (old[x], old[y])).collect();
    old_edges.sort_unstable();
    let is_new = |x: usize| !old.contains(&x);
    let mut kept: Vec<(usize, usize)> = q.covers().iter().copied().filter(|&(x, y)| !is_new(x) && !is_new(y)).collect();
    kept.sort_unstable();
    if kept != old_edges {
        bad.push("cover graph between old elements changed".into());
    }
    let g = q.cover_graph();
    if (0..q.len()).any(|x| is_new(x) && g.degree(x) != 1) {
        bad.push("an added element does not have degree 1".into());
    }
    if p.height().ok() != q.height().ok() {
        bad.push("height changed".into());
    }
    if !r.a_prime.iter().all(|&a| q.is_minimal(a)) || !r.b_prime.iter().all(|&b| q.is_maximal(b)) {
        bad.push("A' or B' not extremal".into());
    }
    let a_old: ElemSet = a_set.iter().map(|&a| old[a]).collect();
    let b_old: ElemSet = b_set.iter().map(|&b| old[b]).collect();
    if !r.b_prime.is_subset(&q.upset(&b_old)) || !r.a_prime.is_subset(&q.downset(&a_old)) {
        bad.push("B' not in Up(B) or A' not in Down(A)".into());
    }
    bad
}

/// Components of `P` as element sets.
pub fn split_components(p: &Poset) -> Vec<ElemSet> {
    p.components()
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentChoice {
    pub members: Vec<String>,
    #[serde(skip)]
    pub set: ElemSet,
    /// Min-max dimension of `P` and of each component, in component order.
    pub d: usize,
    pub component_dims: Vec<usize>,
}

/// First component whose min-max dimension equals that of `P`.
pub fn select_component_by_minmax_dim(p: &Poset, budget: u64) -> Result<ComponentChoice> {
    let d = min_max_dim(p, budget)?;
    if d < 3 {
        return Err(Error::PreconditionFailed(format!("min-max dimension {d} < 3")));
    }
    best_component(p, budget)
}

/// First component of largest min-max dimension, without the `>= 3` check.
pub(crate) fn best_component(p: &Poset, budget: u64) -> Result<ComponentChoice> {
    let d = min_max_dim(p, budget)?;
    let comps = split_components(p);
    let mut dims = Vec::with_capacity(comps.len());
    for c in &comps {
        dims.push(min_max_dim(&p.induced(c), budget)?);
    }
    let best = (0..comps.len()).max_by_key(|&i| (dims[i], std::cmp::Reverse(i))).expect("nonempty poset");
    Ok(ComponentChoice { members: p.ids_of(&comps[best]), set: comps[best].clone(), d, component_dims: dims })
}

/// Builds `L^1 = [L_k^1 < ... < L_1^1]` and `L^j = [L_1^j < ... < L_k^j]`
/// from `t` extensions per component.
pub fn combine_component_extensions(per_component: &[Vec<LinearExtension>]) -> Result<Vec<LinearExtension>> {
    let t = per_component.iter().map(Vec::len).max().unwrap_or(0);
    if per_component.iter().any(|v| v.len() != t) || t == 0 {
        return Err(Error::Input("every component needs the same positive number of extensions".into()));
    }
    (0..t)
        .map(|j| {
            let parts: Vec<LinearExtension> = if j == 0 {
                per_component.iter().rev().map(|v| v[0].clone()).collect()
            } else {
                per_component.iter().map(|v| v[j].clone()).collect()
            };
            concat_extensions(&parts)
        })
        .collect()
}

/// `A_0 = {x0}, B_1, A_1, B_2, ...` up to the last nonempty set.
#[derive(Clone, Debug)]
pub struct Unfolding {
    pub x0: usize,
    /// `a[i] = A_i`.
    pub a: Vec<ElemSet>,
    /// `b[i] = B_i`; `b[0]` is empty.
    pub b: Vec<ElemSet>,
}

impl Unfolding {
    /// Greatest `n` with `A_n ∪ B_n` nonempty.
    pub fn n(&self) -> usize {
        (0..self.a.len().max(self.b.len())).rev().find(|&i| !self.a_set(i).is_empty() || !self.b_set(i).is_empty()).unwrap_or(0)
    }

    pub fn a_set(&self, i: usize) -> ElemSet {
        self.a.get(i).cloned().unwrap_or_default()
    }

    pub fn b_set(&self, i: usize) -> ElemSet {
        self.b.get(i).cloned().unwrap_or_default()
    }

    pub fn ids(&self, p: &Poset) -> Value {
        let n = self.n();
        json!({
            "A": (0..=n).map(|i| p.ids_of(&self.a_set(i))).collect::<Vec<_>>(),
            "B": (0..=n + 1).map(|i| p.ids_of(&self.b_set(i))).collect::<Vec<_>>(),
        })
    }
}

pub fn unfold(p: &Poset, x0: usize) -> Result<Unfolding> {
    if !p.is_connected() {
        return Err(Error::NotConnected);
    }
    if !p.is_minimal(x0) {
        return Err(Error::NotMinimal(p.id(x0).into()));
    }
    let (mins, maxs) = p.mins_maxs();
    let mut a = vec![ElemSet::from([x0])];
    let mut b = vec![ElemSet::new()];
    loop {
        let last_a = a.last().expect("nonempty");
        let prev_b = b.last().expect("nonempty");
        let nb: ElemSet = p.upset(last_a).intersection(&maxs).copied().filter(|x| !prev_b.contains(x)).collect();
        if nb.is_empty() {
            break;
        }
        let prev_a = a.last().expect("nonempty").clone();
        let na: ElemSet = p.downset(&nb).intersection(&mins).copied().filter(|x| !prev_a.contains(x)).collect();
        b.push(nb);
        if na.is_empty() {
            break;
        }
        a.push(na);
    }
    let u = Unfolding { x0, a, b };
    let union_a: Vec<usize> = u.a.iter().flatten().copied().collect();
    let union_b: Vec<usize> = u.b.iter().flatten().copied().collect();
    let set_a: ElemSet = union_a.iter().copied().collect();
    let set_b: ElemSet = union_b.iter().copied().collect();
    if union_a.len() != set_a.len() || set_a != mins || union_b.len() != set_b.len() || set_b != maxs {
        return Err(step_failed("unfolding", "strata do not partition Min(P) and Max(P)"));
    }
    Ok(u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnfoldSide {
    /// `(A_i, B_i)`.
    Same,
    /// `(A_i, B_{i+1})`.
    Next,
}

#[derive(Clone, Debug)]
pub struct UnfoldSelect {
    pub unfolding: Unfolding,
    pub i: usize,
    pub side: UnfoldSide,
    pub d_main: usize,
    /// `d = max_i max(dim(A_i, B_i), dim(A_i, B_{i+1}))`.
    pub d: usize,
    /// `dims[i] = (dim(A_i, B_i), dim(A_i, B_{i+1}))`, `dims[0]` unused.
    pub dims: Vec<(usize, usize)>,
    pub l_extensions: Vec<LinearExtension>,
    pub m_extensions: Vec<LinearExtension>,
    /// All `L_j`, `M_j` are linear extensions of `P` and jointly reverse
    /// every min-max pair.
    pub replay_ok: bool,
    /// `d_main <= 2 d`. Fails only when every strata dimension is 0, where
    /// the construction still needs one `L` and one `M`.
    pub inequality_holds: bool,
}

/// Extensions of the block `members` reversing `Inc(A, B)` inside it,
/// padded to exactly `d`.
fn block_extensions(p: &Poset, members: &ElemSet, a_set: &ElemSet, b_set: &ElemSet, d: usize, budget: u64) -> Result<Vec<LinearExtension>> {
    let sub = p.induced(members);
    let a_sub = sub.translate(p, a_set);
    let b_sub = sub.translate(p, b_set);
    let r = dim_of_with(&sub, &inc_pairs(&sub, &a_sub, &b_sub), budget)?;
    if r.d > d {
        return Err(step_failed("unfold-select", format!("block needs {} > {d} extensions", r.d)));
    }
    let mut ext = r.realizer.extensions;
    if ext.is_empty() {
        ext.push(sub.default_extension());
    }
    while ext.len() < d {
        ext.push(ext[0].clone());
    }
    Ok(ext)
}

pub fn unfold_select(p: &Poset, x0: usize, budget: u64) -> Result<UnfoldSelect> {
    let d_main = min_max_dim(p, budget)?;
    if d_main < 2 {
        return Err(Error::PreconditionFailed(format!("min-max dimension {d_main} < 2")));
    }
    let u = unfold(p, x0)?;
    let n = u.n();
    let mut dims = vec![(0, 0)];
    for i in 1..=n {
        let same = set_dim(p, &u.a_set(i), &u.b_set(i), budget)?;
        let next = set_dim(p, &u.a_set(i), &u.b_set(i + 1), budget)?;
        dims.push((same, next));
    }
    let d = dims.iter().map(|&(s, t)| s.max(t)).max().unwrap_or(0);
    let (i, side) = (1..=n)
        .flat_map(|i| [(i, UnfoldSide::Same), (i, UnfoldSide::Next)])
        .find(|&(i, s)| (if s == UnfoldSide::Same { dims[i].0 } else { dims[i].1 }) == d)
        .ok_or_else(|| step_failed("unfold-select", "no strata pair"))?;

    // Blocks X_i: elements whose largest A-index above them is i.
    let up_a: Vec<ElemSet> = (0..=n).map(|i| p.upset(&u.a_set(i))).collect();
    let down_b: Vec<ElemSet> = (0..=n + 1).map(|i| p.downset(&u.b_set(i))).collect();
    let mut x_blocks = vec![ElemSet::new(); n + 1];
    let mut y_blocks = vec![ElemSet::new(); n + 2];
    for x in 0..p.len() {
        let ia = (0..=n).rev().find(|&i| up_a[i].contains(&x));
        let ib = (1..=n + 1).rev().find(|&i| down_b[i].contains(&x));
        match (ia, ib) {
            (Some(ia), Some(ib)) => {
                x_blocks[ia].insert(x);
                y_blocks[ib].insert(x);
            }
            _ => return Err(step_failed("unfold-select", format!("`{}` outside every block", p.id(x)))),
        }
    }
    // One L and one M are needed even when every strata pair is comparable.
    let w = d.max(1);
    let l0 = p.induced(&x_blocks[0]).default_extension();
    let mut l_blocks = Vec::new();
    for i in 1..=n {
        l_blocks.push(block_extensions(p, &x_blocks[i], &u.a_set(i), &u.b_set(i), w, budget)?);
    }
    let l_extensions: Vec<LinearExtension> = (0..w)
        .map(|j| {
            let mut parts = vec![l0.clone()];
            parts.extend(l_blocks.iter().map(|b| b[j].clone()));
            concat_extensions(&parts)
        })
        .collect::<Result<_>>()?;
    let m1 = p.induced(&y_blocks[1]).default_extension();
    let mut m_blocks = Vec::new();
    for i in 2..=n {
        m_blocks.push(block_extensions(p, &y_blocks[i], &u.a_set(i - 1), &u.b_set(i), w, budget)?);
    }
    let m_extensions: Vec<LinearExtension> = (0..w)
        .map(|j| {
            let mut parts: Vec<LinearExtension> = m_blocks.iter().rev().map(|b| b[j].clone()).collect();
            parts.push(m1.clone());
            concat_extensions(&parts)
        })
        .collect::<Result<_>>()?;
    let replay_ok = replay_reverses(p, &inc_min_max(p), l_extensions.iter().chain(&m_extensions));
    let inequality_holds = d_main <= 2 * d;
    Ok(UnfoldSelect { unfolding: u, i, side, d_main, d, dims, l_extensions, m_extensions, replay_ok, inequality_holds })
}

/// Every extension belongs to `P` and each pair is reversed by one of them.
pub fn replay_reverses<'a>(p: &Poset, pairs: &IncPairSet, exts: impl Iterator<Item = &'a LinearExtension>) -> bool {
    let exts: Vec<&LinearExtension> = exts.collect();
    if !exts.iter().all(|e| p.is_linear_extension(e)) {
        return false;
    }
    let pos: Vec<_> = exts.iter().map(|e| e.positions()).collect();
    pairs.pairs().iter().all(|&(a, b)| pos.iter().any(|m| m[p.id(b)] < m[p.id(a)]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SqCondition {
    /// `Max(Q) ⊆ Up(S)` and `Down(S) ∩ Q = ∅`.
    MaxUpS,
    /// `Min(Q) ⊆ Down(S)` and `Up(S) ∩ Q = ∅`.
    MinDownS,
}

#[derive(Clone, Debug)]
pub struct UnfoldSQ {
    pub select: UnfoldSelect,
    pub q: ElemSet,
    pub s: ElemSet,
    /// The literal set `Down(B_1 ∪ ... ∪ B_i) - Q` was already the component.
    pub s_literal_is_component: bool,
    pub condition: SqCondition,
    /// `dim(Min Q, Max Q)` when within budget.
    pub d_q: Option<usize>,
    /// `dim(Min P, Max P) <= 2 d_q`, when `d_q` is known.
    pub inequality_holds: Option<bool>,
}

pub fn unfold_sq(p: &Poset, x0: usize, budget: u64) -> Result<UnfoldSQ> {
    let select = unfold_select(p, x0, budget)?;
    let u = &select.unfolding;
    let i = select.i;
    let top = if select.side == UnfoldSide::Same { u.b_set(i) } else { u.b_set(i + 1) };
    let q: ElemSet = p.upset(&u.a_set(i)).intersection(&p.downset(&top)).copied().collect();
    if !p.is_convex(&q) {
        return Err(step_failed("unfold-sq", "Q is not convex"));
    }
    if !sub_mins(p, &q).is_subset(&p.mins()) || !sub_maxs(p, &q).is_subset(&p.maxs()) {
        return Err(step_failed("unfold-sq", "Min(Q) or Max(Q) not extremal in P"));
    }
    let lower: ElemSet = (1..=i).flat_map(|j| u.b_set(j)).collect();
    let literal: ElemSet = p.downset(&lower).difference(&q).copied().collect();
    let rest: ElemSet = (0..p.len()).filter(|x| !q.contains(x)).collect();
    let g = p.cover_graph();
    let comp_in = |allowed: &ElemSet| -> ElemSet {
        let mut seen = ElemSet::from([x0]);
        let mut stack = vec![x0];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if allowed.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    };
    let component = comp_in(&rest);
    let s = comp_in(&literal);
    if s != component || !literal.contains(&x0) {
        return Err(step_failed("unfold-sq", "S is not the component of P - Q containing x0"));
    }
    let up_s = p.upset(&s);
    let down_s = p.downset(&s);
    let former = sub_maxs(p, &q).is_subset(&up_s) && down_s.is_disjoint(&q);
    let latter = sub_mins(p, &q).is_subset(&down_s) && up_s.is_disjoint(&q);
    let condition = match (former, latter) {
        (true, false) => SqCondition::MaxUpS,
        (false, true) => SqCondition::MinDownS,
        _ => return Err(step_failed("unfold-sq", format!("side conditions hold: {former}/{latter}"))),
    };
    let d_q = budgeted(min_max_dim(&p.induced(&q), budget))?;
    let inequality_holds = d_q.map(|dq| select.d_main <= 2 * dq);
    Ok(UnfoldSQ { s_literal_is_component: s == literal, select, q, s, condition, d_q, inequality_holds })
}

#[derive(Clone, Debug)]
pub struct UpsetRestriction {
    pub lhs: usize,
    pub rhs: usize,
    /// `[L^0 < L_i]` for a realizer `L_i` of the restricted pairs on `Up(A)`.
    pub extensions: Vec<LinearExtension>,
    pub replay_ok: bool,
}

/// Checks `dim_P(A, B) = dim_P(A, B ∩ Up(A))` and builds the extensions
/// `[L^0 < L_i]`.
pub fn dim_restrict_upset(p: &Poset, a_set: &ElemSet, b_set: &ElemSet, budget: u64) -> Result<UpsetRestriction> {
    let full = inc_pairs(p, a_set, b_set);
    let lhs = dim_of_with(p, &full, budget)?.d;
    if lhs < 1 {
        return Err(Error::PreconditionFailed("dim_P(A, B) = 0".into()));
    }
    let up = p.upset(a_set);
    let b_up: ElemSet = b_set.intersection(&up).copied().collect();
    let rhs = set_dim(p, a_set, &b_up, budget)?;
    let q = p.induced(&up);
    let qa = q.translate(p, a_set);
    let qb = q.translate(p, &b_up);
    let rq = dim_of_with(&q, &inc_pairs(&q, &qa, &qb), budget)?;
    let rest: ElemSet = (0..p.len()).filter(|x| !up.contains(x)).collect();
    let l0 = p.induced(&rest).default_extension();
    let mut inner = rq.realizer.extensions;
    if inner.is_empty() {
        inner.push(q.default_extension());
    }
    let extensions: Vec<LinearExtension> =
        inner.iter().map(|l| concat_extensions(&[l0.clone(), l.clone()])).collect::<Result<_>>()?;
    let replay_ok = replay_reverses(p, &full, extensions.iter());
    Ok(UpsetRestriction { lhs, rhs, extensions, replay_ok })
}

/// `x0, y0` on the exterior face and `x0 <= b`, `a <= y0` for every pair.
pub fn is_doubly_exposed(p: &Poset, e: &Embedding, pairs: &IncPairSet, x0: &str, y0: &str) -> Result<bool> {
    require_embeds(e, &p.cover_graph())?;
    let (x, y) = (p.require(x0)?, p.require(y0)?);
    if !e.is_outer(x) || !e.is_outer(y) {
        return Ok(false);
    }
    Ok(pairs.pairs().iter().all(|&(a, b)| p.le(x, b) && p.le(a, y)))
}

#[cfg(test)]
mod tests;
