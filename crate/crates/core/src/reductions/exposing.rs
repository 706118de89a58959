//! Reduction of a poset with a k-outerplanar cover graph to a doubly
//! exposed set of min-max pairs in a (k+1)-outerplanar one.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::json;

use super::planar_steps::unfold_planar_with;
use super::{
    best_component, budgeted, is_doubly_exposed, link, link_as, min_max_dim, min_max_reduce_drawn, set_dim, step_failed,
    sub_maxs, sub_mins, unfold_sq, Drawn, PlanarSide, ReductionTrace, SqCondition, TraceStep,
};
use crate::dimension::{dim_of_with, dim_poset_with, inc_pairs, IncPairSet, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::generators::standard_example;
use crate::graph::Graph;
use crate::planar::Embedding;
use crate::poset::{ElemSet, Poset};

#[derive(Clone, Copy, Debug)]
pub struct DoublyExposedOptions {
    pub budget: u64,
    /// Run the whole construction even when `dim(P) <= 4k` allows the
    /// trivial answer; links whose hypotheses fail are noted.
    pub force_full: bool,
}

impl Default for DoublyExposedOptions {
    fn default() -> Self {
        DoublyExposedOptions { budget: DEFAULT_BUDGET, force_full: false }
    }
}

#[derive(Clone, Debug)]
pub struct DoublyExposedResult {
    pub poset: Poset,
    pub embedding: Embedding,
    pub pairs: IncPairSet,
    pub x0: String,
    pub y0: String,
    pub trace: ReductionTrace,
    /// The trivial `S_2` answer was returned.
    pub stub: bool,
    pub branch: Option<SqCondition>,
    pub layers: usize,
}

fn opt(x: Option<usize>) -> Option<u64> {
    x.map(|v| v as u64)
}

fn note(mut step: TraceStep, text: String) -> TraceStep {
    step.note = Some(match step.note.take() {
        Some(n) => format!("{n}; {text}"),
        None => text,
    });
    step
}

fn stub(dim: usize, k: usize) -> Result<DoublyExposedResult> {
    let poset = standard_example(2)?;
    let g = poset.cover_graph();
    let rot = (0..g.len()).map(|v| g.neighbors(v).collect()).collect();
    let embedding = Embedding::from_rotations(g, rot)?;
    let pairs = IncPairSet::from_ids(&poset, &[("a2", "b2")])?;
    let mut trace = ReductionTrace::default();
    trace.push(link(
        "doubly-exposed-reduction",
        json!({"dim": dim, "k": k}),
        json!({"poset": "S_2", "x0": "a1", "y0": "b1", "I": [["a2", "b2"]]}),
        "dim(P) <= 4k * dim_P'(I)",
        Some(dim as u64),
        Some(4 * k as u64),
        |l, r| l <= r,
    )?);
    Ok(DoublyExposedResult {
        poset,
        embedding,
        pairs,
        x0: "a1".into(),
        y0: "b1".into(),
        trace,
        stub: true,
        branch: None,
        layers: 1,
    })
}

pub fn doubly_exposed_reduce(d: &Drawn, k: usize, opts: DoublyExposedOptions) -> Result<DoublyExposedResult> {
    let budget = opts.budget;
    let layers = d.embedding.outerplanarity();
    if k == 0 || layers > k {
        return Err(Error::PreconditionFailed(format!("drawing has {layers} layers, more than k = {k}")));
    }
    let dim = dim_poset_with(&d.poset, budget)?.d;
    if dim <= 4 * k && !opts.force_full {
        return stub(dim, k);
    }
    // Forced runs below the threshold carry no guarantee for the
    // conditional links.
    let cond = dim > 4 * k;
    let mut trace = ReductionTrace::default();

    // Min-max reduction with A = B = the ground set.
    let all = d.poset.all();
    let (red, d1) = min_max_reduce_drawn(d, &all, &all)?;
    let d1_mm = budgeted(min_max_dim(&d1.poset, budget))?;
    trace.push(link(
        "min-max-reduction",
        json!({"elements": d.poset.len()}),
        json!({"elements": d1.poset.len(), "added": red.added.iter().map(|a| &a.0).collect::<Vec<_>>()}),
        "dim(P) <= dim_P'(Min P', Max P')",
        Some(dim as u64),
        opt(d1_mm),
        |l, r| l <= r,
    )?);

    // Component of the same min-max dimension.
    let comp = best_component(&d1.poset, budget)?;
    trace.push(link_as(
        cond,
        "component-reduction",
        json!({"components": comp.component_dims.len()}),
        json!({"component": comp.members}),
        "dim_P'(Min, Max) = dim_C(Min C, Max C)",
        opt(d1_mm),
        comp.component_dims.iter().max().map(|&x| x as u64),
        |l, r| l == r,
    )?);
    let d2 = d1.induced(&comp.set)?;

    // Planar unfolding.
    let up = unfold_planar_with(&d2, budget, false)?;
    let mut s = link_as(
        cond,
        "unfolding-planar",
        json!({"z": up.z, "z_minus": up.z_minus}),
        json!({"Q": up.q_ids, "side": up.side}),
        "dim_C(Min C, Max C) <= 2 dim_Q(Min Q, Max Q)",
        Some(up.d_p as u64),
        up.d_q.map(|x| 2 * x as u64),
        |l, r| l <= r,
    )?;
    if up.d_p < 3 {
        s = note(s, format!("min-max dimension {} < 3", up.d_p));
    }
    trace.push(s);
    let q = up.q.clone();
    let qp = d2.poset.induced(&q);
    let dq = d2.induced(&q)?;
    let lay = dq.embedding.layering();
    if lay.len() > k {
        return Err(step_failed("layer-partition", format!("induced drawing of Q has {} > {k} layers", lay.len())));
    }
    let level = lay.level(qp.len());

    // Partition Min(Q) (or Max(Q) on the dual branch) by first reachable layer.
    let (qmin, qmax) = qp.mins_maxs();
    let mut parts: BTreeMap<usize, ElemSet> = BTreeMap::new();
    let dual = up.side == PlanarSide::MinDownV1;
    for &x in if dual { &qmax } else { &qmin } {
        let reach = if dual { qp.downset_of(x) } else { qp.upset_of(x) };
        let i = reach.iter().map(|&y| level[y]).min().expect("reaches itself");
        parts.entry(i).or_default().insert(x);
    }
    let d_q = budgeted(min_max_dim(&qp, budget))?;
    let mut part_dims = Vec::new();
    let mut sum = Some(0u64);
    for part in parts.values() {
        let v = if dual { budgeted(set_dim(&qp, &qmin, part, budget))? } else { budgeted(set_dim(&qp, part, &qmax, budget))? };
        sum = sum.zip(v).map(|(a, b)| a + b as u64);
        part_dims.push(v);
    }
    trace.push(link(
        "layer-partition",
        json!({"branch": up.side, "layers": lay.len()}),
        json!({"parts": parts.iter().map(|(i, p)| json!({"layer": i + 1, "elements": qp.ids_of(p)})).collect::<Vec<_>>()}),
        "dim_Q(Min Q, Max Q) <= sum_i dim_Q(part_i)",
        opt(d_q),
        sum,
        |l, r| l <= r,
    )?);

    // Each part spans the up-set (down-set) it generates.
    let mut best: Option<(usize, ElemSet)> = None;
    for (part, pd) in parts.values().zip(&part_dims) {
        let span = if dual { qp.downset(part) } else { qp.upset(part) };
        let sub = qp.induced(&span);
        let sd = budgeted(min_max_dim(&sub, budget))?;
        trace.push(link_as(
            cond,
            "upset-restriction",
            json!({"part": qp.ids_of(part)}),
            json!({"span": qp.ids_of(&span)}),
            if dual { "dim_Q(Min Q, B_i) = dim_Q_i(Min Q_i, Max Q_i)" } else { "dim_Q(A_i, Max Q) = dim_Q_i(Min Q_i, Max Q_i)" },
            opt(*pd),
            opt(sd),
            |l, r| l == r,
        )?);
        let score = sd.or(*pd).unwrap_or(0);
        if best.as_ref().map_or(true, |(b, _)| score > *b) {
            best = Some((score, span));
        }
    }
    let (qd1, q1) = best.ok_or_else(|| step_failed("largest-part", "Q has no extremal elements"))?;
    let mut s = link(
        "largest-part",
        json!({"parts": parts.len(), "k": k}),
        json!({"Q'": qp.ids_of(&q1)}),
        "sum_i dim(Q_i) <= k * dim(Q')",
        sum,
        Some((k * qd1) as u64),
        |l, r| l <= r,
    )?;
    if qd1 < 3 {
        s = note(s, format!("dim(Q') = {qd1} < 3"));
    }
    trace.push(s);

    // Component of Q' and an exterior minimal element.
    let q1p = qp.induced(&q1);
    let c1 = best_component(&q1p, budget)?;
    let q1_mm = budgeted(min_max_dim(&q1p, budget))?;
    trace.push(link_as(
        cond,
        "component-reduction",
        json!({"Q'": q1p.ids()}),
        json!({"Q''": c1.members}),
        "dim(Q') = dim(Q'')",
        opt(q1_mm),
        c1.component_dims.iter().max().map(|&x| x as u64),
        |l, r| l == r,
    )?);
    let q2: ElemSet = c1.members.iter().map(|id| d2.poset.index_of(id).expect("member of Q")).collect();
    let w0 = d2.induced(&q2)?;
    let ext = w0.embedding.outer_vertices();
    let w = match ext.iter().copied().find(|&v| w0.poset.is_minimal(v)) {
        Some(_) => w0.clone(),
        None => {
            let host = *ext.iter().next().ok_or_else(|| step_failed("exterior-minimal", "Q'' has no exterior vertex"))?;
            let mut id = format!("{}^-", w0.poset.id(host));
            while d2.poset.index_of(&id).is_some() {
                id.push('\'');
            }
            let w = w0.add_exterior_pendant(&w0.poset.all(), host, &id, true)?;
            let a = budgeted(min_max_dim(&w0.poset, budget))?;
            let b = budgeted(min_max_dim(&w.poset, budget))?;
            trace.push(link(
                "exterior-minimal",
                json!({"host": w0.poset.id(host)}),
                json!({"added": id}),
                "dim(Q'') <= dim(Q'' + m)",
                opt(a),
                opt(b),
                |l, r| l <= r,
            )?);
            w
        }
    };
    let v1 = w.embedding.outer_vertices();
    let m = v1.iter().copied().find(|&v| w.poset.is_minimal(v)).expect("exterior minimal element exists");

    // Second unfolding, from m.
    let sq = unfold_sq(&w.poset, m, budget)?;
    let r_set = sq.q.clone();
    trace.push(link_as(
        cond,
        "unfolding-sq",
        json!({"x0": w.poset.id(m)}),
        json!({"R": w.poset.ids_of(&r_set), "S": w.poset.ids_of(&sq.s), "branch": sq.condition}),
        "dim(Q'') <= 2 dim_R(Min R, Max R)",
        Some(sq.select.d_main as u64),
        sq.d_q.map(|x| 2 * x as u64),
        |l, r| l <= r,
    )?);

    // Adjoin x0 and y0.
    let built = build_r_prime(&w, &r_set, &sq.s, &v1, sq.condition, k)?;
    let rp = &built.drawn.poset;
    let r_in: ElemSet = (0..r_set.len()).collect();
    let (rmin, rmax) = (sub_mins(rp, &r_in), sub_maxs(rp, &r_in));
    let d_r = sq.d_q;
    let d_rp = budgeted(set_dim(rp, &rmin, &rmax, budget))?;
    trace.push(link(
        "exposing-extension",
        json!({"R": w.poset.ids_of(&r_set)}),
        json!({"x0": built.x0, "y0": built.y0, "layers": built.layers}),
        "dim_R(Min R, Max R) <= dim_R'(Min R, Max R)",
        opt(d_r),
        opt(d_rp),
        |l, r| l <= r,
    )?);
    trace.push(link(
        "exposing-extension-layers",
        json!({"k": k}),
        json!({"layers": built.layers}),
        "layers(E') <= k + 1",
        Some(built.layers as u64),
        Some(k as u64 + 1),
        |l, r| l <= r,
    )?);

    // Final min-max reduction so that I consists of min-max pairs.
    let (fin, fd) = min_max_reduce_drawn(&built.drawn, &rmin, &rmax)?;
    let pairs = inc_pairs(&fd.poset, &fin.a_prime, &fin.b_prime);
    let d_i = budgeted(dim_of_with(&fd.poset, &pairs, budget).map(|r| r.d))?;
    trace.push(link(
        "min-max-reduction-plus",
        json!({"A": rp.ids_of(&rmin), "B": rp.ids_of(&rmax)}),
        json!({"added": fin.added.iter().map(|a| &a.0).collect::<Vec<_>>(), "pairs": pairs.len()}),
        "dim_R'(Min R, Max R) <= dim_P'(I)",
        opt(d_rp),
        opt(d_i),
        |l, r| l <= r,
    )?);
    if !is_doubly_exposed(&fd.poset, &fd.embedding, &pairs, &built.x0, &built.y0)? {
        return Err(step_failed("doubly-exposed-reduction", "I is not doubly exposed by (x0, y0)"));
    }
    let final_layers = fd.embedding.outerplanarity();
    if final_layers > k + 1 {
        return Err(step_failed("doubly-exposed-reduction", format!("{final_layers} > {} layers", k + 1)));
    }
    let s = link_as(
        cond,
        "doubly-exposed-reduction",
        json!({"dim": dim, "k": k}),
        json!({"elements": fd.poset.len(), "pairs": pairs.to_ids(&fd.poset), "layers": final_layers}),
        "dim(P) <= 4k * dim_P'(I)",
        Some(dim as u64),
        d_i.map(|x| 4 * (k * x) as u64),
        |l, r| l <= r,
    )?;
    trace.push(s);
    Ok(DoublyExposedResult {
        poset: fd.poset,
        embedding: fd.embedding,
        pairs,
        x0: built.x0,
        y0: built.y0,
        trace,
        stub: false,
        branch: Some(sq.condition),
        layers: final_layers,
    })
}

struct RPrime {
    drawn: Drawn,
    x0: String,
    y0: String,
    layers: usize,
}

fn fresh(p: &Poset, base: &str) -> String {
    let mut id = base.to_string();
    while p.index_of(&id).is_some() {
        id.push('\'');
    }
    id
}

/// `R'` and its drawing: `S` contracted to the new element on its side,
/// the other new element placed in the exterior face.
fn build_r_prime(w: &Drawn, r_set: &ElemSet, s_set: &ElemSet, v1: &ElemSet, cond: SqCondition, k: usize) -> Result<RPrime> {
    let wp = &w.poset;
    let x0 = fresh(wp, "x0");
    let mut y0 = fresh(wp, "y0");
    if y0 == x0 {
        y0.push('\'');
    }
    let (above_x, below_y) = match cond {
        SqCondition::MaxUpS => (wp.upset(s_set), wp.downset(v1)),
        SqCondition::MinDownS => (wp.upset(v1), wp.downset(s_set)),
    };
    let xs: ElemSet = above_x.intersection(r_set).copied().collect();
    let ys: ElemSet = below_y.intersection(r_set).copied().collect();
    let r_list: Vec<usize> = r_set.iter().copied().collect();
    let mut ids: Vec<String> = r_list.iter().map(|&v| wp.id(v).to_string()).collect();
    ids.push(x0.clone());
    ids.push(y0.clone());
    let mut rels: Vec<(String, String)> = wp
        .covers()
        .iter()
        .filter(|(a, b)| r_set.contains(a) && r_set.contains(b))
        .map(|&(a, b)| (wp.id(a).to_string(), wp.id(b).to_string()))
        .collect();
    rels.extend(xs.iter().map(|&z| (x0.clone(), wp.id(z).to_string())));
    rels.extend(ys.iter().map(|&z| (wp.id(z).to_string(), y0.clone())));
    rels.push((x0.clone(), y0.clone()));
    let rp = Poset::from_relations(&ids, &rels)?;
    let (xi, yi) = (r_list.len(), r_list.len() + 1);
    let (contracted, inserted) = match cond {
        SqCondition::MaxUpS => (xi, yi),
        SqCondition::MinDownS => (yi, xi),
    };

    // Multigraph rotations on S ∪ R with edge ids, S merged into one vertex.
    let keep: BTreeSet<usize> = s_set.union(r_set).copied().collect();
    let d_list: Vec<usize> = keep.iter().copied().collect();
    let sub = w.embedding.induced(&keep);
    let mut eid: HashMap<(usize, usize), usize> = HashMap::new();
    let mut rot: Vec<Vec<(usize, usize)>> = (0..d_list.len())
        .map(|v| {
            sub.rotation(v)
                .iter()
                .map(|&u| {
                    let key = (v.min(u), v.max(u));
                    let n = eid.len();
                    (u, *eid.entry(key).or_insert(n))
                })
                .collect()
        })
        .collect();
    let in_s: Vec<bool> = d_list.iter().map(|v| s_set.contains(v)).collect();
    let root = (0..d_list.len()).find(|&v| in_s[v]).ok_or_else(|| step_failed("exposing-extension", "S is empty"))?;
    while let Some(&(v, e)) = rot[root].iter().find(|&&(v, _)| v != root && in_s[v]) {
        let i = rot[root].iter().position(|&x| x == (v, e)).expect("dart");
        let j = rot[v].iter().position(|&x| x == (root, e)).expect("reverse dart");
        let (ru, rv) = (rot[root].clone(), std::mem::take(&mut rot[v]));
        let mut merged: Vec<(usize, usize)> = ru[i + 1..].iter().chain(&ru[..i]).copied().collect();
        merged.extend(rv[j + 1..].iter().chain(&rv[..j]).copied());
        rot[root] = merged;
        for list in rot.iter_mut() {
            for entry in list.iter_mut() {
                if entry.0 == v {
                    entry.0 = root;
                }
            }
        }
    }
    if (0..d_list.len()).any(|v| in_s[v] && v != root && !rot[v].is_empty()) {
        return Err(step_failed("exposing-extension", "S is not connected"));
    }
    // Map to R' indices, dropping loops, parallel copies and non-covers.
    let to_rp = |v: usize| -> Option<usize> {
        if v == root {
            Some(contracted)
        } else if in_s[v] {
            None
        } else {
            r_list.iter().position(|&r| r == d_list[v])
        }
    };
    let mut first_edge: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, list) in rot.iter().enumerate() {
        for &(u, e) in list {
            if let (Some(a), Some(b)) = (to_rp(v), to_rp(u)) {
                if a != b && (rp.covers_pair(a, b) || rp.covers_pair(b, a)) {
                    let key = (a.min(b), a.max(b));
                    let slot = first_edge.entry(key).or_insert(e);
                    *slot = (*slot).min(e);
                }
            }
        }
    }
    let mut rrot: Vec<Vec<usize>> = vec![Vec::new(); rp.len()];
    for (v, list) in rot.iter().enumerate() {
        let Some(a) = to_rp(v) else { continue };
        for &(u, e) in list {
            if let Some(b) = to_rp(u) {
                if a != b && first_edge.get(&(a.min(b), a.max(b))) == Some(&e) {
                    rrot[a].push(b);
                }
            }
        }
    }
    let cover = rp.cover_graph();
    let partial_edges: Vec<(String, String)> = cover
        .edges()
        .into_iter()
        .filter(|&(a, b)| a != inserted && b != inserted)
        .map(|(a, b)| (rp.id(a).to_string(), rp.id(b).to_string()))
        .collect();
    let g0 = Graph::from_edges(rp.ids(), &partial_edges)?;
    let present: usize = rrot.iter().map(Vec::len).sum();
    if present != 2 * g0.edge_count() {
        return Err(step_failed("exposing-extension", "a cover edge of R' is missing from the contracted drawing"));
    }
    let e0 = Embedding::from_rotations(g0, rrot.clone())?;

    // Place the inserted element in a face holding all its attachments.
    let attach: Vec<usize> = cover.neighbors(inserted).collect();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &t in &attach {
        groups.entry(e0.component_of(t)).or_default().push(t);
    }
    let mut corners: Vec<(usize, Option<usize>)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (c, ts) in &groups {
        let need: BTreeSet<usize> =
            ts.iter().copied().chain((e0.component_of(contracted) == *c).then_some(contracted)).collect();
        let face = (0..e0.faces().len())
            .filter(|&f| e0.face_component(f) == *c)
            .filter(|&f| {
                let vs: BTreeSet<usize> = e0.faces()[f].iter().map(|d| d.0).collect();
                need.is_subset(&vs)
            })
            .max_by_key(|&f| (e0.faces()[f].len(), std::cmp::Reverse(f)));
        match face {
            Some(f) => {
                let mut order = Vec::new();
                for &(a, b) in &e0.faces()[f] {
                    if ts.contains(&a) && !order.contains(&a) {
                        order.push(a);
                        corners.push((a, Some(b)));
                    }
                }
                blocks.push(order);
            }
            None if ts.len() == 1 && e0.rotation(ts[0]).is_empty() => {
                corners.push((ts[0], None));
                blocks.push(ts.clone());
            }
            None => return Err(step_failed("exposing-extension", "no face holds every attachment")),
        }
    }
    for &(t, after) in &corners {
        let at = after.map_or(0, |a| rrot[t].iter().position(|&x| x == a).expect("neighbour") + 1);
        rrot[t].insert(at, inserted);
    }
    let mut tried = Vec::new();
    for reverse in [true, false] {
        let mut r2 = rrot.clone();
        r2[inserted] = blocks
            .iter()
            .flat_map(|b| {
                let mut b = b.clone();
                if reverse {
                    b.reverse();
                }
                b
            })
            .collect();
        match Embedding::from_rotations(cover.clone(), r2) {
            Ok(e) => {
                let face = (0..e.faces().len())
                    .filter(|&f| {
                        let vs: BTreeSet<usize> = e.faces()[f].iter().map(|d| d.0).collect();
                        vs.contains(&xi) && vs.contains(&yi)
                    })
                    .max_by_key(|&f| (e.faces()[f].len(), std::cmp::Reverse(f)));
                let Some(f) = face else {
                    tried.push("no face contains x0 and y0".to_string());
                    continue;
                };
                let e = e.with_outer_face(f);
                let layers = e.outerplanarity();
                if layers > k + 1 {
                    tried.push(format!("{layers} layers"));
                    continue;
                }
                let drawn = Drawn::new(rp.clone(), e)?;
                return Ok(RPrime { drawn, x0, y0, layers });
            }
            Err(diag) => tried.push(diag.to_string()),
        }
    }
    Err(step_failed("exposing-extension", format!("could not draw R': {}", tried.join("; "))))
}
