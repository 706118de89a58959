//! Unfolding steps that use a plane drawing of the cover graph.

use serde::Serialize;
use serde_json::json;

use super::{
    best_component, budgeted, link, min_max_dim, min_max_reduce_drawn, select_component_by_minmax_dim, step_failed, sub_maxs,
    sub_mins, unfold_sq, ComponentChoice, Drawn, ReductionTrace, SqCondition, UnfoldSQ,
};
use crate::dimension::{bound_f, dim_poset_with};
use crate::error::{Error, Result};
use crate::poset::{ElemSet, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PlanarSide {
    /// `Max(Q) ⊆ Up_Q(V_1)`.
    #[serde(rename = "max_up_V1")]
    MaxUpV1,
    /// `Min(Q) ⊆ Down_Q(V_1)`.
    #[serde(rename = "min_down_V1")]
    MinDownV1,
}

#[derive(Clone, Debug)]
pub struct UnfoldPlanar {
    pub component: ComponentChoice,
    /// The non-minimal exterior vertex and its new pendant.
    pub z: String,
    pub z_minus: String,
    /// Component plus `z^-`, drawn.
    pub augmented: Drawn,
    pub sq: UnfoldSQ,
    /// `Q` in indices of the input poset.
    pub q: ElemSet,
    pub q_ids: Vec<String>,
    pub side: PlanarSide,
    pub d_p: usize,
    pub d_q: Option<usize>,
}

/// `V_1` of the induced drawing of `members` (a convex set of `d`).
pub(crate) fn exterior_layer(d: &Drawn, members: &ElemSet) -> ElemSet {
    let old: Vec<usize> = members.iter().copied().collect();
    d.embedding.induced(members).outer_vertices().into_iter().map(|v| old[v]).collect()
}

/// Which of the two exterior-comparability properties `Q` has.
pub(crate) fn planar_sides(p: &Poset, q: &ElemSet, v1: &ElemSet) -> (bool, bool) {
    let up_v1: ElemSet = p.upset(v1).intersection(q).copied().collect();
    let down_v1: ElemSet = p.downset(v1).intersection(q).copied().collect();
    (sub_maxs(p, q).is_subset(&up_v1), sub_mins(p, q).is_subset(&down_v1))
}

pub fn unfold_planar(d: &Drawn, budget: u64) -> Result<UnfoldPlanar> {
    unfold_planar_with(d, budget, true)
}

/// `strict = false` skips the `>= 3` check on the min-max dimension.
pub(crate) fn unfold_planar_with(d: &Drawn, budget: u64, strict: bool) -> Result<UnfoldPlanar> {
    let component =
        if strict { select_component_by_minmax_dim(&d.poset, budget)? } else { best_component(&d.poset, budget)? };
    let c = d.induced(&component.set)?;
    let outer = c.embedding.outer_vertices();
    let z = outer
        .iter()
        .copied()
        .find(|&v| !c.poset.is_minimal(v))
        .ok_or_else(|| step_failed("unfolding-planar", "every exterior vertex is minimal"))?;
    let mut z_minus = format!("{}^-", c.poset.id(z));
    while d.poset.index_of(&z_minus).is_some() {
        z_minus.push('\'');
    }
    let augmented = c.add_exterior_pendant(&c.poset.all(), z, &z_minus, true)?;
    let x0 = augmented.poset.len() - 1;
    let sq = unfold_sq(&augmented.poset, x0, budget)?;
    let q_aug = sq.q.clone();
    let v1 = exterior_layer(&augmented, &q_aug);
    let (max_up, min_down) = planar_sides(&augmented.poset, &q_aug, &v1);
    let side = match sq.condition {
        SqCondition::MaxUpS if max_up => PlanarSide::MaxUpV1,
        SqCondition::MinDownS if min_down => PlanarSide::MinDownV1,
        _ => return Err(step_failed("unfolding-planar", "Q has neither exterior comparability property")),
    };
    let q_ids = augmented.poset.ids_of(&q_aug);
    let q: ElemSet = q_ids.iter().map(|id| d.poset.index_of(id).expect("Q avoids z^-")).collect();
    let d_p = component.d;
    let d_q = sq.d_q;
    if let Some(dq) = d_q.filter(|_| strict) {
        if d_p > 2 * dq {
            return Err(step_failed("unfolding-planar", format!("{d_p} > 2 * {dq}")));
        }
    }
    Ok(UnfoldPlanar { z: c.poset.id(z).into(), z_minus, component, augmented, sq, q, q_ids, side, d_p, d_q })
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightReport {
    pub height: usize,
    /// Whether the planar unfolding ran (min-max dimension at least 3).
    pub applicable: bool,
    pub q: Vec<String>,
    pub side: Option<PlanarSide>,
    pub q_layers: usize,
    pub layer_bound: usize,
    pub layers_ok: bool,
    pub dim: Option<usize>,
    pub bound: u128,
    pub bound_ok: Option<bool>,
    pub trace: ReductionTrace,
}

/// Min-max reduction with `A = B` the ground set, then the planar
/// unfolding; checks that `Q` needs at most `2h - 1` layers.
pub fn height_pipeline(d: &Drawn, budget: u64) -> Result<HeightReport> {
    let p = &d.poset;
    let h = p.height()?;
    let layer_bound = 2 * h - 1;
    let bound = 2 * bound_f(layer_bound as i64)?;
    let mut trace = ReductionTrace::default();
    let all = p.all();
    let (red, rd) = min_max_reduce_drawn(d, &all, &all)?;
    let dim = budgeted(dim_poset_with(p, budget).map(|r| r.d))?;
    let d_red = budgeted(min_max_dim(&rd.poset, budget))?;
    trace.push(link(
        "min-max-reduction",
        json!({"elements": p.len()}),
        json!({"elements": rd.poset.len(), "added": red.added.len()}),
        "dim(P) <= dim_P'(Min P', Max P')",
        dim.map(|x| x as u64),
        d_red.map(|x| x as u64),
        |l, r| l <= r,
    )?);
    let (applicable, q, side) = match unfold_planar(&rd, budget) {
        Ok(up) => {
            trace.push(link(
                "unfolding-planar",
                json!({"component": up.component.members, "z": up.z}),
                json!({"Q": up.q_ids, "side": up.side}),
                "dim_P'(Min, Max) <= 2 dim_Q(Min Q, Max Q)",
                Some(up.d_p as u64),
                up.d_q.map(|x| 2 * x as u64),
                |l, r| l <= r,
            )?);
            (true, up.q, Some(up.side))
        }
        Err(Error::PreconditionFailed(_)) => (false, rd.poset.all(), None),
        Err(e) => return Err(e),
    };
    let q_layers = rd.embedding.induced(&q).outerplanarity();
    let layers_ok = !applicable || q_layers <= layer_bound;
    if !layers_ok {
        return Err(step_failed("height-layers", format!("{q_layers} > {layer_bound} layers")));
    }
    let bound_ok = dim.map(|x| (x as u128) <= bound);
    Ok(HeightReport {
        height: h,
        applicable,
        q: rd.poset.ids_of(&q),
        side,
        q_layers,
        layer_bound,
        layers_ok,
        dim,
        bound,
        bound_ok,
        trace,
    })
}
