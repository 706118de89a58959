//! Whether a vertex lies in a region bounded by a cycle inside a down-set
//! (or up-set).
//!
//! Let `H` be the subgraph induced by `Down(y)` minus `x`. The vertex `x`
//! is strictly inside some cycle of `H` exactly when, in the drawing, `x`
//! cannot reach the exterior without touching `H`. Faces are merged across
//! every edge and vertex that is not part of `H`; `x` is enclosed when its
//! region misses the exterior face. The boundary of that region splits
//! into cycles, and one of them is returned as the witness.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::planar::{require_embeds, CycleSides, Embedding, Exterior, Side};
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnclosureMode {
    /// Cycle inside `Down(y)`, for two maximal elements.
    BByB,
    /// Cycle inside `Up(y)`, for two minimal elements.
    AByA,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let nxt = self.0[y];
            self.0[y] = r;
            y = nxt;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// `Some(cycle)` when `x` lies in the region bounded by a cycle of the
/// cover graph inside `Down(y)` (or `Up(y)`). Only cycles in the component
/// of `x` are considered.
pub fn is_enclosed(p: &Poset, e: &Embedding, x: usize, y: usize, mode: EnclosureMode) -> Result<Option<Vec<String>>> {
    require_embeds(e, &p.cover_graph())?;
    let g = e.graph();
    let ids = |c: &[usize]| c.iter().map(|&v| g.id(v).to_string()).collect::<Vec<_>>();
    let set = match mode {
        EnclosureMode::BByB => p.downset_of(y),
        EnclosureMode::AByA => p.upset_of(y),
    };
    let comp = e.component_of(x);
    let in_h: Vec<bool> = (0..g.len()).map(|v| set.contains(&v) && e.component_of(v) == comp).collect();

    // On a cycle of H itself.
    if in_h[x] {
        let nbrs: Vec<usize> = g.neighbors(x).filter(|&v| in_h[v]).collect();
        for (i, &s) in nbrs.iter().enumerate() {
            for &t in &nbrs[i + 1..] {
                if let Some(path) = g.shortest_path(s, t, |v| in_h[v] && v != x) {
                    let mut cycle = vec![x];
                    cycle.extend(path);
                    return Ok(Some(ids(&cycle)));
                }
            }
        }
    }
    let hv: Vec<bool> = (0..g.len()).map(|v| in_h[v] && v != x).collect();
    if is_forest(g, &hv) {
        return Ok(None);
    }
    let Exterior::Face(outer) = e.exterior(comp) else { return Ok(None) };

    let nf = e.faces().len();
    let mut dsu = Dsu((0..nf).collect());
    for (u, v) in g.edges() {
        if e.component_of(u) == comp && !(hv[u] && hv[v]) {
            dsu.union(e.face_of(u, v), e.face_of(v, u));
        }
    }
    for w in 0..g.len() {
        if e.component_of(w) != comp || hv[w] {
            continue;
        }
        let r = e.rotation(w);
        for &q in r {
            dsu.union(e.face_of(w, r[0]), e.face_of(w, q));
        }
    }
    let rx = dsu.find(e.face_of(x, e.rotation(x)[0]));
    if rx == dsu.find(outer) {
        return Ok(None);
    }
    let mut boundary: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (u, v) in g.edges() {
        if e.component_of(u) != comp {
            continue;
        }
        let (l, r) = (dsu.find(e.face_of(u, v)), dsu.find(e.face_of(v, u)));
        if (l == rx) != (r == rx) {
            boundary.entry(u).or_default().push(v);
            boundary.entry(v).or_default().push(u);
        }
    }
    for cycle in split_cycles(boundary) {
        let sides = CycleSides::new(e, &cycle)?;
        if sides.side(e, x) == Side::Inside {
            return Ok(Some(ids(&cycle)));
        }
    }
    Err(Error::ClassificationFailed(format!("no boundary cycle of the region of `{}` encloses it", g.id(x))))
}

fn is_forest(g: &crate::graph::Graph, keep: &[bool]) -> bool {
    let mut dsu = Dsu((0..g.len()).collect());
    for (u, v) in g.edges() {
        if keep[u] && keep[v] {
            if dsu.find(u) == dsu.find(v) {
                return false;
            }
            dsu.union(u, v);
        }
    }
    true
}

/// Splits an even-degree edge set into simple cycles.
fn split_cycles(mut adj: BTreeMap<usize, Vec<usize>>) -> Vec<Vec<usize>> {
    let take = |adj: &mut BTreeMap<usize, Vec<usize>>, u: usize| -> Option<usize> {
        let v = adj.get_mut(&u)?.pop()?;
        let back = adj.get_mut(&v).expect("symmetric");
        let i = back.iter().position(|&w| w == u).expect("symmetric");
        back.swap_remove(i);
        Some(v)
    };
    let mut cycles = Vec::new();
    loop {
        let Some(start) = adj.iter().find(|(_, n)| !n.is_empty()).map(|(&v, _)| v) else { break };
        let mut stack = vec![start];
        let mut on: BTreeSet<usize> = BTreeSet::from([start]);
        while let Some(&u) = stack.last() {
            let Some(v) = take(&mut adj, u) else { break };
            if on.contains(&v) {
                let i = stack.iter().position(|&w| w == v).expect("on stack");
                let cyc: Vec<usize> = stack.drain(i + 1..).collect();
                for w in &cyc {
                    on.remove(w);
                }
                let mut c = vec![v];
                c.extend(cyc);
                cycles.push(c);
                if stack.len() == 1 && adj.get(&start).is_none_or(|n| n.is_empty()) {
                    break;
                }
            } else {
                on.insert(v);
                stack.push(v);
            }
        }
    }
    cycles
}
