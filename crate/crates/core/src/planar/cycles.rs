//! Which side of a cycle a vertex lies on, and the nested Kelly cycles.

use std::collections::{BTreeSet, VecDeque};

use super::{Embedding, Exterior};
use crate::error::{Error, Result};
use crate::generators::KellyModel;
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Inside,
    Outside,
    On,
}

/// Two-colouring of the faces of a cycle's component: the side holding the
/// exterior face is outside.
#[derive(Clone, Debug)]
pub struct CycleSides {
    cycle: BTreeSet<usize>,
    component: usize,
    face_inside: Vec<Option<bool>>,
}

impl CycleSides {
    /// `cycle` lists the vertices of a simple cycle in order.
    pub fn new(e: &Embedding, cycle: &[usize]) -> Result<Self> {
        let k = cycle.len();
        if k < 3 {
            return Err(Error::Input("a cycle needs at least three vertices".into()));
        }
        let g = e.graph();
        for i in 0..k {
            if !g.has_edge(cycle[i], cycle[(i + 1) % k]) {
                return Err(Error::Input(format!(
                    "`{}` and `{}` are not adjacent",
                    g.id(cycle[i]),
                    g.id(cycle[(i + 1) % k])
                )));
            }
        }
        let on: BTreeSet<usize> = cycle.iter().copied().collect();
        if on.len() != k {
            return Err(Error::Input("cycle repeats a vertex".into()));
        }
        let cyc_edge = |u: usize, v: usize| {
            (0..k).any(|i| {
                let (a, b) = (cycle[i], cycle[(i + 1) % k]);
                (a, b) == (u, v) || (b, a) == (u, v)
            })
        };
        let nf = e.faces().len();
        let mut label: Vec<Option<u8>> = vec![None; nf];
        let mut queue = VecDeque::new();
        for i in 0..k {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            for (f, side) in [(e.face_of(a, b), 0u8), (e.face_of(b, a), 1u8)] {
                match label[f] {
                    Some(s) if s != side => {
                        return Err(Error::ClassificationFailed(format!("face {f} lies on both sides of the cycle")))
                    }
                    Some(_) => {}
                    None => {
                        label[f] = Some(side);
                        queue.push_back(f);
                    }
                }
            }
        }
        while let Some(f) = queue.pop_front() {
            let side = label[f].expect("queued faces are labelled");
            for &(u, v) in &e.faces()[f] {
                if cyc_edge(u, v) {
                    continue;
                }
                let h = e.face_of(v, u);
                match label[h] {
                    Some(s) if s != side => {
                        return Err(Error::ClassificationFailed(format!("faces {f} and {h} disagree across an edge")))
                    }
                    Some(_) => {}
                    None => {
                        label[h] = Some(side);
                        queue.push_back(h);
                    }
                }
            }
        }
        let component = e.component_of(cycle[0]);
        let Exterior::Face(outer) = e.exterior(component) else {
            return Err(Error::ClassificationFailed("cycle component has no exterior face".into()));
        };
        let outside = label[outer].ok_or_else(|| Error::ClassificationFailed("exterior face unlabelled".into()))?;
        let face_inside = label.into_iter().map(|l| l.map(|s| s != outside)).collect();
        Ok(CycleSides { cycle: on, component, face_inside })
    }

    pub fn side(&self, e: &Embedding, v: usize) -> Side {
        if self.cycle.contains(&v) {
            return Side::On;
        }
        if e.component_of(v) != self.component || e.rotation(v).is_empty() {
            return Side::Outside;
        }
        let f = e.face_of(v, e.rotation(v)[0]);
        match self.face_inside[f] {
            Some(true) => Side::Inside,
            _ => Side::Outside,
        }
    }

    /// Whether face `f` is a bounded region of the cycle.
    pub fn face_inside(&self, f: usize) -> bool {
        self.face_inside.get(f).copied().flatten().unwrap_or(false)
    }
}

/// The cycles `C_1, ..., C_{2k+1}` of `K_{4k+3}` and their nesting.
#[derive(Clone, Debug, serde::Serialize)]
pub struct NestedCycles {
    pub k: usize,
    pub cycles: Vec<Vec<String>>,
    /// `inside[i][j]`: `C_j` lies inside `C_i` (0-based).
    pub inside: Vec<Vec<bool>>,
    /// For `i` in `2..=2k`: sides of `C_{i-1}` and `C_{i+1}` relative to `C_i`.
    pub opposite: Vec<(usize, Side, Side)>,
    /// Longest chain `C_{j1} ⊂ C_{j2} ⊂ ...`.
    pub depth: usize,
    /// Layers forced by the nesting: a vertex inside `j` disjoint nested
    /// cycles is at least in layer `j + 1`.
    pub certified_layers: usize,
}

pub fn nested_kelly_cycles(p: &Poset, e: &Embedding) -> Result<NestedCycles> {
    if p.len() < 6 || !(p.len() + 6).is_multiple_of(4) {
        return Err(Error::PreconditionFailed(format!("|P| = {} is not 4n - 6", p.len())));
    }
    let n = (p.len() + 6) / 4;
    if n % 4 != 3 {
        return Err(Error::PreconditionFailed(format!("n = {n} is not of the form 4k + 3")));
    }
    let k = (n - 3) / 4;
    let model = KellyModel::new(n)?;
    let g = e.graph();
    let mut cycles = Vec::new();
    let mut idx_cycles = Vec::new();
    for i in 1..=2 * k + 1 {
        let roles = [
            format!("c{}", 2 * i - 1),
            format!("c{}", 2 * i),
            format!("a{}", 2 * i),
            format!("d{}", 2 * i - 1),
            format!("d{}", 2 * i),
            format!("b{}", 2 * i),
        ];
        let ids: Vec<String> = roles
            .iter()
            .map(|r| model.canonical_id(r).ok_or_else(|| Error::UnknownElement(r.clone())))
            .collect::<Result<_>>()?;
        let idx: Vec<usize> = ids.iter().map(|s| g.require(s)).collect::<Result<_>>()?;
        cycles.push(ids);
        idx_cycles.push(idx);
    }
    let sides: Vec<CycleSides> = idx_cycles.iter().map(|c| CycleSides::new(e, c)).collect::<Result<_>>()?;
    let m = idx_cycles.len();
    let mut inside = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let s: BTreeSet<Side> = idx_cycles[j].iter().map(|&v| sides[i].side(e, v)).collect();
            if s.len() != 1 || s.contains(&Side::On) {
                return Err(Error::ClassificationFailed(format!("C_{} straddles C_{}", j + 1, i + 1)));
            }
            inside[i][j] = s.contains(&Side::Inside);
        }
    }
    let mut opposite = Vec::new();
    for i in 1..m.saturating_sub(1) {
        let before = if inside[i][i - 1] { Side::Inside } else { Side::Outside };
        let after = if inside[i][i + 1] { Side::Inside } else { Side::Outside };
        if before == after {
            return Err(Error::ClassificationFailed(format!("C_{} and C_{} on the same side of C_{}", i, i + 2, i + 1)));
        }
        opposite.push((i + 1, before, after));
    }
    // Longest chain under containment, by DP over the nesting relation.
    let mut depth_of = vec![1usize; m];
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..m {
            for j in 0..m {
                if inside[i][j] && depth_of[i] < depth_of[j] + 1 {
                    depth_of[i] = depth_of[j] + 1;
                    changed = true;
                }
            }
        }
    }
    let depth = depth_of.into_iter().max().unwrap_or(0);
    Ok(NestedCycles { k, cycles, inside, opposite, depth, certified_layers: depth })
}

impl PartialOrd for Side {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Side {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}
