//! Exhaustive rotation-system search for small graphs.
//!
//! Vertices of degree at most two have a single cyclic order; every other
//! vertex fixes its smallest neighbour first and permutes the rest. The
//! first such vertex only keeps one of each mirror pair of orders, since
//! reflecting a whole embedding preserves its faces and layering.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use super::Embedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct MinOuterplanarity {
    pub k: usize,
    /// A drawing attaining `k`.
    pub embedding: Embedding,
    /// Rotation systems enumerated.
    pub explored: u64,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Calls `visit` on every genus-0 rotation system of the connected graph
/// `g`, counting systems against `budget`.
fn for_each_planar(
    g: &Graph,
    budget: u64,
    explored: &mut u64,
    mut visit: impl FnMut(&[Vec<usize>]) -> ControlFlow<()>,
) -> Result<bool> {
    let n = g.len();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let choice: Vec<usize> = (0..n).filter(|&v| nbrs[v].len() >= 3).collect();
    let options: Vec<Vec<Vec<usize>>> = choice
        .iter()
        .enumerate()
        .map(|(ci, &v)| {
            let first = nbrs[v][0];
            permutations(&nbrs[v][1..])
                .into_iter()
                .filter(|p| ci > 0 || p[0] < p[p.len() - 1])
                .map(|p| std::iter::once(first).chain(p).collect())
                .collect()
        })
        .collect();
    let mut rot = nbrs.clone();
    let mut digit = vec![0usize; choice.len()];
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + nbrs[v].len();
    }
    let darts = offset[n];
    let target_faces = (g.edge_count() + 2) as isize - n as isize;
    let mut visited = vec![false; darts];
    let mut any = false;
    loop {
        *explored += 1;
        if *explored > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        for (ci, &v) in choice.iter().enumerate() {
            rot[v].clone_from(&options[ci][digit[ci]]);
        }
        visited.iter_mut().for_each(|x| *x = false);
        let mut faces = 0isize;
        for v in 0..n {
            for i in 0..rot[v].len() {
                if visited[offset[v] + i] {
                    continue;
                }
                faces += 1;
                let (mut a, mut ai) = (v, i);
                while !visited[offset[a] + ai] {
                    visited[offset[a] + ai] = true;
                    let b = rot[a][ai];
                    let d = rot[b].len();
                    let j = rot[b].iter().position(|&x| x == a).expect("symmetric rotations");
                    a = b;
                    ai = (j + d - 1) % d;
                }
            }
        }
        if faces == target_faces.max(1) || (darts == 0 && n == 1) {
            any = true;
            if visit(&rot).is_break() {
                return Ok(true);
            }
        }
        // Odometer step.
        let mut c = 0;
        loop {
            if c == choice.len() {
                return Ok(any);
            }
            digit[c] += 1;
            if digit[c] < options[c].len() {
                break;
            }
            digit[c] = 0;
            c += 1;
        }
    }
}

fn component_graphs(g: &Graph) -> Vec<(Vec<usize>, Graph)> {
    g.components()
        .into_iter()
        .map(|c| {
            let keep: BTreeSet<usize> = c.iter().copied().collect();
            let sub = g.induced(&keep);
            (c, sub)
        })
        .collect()
}

/// Minimum number of layers over every drawing of `g`: all rotation
/// systems and all exterior face choices, per component.
pub fn min_outerplanarity(g: &Graph, budget: u64) -> Result<MinOuterplanarity> {
    let mut explored = 0u64;
    let mut global_rot = vec![Vec::new(); g.len()];
    let mut exterior_darts = Vec::new();
    let mut k = 0usize;
    for (members, sub) in component_graphs(g) {
        if sub.len() == 1 {
            k = k.max(1);
            continue;
        }
        let mut best: Option<(usize, Vec<Vec<usize>>, (usize, usize))> = None;
        let found = for_each_planar(&sub, budget, &mut explored, |rot| {
            let e = Embedding::from_rotations(sub.clone(), rot.to_vec()).expect("genus-0 system");
            for f in 0..e.faces().len() {
                let layers = e.clone().with_outer_face(f).outerplanarity();
                if best.as_ref().is_none_or(|b| layers < b.0) {
                    best = Some((layers, rot.to_vec(), e.faces()[f][0]));
                }
            }
            if best.as_ref().is_some_and(|b| b.0 == 1) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if !found {
            return Err(Error::NotPlanar);
        }
        let (layers, rot, (u, v)) = best.expect("a planar system was visited");
        k = k.max(layers);
        for (local, r) in rot.into_iter().enumerate() {
            global_rot[members[local]] = r.into_iter().map(|x| members[x]).collect();
        }
        exterior_darts.push((members[u], members[v]));
    }
    let mut embedding = Embedding::from_rotations(g.clone(), global_rot).map_err(Error::from)?;
    for (u, v) in exterior_darts {
        let f = embedding.face_of(u, v);
        embedding = embedding.with_outer_face(f);
    }
    Ok(MinOuterplanarity { k, embedding, explored })
}

/// The first genus-0 rotation system in enumeration order.
pub fn find_planar_embedding(g: &Graph, budget: u64) -> Result<Embedding> {
    let mut explored = 0u64;
    let mut global_rot = vec![Vec::new(); g.len()];
    for (members, sub) in component_graphs(g) {
        if sub.len() == 1 {
            continue;
        }
        let mut chosen = None;
        let found = for_each_planar(&sub, budget, &mut explored, |rot| {
            chosen = Some(rot.to_vec());
            ControlFlow::Break(())
        })?;
        if !found {
            return Err(Error::NotPlanar);
        }
        for (local, r) in chosen.expect("found").into_iter().enumerate() {
            global_rot[members[local]] = r.into_iter().map(|x| members[x]).collect();
        }
    }
    Embedding::from_rotations(g.clone(), global_rot).map_err(Error::from)
}
