//! A minor model of `cover(K_n)` from a copy of `K_n` inside `P`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::dimension::KellyWitness;
use crate::error::{Error, Result};
use crate::generators::KellyModel;
use crate::planar::{verify_minor_model, MinorModel};
use crate::poset::Poset;

/// Witnessing path from `x` to `y` using as few cover edges outside
/// `preferred` as possible (0-1 BFS, neighbours in element order).
fn cheapest_chain(p: &Poset, x: usize, y: usize, preferred: &BTreeSet<(usize, usize)>) -> Result<Vec<usize>> {
    if !p.le(x, y) {
        return Err(Error::NotComparable(p.id(x).to_string(), p.id(y).to_string()));
    }
    let mut dist = vec![usize::MAX; p.len()];
    let mut prev = vec![usize::MAX; p.len()];
    dist[x] = 0;
    let mut dq = VecDeque::from([x]);
    while let Some(u) = dq.pop_front() {
        let mut ups = p.upper_covers(u).to_vec();
        ups.sort_unstable();
        for v in ups {
            if !p.le(v, y) {
                continue;
            }
            let w = usize::from(!preferred.contains(&(u, v)));
            if dist[u] + w < dist[v] {
                dist[v] = dist[u] + w;
                prev[v] = u;
                if w == 0 {
                    dq.push_front(v);
                } else {
                    dq.push_back(v);
                }
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

fn chain_through(p: &Poset, stops: &[usize]) -> Result<Vec<usize>> {
    let mut out = vec![stops[0]];
    for w in stops.windows(2) {
        out.extend_from_slice(&p.witnessing_path(w[0], w[1])?[1..]);
    }
    Ok(out)
}

/// Branch sets built from a chain `W_c` through all `c_i`, a chain `W_d`
/// through all `d_i`, and cheapest witnessing paths between them:
///
/// * `c_i`: vertices of `W_c` above `a_i` but not above `a_{i+1}`,
/// * `d_i`: vertices of `W_d` below `b_i` but not below `b_{i+1}`,
/// * `a_i`, `b_i` (`2 <= i <= n-1`): the off-chain parts of the paths to
///   (or from) `c_i`, `d_{i-1}` (resp. `c_{i-1}`, `d_i`).
///
/// The result is checked with [`verify_minor_model`]; a failure is a bug.
pub fn kelly_minor_model(p: &Poset, w: &KellyWitness) -> Result<MinorModel> {
    if !w.verify(p) {
        return Err(Error::PreconditionFailed(format!("map does not embed K_{} as a subposet", w.n)));
    }
    let n = w.n;
    let model = KellyModel::new(n)?;
    let at = |role: String| -> Result<usize> {
        let id = w.image(&role).ok_or_else(|| Error::UnknownElement(role.clone()))?;
        p.require(id)
    };
    let a = |i: usize| at(format!("a{i}"));
    let b = |i: usize| at(format!("b{i}"));
    let c = |i: usize| at(format!("c{i}"));
    let d = |i: usize| at(format!("d{i}"));

    let cs: Vec<usize> = (1..n).map(c).collect::<Result<_>>()?;
    let ds: Vec<usize> = (1..n).rev().map(d).collect::<Result<_>>()?;
    let wc = chain_through(p, &cs)?;
    let wd = chain_through(p, &ds)?;
    let vc: BTreeSet<usize> = wc.iter().copied().collect();
    let vd: BTreeSet<usize> = wd.iter().copied().collect();
    let preferred: BTreeSet<(usize, usize)> = wc.windows(2).chain(wd.windows(2)).map(|e| (e[0], e[1])).collect();
    let off = |x: usize, y: usize, chain: &BTreeSet<usize>| -> Result<BTreeSet<usize>> {
        Ok(cheapest_chain(p, x, y, &preferred)?.into_iter().filter(|v| !chain.contains(v)).collect())
    };

    let mut phi: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for i in 1..n {
        let (ai, an) = (a(i)?, a(i + 1)?);
        let set = vc.iter().copied().filter(|&v| p.le(ai, v) && !p.le(an, v)).collect();
        phi.insert(model.canonical_id(&format!("c{i}")).expect("role"), set);
        let (bi, bn) = (b(i)?, b(i + 1)?);
        let set = vd.iter().copied().filter(|&v| p.le(v, bi) && !p.le(v, bn)).collect();
        phi.insert(model.canonical_id(&format!("d{i}")).expect("role"), set);
    }
    for i in 2..n {
        let (ai, bi) = (a(i)?, b(i)?);
        let mut sa = off(ai, c(i)?, &vc)?;
        sa.extend(off(ai, d(i - 1)?, &vd)?);
        phi.insert(format!("a{i}"), sa);
        let mut sb = off(c(i - 1)?, bi, &vc)?;
        sb.extend(off(d(i)?, bi, &vd)?);
        phi.insert(format!("b{i}"), sb);
    }
    let pattern = model.poset().cover_graph();
    let branch_sets = pattern.ids().iter().map(|id| phi.remove(id).unwrap_or_default()).collect();
    let m = MinorModel { host: p.cover_graph(), pattern, branch_sets };
    verify_minor_model(&m).map_err(|v| Error::ModelInvalid(v.to_string()))?;
    Ok(m)
}
