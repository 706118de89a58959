//! Standard examples, Kelly subposets and the explicit bound formulas.

use serde::Serialize;

use super::IncPairSet;
use crate::error::{Error, Result};
use crate::generators::KellyModel;
use crate::poset::Poset;

/// Pairs `(a_i, b_i)` with `a_i < b_j` whenever `i != j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardExample {
    pub pairs: Vec<(String, String)>,
}

impl StandardExample {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn verify(&self, p: &Poset) -> bool {
        let idx: Option<Vec<(usize, usize)>> =
            self.pairs.iter().map(|(a, b)| Some((p.index_of(a)?, p.index_of(b)?))).collect();
        let Some(idx) = idx else { return false };
        idx.iter().enumerate().all(|(i, &(ai, bi))| {
            p.incomparable(ai, bi) && idx.iter().enumerate().all(|(j, &(_, bj))| i == j || p.lt(ai, bj))
        })
    }
}

/// `ρ_P(I)`: a largest standard example inside `I`.
pub fn rho(p: &Poset, pairs: &IncPairSet) -> Result<(usize, StandardExample)> {
    rho_with(p, pairs, super::DEFAULT_BUDGET)
}

pub fn rho_with(p: &Poset, pairs: &IncPairSet, budget: u64) -> Result<(usize, StandardExample)> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let pr = pairs.pairs();
    let m = pr.len();
    let adj: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| i != j && p.lt(pr[i].0, pr[j].1) && p.lt(pr[j].0, pr[i].1)).collect())
        .collect();
    let mut search = CliqueSearch { adj: &adj, best: vec![0], nodes: 0, budget };
    let mut current = Vec::new();
    search.expand(&mut current, (0..m).collect())?;
    let mut best = search.best;
    best.sort_unstable();
    let se = StandardExample {
        pairs: best.iter().map(|&i| (p.id(pr[i].0).to_string(), p.id(pr[i].1).to_string())).collect(),
    };
    Ok((best.len(), se))
}

struct CliqueSearch<'a> {
    adj: &'a [Vec<bool>],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, candidates: Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if candidates.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return Ok(());
        }
        let mut rest = candidates;
        while let Some(&v) = rest.first() {
            if current.len() + rest.len() <= self.best.len() {
                return Ok(());
            }
            let next: Vec<usize> = rest.iter().copied().filter(|&u| self.adj[v][u]).collect();
            current.push(v);
            self.expand(current, next)?;
            current.pop();
            rest.remove(0);
        }
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        Ok(())
    }
}

/// A map from the elements of `K_n` to elements of `P` inducing an
/// isomorphic subposet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KellyWitness {
    pub n: usize,
    /// `(K_n element id, P element id)` in `K_n`'s element order.
    pub map: Vec<(String, String)>,
}

impl KellyWitness {
    /// Image of a role such as `c1` or `d3`; identified roles resolve to
    /// their canonical element.
    pub fn image(&self, role: &str) -> Option<&str> {
        let model = KellyModel::new(self.n).ok()?;
        let id = model.canonical_id(role)?;
        self.map.iter().find(|(k, _)| *k == id).map(|(_, v)| v.as_str())
    }

    /// Checks the embedding against subset containment in `[n]`.
    pub fn verify(&self, p: &Poset) -> bool {
        let Ok(model) = KellyModel::new(self.n) else { return false };
        if self.map.len() != model.len() {
            return false;
        }
        let mut images = Vec::with_capacity(self.map.len());
        for (role, elem) in &self.map {
            let (Some(set), Some(x)) = (model.subset_of(role), p.index_of(elem)) else { return false };
            images.push((set, x));
        }
        for (i, (si, xi)) in images.iter().enumerate() {
            for (j, (sj, xj)) in images.iter().enumerate() {
                if i == j {
                    continue;
                }
                if xi == xj {
                    return false;
                }
                let strict_subset = si.is_subset(sj) && si != sj;
                if strict_subset != p.lt(*xi, *xj) {
                    return false;
                }
            }
        }
        true
    }
}

/// Searches for an induced copy of `K_n` in `P`.
pub fn find_kelly(p: &Poset, n: usize, budget: u64) -> Result<Option<KellyWitness>> {
    let model = KellyModel::new(n)?;
    let k = model.poset();
    if k.len() > p.len() {
        return Ok(None);
    }
    // Breadth-first order over the cover graph of K_n so every element but
    // the first has an assigned cover neighbour.
    let kg = k.cover_graph();
    let mut order = vec![0usize];
    let mut seen = vec![false; k.len()];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for v in kg.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    let anchor: Vec<Option<usize>> = order
        .iter()
        .enumerate()
        .map(|(pos, &x)| order[..pos].iter().copied().find(|&u| kg.has_edge(u, x)))
        .collect();
    let mut search = Embed {
        p,
        k: &k,
        order: &order,
        anchor: &anchor,
        image: vec![usize::MAX; k.len()],
        used: vec![false; p.len()],
        nodes: 0,
        budget,
    };
    if !search.go(0)? {
        return Ok(None);
    }
    let map = (0..k.len()).map(|x| (k.id(x).to_string(), p.id(search.image[x]).to_string())).collect();
    Ok(Some(KellyWitness { n, map }))
}

struct Embed<'a> {
    p: &'a Poset,
    k: &'a Poset,
    order: &'a [usize],
    anchor: &'a [Option<usize>],
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Embed<'_> {
    fn go(&mut self, pos: usize) -> Result<bool> {
        if pos == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let x = self.order[pos];
        let candidates: Vec<usize> = match self.anchor[pos] {
            None => (0..self.p.len()).collect(),
            Some(u) => {
                let fu = self.image[u];
                if self.k.lt(u, x) {
                    self.p.above(fu).ones().collect()
                } else {
                    self.p.below(fu).ones().collect()
                }
            }
        };
        let need_up = self.k.above(x).count_ones(..);
        let need_down = self.k.below(x).count_ones(..);
        for y in candidates {
            if self.used[y]
                || self.p.above(y).count_ones(..) < need_up
                || self.p.below(y).count_ones(..) < need_down
            {
                continue;
            }
            let consistent = self.order[..pos].iter().all(|&z| {
                let fz = self.image[z];
                self.k.lt(z, x) == self.p.lt(fz, y) && self.k.lt(x, z) == self.p.lt(y, fz)
            });
            if !consistent {
                continue;
            }
            self.image[x] = y;
            self.used[y] = true;
            if self.go(pos + 1)? {
                return Ok(true);
            }
            self.used[y] = false;
            self.image[x] = usize::MAX;
        }
        Ok(false)
    }
}

/// Default cap: the largest `n` with `4n - 6 <= |P|`.
pub fn default_kappa_cap(p: &Poset) -> usize {
    (p.len() + 6) / 4
}

pub fn kappa(p: &Poset, n_max: usize) -> Result<(usize, Option<KellyWitness>)> {
    kappa_with(p, n_max, super::DEFAULT_BUDGET)
}

/// `κ(P)` capped at `n_max`; 2 when no `K_3` embeds.
pub fn kappa_with(p: &Poset, n_max: usize, budget: u64) -> Result<(usize, Option<KellyWitness>)> {
    if n_max < 3 {
        return Err(Error::TooSmall(n_max));
    }
    let mut cap = n_max.min(default_kappa_cap(p));
    // A copy of K_n carries a standard example of size n among all
    // incomparable pairs.
    let inc = super::inc_all(p);
    if inc.is_empty() {
        return Ok((2, None));
    }
    if let Ok((r, _)) = rho_with(p, &inc, budget) {
        cap = cap.min(r);
    }
    for n in (3..=cap).rev() {
        if let Some(w) = find_kelly(p, n, budget)? {
            return Ok((n, Some(w)));
        }
    }
    Ok((2, None))
}

/// `f(k) = 4k (360 (4k + 7))^2`.
pub fn bound_f(k: i64) -> Result<u128> {
    if k < 1 {
        return Err(Error::NonPositive(k));
    }
    let k = k as u128;
    let inner = 360 * (4 * k + 7);
    Ok(4 * k * inner * inner)
}

/// `2 f(2h - 1)`.
pub fn bound_height(h: i64) -> Result<u128> {
    if h < 1 {
        return Err(Error::NonPositive(h));
    }
    Ok(2 * bound_f(2 * h - 1)?)
}
