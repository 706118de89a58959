//! Randomized property suites behind `orderforge verify`.
//!
//! Every check records the number of instances it ran on and, for each
//! violation, a self-contained reproduction (the poset, its drawing when
//! there is one, and the parameters). Statements whose literal form is
//! known to fail on degenerate inputs are run in their corrected form; the
//! literal form is still counted, under `known_gaps`, so the gap stays
//! visible.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dimension::{dim_of_with, dim_poset_with, inc_pairs, IncPairSet, KellyWitness, StandardExample};
use crate::error::{Error, Result};
use crate::exposed::{kelly_minor_model, ExposedInstance};
use crate::generators::{doubly_exposed_family, kelly, random_forest_poset, random_poset, standard_example, KellyModel};
use crate::io::{embedding_file, poset_file};
use crate::planar::{min_outerplanarity, Embedding};
use crate::poset::{ElemSet, Poset};
use crate::reductions::{check_min_max, dim_restrict_upset, doubly_exposed_reduce, is_doubly_exposed, min_max_reduce, replay_reverses, unfold_sq, DoublyExposedOptions, Drawn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Dimension,
    Planar,
    Reductions,
    Exposed,
    /// Reductions and exposed together.
    Lemmas,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dimension" => Suite::Dimension,
            "planar" => Suite::Planar,
            "reductions" => Suite::Reductions,
            "exposed" => Suite::Exposed,
            "lemmas" => Suite::Lemmas,
            "all" => Suite::All,
            _ => return Err(Error::Input(format!("unknown suite `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub detail: String,
    pub repro: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub cases: usize,
    pub violations: Vec<Violation>,
}

impl Check {
    pub fn new(name: &str, statement: &str) -> Self {
        Check { name: name.into(), statement: statement.into(), cases: 0, violations: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String, repro: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.violations.push(Violation { detail: detail(), repro: repro() });
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub checks: Vec<Check>,
    /// Literal statements with documented counterexamples.
    pub known_gaps: Vec<Check>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

fn repro(p: &Poset, extra: Value) -> Value {
    json!({"poset": poset_file(p), "params": extra})
}

fn repro_drawn(p: &Poset, e: &Embedding, extra: Value) -> Value {
    json!({"poset": poset_file(p), "embedding": embedding_file(e), "params": extra})
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> ElemSet {
    loop {
        let s: ElemSet = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

fn instance_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(i as u64)
}

/// Min-max reduction: height, pendant-only change of the cover graph, and
/// `dim_P(A, B) <= dim_P'(A', B')`.
pub fn min_max_check(seed: u64, count: usize, budget: u64) -> Result<Check> {
    let mut c = Check::new("min-max-reduction", "height kept, cover graph grows by pendants, dim_P(A,B) <= dim_P'(A',B')");
    for i in 0..count {
        let s = instance_seed(seed, i);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let n = rng.gen_range(2..=10);
        let p = random_poset(s, n, 0.4);
        let (a, b) = (random_subset(&mut rng, n), random_subset(&mut rng, n));
        let r = min_max_reduce(&p, &a, &b)?;
        let mut bad = check_min_max(&p, &a, &b, &r);
        let lhs = dim_of_with(&p, &inc_pairs(&p, &a, &b), budget)?.d;
        let rhs = dim_of_with(&r.poset, &inc_pairs(&r.poset, &r.a_prime, &r.b_prime), budget)?.d;
        if lhs > rhs {
            bad.push(format!("dim {lhs} > {rhs}"));
        }
        let ids = |set: &ElemSet| p.ids_of(set);
        c.case(bad.is_empty(), || bad.join("; "), || repro(&p, json!({"seed": s, "A": ids(&a), "B": ids(&b)})));
    }
    Ok(c)
}

/// Unfolding: the `L_j`, `M_j` replay, and the factor-2 inequalities in
/// corrected form `d_P <= 2 max(d, 1)`; returns (checks, literal gaps).
pub fn unfolding_checks(seed: u64, count: usize, budget: u64) -> Result<(Vec<Check>, Vec<Check>)> {
    let mut replay = Check::new("unfolding-replay", "the constructed L_j, M_j reverse every min-max pair");
    let mut select = Check::new("unfolding-strata-bound", "dim(Min P, Max P) <= 2 max(d, 1) over strata pairs");
    let mut sq = Check::new("unfolding-q-bound", "dim(Min P, Max P) <= 2 max(dim(Min Q, Max Q), 1)");
    let mut lit_select = Check::new("unfolding-strata-bound-literal", "dim(Min P, Max P) <= 2 d over strata pairs");
    let mut lit_sq = Check::new("unfolding-q-bound-literal", "dim(Min P, Max P) <= 2 dim(Min Q, Max Q)");
    let mut s = 0u64;
    let mut taken = 0;
    while taken < count && s < 200 * count as u64 + 200 {
        let seed_i = instance_seed(seed, s as usize);
        s += 1;
        let p = random_poset(seed_i, 5 + (seed_i % 6) as usize, 0.4);
        if !p.is_connected() || dim_of_with(&p, &crate::dimension::inc_min_max(&p), budget)?.d < 2 {
            continue;
        }
        taken += 1;
        let x0 = *p.mins().iter().next().expect("nonempty");
        let r = unfold_sq(&p, x0, budget)?;
        let params = || json!({"seed": seed_i, "x0": p.id(x0)});
        let (dm, d) = (r.select.d_main, r.select.d);
        replay.case(r.select.replay_ok, || "replay failed".into(), || repro(&p, params()));
        select.case(dm <= 2 * d.max(1), || format!("{dm} > 2 max({d}, 1)"), || repro(&p, params()));
        lit_select.case(dm <= 2 * d, || format!("{dm} > 2 * {d}"), || repro(&p, params()));
        if let Some(dq) = r.d_q {
            sq.case(dm <= 2 * dq.max(1), || format!("{dm} > 2 max({dq}, 1)"), || repro(&p, params()));
            lit_sq.case(dm <= 2 * dq, || format!("{dm} > 2 * {dq}"), || repro(&p, params()));
        }
    }
    Ok((vec![replay, select, sq], vec![lit_select, lit_sq]))
}

/// Restriction to `Up(A)`: `dim_P(A, B) = max(dim_P(A, B ∩ Up(A)), 1)`
/// when the left side is positive; returns (check, literal gap).
pub fn upset_checks(seed: u64, count: usize, budget: u64) -> Result<(Check, Check)> {
    let mut c = Check::new("upset-restriction", "dim_P(A,B) = max(dim_P(A, B ∩ Up(A)), 1) and [L0 < L_i] replays");
    let mut lit = Check::new("upset-restriction-literal", "dim_P(A,B) = dim_P(A, B ∩ Up(A))");
    let mut s = 0;
    while c.cases < count && s < 50 * count + 50 {
        let seed_i = instance_seed(seed, s);
        s += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed_i);
        let n = rng.gen_range(2..=8);
        let p = random_poset(seed_i, n, 0.4);
        let (a, b) = (random_subset(&mut rng, n), random_subset(&mut rng, n));
        let r = match dim_restrict_upset(&p, &a, &b, budget) {
            Err(Error::PreconditionFailed(_)) => continue,
            other => other?,
        };
        let params = || json!({"seed": seed_i, "A": p.ids_of(&a), "B": p.ids_of(&b)});
        let ok = r.lhs == r.rhs.max(1) && r.replay_ok;
        c.case(ok, || format!("lhs {}, rhs {}, replay {}", r.lhs, r.rhs, r.replay_ok), || repro(&p, params()));
        lit.case(r.lhs == r.rhs, || format!("{} != {}", r.lhs, r.rhs), || repro(&p, params()));
    }
    Ok((c, lit))
}

/// The reduction to a doubly exposed set on Kelly instances.
pub fn doubly_exposed_reduce_check(budget: u64) -> Result<Check> {
    let mut c = Check::new("doubly-exposed-reduction", "trace sound, at most k+1 layers, output doubly exposed");
    for n in 3..=5 {
        let (p, e) = kelly(n)?;
        let k = e.outerplanarity();
        let d = Drawn::new(p.clone(), e.clone())?;
        let r = doubly_exposed_reduce(&d, k, DoublyExposedOptions { budget, force_full: false })?;
        let exposed = is_doubly_exposed(&r.poset, &r.embedding, &r.pairs, &r.x0, &r.y0)?;
        let ok = r.trace.all_verified() && r.layers <= k + 1 && exposed;
        c.case(ok, || format!("K_{n}: verified {}, layers {}, exposed {exposed}", r.trace.all_verified(), r.layers), || {
            repro_drawn(&p, &e, json!({"n": n, "k": k}))
        });
    }
    Ok(c)
}

/// Identity copy of `K_n` inside a generated instance built on it.
pub fn identity_witness(n: usize) -> Result<KellyWitness> {
    let m = KellyModel::new(n)?;
    Ok(KellyWitness { n, map: m.elements.iter().map(|(id, _)| (id.clone(), id.clone())).collect() })
}

/// Structural statements on generated doubly exposed examples.
pub fn exposed_checks(seed: u64, count: usize) -> Result<Vec<Check>> {
    let mut pred = Check::new("exposed-predicates", "order agreement, labels <= 6, non-enclosure, N paths, sides");
    let mut minor = Check::new("kelly-minor-model", "branch sets verify and contract onto cover(K_n)");
    for i in 0..count {
        let s = instance_seed(seed, i);
        let m = 2 + i % 5;
        let d = doubly_exposed_family(s, m)?;
        let params = || json!({"seed": s, "m": m, "x0": d.x0, "y0": d.y0, "pairs": d.pairs.to_ids(&d.poset)});
        let inst = ExposedInstance::new(&d.poset, &d.embedding, &d.x0, &d.y0)?;
        let pairs = inst.resolve(&StandardExample { pairs: d.pairs.to_ids(&d.poset) })?;
        let r = inst.lemma_predicates(&pairs)?;
        let bad: Vec<String> =
            r.checks.iter().filter(|c| c.violation_count > 0).map(|c| format!("{}: {}", c.lemma, c.violations.join(" | "))).collect();
        pred.case(bad.is_empty(), || bad.join("; "), || repro_drawn(&d.poset, &d.embedding, params()));

        let n = m + 1;
        if n <= 5 {
            let res = kelly_minor_model(&d.poset, &identity_witness(n)?);
            let ok = match &res {
                Ok(model) => {
                    let c = model.contracted();
                    model.pattern.edge_ids().iter().all(|(u, v)| {
                        matches!((c.index_of(u), c.index_of(v)), (Some(x), Some(y)) if c.has_edge(x, y))
                    })
                }
                Err(_) => false,
            };
            minor.case(ok, || format!("K_{n}: {:?}", res.err()), || repro_drawn(&d.poset, &d.embedding, params()));
        }
    }
    Ok(vec![pred, minor])
}

/// Exact solver: realizers replay, `dim(S_n) = n`.
pub fn dimension_checks(seed: u64, count: usize, budget: u64) -> Result<Vec<Check>> {
    let mut real = Check::new("realizer-replay", "the extensions of an optimal realizer intersect to P");
    for i in 0..count {
        let s = instance_seed(seed, i);
        let p = random_poset(s, 2 + (s % 7) as usize, 0.4);
        let r = dim_poset_with(&p, budget)?;
        let all = crate::dimension::inc_all(&p);
        let ok = replay_reverses(&p, &all, r.realizer.extensions.iter()) && r.realizer.extensions.len() == r.d;
        real.case(ok, || format!("d = {}", r.d), || repro(&p, json!({"seed": s})));
    }
    let mut sn = Check::new("standard-example-dimension", "dim(S_n) = n");
    for n in 2..=4 {
        let p = standard_example(n)?;
        let d = dim_poset_with(&p, budget)?.d;
        sn.case(d == n as usize, || format!("dim(S_{n}) = {d}"), || repro(&p, json!({"n": n})));
    }
    Ok(vec![real, sn])
}

/// Layerings partition the vertices; induced drawings never need more
/// layers.
pub fn planar_checks(seed: u64, count: usize, budget: u64) -> Result<Vec<Check>> {
    let mut part = Check::new("layering-partition", "layers partition V and edges join equal or consecutive layers");
    let mut mono = Check::new("subgraph-monotonicity", "an induced drawing has at most as many layers");
    let mut min = Check::new("min-outerplanarity", "exhaustive minimum is at most the given drawing's layer count");
    for i in 0..count {
        let s = instance_seed(seed, i);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let (p, e) = if i % 2 == 0 { kelly(3 + i % 6)? } else {
            let d = doubly_exposed_family(s, 2 + i % 3)?;
            (d.poset, d.embedding)
        };
        let g = e.graph();
        let layers = e.layering();
        part.case(layers.check(g), || "bad layering".into(), || repro_drawn(&p, &e, json!({"seed": s})));
        let keep: BTreeSet<usize> = (0..g.len()).filter(|_| rng.gen_bool(0.7)).collect();
        if !keep.is_empty() {
            let sub = e.induced(&keep);
            let (a, b) = (sub.outerplanarity(), e.outerplanarity());
            mono.case(a <= b, || format!("{a} > {b}"), || repro_drawn(&p, &e, json!({"seed": s, "keep": p.ids_of(&keep)})));
        }
        if g.len() <= 8 {
            let m = min_outerplanarity(g, budget)?;
            min.case(m.k <= e.outerplanarity(), || format!("{} > {}", m.k, e.outerplanarity()), || repro_drawn(&p, &e, json!({})));
        }
    }
    Ok(vec![part, mono, min])
}

/// Small forest-cover posets are 3-dimensional at most.
pub fn forest_check(seed: u64, count: usize, budget: u64) -> Result<Check> {
    let mut c = Check::new("forest-cover-dimension", "dim(P) <= 3 when cover(P) is a forest");
    for i in 0..count {
        let s = instance_seed(seed, i);
        let p = random_forest_poset(s, 2 + (s % 11) as usize);
        let d = dim_poset_with(&p, budget)?.d;
        c.case(d <= 3, || format!("dim {d}"), || repro(&p, json!({"seed": s})));
    }
    Ok(c)
}

/// Posets with an outerplanar cover graph (found by exhaustive embedding)
/// have dimension at most 4.
pub fn outerplanar_check(seed: u64, count: usize, budget: u64) -> Result<Check> {
    let mut c = Check::new("outerplanar-cover-dimension", "dim(P) <= 4 when cover(P) is outerplanar");
    let mut s = 0;
    while c.cases < count && s < 100 * count + 100 {
        let seed_i = instance_seed(seed, s);
        s += 1;
        let p = random_poset(seed_i, 4 + (seed_i % 7) as usize, 0.5);
        if p.cover_graph().edge_count() < p.len() {
            continue;
        }
        match min_outerplanarity(&p.cover_graph(), budget) {
            Ok(m) if m.k == 1 => {}
            Ok(_) | Err(Error::NotPlanar) | Err(Error::BudgetExceeded(_)) => continue,
            Err(e) => return Err(e),
        }
        let d = dim_poset_with(&p, budget)?.d;
        c.case(d <= 4, || format!("dim {d}"), || repro(&p, json!({"seed": seed_i})));
    }
    Ok(c)
}

pub fn run_suite(suite: Suite, seed: u64, count: usize, budget: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut gaps = Vec::new();
    let has = |s: Suite| suite == s || suite == Suite::All || (suite == Suite::Lemmas && matches!(s, Suite::Reductions | Suite::Exposed));
    if has(Suite::Dimension) {
        checks.extend(dimension_checks(seed, count, budget)?);
        checks.push(forest_check(seed, count, budget)?);
    }
    if has(Suite::Planar) {
        checks.extend(planar_checks(seed, count, budget)?);
    }
    if has(Suite::Reductions) {
        checks.push(min_max_check(seed, count, budget)?);
        let (c, g) = unfolding_checks(seed, count, budget)?;
        checks.extend(c);
        gaps.extend(g);
        let (c, g) = upset_checks(seed, count, budget)?;
        checks.push(c);
        gaps.push(g);
        checks.push(doubly_exposed_reduce_check(budget)?);
    }
    if has(Suite::Exposed) {
        checks.extend(exposed_checks(seed, count)?);
    }
    Ok(SuiteReport { suite, seed, count, checks, known_gaps: gaps })
}

/// `IncPairSet` of a generated instance, re-resolved against `p`.
pub fn pairs_of(p: &Poset, ids: &[(String, String)]) -> Result<IncPairSet> {
    IncPairSet::from_ids(p, ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::DEFAULT_BUDGET;

    #[test]
    fn lemmas_suite_passes() {
        let r = run_suite(Suite::Lemmas, 7, 12, DEFAULT_BUDGET).unwrap();
        for c in &r.checks {
            assert!(c.ok(), "{}: {:?}", c.name, c.violations.first().map(|v| &v.detail));
            assert!(c.cases > 0, "{}", c.name);
        }
    }

    #[test]
    fn dimension_and_planar_suites_pass() {
        for s in [Suite::Dimension, Suite::Planar] {
            let r = run_suite(s, 1, 8, DEFAULT_BUDGET).unwrap();
            assert!(r.ok(), "{:?}", r.checks.iter().filter(|c| !c.ok()).map(|c| &c.name).collect::<Vec<_>>());
        }
    }

    #[test]
    fn suite_names() {
        assert_eq!("lemmas".parse::<Suite>().unwrap(), Suite::Lemmas);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn violations_carry_repro() {
        let mut c = Check::new("x", "y");
        let p = standard_example(2).unwrap();
        c.case(false, || "bad".into(), || repro(&p, json!({"seed": 1})));
        assert_eq!(c.violations[0].repro["poset"]["elements"].as_array().unwrap().len(), 4);
    }
}
