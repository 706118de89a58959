//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Two criteria state identities in their literal form that fail on
//! degenerate inputs (a zero-dimensional side). They are reported as FAIL;
//! the run itself only fails when some other criterion fails or when the
//! corrected forms of those two do not hold.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use orderforge::dimension::{bound_f, dim_of_with, dim_poset_with, inc_min_max, rho_with, DEFAULT_BUDGET};
use orderforge::exposed::{kelly_minor_model, ExposedInstance};
use orderforge::generators::{doubly_exposed_family, kelly, standard_example};
use orderforge::planar::{min_outerplanarity, nested_kelly_cycles, verify_minor_model};
use orderforge::reductions::{doubly_exposed_reduce, is_doubly_exposed, DoublyExposedOptions, Drawn};
use orderforge::verify::{exposed_checks, forest_check, identity_witness, min_max_check, outerplanar_check, unfolding_checks, upset_checks, Check};
use orderforge::{Poset, Result};

const SEED: u64 = 20;
/// Criteria whose literal statement is known not to hold.
const KNOWN_GAPS: [usize; 2] = [6, 7];

struct Outcome {
    pass: bool,
    detail: String,
    /// For a known gap: whether the corrected statement holds.
    corrected: Option<bool>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into(), corrected: None }
}

fn summary(c: &Check) -> String {
    format!("{} {}/{} ok", c.name, c.cases - c.violations.len(), c.cases)
}

/// Minimum number of reversible classes covering the critical pairs,
/// computed from the cover relation alone.
mod oracle {
    use super::*;

    fn closure(p: &Poset) -> Vec<Vec<bool>> {
        let n = p.len();
        let mut lt = vec![vec![false; n]; n];
        for &(x, y) in p.covers() {
            lt[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if lt[i][k] {
                    for j in 0..n {
                        if lt[k][j] {
                            lt[i][j] = true;
                        }
                    }
                }
            }
        }
        lt
    }

    fn critical(lt: &[Vec<bool>]) -> Vec<(usize, usize)> {
        let n = lt.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || lt[a][b] || lt[b][a] {
                    continue;
                }
                let down = (0..n).all(|z| !lt[z][a] || lt[z][b]);
                let up = (0..n).all(|z| !lt[b][z] || lt[a][z]);
                if down && up {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Adding `b < a` for every pair keeps the relation acyclic.
    fn reversible(lt: &[Vec<bool>], pairs: &[(usize, usize)]) -> bool {
        let n = lt.len();
        let mut adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| lt[i][j]).collect()).collect();
        for &(a, b) in pairs {
            adj[b].push(a);
        }
        let mut state = vec![0u8; n];
        fn dfs(v: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
            state[v] = 1;
            for &w in &adj[v] {
                if state[w] == 1 || (state[w] == 0 && !dfs(w, adj, state)) {
                    return false;
                }
            }
            state[v] = 2;
            true
        }
        (0..n).all(|v| state[v] != 0 || dfs(v, &adj, &mut state))
    }

    fn assign(i: usize, pairs: &[(usize, usize)], classes: &mut Vec<Vec<(usize, usize)>>, t: usize, lt: &[Vec<bool>]) -> bool {
        if i == pairs.len() {
            return true;
        }
        for c in 0..classes.len().min(t) {
            classes[c].push(pairs[i]);
            if reversible(lt, &classes[c]) && assign(i + 1, pairs, classes, t, lt) {
                return true;
            }
            classes[c].pop();
        }
        if classes.len() < t {
            classes.push(vec![pairs[i]]);
            if assign(i + 1, pairs, classes, t, lt) {
                return true;
            }
            classes.pop();
        }
        false
    }

    pub fn dimension(p: &Poset) -> usize {
        let lt = closure(p);
        let pairs = critical(&lt);
        if pairs.is_empty() {
            return 1;
        }
        (1..).find(|&t| assign(0, &pairs, &mut Vec::new(), t, &lt)).expect("finite")
    }
}

fn c1() -> Result<Outcome> {
    let start = Instant::now();
    let mut dims = Vec::new();
    for n in 2..=5 {
        dims.push(dim_poset_with(&standard_example(n)?, DEFAULT_BUDGET)?.d);
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(outcome(dims == [2, 3, 4, 5] && secs < 10.0, format!("dims {dims:?} in {secs:.2}s")))
}

fn c2() -> Result<Outcome> {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 3..=5 {
        let (p, _) = kelly(n)?;
        let pairs = inc_min_max(&p);
        let d = dim_of_with(&p, &pairs, DEFAULT_BUDGET)?.d;
        let (rho, _) = rho_with(&p, &pairs, DEFAULT_BUDGET)?;
        ok &= d >= n && rho >= n;
        detail.push(format!("K_{n}: d {d}, rho {rho}"));
    }
    for n in 3..=4 {
        let (p, _) = kelly(n)?;
        let (d, o) = (dim_poset_with(&p, DEFAULT_BUDGET)?.d, oracle::dimension(&p));
        ok &= d == o;
        detail.push(format!("dim K_{n} = {d}, oracle {o}"));
    }
    Ok(outcome(ok, detail.join("; ")))
}

fn c3() -> Result<Outcome> {
    let (p, e) = kelly(11)?;
    let layers = e.layering();
    let nc = nested_kelly_cycles(&p, &e)?;
    let nested = nc.cycles.len() >= 3 && nc.inside[1][0] && nc.inside[2][1] && nc.inside[2][0];
    Ok(outcome(layers.len() >= 3 && nested && nc.depth >= 3, format!("{} layers, nesting depth {}", layers.len(), nc.depth)))
}

fn c4() -> Result<Outcome> {
    let (p, _) = kelly(7)?;
    let m = min_outerplanarity(&p.cover_graph(), 1_000_000)?;
    Ok(outcome(m.k >= 2, format!("minimum {} over {} rotation systems", m.k, m.explored)))
}

fn c5() -> Result<Outcome> {
    let c = min_max_check(SEED, 200, DEFAULT_BUDGET)?;
    Ok(outcome(c.cases == 200 && c.ok(), summary(&c)))
}

fn c6() -> Result<Outcome> {
    let (checks, literal) = unfolding_checks(SEED, 100, DEFAULT_BUDGET)?;
    let replay = &checks[0];
    let lit_ok = literal.iter().all(Check::ok);
    let corrected = checks.iter().all(Check::ok) && replay.cases == 100;
    let detail: Vec<String> = checks.iter().chain(&literal).map(summary).collect();
    Ok(Outcome { pass: replay.ok() && replay.cases == 100 && lit_ok, detail: detail.join("; "), corrected: Some(corrected) })
}

fn c7() -> Result<Outcome> {
    let (c, lit) = upset_checks(SEED, 100, DEFAULT_BUDGET)?;
    Ok(Outcome {
        pass: lit.cases == 100 && lit.ok() && c.ok(),
        detail: format!("{}; {}", summary(&c), summary(&lit)),
        corrected: Some(c.cases == 100 && c.ok()),
    })
}

fn c8() -> Result<Outcome> {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 3..=5 {
        let (p, e) = kelly(n)?;
        let k = e.outerplanarity();
        let d = Drawn::new(p, e)?;
        let r = doubly_exposed_reduce(&d, k, DoublyExposedOptions { budget: DEFAULT_BUDGET, force_full: false })?;
        let exposed = is_doubly_exposed(&r.poset, &r.embedding, &r.pairs, &r.x0, &r.y0)?;
        ok &= r.trace.all_verified() && r.layers <= k + 1 && exposed;
        // The full construction past the trivial answer; informational, since
        // its hypotheses need not hold on these inputs.
        let forced = match doubly_exposed_reduce(&d, k, DoublyExposedOptions { budget: DEFAULT_BUDGET, force_full: true }) {
            Ok(f) => format!("forced run sound {}, {} layers", f.trace.sound(), f.layers),
            Err(e) => format!("forced run stops: {e}"),
        };
        let verified = r.trace.steps.len() - r.trace.unverified().len();
        detail.push(format!("K_{n}: {verified}/{} links verified, {} <= {} layers, {forced}", r.trace.steps.len(), r.layers, k + 1));
    }
    Ok(outcome(ok, detail.join("; ")))
}

fn c9() -> Result<Outcome> {
    let checks = exposed_checks(SEED, 60)?;
    let pred = &checks[0];
    let d = doubly_exposed_family(SEED, 37)?;
    let inst = ExposedInstance::new(&d.poset, &d.embedding, &d.x0, &d.y0)?;
    let pairs = inst.resolve(&orderforge::dimension::StandardExample { pairs: d.pairs.to_ids(&d.poset) })?;
    let sep = inst.extract_separated(&pairs, 1)?;
    let ok = pred.cases >= 50 && pred.ok() && pairs.len() == 37 && sep.len() >= 2 && inst.is_separated(&sep);
    Ok(outcome(ok, format!("{}; separated sub-example of size {} from 37", summary(pred), sep.len())))
}

fn c10() -> Result<Outcome> {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 3..=5 {
        let d = doubly_exposed_family(SEED + n as u64, n - 1)?;
        let model = kelly_minor_model(&d.poset, &identity_witness(n)?)?;
        let verified = verify_minor_model(&model).is_ok();
        let c = model.contracted();
        let (kp, _) = kelly(n)?;
        let g = kp.cover_graph();
        let names: BTreeSet<&str> = g.ids().iter().map(String::as_str).collect();
        let contains = names.iter().all(|v| c.index_of(v).is_some())
            && g.edge_ids().iter().all(|(u, v)| c.has_edge(c.index_of(u).unwrap(), c.index_of(v).unwrap()));
        ok &= verified && contains;
        detail.push(format!("K_{n}: verified {verified}, cover edges present {contains}"));
    }
    Ok(outcome(ok, detail.join("; ")))
}

fn c11() -> Result<Outcome> {
    let (f1, f2) = (bound_f(1)?, bound_f(2)?);
    Ok(outcome(f1 == 62_726_400 && f2 == 233_280_000, format!("f(1) = {f1}, f(2) = {f2}")))
}

fn c12() -> Result<Outcome> {
    let f = forest_check(SEED, 100, DEFAULT_BUDGET)?;
    let o = outerplanar_check(SEED, 50, DEFAULT_BUDGET)?;
    Ok(outcome(f.cases == 100 && o.cases == 50 && f.ok() && o.ok(), format!("{}; {}", summary(&f), summary(&o))))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 12] = [
        ("standard example dimensions", c1),
        ("kelly dimension and oracle", c2),
        ("kelly(11) layering and nested cycles", c3),
        ("kelly(7) is not outerplanar", c4),
        ("min-max reduction suite", c5),
        ("unfolding factor-2 suite", c6),
        ("up-set restriction suite", c7),
        ("doubly exposed reduction", c8),
        ("exposed structure suite", c9),
        ("kelly minor models", c10),
        ("bound formulas", c11),
        ("forest and outerplanar oracles", c12),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {id:>2} {verdict} {name}: {} ({:.2}s)", o.detail, start.elapsed().as_secs_f64());
        if let Some(c) = o.corrected {
            line.push_str(&format!(" [corrected form {}]", if c { "holds" } else { "FAILS" }));
        }
        println!("{line}");
        let known = KNOWN_GAPS.contains(&id);
        if (!o.pass && !known) || o.corrected == Some(false) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
