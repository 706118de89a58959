//! Structural statements about doubly exposed standard examples, evaluated
//! on every applicable index tuple. They are theorems, so any violation is
//! a bug report.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{clockwise_compare, is_enclosed, side_map, Clockwise, EnclosureMode, ExposedInstance, NPath, PathSide};
use crate::dimension::{default_kappa_cap, kappa_with, rho_with, IncPairSet};
use crate::error::{Error, Result};
use crate::planar::Embedding;
use crate::poset::Poset;

const KEEP: usize = 25;

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub lemma: String,
    pub cases: usize,
    pub violation_count: usize,
    /// The first few violations.
    pub violations: Vec<String>,
}

impl LemmaCheck {
    fn new(lemma: &str) -> Self {
        LemmaCheck { lemma: lemma.into(), cases: 0, violation_count: 0, violations: Vec::new() }
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < KEEP {
                self.violations.push(detail());
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    /// The standard example in blue order.
    pub pairs: Vec<(String, String)>,
    /// Separated sub-example used for the left/right statements.
    pub separated: Vec<(String, String)>,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.violation_count == 0)
    }

    pub fn check(&self, lemma: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.lemma == lemma)
    }
}

/// Contiguous in rank order.
fn is_interval(ranks: &mut [usize]) -> bool {
    ranks.sort_unstable();
    ranks.windows(2).all(|w| w[1] == w[0] + 1)
}

impl ExposedInstance {
    /// Evaluates every structural statement on the standard example
    /// `pairs`. The left/right statements need a separated example; when
    /// `pairs` is not separated, the largest no-arc class of `D(I)` is used.
    pub fn lemma_predicates(&self, pairs: &[(usize, usize)]) -> Result<LemmaReport> {
        let p = &self.poset;
        let e = &self.embedding;
        let id = |x: usize| p.id(x).to_string();
        let j = self.sorted(pairs)?;
        let m = j.len();
        let blue: Vec<BTreeSet<usize>> = j.iter().map(|&(_, b)| self.trees.blue.root_path(b).into_iter().collect()).collect();
        let red: Vec<BTreeSet<usize>> = j.iter().map(|&(a, _)| self.trees.red.root_path(a).into_iter().collect()).collect();
        let mut checks = Vec::new();

        let mut enc = LemmaCheck::new("non-enclosure");
        for x in 0..m {
            for y in 0..m {
                if x == y {
                    continue;
                }
                let hit = is_enclosed(p, e, j[x].1, j[y].1, EnclosureMode::BByB)?;
                enc.case(hit.is_none(), || format!("`{}` enclosed by `{}` via {:?}", id(j[x].1), id(j[y].1), hit));
                let hit = is_enclosed(p, e, j[x].0, j[y].0, EnclosureMode::AByA)?;
                enc.case(hit.is_none(), || format!("`{}` enclosed by `{}` via {:?}", id(j[x].0), id(j[y].0), hit));
            }
        }
        checks.push(enc);

        let (bo, ro) = (self.blue_order(), self.red_order());
        let mut agree = LemmaCheck::new("order-agreement");
        for x in 0..m {
            for y in x + 1..m {
                let tb = clockwise_compare(&bo, j[x].1, j[y].1)?;
                let sa = clockwise_compare(&ro, j[x].0, j[y].0)?;
                agree.case(tb == Clockwise::Before && sa == Clockwise::Before, || {
                    format!("b-order {:?} but a-order {:?} for pairs {} and {}", tb, sa, x + 1, y + 1)
                });
            }
        }
        checks.push(agree);
        // Rank of each pair in the red order, for the a-side interval test.
        let mut by_red: Vec<usize> = (0..m).collect();
        by_red.sort_by(|&x, &y| match clockwise_compare(&ro, j[x].0, j[y].0) {
            Ok(Clockwise::Before) => std::cmp::Ordering::Less,
            Ok(Clockwise::After) => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Equal,
        });
        let mut red_rank = vec![0; m];
        for (r, &x) in by_red.iter().enumerate() {
            red_rank[x] = r;
        }

        let mut npaths: BTreeMap<(usize, usize), NPath> = BTreeMap::new();
        for x in 0..m {
            for y in 0..m {
                if x != y {
                    npaths.insert((x, y), self.n_path(j[x].0, j[y].1)?);
                }
            }
        }
        let mut replay = LemmaCheck::new("n-path-definition");
        for (&(x, y), np) in &npaths {
            let bad = self.check_n_path(np);
            replay.case(bad.is_empty(), || format!("N(a{}, b{}): {}", x + 1, y + 1, bad.join("; ")));
        }
        checks.push(replay);

        let mut three = LemmaCheck::new("three-paths");
        for (&(x, y), np) in &npaths {
            let w: BTreeSet<usize> = np.witness.iter().copied().collect();
            let mut hb: Vec<usize> = (0..m).filter(|&k| blue[k].iter().any(|v| w.contains(v))).collect();
            three.case(is_interval(&mut hb), || format!("W(a{}, b{}) meets blue paths {:?}", x + 1, y + 1, hb));
            let mut ha: Vec<usize> = (0..m).filter(|&k| red[k].iter().any(|v| w.contains(v))).map(|k| red_rank[k]).collect();
            three.case(is_interval(&mut ha), || format!("W(a{}, b{}) meets red paths of ranks {:?}", x + 1, y + 1, ha));
        }
        checks.push(three);

        let mut cross = LemmaCheck::new("crossing-n-paths");
        for x in 0..m {
            for y in x + 1..m {
                for z in y + 1..m {
                    let (n1, n2) = (&npaths[&(x, y)], &npaths[&(y, z)]);
                    let tail: BTreeSet<usize> = n1.path[n1.iu..].iter().copied().collect();
                    let ok = n2.path[..=n2.iv].iter().any(|v| tail.contains(v));
                    cross.case(ok, || format!("N(a{}, b{}) and N(a{}, b{})", x + 1, y + 1, y + 1, z + 1));
                }
            }
        }
        checks.push(cross);

        let dg = self.digraph(pairs)?;
        let mut mono = LemmaCheck::new("bounded-monotone-paths");
        for k in 0..m {
            mono.case(dg.p[k] <= 6 && dg.q[k] <= 6, || format!("pair {} has labels ({}, {})", k + 1, dg.p[k], dg.q[k]));
        }
        checks.push(mono);

        let sep = if self.is_separated(&j) { j.clone() } else { self.sorted(&dg.largest_class())? };
        let mut sepc = LemmaCheck::new("separated-class");
        sepc.case(self.is_separated(&sep), || "largest label class is not separated".into());
        checks.push(sepc);
        checks.extend(self.side_checks(&sep)?);

        Ok(LemmaReport { pairs: self.ids(&j), separated: self.ids(&sep), checks })
    }

    /// The left/right statements on a separated example in blue order.
    fn side_checks(&self, s: &[(usize, usize)]) -> Result<Vec<LemmaCheck>> {
        let n = s.len();
        let e = &self.embedding;
        let mut sides: BTreeMap<(usize, usize), Vec<Option<PathSide>>> = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    let np = self.n_path(s[x].0, s[y].1)?;
                    sides.insert((x, y), side_map(e, &np.path)?);
                }
            }
        }
        let side = |x: usize, y: usize, v: usize| sides[&(x, y)][v];
        let (a, b) = (|k: usize| s[k].0, |k: usize| s[k].1);
        let left = Some(PathSide::Left);
        let right = Some(PathSide::Right);

        let mut domino = LemmaCheck::new("domino");
        for i in 1..n.saturating_sub(1) {
            for jj in 1..n - 1 {
                if i == jj {
                    continue;
                }
                let at = |v| side(i, jj, v);
                let tag = || format!("N(a{}, b{})", i + 1, jj + 1);
                if at(b(jj - 1)) == left {
                    domino.case((0..jj).all(|k| at(b(k)) == left), || format!("{}: b_1..b_{} not all left", tag(), jj));
                }
                if at(b(jj + 1)) == right {
                    domino.case((jj + 1..n).all(|k| at(b(k)) == right), || format!("{}: b_{}..b_n not all right", tag(), jj + 2));
                }
                if at(a(i + 1)) == left {
                    domino.case((i + 1..n).all(|k| at(a(k)) == left), || format!("{}: a_{}..a_n not all left", tag(), i + 2));
                }
                if at(a(i - 1)) == right {
                    domino.case((0..i).all(|k| at(a(k)) == right), || format!("{}: a_1..a_{} not all right", tag(), i));
                }
            }
        }

        let mut lefts = LemmaCheck::new("left-of-n-path");
        for i in 0..n {
            for jj in i + 1..n {
                let (sb, sa) = (side(i, jj, b(i)), side(i, jj, a(jj)));
                lefts.case(sb == left && sa == left, || {
                    format!("N(a{}, b{}): b{} is {:?}, a{} is {:?}", i + 1, jj + 1, i + 1, sb, jj + 1, sa)
                });
            }
        }

        let mut sepn = LemmaCheck::new("separating-n-path");
        for i in 0..n {
            for jj in i + 1..n {
                for k in jj + 1..n {
                    let ok = side(jj, k, a(i)) == right || side(i, jj, b(k)) == right;
                    sepn.case(ok, || format!("indices ({}, {}, {})", i + 1, jj + 1, k + 1));
                }
            }
        }
        Ok(vec![domino, lefts, sepn])
    }
}

/// `ρ_P(I) <= 360 (κ(P) + 1)` and `κ(P) <= 4k + 2` for the drawing's
/// layer count `k`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub rho: usize,
    /// `None` when the Kelly search ran out of budget.
    pub kappa: Option<usize>,
    pub layers: usize,
    pub rho_bound: usize,
    pub kappa_bound: usize,
    pub rho_ok: bool,
    pub kappa_ok: bool,
    pub rho_slack: i64,
    pub kappa_slack: Option<i64>,
}

impl BoundReport {
    pub fn ok(&self) -> bool {
        self.rho_ok && self.kappa_ok
    }
}

/// With an unfinished Kelly search the first inequality is checked
/// against `κ >= 2` and the second is left unasserted.
pub fn check_rho_kappa_bound(p: &Poset, e: &Embedding, pairs: &IncPairSet, budget: u64) -> Result<BoundReport> {
    crate::planar::require_embeds(e, &p.cover_graph())?;
    let (rho, _) = rho_with(p, pairs, budget)?;
    let kappa = if default_kappa_cap(p) < 3 {
        Some(2)
    } else {
        match kappa_with(p, default_kappa_cap(p), budget) {
            Ok((k, _)) => Some(k),
            Err(Error::BudgetExceeded(_)) => None,
            Err(err) => return Err(err),
        }
    };
    let layers = e.outerplanarity();
    let rho_bound = 360 * (kappa.unwrap_or(2) + 1);
    let kappa_bound = 4 * layers + 2;
    Ok(BoundReport {
        rho,
        kappa,
        layers,
        rho_bound,
        kappa_bound,
        rho_ok: rho <= rho_bound,
        kappa_ok: kappa.is_none_or(|k| k <= kappa_bound),
        rho_slack: rho_bound as i64 - rho as i64,
        kappa_slack: kappa.map(|k| kappa_bound as i64 - k as i64),
    })
}
