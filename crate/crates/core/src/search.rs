//! Exhaustive search for junior ghosts.
//!
//! Multiplicities range over `Ker ∂`, parameterized by coefficient vectors on
//! the fundamental circuits. For each multiplicity the twists range over
//! per-edge multiples of `gcd(M(e), l)` with total below `l`; since twist
//! values are canonical, that total is `l·age`, so the bound drops nothing
//! junior. Every hit is re-verified by [`check_junior_ghost`] before it is
//! returned.
//!
//! The multiplicity list may be split across rayon workers. Results are
//! collected in enumeration order, so output does not depend on the number
//! of threads.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cochain::OneCochain;
use crate::criterion::{check_junior_ghost, CriterionError, GhostWitness, SupportPolicy, Twist, Verdict};
use crate::families::{FamilyKind, GraphFamily};
use crate::graph::{Direction, StableGraph};
use crate::residue::{Level, Residue, ResidueError};
use crate::symmetry::{automorphisms, canonical_decoration};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search incomplete: {what} needs {required}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        required: u128,
        cap: u64,
    },
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error("{0}")]
    Domain(String),
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

impl SearchError {
    pub fn is_incomplete(&self) -> bool {
        matches!(self, SearchError::CapExceeded { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub support: SupportPolicy,
    pub stop_at_first: bool,
    pub dedupe_by_symmetry: bool,
    /// Cap on `l^b1`, the number of multiplicity cochains.
    pub max_multiplicities: u64,
    /// Cap on multiplicities times the twist candidates per multiplicity.
    pub max_work: u64,
    /// Cap on the automorphism group used for deduplication.
    pub max_automorphisms: usize,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            support: SupportPolicy::Full,
            stop_at_first: false,
            dedupe_by_symmetry: false,
            max_multiplicities: 10_000_000,
            max_work: 50_000_000_000,
            max_automorphisms: 100_000,
            parallel: true,
        }
    }
}

impl SearchConfig {
    pub fn with_support(mut self, support: SupportPolicy) -> Self {
        self.support = support;
        self
    }

    pub fn first_only(mut self) -> Self {
        self.stop_at_first = true;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

/// Coefficient of each edge in each fundamental circuit (+1, -1 or 0).
fn circuit_basis(graph: &StableGraph) -> Vec<Vec<i8>> {
    graph
        .fundamental_circuits()
        .iter()
        .map(|c| {
            let mut row = vec![0i8; graph.edge_count()];
            for s in &c.steps {
                row[s.edge] += match s.direction {
                    Direction::Forward => 1,
                    Direction::Reverse => -1,
                };
            }
            row
        })
        .collect()
}

fn checked_power(base: u64, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

/// Iterator over `Ker ∂`, lexicographic in the circuit coefficients.
pub struct Multiplicities {
    level: Level,
    basis: Vec<Vec<i8>>,
    edges: usize,
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for Multiplicities {
    type Item = OneCochain;

    fn next(&mut self) -> Option<OneCochain> {
        if self.done {
            return None;
        }
        let l = self.level;
        let mut acc = vec![0i64; self.edges];
        for (c, row) in self.digits.iter().zip(&self.basis) {
            for (a, &r) in acc.iter_mut().zip(row) {
                *a += r as i64 * *c as i64;
            }
        }
        let out = OneCochain::from_residues(l, acc.into_iter().map(|x| l.canon(x)).collect());
        // last coefficient varies fastest
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < l.get() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_multiplicities(graph: &StableGraph, level: Level, cap: u64) -> Result<Multiplicities, SearchError> {
    let required = checked_power(level.get(), graph.betti_number());
    if required > cap as u128 {
        return Err(SearchError::CapExceeded {
            what: "multiplicity enumeration",
            required,
            cap,
        });
    }
    let basis = circuit_basis(graph);
    Ok(Multiplicities {
        level,
        digits: vec![0; basis.len()],
        basis,
        edges: graph.edge_count(),
        done: false,
    })
}

/// Walk every compatible twist with value sum below `l`, in lexicographic
/// order (first edge most significant).
fn for_each_twist<F>(level: Level, m: &[Residue], policy: SupportPolicy, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let l = level.get();
    let steps: Vec<u64> = m.iter().map(|&x| level.gcd_with(x)).collect();
    if policy == SupportPolicy::Full && steps.contains(&l) {
        return ControlFlow::Continue(());
    }
    let mut values = vec![0u64; m.len()];

    fn rec<F: FnMut(&[u64]) -> ControlFlow<()>>(
        i: usize,
        sum: u64,
        l: u64,
        steps: &[u64],
        full: bool,
        values: &mut [u64],
        f: &mut F,
    ) -> ControlFlow<()> {
        if i == values.len() {
            if sum == 0 {
                return ControlFlow::Continue(());
            }
            return f(values);
        }
        let step = steps[i];
        let mut v = if full { step } else { 0 };
        while sum + v < l {
            values[i] = v;
            rec(i + 1, sum + v, l, steps, full, values, f)?;
            v += step;
        }
        values[i] = 0;
        ControlFlow::Continue(())
    }

    rec(0, 0, l, &steps, policy == SupportPolicy::Full, &mut values, &mut f)
}

/// Compatible, nontrivial twists of age below 1 under `policy`.
pub fn enumerate_twists(graph: &StableGraph, m: &OneCochain, policy: SupportPolicy) -> Vec<Twist> {
    assert_eq!(m.len(), graph.edge_count(), "multiplicity does not match graph");
    let l = m.level();
    let mut out = Vec::new();
    let _ = for_each_twist(l, m.values(), policy, |vals| {
        out.push(Twist::from_residues(l, vals.iter().map(|&v| l.canon_u(v)).collect()));
        ControlFlow::Continue(())
    });
    out
}

/// Number of nonnegative `edges`-tuples with sum below `l`: `C(l-1+edges, edges)`.
fn twist_bound(level: Level, edges: usize) -> u128 {
    let n = level.get() as u128 - 1 + edges as u128;
    let mut acc: u128 = 1;
    for i in 0..edges as u128 {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

struct Prepared<'g> {
    graph: &'g StableGraph,
    level: Level,
    circuits: Vec<Vec<(usize, bool)>>,
}

impl<'g> Prepared<'g> {
    fn new(graph: &'g StableGraph, level: Level) -> Self {
        let circuits = graph
            .fundamental_circuits()
            .iter()
            .map(|c| c.steps.iter().map(|s| (s.edge, s.direction == Direction::Forward)).collect())
            .collect();
        Prepared { graph, level, circuits }
    }

    fn witnesses_for(&self, m: &OneCochain, policy: SupportPolicy, first: bool) -> Result<Vec<GhostWitness>, SearchError> {
        let l = self.level.get();
        let mv: Vec<u64> = m.raw();
        let gcds: Vec<u64> = m.values().iter().map(|&x| self.level.gcd_with(x)).collect();
        let mut image = vec![0u64; mv.len()];
        let mut out = Vec::new();
        let mut failure = None;
        let _ = for_each_twist(self.level, m.values(), policy, |a| {
            for i in 0..a.len() {
                image[i] = (a[i] / gcds[i]) * mv[i] % l;
            }
            let closed = self.circuits.iter().all(|c| {
                c.iter().fold(0u64, |acc, &(e, fwd)| {
                    let v = if fwd { image[e] } else { (l - image[e]) % l };
                    (acc + v) % l
                }) == 0
            });
            if !closed {
                return ControlFlow::Continue(());
            }
            let twist = Twist::from_residues(self.level, a.iter().map(|&v| self.level.canon_u(v)).collect());
            match check_junior_ghost(self.graph, m, &twist, policy) {
                Ok(Verdict::Witness(w)) => out.push(*w),
                Ok(Verdict::Rejected(r)) => {
                    failure = Some(SearchError::Inconsistent(format!(
                        "search accepted M={:?} a={:?} but the criterion rejects it: {r}",
                        mv, a
                    )));
                    return ControlFlow::Break(());
                }
                Err(e) => {
                    failure = Some(e.into());
                    return ControlFlow::Break(());
                }
            }
            if first {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }
}

/// Every junior ghost on `graph` at `level` (or the first, per `config`).
/// An empty result means none exists under the support policy.
pub fn search_graph(graph: &StableGraph, level: Level, config: &SearchConfig) -> Result<Vec<GhostWitness>, SearchError> {
    let multiplicities = checked_power(level.get(), graph.betti_number());
    let work = multiplicities.saturating_mul(twist_bound(level, graph.edge_count()));
    if work > config.max_work as u128 {
        return Err(SearchError::CapExceeded {
            what: "twist enumeration",
            required: work,
            cap: config.max_work,
        });
    }
    let ms: Vec<OneCochain> = enumerate_multiplicities(graph, level, config.max_multiplicities)?.collect();
    let prepared = Prepared::new(graph, level);
    let run = |m: &OneCochain| prepared.witnesses_for(m, config.support, config.stop_at_first);
    let keep = |r: Result<Vec<GhostWitness>, SearchError>| match r {
        Ok(v) if v.is_empty() => None,
        other => Some(other),
    };

    let mut found = if config.stop_at_first {
        let hit = if config.parallel {
            ms.par_iter().map(run).find_map_first(keep)
        } else {
            ms.iter().map(run).find_map(keep)
        };
        hit.unwrap_or(Ok(Vec::new()))?
    } else {
        let per: Vec<_> = if config.parallel {
            ms.par_iter().map(run).collect()
        } else {
            ms.iter().map(run).collect()
        };
        let mut all = Vec::new();
        for r in per {
            all.extend(r?);
        }
        all
    };

    if config.dedupe_by_symmetry && found.len() > 1 {
        let maps = automorphisms(graph, config.max_automorphisms).ok_or(SearchError::CapExceeded {
            what: "automorphism group",
            required: config.max_automorphisms as u128 + 1,
            cap: config.max_automorphisms as u64,
        })?;
        let mut seen = std::collections::BTreeSet::new();
        found.retain(|w| seen.insert(canonical_decoration(&maps, &w.multiplicity, &w.twist)));
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeOutcome {
    /// Exhaustively refuted on every graph of the family with this edge count.
    None { graphs: usize },
    Witness(Box<GhostWitness>),
    Unresolved { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCountResult {
    pub edges: usize,
    pub outcome: EdgeOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "edges")]
pub enum MinimalCodimension {
    Found(usize),
    NoneUpToBound,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub level: Level,
    pub family: FamilyKind,
    pub support: SupportPolicy,
    pub max_edges: usize,
    pub entries: Vec<EdgeCountResult>,
    pub minimal: MinimalCodimension,
}

/// Search each edge count `1..=max_edges` of `family` for a junior ghost.
pub fn classify_level(
    level: Level,
    max_edges: usize,
    family: &GraphFamily,
    config: &SearchConfig,
) -> Result<ClassificationResult, SearchError> {
    if max_edges == 0 {
        return Err(SearchError::Domain("max_edges must be at least 1".into()));
    }
    let config = SearchConfig {
        stop_at_first: true,
        dedupe_by_symmetry: false,
        ..config.clone()
    };
    let mut entries = Vec::with_capacity(max_edges);
    let mut minimal = None;
    let mut unresolved_below = false;
    for edges in 1..=max_edges {
        let graphs = family.graphs_with_edges(edges);
        let mut outcome = None;
        let mut reason = None;
        for g in &graphs {
            match search_graph(g, level, &config) {
                Ok(mut ws) if !ws.is_empty() => {
                    outcome = Some(EdgeOutcome::Witness(Box::new(ws.swap_remove(0))));
                    break;
                }
                Ok(_) => {}
                Err(e) if e.is_incomplete() => {
                    reason.get_or_insert_with(|| e.to_string());
                }
                Err(e) => return Err(e),
            }
        }
        let outcome = match (outcome, reason) {
            (Some(w), _) => w,
            (None, Some(reason)) => EdgeOutcome::Unresolved { reason },
            (None, None) => EdgeOutcome::None { graphs: graphs.len() },
        };
        match &outcome {
            EdgeOutcome::Witness(_) if minimal.is_none() => {
                minimal = Some(if unresolved_below {
                    MinimalCodimension::Unresolved
                } else {
                    MinimalCodimension::Found(edges)
                });
            }
            EdgeOutcome::Unresolved { .. } => unresolved_below = true,
            _ => {}
        }
        entries.push(EdgeCountResult { edges, outcome });
    }
    let minimal = minimal.unwrap_or(if unresolved_below {
        MinimalCodimension::Unresolved
    } else {
        MinimalCodimension::NoneUpToBound
    });
    Ok(ClassificationResult {
        level,
        family: family.kind(),
        support: config.support,
        max_edges,
        entries,
        minimal,
    })
}
