//! Closed-form witnesses and the lift from level `l` to level `k·l`.

use crate::cochain::OneCochain;
use crate::criterion::{check_junior_ghost, GhostWitness, SupportPolicy, Twist, Verdict};
use crate::graph::StableGraph;
use crate::residue::Level;
use crate::search::SearchError;

fn verified(
    graph: &StableGraph,
    level: Level,
    m: &[i64],
    a: &[i64],
    what: &str,
) -> Result<GhostWitness, SearchError> {
    let mult = OneCochain::from_values(graph, level, m).map_err(|e| SearchError::Criterion(e.into()))?;
    let twist = Twist::from_values(graph, level, a)?;
    match check_junior_ghost(graph, &mult, &twist, SupportPolicy::Any)? {
        Verdict::Witness(w) => Ok(*w),
        Verdict::Rejected(r) => Err(SearchError::Inconsistent(format!("{what} fails re-verification: {r}"))),
    }
}

/// Multiply `M` and `a` by `k` and move to level `k·l`. The result is
/// checked again rather than trusted.
pub fn lift_witness(w: &GhostWitness, k: u64) -> Result<GhostWitness, SearchError> {
    if k == 0 {
        return Err(SearchError::Domain("lift factor must be at least 1".into()));
    }
    let level = Level::new(w.level.get().checked_mul(k).ok_or_else(|| SearchError::Domain("lifted level overflows".into()))?)?;
    let m = w.multiplicity.scaled(k, level);
    let a = w.twist.scaled(k, level);
    let lifted = match check_junior_ghost(&w.graph, &m, &a, SupportPolicy::Any)? {
        Verdict::Witness(x) => *x,
        Verdict::Rejected(r) => {
            return Err(SearchError::Inconsistent(format!(
                "lift by {k} of a level-{} witness was rejected: {r}",
                w.level
            )))
        }
    };
    if lifted.age != w.age {
        return Err(SearchError::Inconsistent(format!(
            "lift changed the age from {} to {}",
            w.age, lifted.age
        )));
    }
    Ok(lifted)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Theta-graph witness for a prime `l > 3`:
/// `M = (n, 2n, n)`, `a = (1, (l-1)/2, 1)`, age `(l+3)/(2l)`.
pub fn construct_prime_family(l: u64, n: u64) -> Result<GhostWitness, SearchError> {
    if l <= 3 || !is_prime(l) {
        return Err(SearchError::Domain(format!("level {l} is not a prime greater than 3")));
    }
    if n == 0 || n >= l {
        return Err(SearchError::Domain(format!("n must lie in 1..{l}, got {n}")));
    }
    let level = Level::new(l)?;
    let (l, n) = (l as i64, n as i64);
    verified(
        &StableGraph::theta(),
        level,
        &[n, 2 * n, n],
        &[1, (l - 1) / 2, 1],
        "prime-level construction",
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub witness: GhostWitness,
}

pub const PRESET_NAMES: [&str; 3] = ["l8", "l9", "l12codim4"];

/// The hard-coded witnesses at levels 8, 9 (theta graph) and 12 (four edges).
pub fn preset_witnesses() -> Result<Vec<Preset>, SearchError> {
    PRESET_NAMES.iter().map(|name| preset(name)).collect()
}

pub fn preset(name: &str) -> Result<Preset, SearchError> {
    let (name, graph, level, m, a): (&'static str, _, _, &[i64], &[i64]) = match name {
        "l8" => ("l8", StableGraph::theta(), 8, &[1, 3, 2], &[2, 2, 2]),
        "l9" => ("l9", StableGraph::theta(), 9, &[1, 2, 1], &[1, 4, 1]),
        "l12codim4" => ("l12codim4", StableGraph::banana(4), 12, &[1, 5, 2, 2], &[2, 2, 2, 2]),
        other => return Err(SearchError::Domain(format!("unknown preset {other:?}"))),
    };
    let witness = verified(&graph, Level::new(level)?, m, a, name)?;
    Ok(Preset { name, witness })
}
