//! The junior-ghost test.
//!
//! A multiplicity cochain `M` (antisymmetric, read on reference orientations)
//! and a twist `a` (one rotation value per node, independent of orientation)
//! give a junior ghost when
//!
//! * `gcd(M(e), l)` divides `a(e)` at every edge,
//! * `M` lies in `Ker ∂`,
//! * `a ⊙ M` lies in `Im δ`,
//! * `0 < age(a) < 1`,
//!
//! and the support of `a` satisfies the chosen [`SupportPolicy`]. Checks run
//! in that order and the first failure is reported.
//!
//! Reversing an edge negates `M(e)` and `(a ⊙ M)(e)` but leaves `a(e)` alone,
//! so every verdict is independent of the chosen orientations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochain::{self, CochainError, OneCochain};
use crate::graph::{EdgeId, StableGraph};
use crate::residue::{Age, Level, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("twist has {got} values but the graph has {expected} edges")]
    TwistLength { expected: usize, got: usize },
    #[error("twist and multiplicity are at different levels ({twist} vs {multiplicity})")]
    LevelMismatch { twist: u64, multiplicity: u64 },
    #[error("twist {twist} is incompatible with multiplicity {multiplicity} on edge {edge}")]
    Incompatible {
        edge: EdgeId,
        twist: u64,
        multiplicity: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportPolicy {
    /// Every edge twisted nontrivially.
    #[default]
    Full,
    /// At least one edge twisted.
    Any,
}

impl fmt::Display for SupportPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportPolicy::Full => "full",
            SupportPolicy::Any => "any",
        })
    }
}

/// Ghost automorphism: a rotation value in Z/l at each node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Twist {
    level: Level,
    values: Vec<Residue>,
}

impl Twist {
    pub fn from_values(graph: &StableGraph, level: Level, values: &[i64]) -> Result<Self, CriterionError> {
        if values.len() != graph.edge_count() {
            return Err(CriterionError::TwistLength {
                expected: graph.edge_count(),
                got: values.len(),
            });
        }
        Ok(Twist {
            level,
            values: values.iter().map(|&x| level.canon(x)).collect(),
        })
    }

    pub(crate) fn from_residues(level: Level, values: Vec<Residue>) -> Self {
        Twist { level, values }
    }

    pub fn zero(graph: &StableGraph, level: Level) -> Self {
        Twist {
            level,
            values: vec![Residue::ZERO; graph.edge_count()],
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn values(&self) -> &[Residue] {
        &self.values
    }

    pub fn raw(&self) -> Vec<u64> {
        self.values.iter().map(|v| v.value()).collect()
    }

    pub fn age(&self) -> Age {
        self.level.age_sum(self.values.iter().copied())
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn scaled(&self, k: u64, level: Level) -> Self {
        Twist {
            level,
            values: self.values.iter().map(|v| level.canon_u(v.value() * k)).collect(),
        }
    }
}

/// The four boolean checks recorded on every witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Checks {
    pub compatible: bool,
    pub ker_boundary: bool,
    pub im_coboundary: bool,
    pub junior: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.compatible && self.ker_boundary && self.im_coboundary && self.junior
    }
}

/// Why a candidate `(M, a)` is not a junior ghost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    Incompatible { edge: EdgeId },
    NotInKerBoundary,
    NotInImCoboundary,
    NotJunior { age: Age },
    Support { policy: SupportPolicy, support: Vec<EdgeId> },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Incompatible { edge } => write!(f, "incompatible twist on edge {edge}"),
            Rejection::NotInKerBoundary => f.write_str("M is not in Ker ∂"),
            Rejection::NotInImCoboundary => f.write_str("a ⊙ M is not in Im δ"),
            Rejection::NotJunior { age } => write!(f, "age {age} is not in (0, 1)"),
            Rejection::Support { policy, support } => {
                write!(f, "support {support:?} violates the {policy} support policy")
            }
        }
    }
}

/// A verified junior ghost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostWitness {
    pub graph: StableGraph,
    pub level: Level,
    pub multiplicity: OneCochain,
    pub twist: Twist,
    pub age: Age,
    pub support: Vec<EdgeId>,
    pub codimension: usize,
    pub checks: Checks,
}

impl GhostWitness {
    pub fn odot(&self) -> OneCochain {
        odot_cochain(&self.graph, &self.twist, &self.multiplicity).expect("witness is compatible")
    }

    /// Twisted at a single node. Such witnesses may come from a
    /// quasireflection and deserve a second look.
    pub fn has_single_edge_support(&self) -> bool {
        self.support.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Witness(Box<GhostWitness>),
    Rejected(Rejection),
}

impl Verdict {
    pub fn witness(self) -> Option<GhostWitness> {
        match self {
            Verdict::Witness(w) => Some(*w),
            Verdict::Rejected(_) => None,
        }
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Witness(_) => None,
            Verdict::Rejected(r) => Some(r),
        }
    }

    pub fn is_witness(&self) -> bool {
        matches!(self, Verdict::Witness(_))
    }
}

fn check_shapes(graph: &StableGraph, a: &Twist, m: &OneCochain) -> Result<(), CriterionError> {
    if a.values.len() != graph.edge_count() {
        return Err(CriterionError::TwistLength {
            expected: graph.edge_count(),
            got: a.values.len(),
        });
    }
    if m.len() != graph.edge_count() {
        return Err(CochainError::LengthMismatch {
            expected: graph.edge_count(),
            got: m.len(),
        }
        .into());
    }
    if a.level != m.level() {
        return Err(CriterionError::LevelMismatch {
            twist: a.level.get(),
            multiplicity: m.level().get(),
        });
    }
    Ok(())
}

fn first_incompatible(graph: &StableGraph, a: &Twist, m: &OneCochain) -> Option<usize> {
    let l = a.level;
    (0..graph.edge_count()).find(|&i| !l.is_compatible(a.values[i], m.values()[i]))
}

pub fn compatible(graph: &StableGraph, a: &Twist, m: &OneCochain) -> Result<bool, CriterionError> {
    check_shapes(graph, a, m)?;
    Ok(first_incompatible(graph, a, m).is_none())
}

/// Edgewise `a ⊙ M` on reference orientations.
pub fn odot_cochain(graph: &StableGraph, a: &Twist, m: &OneCochain) -> Result<OneCochain, CriterionError> {
    check_shapes(graph, a, m)?;
    let l = a.level;
    let values = a
        .values
        .iter()
        .zip(m.values())
        .enumerate()
        .map(|(i, (&ai, &mi))| {
            l.odot(ai, mi).map_err(|_| CriterionError::Incompatible {
                edge: graph.edges()[i].id,
                twist: ai.value(),
                multiplicity: mi.value(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OneCochain::from_residues(l, values))
}

pub fn support(graph: &StableGraph, a: &Twist) -> Vec<EdgeId> {
    a.values
        .iter()
        .zip(graph.edges())
        .filter(|(v, _)| !v.is_zero())
        .map(|(_, e)| e.id)
        .collect()
}

fn support_ok(policy: SupportPolicy, support: &[EdgeId], edges: usize) -> bool {
    match policy {
        SupportPolicy::Full => !support.is_empty() && support.len() == edges,
        SupportPolicy::Any => !support.is_empty(),
    }
}

/// Evaluate every condition, returning the four flags without short-circuiting.
pub fn evaluate_checks(graph: &StableGraph, m: &OneCochain, a: &Twist) -> Result<Checks, CriterionError> {
    check_shapes(graph, a, m)?;
    let compatible = first_incompatible(graph, a, m).is_none();
    let ker_boundary = cochain::in_ker_boundary(graph, m)?;
    let im_coboundary = compatible && cochain::in_im_coboundary(graph, &odot_cochain(graph, a, m)?)?;
    Ok(Checks {
        compatible,
        ker_boundary,
        im_coboundary,
        junior: a.age().is_junior(),
    })
}

pub fn check_junior_ghost(
    graph: &StableGraph,
    m: &OneCochain,
    a: &Twist,
    policy: SupportPolicy,
) -> Result<Verdict, CriterionError> {
    check_shapes(graph, a, m)?;
    if let Some(i) = first_incompatible(graph, a, m) {
        return Ok(Verdict::Rejected(Rejection::Incompatible {
            edge: graph.edges()[i].id,
        }));
    }
    if !cochain::in_ker_boundary(graph, m)? {
        return Ok(Verdict::Rejected(Rejection::NotInKerBoundary));
    }
    if !cochain::in_im_coboundary(graph, &odot_cochain(graph, a, m)?)? {
        return Ok(Verdict::Rejected(Rejection::NotInImCoboundary));
    }
    let age = a.age();
    if !age.is_junior() {
        return Ok(Verdict::Rejected(Rejection::NotJunior { age }));
    }
    let support = support(graph, a);
    if !support_ok(policy, &support, graph.edge_count()) {
        return Ok(Verdict::Rejected(Rejection::Support { policy, support }));
    }
    Ok(Verdict::Witness(Box::new(GhostWitness {
        graph: graph.clone(),
        level: a.level,
        multiplicity: m.clone(),
        twist: a.clone(),
        age,
        support,
        codimension: graph.edge_count(),
        checks: Checks {
            compatible: true,
            ker_boundary: true,
            im_coboundary: true,
            junior: true,
        },
    })))
}
