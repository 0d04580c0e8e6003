//! Hand-style sieve on the theta graph.
//!
//! Positive twist multisets `{a1, a2, a3}` with sum below `l` are placed on
//! the theta graph in every distinct arrangement, and for each arrangement
//! all nonzero multiplicity triples are kept for which `a ⊙ M` closes up on
//! both fundamental circuits:
//!
//! ```text
//! a1 ⊙ m1 ≡ a3 ⊙ m3        a1 ⊙ m1 + a2 ⊙ m2 ≡ 0   (mod l)
//! ```
//!
//! `Ker ∂` is not imposed while sieving; it is recorded per triple afterwards.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cochain::{in_ker_boundary, OneCochain};
use crate::graph::StableGraph;
use crate::residue::Level;

/// Three positive twist values, sorted ascending and compared as a multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CandidateTriple([u64; 3]);

impl CandidateTriple {
    pub fn new(mut values: [u64; 3]) -> Self {
        values.sort_unstable();
        CandidateTriple(values)
    }

    pub fn values(&self) -> [u64; 3] {
        self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Distinct orderings `(a1, a2, a3)`, ascending.
    pub fn arrangements(&self) -> Vec<[u64; 3]> {
        let [x, y, z] = self.0;
        let all: BTreeSet<[u64; 3]> = [[x, y, z], [x, z, y], [y, x, z], [y, z, x], [z, x, y], [z, y, x]]
            .into_iter()
            .collect();
        all.into_iter().collect()
    }
}

impl fmt::Display for CandidateTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{{{a},{b},{c}}}")
    }
}

/// Every multiset of three positive integers with sum below `l`, sorted.
pub fn enumerate_candidate_triples(level: Level) -> Vec<CandidateTriple> {
    let l = level.get();
    let mut out = Vec::new();
    for a in 1..l {
        for b in a..l {
            for c in b..l {
                if a + b + c < l {
                    out.push(CandidateTriple([a, b, c]));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleM {
    pub arrangement: [u64; 3],
    pub m: [u64; 3],
    pub in_ker_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SieveEntry {
    pub triple: CandidateTriple,
    pub admissible: Vec<AdmissibleM>,
}

impl SieveEntry {
    pub fn survives(&self) -> bool {
        !self.admissible.is_empty()
    }

    /// Distinct arrangements with at least one admissible multiplicity.
    pub fn surviving_arrangements(&self) -> Vec<[u64; 3]> {
        let set: BTreeSet<_> = self.admissible.iter().map(|a| a.arrangement).collect();
        set.into_iter().collect()
    }
}

/// Sieve every candidate; non-survivors come back with an empty list.
pub fn sieve_all(level: Level, triples: &[CandidateTriple]) -> Vec<SieveEntry> {
    let theta = StableGraph::theta();
    let l = level.get();
    let odot = |a: u64, m: u64| level.odot(level.canon_u(a), level.canon_u(m)).ok().map(|r| r.value());
    triples
        .iter()
        .map(|&triple| {
            let mut admissible = Vec::new();
            for arr in triple.arrangements() {
                let [a1, a2, a3] = arr;
                for m1 in 1..l {
                    let Some(x) = odot(a1, m1) else { continue };
                    for m2 in 1..l {
                        let Some(y) = odot(a2, m2) else { continue };
                        if (x + y) % l != 0 {
                            continue;
                        }
                        for m3 in 1..l {
                            if odot(a3, m3) != Some(x) {
                                continue;
                            }
                            let m = OneCochain::from_values(&theta, level, &[m1 as i64, m2 as i64, m3 as i64])
                                .expect("theta has three edges");
                            admissible.push(AdmissibleM {
                                arrangement: arr,
                                m: [m1, m2, m3],
                                in_ker_boundary: in_ker_boundary(&theta, &m).expect("same graph"),
                            });
                        }
                    }
                }
            }
            SieveEntry { triple, admissible }
        })
        .collect()
}

/// Survivors only, each with its admissible multiplicity list.
pub fn sieve_triples(level: Level, triples: &[CandidateTriple]) -> Vec<SieveEntry> {
    sieve_all(level, triples).into_iter().filter(SieveEntry::survives).collect()
}
