//! Cochains over Z/l on a stable graph and the maps between them.
//!
//! A [`OneCochain`] stores one residue per edge, read on the edge's reference
//! orientation; the value on the reversed orientation is its negative and is
//! never stored. Boundary uses signed incidence: an edge contributes `+b(e)`
//! at its head and `-b(e)` at its tail.

use thiserror::Error;

use crate::graph::{Circuit, Direction, StableGraph};
use crate::residue::{Level, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("cochain has {got} values but the graph has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("cochain level {got} does not match level {expected}")]
    LevelMismatch { expected: u64, got: u64 },
    #[error("oracle would enumerate {required} zero-cochains, above the cap of {cap}")]
    OracleCapExceeded { required: u128, cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroCochain {
    level: Level,
    values: Vec<Residue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneCochain {
    level: Level,
    values: Vec<Residue>,
}

impl ZeroCochain {
    pub fn zero(graph: &StableGraph, level: Level) -> Self {
        ZeroCochain {
            level,
            values: vec![Residue::ZERO; graph.vertex_count()],
        }
    }

    /// Values by vertex position; each is reduced mod `l`.
    pub fn from_values(graph: &StableGraph, level: Level, values: &[i64]) -> Result<Self, CochainError> {
        if values.len() != graph.vertex_count() {
            return Err(CochainError::LengthMismatch {
                expected: graph.vertex_count(),
                got: values.len(),
            });
        }
        Ok(ZeroCochain {
            level,
            values: values.iter().map(|&x| level.canon(x)).collect(),
        })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn values(&self) -> &[Residue] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

impl OneCochain {
    pub fn zero(graph: &StableGraph, level: Level) -> Self {
        OneCochain {
            level,
            values: vec![Residue::ZERO; graph.edge_count()],
        }
    }

    /// Values by edge position on reference orientations; each is reduced mod `l`.
    pub fn from_values(graph: &StableGraph, level: Level, values: &[i64]) -> Result<Self, CochainError> {
        if values.len() != graph.edge_count() {
            return Err(CochainError::LengthMismatch {
                expected: graph.edge_count(),
                got: values.len(),
            });
        }
        Ok(OneCochain {
            level,
            values: values.iter().map(|&x| level.canon(x)).collect(),
        })
    }

    pub(crate) fn from_residues(level: Level, values: Vec<Residue>) -> Self {
        OneCochain { level, values }
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

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Value on edge `i` read in `direction`.
    #[inline]
    pub fn oriented(&self, i: usize, direction: Direction) -> Residue {
        match direction {
            Direction::Forward => self.values[i],
            Direction::Reverse => self.level.neg(self.values[i]),
        }
    }

    /// The same cochain after flipping the reference orientation of edge `i`.
    pub fn with_edge_reversed(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.values[i] = self.level.neg(self.values[i]);
        out
    }

    /// Multiply every value by `k` and reinterpret at level `k·l`.
    pub fn scaled(&self, k: u64, level: Level) -> Self {
        OneCochain {
            level,
            values: self.values.iter().map(|v| level.canon_u(v.value() * k)).collect(),
        }
    }

    fn check(&self, graph: &StableGraph) -> Result<(), CochainError> {
        if self.values.len() != graph.edge_count() {
            return Err(CochainError::LengthMismatch {
                expected: graph.edge_count(),
                got: self.values.len(),
            });
        }
        Ok(())
    }
}

/// `∂b(v)`: signed sum of edge values at `v` (head `+`, tail `-`).
pub fn boundary(graph: &StableGraph, b: &OneCochain) -> Result<ZeroCochain, CochainError> {
    b.check(graph)?;
    let l = b.level;
    let mut out = ZeroCochain::zero(graph, l);
    for (i, &value) in b.values.iter().enumerate() {
        let (t, h) = graph.endpoints(i);
        out.values[h] = l.add(out.values[h], value);
        out.values[t] = l.sub(out.values[t], value);
    }
    Ok(out)
}

/// `δa(e) = a(head) - a(tail)`.
pub fn coboundary(graph: &StableGraph, a: &ZeroCochain) -> Result<OneCochain, CochainError> {
    if a.values.len() != graph.vertex_count() {
        return Err(CochainError::LengthMismatch {
            expected: graph.vertex_count(),
            got: a.values.len(),
        });
    }
    let l = a.level;
    let values = (0..graph.edge_count())
        .map(|i| {
            let (t, h) = graph.endpoints(i);
            l.sub(a.values[h], a.values[t])
        })
        .collect();
    Ok(OneCochain { level: l, values })
}

pub fn circuit_sum(b: &OneCochain, circuit: &Circuit) -> Residue {
    circuit
        .steps
        .iter()
        .fold(Residue::ZERO, |acc, s| b.level.add(acc, b.oriented(s.edge, s.direction)))
}

pub fn in_ker_boundary(graph: &StableGraph, m: &OneCochain) -> Result<bool, CochainError> {
    Ok(boundary(graph, m)?.is_zero())
}

/// Membership in `Im δ`, decided by vanishing on every fundamental circuit.
pub fn in_im_coboundary(graph: &StableGraph, b: &OneCochain) -> Result<bool, CochainError> {
    in_im_coboundary_with(graph, b, graph.fundamental_circuits())
}

/// As [`in_im_coboundary`] against a caller-chosen fundamental system.
pub fn in_im_coboundary_with(graph: &StableGraph, b: &OneCochain, circuits: &[Circuit]) -> Result<bool, CochainError> {
    b.check(graph)?;
    Ok(circuits.iter().all(|k| circuit_sum(b, k).is_zero()))
}

/// Default enumeration cap for [`in_im_coboundary_oracle`].
pub const ORACLE_CAP: u64 = 1_000_000;

/// Brute-force membership in `Im δ`: try every zero-cochain with the
/// lowest-positioned vertex pinned to 0.
pub fn in_im_coboundary_oracle(graph: &StableGraph, b: &OneCochain, cap: u64) -> Result<bool, CochainError> {
    b.check(graph)?;
    let l = b.level;
    let free = graph.vertex_count() - 1;
    let required = (l.get() as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if required > cap as u128 {
        return Err(CochainError::OracleCapExceeded { required, cap });
    }
    let mut digits = vec![0u64; free];
    loop {
        let mut values = Vec::with_capacity(graph.vertex_count());
        values.push(Residue::ZERO);
        values.extend(digits.iter().map(|&d| l.canon_u(d)));
        let a = ZeroCochain { level: l, values };
        if coboundary(graph, &a)? == *b {
            return Ok(true);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == free {
                return Ok(false);
            }
            digits[i] += 1;
            if digits[i] < l.get() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Vertex};

    fn lv(l: u64) -> Level {
        Level::new(l).unwrap()
    }

    fn one(g: &StableGraph, l: u64, vals: &[i64]) -> OneCochain {
        OneCochain::from_values(g, lv(l), vals).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let g = StableGraph::theta();
        assert!(boundary(&g, &one(&g, 9, &[1, 2, 1])).unwrap().is_zero());
        let b = boundary(&g, &one(&g, 12, &[1, 11, 1])).unwrap();
        assert!(!b.is_zero());
        // right vertex: 1 + 1 - 11 = -9 = 3
        assert_eq!(b.values()[1].value(), 3);
        assert!(boundary(&g, &OneCochain::zero(&g, lv(5))).unwrap().is_zero());
    }

    #[test]
    fn coboundary_examples() {
        let g = StableGraph::theta();
        let a = ZeroCochain::from_values(&g, lv(12), &[0, 3]).unwrap();
        assert_eq!(coboundary(&g, &a).unwrap().raw(), vec![3, 9, 3]);
        let c = ZeroCochain::from_values(&g, lv(12), &[7, 7]).unwrap();
        assert!(coboundary(&g, &c).unwrap().is_zero());

        let looped = StableGraph::new(
            vec![Vertex { id: 0, genus: 1 }, Vertex { id: 1, genus: 1 }],
            vec![Edge { id: 1, tail: 0, head: 1 }, Edge { id: 2, tail: 1, head: 1 }],
        )
        .unwrap();
        let a = ZeroCochain::from_values(&looped, lv(5), &[1, 4]).unwrap();
        assert_eq!(coboundary(&looped, &a).unwrap().raw(), vec![3, 0]);
    }

    #[test]
    fn circuit_sum_examples() {
        let g = StableGraph::theta();
        let b = one(&g, 12, &[1, 11, 1]);
        let c = g.fundamental_circuits();
        assert_eq!(circuit_sum(&b, &c[0]).value(), 0);
        assert_eq!(circuit_sum(&b, &c[1]).value(), 0);
        assert_eq!(circuit_sum(&b, &Circuit::default()).value(), 0);
    }

    #[test]
    fn ker_examples() {
        let g = StableGraph::theta();
        assert!(in_ker_boundary(&g, &one(&g, 8, &[1, 3, 2])).unwrap());
        assert!(!in_ker_boundary(&g, &one(&g, 12, &[1, 5, 1])).unwrap());
        assert!(in_ker_boundary(&g, &OneCochain::zero(&g, lv(12))).unwrap());
    }

    #[test]
    fn im_examples() {
        let g = StableGraph::theta();
        assert!(in_im_coboundary(&g, &one(&g, 8, &[2, 6, 2])).unwrap());
        assert!(!in_im_coboundary(&g, &one(&g, 12, &[1, 1, 1])).unwrap());
        let a = ZeroCochain::from_values(&g, lv(12), &[4, 9]).unwrap();
        assert!(in_im_coboundary(&g, &coboundary(&g, &a).unwrap()).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let g = StableGraph::theta();
        assert!(in_im_coboundary_oracle(&g, &OneCochain::zero(&g, lv(6)), ORACLE_CAP).unwrap());
        assert!(!in_im_coboundary_oracle(&g, &one(&g, 6, &[0, 1, 0]), ORACLE_CAP).unwrap());
        assert_eq!(
            in_im_coboundary_oracle(&g, &one(&g, 6, &[0, 1, 0]), 5),
            Err(CochainError::OracleCapExceeded { required: 6, cap: 5 })
        );
    }

    #[test]
    fn length_mismatch_is_reported() {
        let g = StableGraph::theta();
        assert!(OneCochain::from_values(&g, lv(5), &[1, 2]).is_err());
        let other = StableGraph::banana(4);
        let b = one(&other, 5, &[1, 2, 3, 4]);
        assert_eq!(
            boundary(&g, &b),
            Err(CochainError::LengthMismatch { expected: 3, got: 4 })
        );
    }

    #[test]
    fn reversed_reading_is_negation() {
        let g = StableGraph::banana(4);
        let b = one(&g, 7, &[0, 3, 6, 1]);
        for i in 0..4 {
            let fwd = b.oriented(i, Direction::Forward).value();
            let rev = b.oriented(i, Direction::Reverse).value();
            assert_eq!(rev, if fwd == 0 { 0 } else { 7 - fwd });
        }
    }
}
