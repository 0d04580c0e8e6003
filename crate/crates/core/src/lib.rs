//! Exact search for junior ghost automorphisms of level-`l` curves.
//!
//! A nodal curve with a level structure is described by its stable dual
//! graph decorated with a multiplicity cochain `M` over Z/l. A ghost
//! automorphism twists each node by some `a(e)` in Z/l. This crate decides
//! when such a twist is a junior ghost, enumerates all of them on a given
//! graph, and classifies levels by the smallest number of nodes carrying one.

pub mod battery;
pub mod cochain;
pub mod constructions;
pub mod criterion;
pub mod families;
pub mod graph;
pub mod io;
pub mod reference;
pub mod report;
pub mod residue;
pub mod search;
pub mod sieve;
pub mod symmetry;
pub mod table;

pub use cochain::{OneCochain, ZeroCochain};
pub use criterion::{check_junior_ghost, GhostWitness, SupportPolicy, Twist, Verdict};
pub use graph::{Edge, EdgeId, StableGraph, Vertex, VertexId};
pub use residue::{Age, Level, Residue};
