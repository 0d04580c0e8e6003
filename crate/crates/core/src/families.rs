//! Graph families searched by the classifier.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Multigraph, StableGraph, Vertex};
use crate::symmetry::{canonical_key, graph_from_key, CanonicalKey};

pub const DEFAULT_GENUS_CAP: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFamily {
    /// The `k`-edge banana graph for each edge count `k`.
    Banana,
    /// Every connected stable multigraph with the given edge count and
    /// vertex genus at most `genus_cap`, up to isomorphism.
    AllStable { genus_cap: u32 },
    /// Caller-supplied graphs, grouped by edge count.
    Explicit(Vec<StableGraph>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Banana,
    AllStable,
    Explicit,
}

impl GraphFamily {
    pub fn kind(&self) -> FamilyKind {
        match self {
            GraphFamily::Banana => FamilyKind::Banana,
            GraphFamily::AllStable { .. } => FamilyKind::AllStable,
            GraphFamily::Explicit(_) => FamilyKind::Explicit,
        }
    }

    pub fn graphs_with_edges(&self, edges: usize) -> Vec<StableGraph> {
        match self {
            GraphFamily::Banana if edges == 0 => Vec::new(),
            GraphFamily::Banana => vec![StableGraph::banana(edges)],
            GraphFamily::AllStable { genus_cap } => all_stable_graphs(edges, *genus_cap),
            GraphFamily::Explicit(gs) => gs.iter().filter(|g| g.edge_count() == edges).cloned().collect(),
        }
    }
}

/// Connected stable multigraphs with exactly `edges` edges and vertex genus
/// in `0..=genus_cap`, one per isomorphism class, sorted by canonical key.
pub fn all_stable_graphs(edges: usize, genus_cap: u32) -> Vec<StableGraph> {
    let mut shapes: BTreeSet<CanonicalKey> = BTreeSet::new();
    for n in 1..=edges + 1 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let mut pick = vec![0usize; edges];
        for_each_multiset(pairs.len(), edges, 0, &mut pick, 0, &mut |chosen| {
            let graph = shape(n, chosen.iter().map(|&p| pairs[p]));
            if graph.is_connected() {
                shapes.insert(canonical_key(&graph));
            }
        });
    }

    let mut out: BTreeSet<CanonicalKey> = BTreeSet::new();
    for (blank, pairs) in shapes {
        let n = blank.len();
        let bare = shape(n, pairs.iter().copied());
        let val = bare.valences();
        // a genus-0 vertex needs valence at least 3
        let floor: Vec<u32> = val.iter().map(|&v| if v >= 3 { 0 } else if v >= 1 { 1 } else { 2 }).collect();
        if floor.iter().any(|&f| f > genus_cap) {
            continue;
        }
        let mut genus = floor.clone();
        loop {
            let g = with_genus(&bare, &genus);
            out.insert(canonical_key(&g));
            // odometer over genus assignments at or above the floor
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                genus[i] += 1;
                if genus[i] <= genus_cap {
                    break;
                }
                genus[i] = floor[i];
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    out.iter()
        .map(|k| StableGraph::try_from(graph_from_key(k)).expect("generated graphs are stable"))
        .collect()
}

fn shape(n: usize, pairs: impl Iterator<Item = (usize, usize)>) -> Multigraph {
    let vertices = (0..n as u32).map(|id| Vertex { id, genus: 0 }).collect();
    let edges = pairs
        .enumerate()
        .map(|(i, (a, b))| Edge {
            id: i as u32 + 1,
            tail: a as u32,
            head: b as u32,
        })
        .collect();
    Multigraph::new(vertices, edges).expect("positional graph is well formed")
}

fn with_genus(bare: &Multigraph, genus: &[u32]) -> Multigraph {
    let vertices = bare
        .vertices()
        .iter()
        .zip(genus)
        .map(|(v, &g)| Vertex { id: v.id, genus: g })
        .collect();
    Multigraph::new(vertices, bare.edges().to_vec()).expect("same shape")
}

/// Nondecreasing sequences of length `k` over `0..n`.
fn for_each_multiset(
    n: usize,
    k: usize,
    start: usize,
    pick: &mut Vec<usize>,
    depth: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    if depth == k {
        f(pick);
        return;
    }
    for p in start..n {
        pick[depth] = p;
        for_each_multiset(n, k, p, pick, depth + 1, f);
    }
}
