//! Graph automorphisms and canonical forms for small stable graphs.
//!
//! Vertices are first split into classes by `(genus, valence, loop count)`;
//! only relabellings that respect the classes are tried.

use std::collections::BTreeMap;

use crate::cochain::OneCochain;
use crate::criterion::Twist;
use crate::graph::{Edge, Multigraph, StableGraph, Vertex};

/// How an automorphism moves edges: edge `i` goes to `target[i]`,
/// reversed when `flip[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMap {
    pub target: Vec<usize>,
    pub flip: Vec<bool>,
}

impl EdgeMap {
    /// Image of `(M, a)`: values move along `target`; `M` changes sign on
    /// flipped edges, `a` does not.
    pub fn apply(&self, m: &[u64], a: &[u64], level: u64) -> (Vec<u64>, Vec<u64>) {
        let mut m2 = vec![0; m.len()];
        let mut a2 = vec![0; a.len()];
        for i in 0..m.len() {
            let j = self.target[i];
            m2[j] = if self.flip[i] { (level - m[i]) % level } else { m[i] };
            a2[j] = a[i];
        }
        (m2, a2)
    }
}

fn vertex_invariants(g: &Multigraph) -> Vec<(u32, usize, usize)> {
    let val = g.valences();
    let mut loops = vec![0; g.vertex_count()];
    for i in 0..g.edge_count() {
        let (t, h) = g.endpoints(i);
        if t == h {
            loops[t] += 1;
        }
    }
    (0..g.vertex_count())
        .map(|v| (g.vertices()[v].genus, val[v], loops[v]))
        .collect()
}

/// Calls `f` with every bijection `perm` from vertices to slots such that
/// `slot_inv[perm[v]] == inv[v]`. Stops early when `f` returns false.
fn for_each_matching_perm(
    inv: &[(u32, usize, usize)],
    slot_inv: &[(u32, usize, usize)],
    mut f: impl FnMut(&[usize]) -> bool,
) {
    let n = inv.len();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn rec(
        v: usize,
        inv: &[(u32, usize, usize)],
        slot_inv: &[(u32, usize, usize)],
        perm: &mut [usize],
        used: &mut [bool],
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if v == inv.len() {
            return f(perm);
        }
        for p in 0..slot_inv.len() {
            if !used[p] && slot_inv[p] == inv[v] {
                used[p] = true;
                perm[v] = p;
                let go = rec(v + 1, inv, slot_inv, perm, used, f);
                used[p] = false;
                if !go {
                    return false;
                }
            }
        }
        true
    }
    rec(0, inv, slot_inv, &mut perm, &mut used, &mut f);
}

/// Relabellings onto slots ordered by invariant (`perm[v]` = new label of `v`).
fn for_each_relabelling(g: &Multigraph, f: impl FnMut(&[usize]) -> bool) {
    let inv = vertex_invariants(g);
    let mut slot_inv = inv.clone();
    slot_inv.sort_unstable();
    for_each_matching_perm(&inv, &slot_inv, f);
}

/// Invariant-respecting vertex permutations (`perm[v]` = image of `v`).
fn for_each_vertex_perm(g: &Multigraph, f: impl FnMut(&[usize]) -> bool) {
    let inv = vertex_invariants(g);
    for_each_matching_perm(&inv, &inv, f);
}

/// Canonical key of a multigraph with genus: the smallest
/// `(genus by position, sorted endpoint pairs)` over class-respecting relabellings.
pub type CanonicalKey = (Vec<u32>, Vec<(usize, usize)>);

pub fn canonical_key(g: &Multigraph) -> CanonicalKey {
    let mut best: Option<CanonicalKey> = None;
    for_each_relabelling(g, |perm| {
        let mut genus = vec![0; perm.len()];
        for (v, &p) in perm.iter().enumerate() {
            genus[p] = g.vertices()[v].genus;
        }
        let mut pairs: Vec<(usize, usize)> = (0..g.edge_count())
            .map(|i| {
                let (t, h) = g.endpoints(i);
                let (a, b) = (perm[t], perm[h]);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        let key = (genus, pairs);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        true
    });
    best.expect("at least the identity permutation")
}

/// Build the graph a canonical key describes: vertex ids `0..n`, edge ids
/// `1..=e` in key order, each oriented from the smaller endpoint.
pub fn graph_from_key(key: &CanonicalKey) -> Multigraph {
    let vertices = key
        .0
        .iter()
        .enumerate()
        .map(|(i, &genus)| Vertex { id: i as u32, genus })
        .collect();
    let edges = key
        .1
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| Edge {
            id: i as u32 + 1,
            tail: a as u32,
            head: b as u32,
        })
        .collect();
    Multigraph::new(vertices, edges).expect("canonical keys are well formed")
}

pub fn are_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && canonical_key(a) == canonical_key(b)
}

/// All automorphisms as edge maps, up to `cap` of them (`None` past the cap).
pub fn automorphisms(graph: &StableGraph, cap: usize) -> Option<Vec<EdgeMap>> {
    let g = graph.multigraph();
    let mut out = Vec::new();
    let mut overflow = false;
    // edges grouped by unordered positional endpoint pair
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for i in 0..g.edge_count() {
        let (t, h) = g.endpoints(i);
        classes.entry((t.min(h), t.max(h))).or_default().push(i);
    }
    for_each_vertex_perm(g, |perm| {
        // every class must land on a class of the same size
        let mut pairing = Vec::new();
        for (&(u, v), members) in &classes {
            let (a, b) = (perm[u], perm[v]);
            let Some(image) = classes.get(&(a.min(b), a.max(b))).cloned() else {
                return true;
            };
            if image.len() != members.len() {
                return true;
            }
            pairing.push((members.clone(), image));
        }
        let mut map = EdgeMap {
            target: vec![0; g.edge_count()],
            flip: vec![false; g.edge_count()],
        };
        extend_pairings(g, perm, &pairing, 0, &mut map, &mut |m| {
            if out.len() >= cap {
                overflow = true;
                return false;
            }
            out.push(m.clone());
            true
        })
    });
    (!overflow).then_some(out)
}

fn extend_pairings(
    g: &Multigraph,
    perm: &[usize],
    pairing: &[(Vec<usize>, Vec<usize>)],
    idx: usize,
    map: &mut EdgeMap,
    emit: &mut dyn FnMut(&EdgeMap) -> bool,
) -> bool {
    if idx == pairing.len() {
        return emit(map);
    }
    let (from, to) = &pairing[idx];
    let mut order: Vec<usize> = (0..to.len()).collect();
    let mut go = true;
    permute(&mut order, 0, &mut |ord| {
        // loops may be mapped either way round
        let loop_count = from.iter().filter(|&&e| g.endpoints(e).0 == g.endpoints(e).1).count();
        for mask in 0..(1u64 << loop_count) {
            let mut bit = 0;
            for (k, &e) in from.iter().enumerate() {
                let f = to[ord[k]];
                map.target[e] = f;
                let (t, h) = g.endpoints(e);
                map.flip[e] = if t == h {
                    let flip = mask >> bit & 1 == 1;
                    bit += 1;
                    flip
                } else {
                    perm[t] != g.endpoints(f).0
                };
            }
            if !extend_pairings(g, perm, pairing, idx + 1, map, emit) {
                go = false;
                return false;
            }
        }
        true
    });
    go
}

fn permute(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return f(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        let go = permute(items, k + 1, f);
        items.swap(k, i);
        if !go {
            return false;
        }
    }
    true
}

/// Smallest image of `(M, a)` under the given automorphisms.
pub fn canonical_decoration(maps: &[EdgeMap], m: &OneCochain, a: &Twist) -> (Vec<u64>, Vec<u64>) {
    let level = m.level().get();
    let (m0, a0) = (m.raw(), a.raw());
    maps.iter()
        .map(|map| map.apply(&m0, &a0, level))
        .min()
        .unwrap_or((m0, a0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::Level;

    #[test]
    fn banana_automorphism_counts() {
        // two vertex swaps times k! edge permutations
        assert_eq!(automorphisms(&StableGraph::theta(), 1000).unwrap().len(), 12);
        assert_eq!(automorphisms(&StableGraph::banana(4), 1000).unwrap().len(), 48);
        assert!(automorphisms(&StableGraph::banana(4), 10).is_none());
    }

    #[test]
    fn loop_flips_count() {
        let g = StableGraph::new(vec![Vertex { id: 0, genus: 1 }], vec![Edge { id: 1, tail: 0, head: 0 }]).unwrap();
        assert_eq!(automorphisms(&g, 100).unwrap().len(), 2);
    }

    #[test]
    fn automorphisms_preserve_ker_boundary() {
        let g = StableGraph::theta();
        let l = Level::new(7).unwrap();
        let maps = automorphisms(&g, 1000).unwrap();
        for c in 0..49i64 {
            let m = crate::cochain::OneCochain::from_values(&g, l, &[c % 7, c % 7 + c / 7, c / 7]).unwrap();
            assert!(crate::cochain::in_ker_boundary(&g, &m).unwrap());
            for map in &maps {
                let (m2, _) = map.apply(&m.raw(), &[0, 0, 0], 7);
                let m2: Vec<i64> = m2.iter().map(|&x| x as i64).collect();
                let img = crate::cochain::OneCochain::from_values(&g, l, &m2).unwrap();
                assert!(crate::cochain::in_ker_boundary(&g, &img).unwrap(), "{map:?}");
            }
        }
    }

    #[test]
    fn canonical_key_detects_isomorphism() {
        let a = Multigraph::new(
            vec![Vertex { id: 5, genus: 1 }, Vertex { id: 2, genus: 0 }],
            vec![Edge { id: 1, tail: 5, head: 2 }, Edge { id: 2, tail: 2, head: 2 }],
        )
        .unwrap();
        let b = Multigraph::new(
            vec![Vertex { id: 0, genus: 0 }, Vertex { id: 1, genus: 1 }],
            vec![Edge { id: 9, tail: 0, head: 0 }, Edge { id: 3, tail: 0, head: 1 }],
        )
        .unwrap();
        let c = Multigraph::new(
            vec![Vertex { id: 0, genus: 0 }, Vertex { id: 1, genus: 1 }],
            vec![Edge { id: 9, tail: 1, head: 1 }, Edge { id: 3, tail: 0, head: 1 }],
        )
        .unwrap();
        assert!(are_isomorphic(&a, &b));
        assert!(!are_isomorphic(&a, &c));
        assert!(are_isomorphic(&graph_from_key(&canonical_key(&a)), &a));
    }
}
