//! Verdicts must not depend on edge orientation, labels or spanning tree.

use junior_ghost::battery::{random_cochain, random_stable_graph};
use junior_ghost::cochain::{in_im_coboundary, in_im_coboundary_with};
use junior_ghost::criterion::{evaluate_checks, Checks};
use junior_ghost::search::{search_graph, SearchConfig};
use junior_ghost::{Edge, Level, OneCochain, StableGraph, SupportPolicy, Twist, Vertex};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn checks(g: &StableGraph, m: &[i64], a: &[i64], level: Level) -> Checks {
    let m = OneCochain::from_values(g, level, m).unwrap();
    let a = Twist::from_values(g, level, a).unwrap();
    evaluate_checks(g, &m, &a).unwrap()
}

/// A decorated graph whose multiplicity is usually in `Ker ∂`, so the later
/// checks are exercised too.
fn instance(seed: u64, l: u64) -> (StableGraph, Level, Vec<i64>, Vec<i64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_stable_graph(&mut rng, 4, 5);
    let level = Level::new(l).unwrap();
    let ms: Vec<_> = junior_ghost::search::enumerate_multiplicities(&g, level, u64::MAX).unwrap().collect();
    let m = if rng.gen_bool(0.8) {
        ms.choose(&mut rng).unwrap().raw()
    } else {
        random_cochain(&mut rng, &g, level).raw()
    };
    let a: Vec<i64> = (0..g.edge_count()).map(|_| rng.gen_range(0..l as i64)).collect();
    (g, level, m.into_iter().map(|x| x as i64).collect(), a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reversing_an_edge_preserves_checks(seed in any::<u64>(), l in 2u64..=9, pick in any::<prop::sample::Index>()) {
        let (g, level, m, a) = instance(seed, l);
        let i = pick.index(g.edge_count());
        let mut edges = g.edges().to_vec();
        let e = edges[i];
        edges[i] = Edge { id: e.id, tail: e.head, head: e.tail };
        let flipped = StableGraph::new(g.vertices().to_vec(), edges).unwrap();
        let mut m2 = m.clone();
        m2[i] = -m2[i];
        prop_assert_eq!(checks(&g, &m, &a, level), checks(&flipped, &m2, &a, level));
    }

    #[test]
    fn relabelling_preserves_checks(seed in any::<u64>(), l in 2u64..=9) {
        let (g, level, m, a) = instance(seed, l);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let n = g.vertex_count();
        let mut vnames: Vec<u32> = (0..n as u32).map(|x| 10 * x + 3).collect();
        vnames.shuffle(&mut rng);
        let rename = |id: u32| vnames[g.vertices().iter().position(|v| v.id == id).unwrap()];
        let vertices: Vec<Vertex> = g.vertices().iter().map(|v| Vertex { id: rename(v.id), genus: v.genus }).collect();
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.shuffle(&mut rng);
        let edges: Vec<Edge> = order
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let e = g.edges()[i];
                Edge { id: 100 + k as u32, tail: rename(e.tail), head: rename(e.head) }
            })
            .collect();
        let h = StableGraph::new(vertices, edges).unwrap();
        let m2: Vec<i64> = order.iter().map(|&i| m[i]).collect();
        let a2: Vec<i64> = order.iter().map(|&i| a[i]).collect();
        prop_assert_eq!(checks(&g, &m, &a, level), checks(&h, &m2, &a2, level));
    }

    #[test]
    fn spanning_tree_choice_is_irrelevant(seed in any::<u64>(), l in 2u64..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_stable_graph(&mut rng, 4, 6);
        let level = Level::new(l).unwrap();
        let b = random_cochain(&mut rng, &g, level);
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.shuffle(&mut rng);
        let tree = g.spanning_tree_with_order(&order).unwrap();
        let circuits = g.circuits_for_tree(&tree).unwrap();
        prop_assert_eq!(circuits.len(), g.betti_number());
        prop_assert!(circuits.iter().all(|c| c.is_closed_in(g.multigraph())));
        prop_assert_eq!(in_im_coboundary_with(&g, &b, &circuits).unwrap(), in_im_coboundary(&g, &b).unwrap());
    }
}

#[test]
fn witness_counts_survive_reorientation() {
    let theta = StableGraph::theta();
    let flipped = StableGraph::new(
        theta.vertices().to_vec(),
        theta.edges().iter().map(|e| Edge { id: e.id, tail: 0, head: 1 }).collect(),
    )
    .unwrap();
    for l in [5u64, 8, 9, 12] {
        for policy in [SupportPolicy::Full, SupportPolicy::Any] {
            let config = SearchConfig::default().with_support(policy);
            let a = search_graph(&theta, Level::new(l).unwrap(), &config).unwrap();
            let b = search_graph(&flipped, Level::new(l).unwrap(), &config).unwrap();
            assert_eq!(a.len(), b.len(), "level {l} {policy}");
            let ages = |ws: &[junior_ghost::GhostWitness]| {
                let mut v: Vec<_> = ws.iter().map(|w| w.age).collect();
                v.sort();
                v
            };
            assert_eq!(ages(&a), ages(&b));
        }
    }
}

#[test]
fn search_is_deterministic_across_worker_counts() {
    let g = StableGraph::banana(4);
    let level = Level::new(12).unwrap();
    let par = search_graph(&g, level, &SearchConfig::default()).unwrap();
    let seq = search_graph(&g, level, &SearchConfig::default().sequential()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let three = pool.install(|| search_graph(&g, level, &SearchConfig::default()).unwrap());
    assert_eq!(par, seq);
    assert_eq!(par, three);
    let first_par = search_graph(&g, level, &SearchConfig::default().first_only()).unwrap();
    let first_seq = search_graph(&g, level, &SearchConfig::default().first_only().sequential()).unwrap();
    assert_eq!(first_par, first_seq);
    assert_eq!(first_par[0], par[0]);
}
