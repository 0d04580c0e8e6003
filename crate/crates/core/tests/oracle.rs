//! The circuit test for `Im δ` and the `Ker ∂` enumeration against brute force.

use junior_ghost::battery::{random_cochain, random_stable_graph};
use junior_ghost::cochain::{in_im_coboundary, in_im_coboundary_oracle, in_ker_boundary, CochainError, ORACLE_CAP};
use junior_ghost::search::enumerate_multiplicities;
use junior_ghost::{Level, OneCochain, StableGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_cochains(g: &StableGraph, level: Level) -> impl Iterator<Item = OneCochain> + '_ {
    let l = level.get() as i64;
    let e = g.edge_count() as u32;
    (0..l.pow(e)).map(move |mut code| {
        let mut v = vec![0i64; e as usize];
        for slot in v.iter_mut() {
            *slot = code % l;
            code /= l;
        }
        OneCochain::from_values(g, level, &v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn circuit_test_matches_oracle(seed in any::<u64>(), l in 2u64..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_stable_graph(&mut rng, 4, 6);
        let level = Level::new(l).unwrap();
        let b = random_cochain(&mut rng, &g, level);
        prop_assert_eq!(
            in_im_coboundary(&g, &b).unwrap(),
            in_im_coboundary_oracle(&g, &b, ORACLE_CAP).unwrap()
        );
    }
}

#[test]
fn theta_level_twelve_exhaustive() {
    let g = StableGraph::theta();
    let level = Level::new(12).unwrap();
    let mut in_image = 0;
    for b in all_cochains(&g, level) {
        let fast = in_im_coboundary(&g, &b).unwrap();
        assert_eq!(fast, in_im_coboundary_oracle(&g, &b, ORACLE_CAP).unwrap(), "{:?}", b.raw());
        in_image += fast as usize;
    }
    assert_eq!(in_image, 12);
}

#[test]
fn image_and_kernel_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs = vec![StableGraph::theta(), StableGraph::banana(4)];
    graphs.extend((0..30).map(|_| random_stable_graph(&mut rng, 4, 5)));
    for g in &graphs {
        for l in [2u64, 3, 4] {
            let level = Level::new(l).unwrap();
            let (mut ker, mut im) = (0u64, 0u64);
            for b in all_cochains(g, level) {
                ker += in_ker_boundary(g, &b).unwrap() as u64;
                im += in_im_coboundary(g, &b).unwrap() as u64;
            }
            assert_eq!(ker, l.pow(g.betti_number() as u32));
            assert_eq!(im, l.pow(g.vertex_count() as u32 - 1));

            let listed: Vec<_> = enumerate_multiplicities(g, level, u64::MAX).unwrap().collect();
            assert_eq!(listed.len() as u64, ker);
            assert!(listed.iter().all(|m| in_ker_boundary(g, m).unwrap()));
            let distinct: std::collections::BTreeSet<_> = listed.iter().map(|m| m.raw()).collect();
            assert_eq!(distinct.len(), listed.len());
        }
    }
}

#[test]
fn oracle_refuses_beyond_cap() {
    let g = StableGraph::theta();
    let b = OneCochain::zero(&g, Level::new(50).unwrap());
    assert!(matches!(
        in_im_coboundary_oracle(&g, &b, 10),
        Err(CochainError::OracleCapExceeded { required: 50, cap: 10 })
    ));
}

#[test]
fn oracle_examples() {
    let g = StableGraph::theta();
    let l6 = Level::new(6).unwrap();
    let b = OneCochain::from_values(&g, l6, &[0, 1, 0]).unwrap();
    assert!(!in_im_coboundary_oracle(&g, &b, ORACLE_CAP).unwrap());
    let b = OneCochain::from_values(&g, l6, &[1, 5, 1]).unwrap();
    assert!(in_im_coboundary_oracle(&g, &b, ORACLE_CAP).unwrap());
}
