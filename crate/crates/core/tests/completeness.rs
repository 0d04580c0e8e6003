//! The pruned search against naive enumeration with the conditions written
//! out by hand.

use std::collections::BTreeSet;

use junior_ghost::search::{enumerate_multiplicities, enumerate_twists, search_graph, SearchConfig};
use junior_ghost::{Level, StableGraph, SupportPolicy};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// gcd(m, l) with gcd(0, l) = l.
fn g(m: u64, l: u64) -> u64 {
    if m == 0 {
        l
    } else {
        gcd(m, l)
    }
}

fn odot(a: u64, m: u64, l: u64) -> Option<u64> {
    let d = g(m, l);
    (a % d == 0).then(|| a / d * m % l)
}

fn support_ok(a: &[u64], policy: SupportPolicy) -> bool {
    match policy {
        SupportPolicy::Full => a.iter().all(|&x| x != 0),
        SupportPolicy::Any => a.iter().any(|&x| x != 0),
    }
}

/// Theta graph, edges 1 and 3 oriented 0 -> 1 and edge 2 oriented 1 -> 0.
/// Kernel: at vertex 1, m1 - m2 + m3 = 0. A coboundary b has
/// b1 = b3 = z1 - z0 and b2 = z0 - z1.
fn naive_theta(l: u64, policy: SupportPolicy) -> BTreeSet<(Vec<u64>, Vec<u64>)> {
    let mut out = BTreeSet::new();
    for m1 in 0..l {
        for m2 in 0..l {
            for m3 in 0..l {
                if (m1 + m3 + l - m2) % l != 0 {
                    continue;
                }
                for a1 in 0..l {
                    for a2 in 0..l {
                        for a3 in 0..l {
                            let a = [a1, a2, a3];
                            let s: u64 = a.iter().sum();
                            if s == 0 || s >= l || !support_ok(&a, policy) {
                                continue;
                            }
                            let (Some(b1), Some(b2), Some(b3)) = (odot(a1, m1, l), odot(a2, m2, l), odot(a3, m3, l))
                            else {
                                continue;
                            };
                            if b1 == b3 && (b1 + b2) % l == 0 {
                                out.insert((vec![m1, m2, m3], a.to_vec()));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn theta_search_matches_naive_enumeration() {
    for l in 2..=12u64 {
        for policy in [SupportPolicy::Full, SupportPolicy::Any] {
            let found = search_graph(
                &StableGraph::theta(),
                Level::new(l).unwrap(),
                &SearchConfig::default().with_support(policy),
            )
            .unwrap();
            let got: BTreeSet<_> = found.iter().map(|w| (w.multiplicity.raw(), w.twist.raw())).collect();
            assert_eq!(got.len(), found.len());
            assert_eq!(got, naive_theta(l, policy), "level {l} {policy}");
        }
    }
}

fn naive_twists(m: &[u64], l: u64, policy: SupportPolicy) -> Vec<Vec<u64>> {
    let e = m.len() as u32;
    let mut out = Vec::new();
    for code in 0..l.pow(e) {
        let mut a = vec![0; e as usize];
        let mut c = code;
        for slot in a.iter_mut().rev() {
            *slot = c % l;
            c /= l;
        }
        let s: u64 = a.iter().sum();
        let compatible = a.iter().zip(m).all(|(&x, &y)| x % g(y, l) == 0);
        if s > 0 && s < l && compatible && support_ok(&a, policy) {
            out.push(a);
        }
    }
    out
}

#[test]
fn sum_pruning_loses_nothing() {
    let cases: Vec<(StableGraph, u64)> = (2..=9)
        .map(|l| (StableGraph::theta(), l))
        .chain((2..=6).map(|l| (StableGraph::banana(4), l)))
        .collect();
    for (graph, l) in cases {
        let level = Level::new(l).unwrap();
        for m in enumerate_multiplicities(&graph, level, u64::MAX).unwrap() {
            for policy in [SupportPolicy::Full, SupportPolicy::Any] {
                let got: Vec<Vec<u64>> = enumerate_twists(&graph, &m, policy).iter().map(|a| a.raw()).collect();
                // naive list is generated in lexicographic order too
                assert_eq!(got, naive_twists(&m.raw(), l, policy), "level {l} M={:?}", m.raw());
            }
        }
    }
}
