//! Independent oracles for reduction, rank and Riemann-Roch.

use matroid_divisors::chip_firing::{dhar_reduce, is_q_reduced, rank, rr_check, Divisor, MultiGraph};
use matroid_divisors::matroid::{fano, u34};
use matroid_divisors::matroid_divisor::{levi_graph, matroid_divisor};
use proptest::prelude::*;

/// Greedy borrowing: `d` is equivalent to an effective divisor unless every
/// vertex ends up having borrowed.
fn effective_equivalent(g: &MultiGraph, d: &[i64]) -> bool {
    let mut d = d.to_vec();
    let mut borrowed = vec![false; d.len()];
    loop {
        let Some(v) = (0..d.len()).find(|&v| d[v] < 0) else { return true };
        if borrowed.iter().all(|&b| b) {
            return false;
        }
        d[v] += g.degree(v);
        for &(u, m) in g.neighbors(v) {
            d[u] -= m as i64;
        }
        borrowed[v] = true;
    }
}

/// Multisets of size `k` over `0..n`, as nondecreasing sequences.
fn multisets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == k {
        return out(cur);
    }
    for v in start..n {
        cur.push(v);
        let go_on = multisets(n, k, v, cur, out);
        cur.pop();
        if !go_on {
            return false;
        }
    }
    true
}

fn oracle_rank(g: &MultiGraph, d: &[i64]) -> i64 {
    if !effective_equivalent(g, d) {
        return -1;
    }
    let mut r = 0;
    loop {
        let k = r as usize + 1;
        let all = multisets(g.len(), k, 0, &mut Vec::new(), &mut |e| {
            let mut x = d.to_vec();
            for &v in e {
                x[v] -= 1;
            }
            effective_equivalent(g, &x)
        });
        if !all {
            return r;
        }
        r += 1;
    }
}

/// Brute force over all vertex sets avoiding `q`.
fn oracle_q_reduced(g: &MultiGraph, d: &[i64], q: usize) -> bool {
    let n = g.len();
    if (0..n).any(|v| v != q && d[v] < 0) {
        return false;
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != q).collect();
    for mask in 1u32..(1 << others.len()) {
        let set: Vec<usize> = others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        let legal = set.iter().all(|&v| {
            let out: i64 = g.neighbors(v).iter().filter(|(u, _)| !set.contains(u)).map(|&(_, m)| m as i64).sum();
            d[v] >= out
        });
        if legal {
            return false;
        }
    }
    true
}

fn graph_strategy() -> impl Strategy<Value = MultiGraph> {
    (3usize..=6)
        .prop_flat_map(|n| {
            let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
            let extra = proptest::collection::vec((0..n, 0..n), 0..=4);
            (Just(n), tree, extra)
        })
        .prop_map(|(n, tree, extra)| {
            let mut edges: Vec<(usize, usize)> = tree.iter().enumerate().map(|(i, ix)| (ix.index(i + 1), i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b));
            let names = (0..n).map(|v| format!("v{v}")).collect();
            MultiGraph::from_indices(names, &edges).unwrap()
        })
}

fn graph_and_divisor() -> impl Strategy<Value = (MultiGraph, Vec<i64>)> {
    graph_strategy().prop_flat_map(|g| {
        let n = g.len();
        (Just(g), proptest::collection::vec(-2i64..=3, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn rank_matches_brute_force((g, d) in graph_and_divisor()) {
        prop_assume!(d.iter().sum::<i64>() <= 7);
        let lib = rank(&g, &Divisor::from_coeffs(d.clone())).unwrap();
        prop_assert_eq!(lib, oracle_rank(&g, &d));
    }

    #[test]
    fn reduction_is_reduced_and_equivalent((g, d) in graph_and_divisor(), q in any::<prop::sample::Index>()) {
        let q = q.index(g.len());
        let start = Divisor::from_coeffs(d);
        let red = dhar_reduce(&g, &start, q);
        prop_assert_eq!(red.divisor.degree(), start.degree());
        prop_assert_eq!(red.replay(&g, &start), red.divisor.clone());
        prop_assert!(oracle_q_reduced(&g, red.divisor.coeffs(), q));
        prop_assert!(is_q_reduced(&g, &red.divisor, q));
        // Reduction is idempotent.
        prop_assert_eq!(dhar_reduce(&g, &red.divisor, q).divisor, red.divisor);
    }

    #[test]
    fn riemann_roch_on_random_graphs((g, d) in graph_and_divisor()) {
        prop_assert!(rr_check(&g, &Divisor::from_coeffs(d)).unwrap());
    }
}

#[test]
fn levi_divisors_have_rank_two_by_brute_force() {
    for m in [fano(), u34()] {
        let lg = levi_graph(&m);
        let d = matroid_divisor(&m);
        assert_eq!(oracle_rank(&lg.graph, d.coeffs()), 2);
        assert_eq!(rank(&lg.graph, &d).unwrap(), 2);
    }
}

#[test]
fn complete_graph_ranks() {
    let k3 = MultiGraph::complete(3);
    for d in [[0, 0, 0], [1, 0, 0], [1, 1, 0], [2, 0, 0], [-1, 1, 1], [2, 2, -1]] {
        assert_eq!(rank(&k3, &Divisor::from_coeffs(d.to_vec())).unwrap(), oracle_rank(&k3, &d), "{d:?}");
    }
}
