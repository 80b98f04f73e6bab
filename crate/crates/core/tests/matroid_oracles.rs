//! Brute-force checks of enumeration, isomorphism and the numerology.

use std::collections::BTreeSet;

use matroid_divisors::matroid::{by_name, canonical_form, enumerate_rank3_simple, is_isomorphic, Matroid};
use matroid_divisors::matroid_divisor::{brill_noether_rho, genus, rho_matroid, rr_threshold};

type Flats = Vec<Vec<usize>>;

/// Every way to cover the pairs of `0..n` by blocks, each pair exactly once.
fn linear_spaces(n: usize) -> Vec<Flats> {
    fn go(n: usize, covered: &mut Vec<bool>, flats: &mut Flats, out: &mut Vec<Flats>) {
        let Some((a, b)) = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| !covered[a * n + b])
        else {
            out.push(flats.clone());
            return;
        };
        // Elements that could join the block through a and b.
        let cand: Vec<usize> =
            (b + 1..n).filter(|&c| !covered[a * n + c] && !covered[b * n + c]).collect();
        for mask in 0u32..(1 << cand.len()) {
            let mut block = vec![a, b];
            block.extend(cand.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c));
            let pairs: Vec<(usize, usize)> = block
                .iter()
                .enumerate()
                .flat_map(|(i, &x)| block[i + 1..].iter().map(move |&y| (x, y)))
                .collect();
            if pairs.iter().any(|&(x, y)| covered[x * n + y]) {
                continue;
            }
            for &(x, y) in &pairs {
                covered[x * n + y] = true;
            }
            flats.push(block);
            go(n, covered, flats, out);
            flats.pop();
            for &(x, y) in &pairs {
                covered[x * n + y] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut vec![false; n * n], &mut Vec::new(), &mut out);
    out.retain(|f| f.len() >= 2);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least relabeling of the flat set.
fn brute_canonical(flats: &Flats, perms: &[Vec<usize>]) -> Flats {
    perms
        .iter()
        .map(|p| {
            let mut f: Flats = flats
                .iter()
                .map(|b| {
                    let mut b: Vec<usize> = b.iter().map(|&e| p[e]).collect();
                    b.sort_unstable();
                    b
                })
                .collect();
            f.sort();
            f
        })
        .min()
        .unwrap()
}

fn to_flats(m: &Matroid) -> Flats {
    m.flats().to_vec()
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 3..=6 {
        let perms = permutations(n);
        let brute: BTreeSet<Flats> = linear_spaces(n).iter().map(|f| brute_canonical(f, &perms)).collect();
        let lib = enumerate_rank3_simple(n).unwrap();
        let lib_set: BTreeSet<Flats> = lib.iter().map(|m| brute_canonical(&to_flats(m), &perms)).collect();
        assert_eq!(lib.len(), lib_set.len(), "n = {n}: duplicates in enumeration");
        assert_eq!(lib_set, brute, "n = {n}");
    }
}

#[test]
fn enumeration_counts() {
    // Nontrivial linear spaces on n points, n = 3..8.
    let want = [1, 2, 4, 9, 23, 68];
    for (n, &w) in (3..=8).zip(&want) {
        assert_eq!(enumerate_rank3_simple(n).unwrap().len(), w, "n = {n}");
    }
}

#[test]
fn canonical_form_is_an_isomorphism_invariant() {
    let perms = permutations(6);
    for m in enumerate_rank3_simple(6).unwrap() {
        let c = canonical_form(&m).unwrap();
        for p in perms.iter().step_by(37) {
            let q = m.permuted(p);
            assert_eq!(canonical_form(&q).unwrap(), c);
            assert!(is_isomorphic(&m, &q));
        }
    }
}

#[test]
fn numerology_is_consistent() {
    for name in ["fano", "non_fano", "u34", "u2ext:6", "five_point", "four_lines", "two_flat:2,3", "pg2:3"] {
        let m = by_name(name).unwrap();
        let c = m.counts();
        let flags: usize = m.flats().iter().map(Vec::len).sum();
        assert_eq!(c.m, flags, "{name}");
        assert_eq!(genus(&m), c.m as i64 - c.n as i64 - c.l as i64 + 1);
        assert_eq!(rho_matroid(&m), brill_noether_rho(genus(&m), 2, c.n as i64), "{name}");
        assert_eq!(rr_threshold(&m), c.m as i64 - 2 * c.n as i64 + 1);
    }
}
