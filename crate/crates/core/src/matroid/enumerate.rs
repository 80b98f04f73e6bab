//! Isomorphism testing, canonical forms and exhaustive enumeration of
//! small rank-3 simple matroids (linear spaces with at least two lines).

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::Matroid;

/// Largest `n` accepted by [`enumerate_rank3_simple`].
pub const MAX_ENUMERATION_SIZE: usize = 8;

/// Largest `n` accepted by [`canonical_form`].
const MAX_CANONICAL_SIZE: usize = 12;

/// Per-element invariant: sizes of the flats through it, descending.
fn element_invariants(n: usize, lines: &[u32]) -> Vec<Vec<u32>> {
    (0..n)
        .map(|e| {
            let mut sizes: Vec<u32> = lines
                .iter()
                .filter(|&&l| l >> e & 1 == 1)
                .map(|l| l.count_ones())
                .collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            sizes
        })
        .collect()
}

fn apply(perm: &[usize], line: u32) -> u32 {
    let mut out = 0;
    let mut l = line;
    while l != 0 {
        let e = l.trailing_zeros() as usize;
        out |= 1 << perm[e];
        l &= l - 1;
    }
    out
}

/// Lexicographically least sorted line list over all relabelings that
/// respect the element-invariant partition.
fn canonical_masks(n: usize, lines: &[u32]) -> Vec<u32> {
    let inv = element_invariants(n, lines);
    let mut classes: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    for e in order {
        match classes.last_mut() {
            Some((key, members)) if *key == inv[e] => members.push(e),
            _ => classes.push((inv[e].clone(), vec![e])),
        }
    }
    let blocks: Vec<Vec<usize>> = classes.into_iter().map(|(_, m)| m).collect();

    let slots: Vec<usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(b, members)| std::iter::repeat_n(b, members.len()))
        .collect();

    fn rec(
        pos: usize,
        slots: &[usize],
        blocks: &[Vec<usize>],
        used: &mut [bool],
        perm: &mut [usize],
        lines: &[u32],
        scratch: &mut Vec<u32>,
        best: &mut Option<Vec<u32>>,
    ) {
        if pos == slots.len() {
            scratch.clear();
            scratch.extend(lines.iter().map(|&l| apply(perm, l)));
            scratch.sort_unstable();
            if best.as_ref().is_none_or(|b| scratch.as_slice() < b.as_slice()) {
                *best = Some(scratch.clone());
            }
            return;
        }
        for &e in &blocks[slots[pos]] {
            if used[e] {
                continue;
            }
            used[e] = true;
            perm[e] = pos;
            rec(pos + 1, slots, blocks, used, perm, lines, scratch, best);
            used[e] = false;
        }
    }

    let mut best = None;
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n];
    let mut scratch = Vec::with_capacity(lines.len());
    rec(0, &slots, &blocks, &mut used, &mut perm, lines, &mut scratch, &mut best);
    best.unwrap_or_default()
}

fn masks(m: &Matroid) -> Vec<u32> {
    m.flats().iter().map(|f| f.iter().fold(0u32, |acc, &e| acc | 1 << e)).collect()
}

/// Isomorphism-invariant encoding: flats as element bitmasks after the
/// lexicographically least admissible relabeling.
pub fn canonical_form(m: &Matroid) -> Result<Vec<u32>> {
    if m.len() > MAX_CANONICAL_SIZE {
        return Err(Error::Resource(format!(
            "canonical form supports at most {MAX_CANONICAL_SIZE} elements"
        )));
    }
    Ok(canonical_masks(m.len(), &masks(m)))
}

/// An isomorphism `a -> b` as a map from element indices of `a` to those of `b`.
pub fn isomorphism(a: &Matroid, b: &Matroid) -> Option<Vec<usize>> {
    if a.counts() != b.counts() {
        return None;
    }
    let n = a.len();
    let sig = |m: &Matroid| -> Vec<Vec<usize>> {
        (0..n)
            .map(|e| {
                let mut s: Vec<usize> = m.flats_through(e).iter().map(|&f| m.flats()[f].len()).collect();
                s.sort_unstable();
                s
            })
            .collect()
    };
    let (sa, sb) = (sig(a), sig(b));
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    // Rarest invariant first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| (sa.iter().filter(|s| **s == sa[e]).count(), e));

    fn rec(
        depth: usize,
        order: &[usize],
        a: &Matroid,
        b: &Matroid,
        sa: &[Vec<usize>],
        sb: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in 0..b.len() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            let consistent = (0..depth).all(|i| {
                let u = order[i];
                (0..i).all(|j| {
                    let v = order[j];
                    a.is_basis_idx(x, u, v) == b.is_basis_idx(y, map[u], map[v])
                })
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if rec(depth + 1, order, a, b, sa, sb, map, used) {
                return true;
            }
            used[y] = false;
        }
        false
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    rec(0, &order, a, b, &sa, &sb, &mut map, &mut used).then_some(map)
}

pub fn is_isomorphic(a: &Matroid, b: &Matroid) -> bool {
    isomorphism(a, b).is_some()
}

fn from_masks(n: usize, lines: &[u32]) -> Matroid {
    let elements = (1..=n).map(|i| i.to_string()).collect();
    let flats = lines
        .iter()
        .map(|&l| (0..n).filter(|&e| l >> e & 1 == 1).collect())
        .collect();
    Matroid::from_indices(elements, flats).expect("enumerated linear space is a matroid")
}

/// Extensions of a linear space by one new point `n`: the new point joins a
/// set of pairwise disjoint existing lines and is paired with everything else.
fn extensions(n: usize, lines: &[u32], out: &mut BTreeSet<Vec<u32>>) {
    fn rec(i: usize, n: usize, lines: &[u32], chosen: &mut Vec<usize>, covered: u32, out: &mut BTreeSet<Vec<u32>>) {
        if i == lines.len() {
            let new_bit = 1u32 << n;
            let mut next: Vec<u32> = lines
                .iter()
                .enumerate()
                .map(|(j, &l)| if chosen.contains(&j) { l | new_bit } else { l })
                .collect();
            for x in 0..n {
                if covered >> x & 1 == 0 {
                    next.push(1 << x | new_bit);
                }
            }
            out.insert(canonical_masks(n + 1, &next));
            return;
        }
        rec(i + 1, n, lines, chosen, covered, out);
        if lines[i] & covered == 0 {
            chosen.push(i);
            rec(i + 1, n, lines, chosen, covered | lines[i], out);
            chosen.pop();
        }
    }
    rec(0, n, lines, &mut Vec::new(), 0, out);
}

/// All rank-3 simple matroids on `n` elements up to isomorphism, in
/// canonical-form order.
pub fn enumerate_rank3_simple(n: usize) -> Result<Vec<Matroid>> {
    if !(3..=MAX_ENUMERATION_SIZE).contains(&n) {
        return Err(Error::Argument(format!(
            "enumeration supports 3 <= n <= {MAX_ENUMERATION_SIZE}, got {n}"
        )));
    }
    // Seeds include the single-line space, which extends to genuine matroids.
    let mut classes: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0b11]]);
    for size in 2..n {
        let mut next = BTreeSet::new();
        for lines in &classes {
            extensions(size, lines, &mut next);
        }
        classes = next;
    }
    Ok(classes
        .iter()
        .filter(|lines| lines.len() >= 2)
        .map(|lines| from_masks(n, lines))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::{fano, four_lines, five_point, non_fano, two_flat, u2ext, u34};
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_rank3_simple(3).unwrap().len(), 1);
        assert_eq!(enumerate_rank3_simple(4).unwrap().len(), 2);
        assert!(enumerate_rank3_simple(2).is_err());
        assert!(enumerate_rank3_simple(9).is_err());
    }

    #[test]
    fn isomorphism_basics() {
        assert!(is_isomorphic(&two_flat(1, 3), &u2ext(5)));
        assert!(is_isomorphic(&two_flat(2, 2), &five_point()));
        assert!(!is_isomorphic(&fano(), &non_fano()));
        let perm = [3, 0, 6, 1, 5, 2, 4];
        let p = fano().permuted(&perm);
        assert!(is_isomorphic(&fano(), &p));
        assert_eq!(canonical_form(&fano()).unwrap(), canonical_form(&p).unwrap());
        assert_ne!(canonical_form(&two_flat(2, 3)).unwrap(), canonical_form(&four_lines()).unwrap());
    }

    #[test]
    fn enumeration_contains_u34() {
        let four = enumerate_rank3_simple(4).unwrap();
        assert!(four.iter().any(|m| is_isomorphic(m, &u34())));
    }
}
