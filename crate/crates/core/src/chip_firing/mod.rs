//! Divisor theory on finite multigraphs: chip-firing, Dhar's burning
//! algorithm, q-reduced divisors and Baker-Norine rank.

mod graph;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub use graph::{Divisor, MultiGraph};

/// Fires every vertex of `set` once, simultaneously.
pub fn fire(g: &MultiGraph, d: &Divisor, set: &[usize]) -> Divisor {
    let mut inside = vec![false; g.len()];
    for &v in set {
        inside[v] = true;
    }
    fire_mask(g, d, &inside)
}

fn fire_mask(g: &MultiGraph, d: &Divisor, inside: &[bool]) -> Divisor {
    let mut out = d.clone();
    let coeffs = out.coeffs_mut();
    for v in 0..g.len() {
        if !inside[v] {
            continue;
        }
        for &(u, m) in g.neighbors(v) {
            if !inside[u] {
                coeffs[v] -= m as i64;
                coeffs[u] += m as i64;
            }
        }
    }
    out
}

/// Reverse firing of a set: same as firing its complement.
pub fn reverse_fire(g: &MultiGraph, d: &Divisor, set: &[usize]) -> Divisor {
    let mut inside = vec![true; g.len()];
    for &v in set {
        inside[v] = false;
    }
    fire_mask(g, d, &inside)
}

/// The q-reduced representative of a divisor class together with the
/// set-firings that carry the input to it.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub divisor: Divisor,
    pub script: Vec<Vec<usize>>,
}

impl Reduction {
    /// Replays the firing script from `start`.
    pub fn replay(&self, g: &MultiGraph, start: &Divisor) -> Divisor {
        self.script.iter().fold(start.clone(), |d, set| fire(g, &d, set))
    }
}

/// Runs Dhar's burning algorithm from `q` once. Returns the unburnt set
/// (empty when everything burns).
fn unburnt(g: &MultiGraph, d: &Divisor, q: usize) -> Vec<bool> {
    let n = g.len();
    let mut burnt = vec![false; n];
    let mut fire_count = vec![0i64; n];
    let mut stack = vec![q];
    burnt[q] = true;
    while let Some(v) = stack.pop() {
        for &(u, m) in g.neighbors(v) {
            if burnt[u] {
                continue;
            }
            fire_count[u] += m as i64;
            if fire_count[u] > d.coeffs()[u] {
                burnt[u] = true;
                stack.push(u);
            }
        }
    }
    burnt.iter().map(|b| !b).collect()
}

/// True when `d` is effective away from `q` and Dhar's burn from `q`
/// consumes every vertex.
pub fn is_q_reduced(g: &MultiGraph, d: &Divisor, q: usize) -> bool {
    d.coeffs().iter().enumerate().all(|(v, &c)| v == q || c >= 0) && !unburnt(g, d, q).contains(&true)
}

/// The unique q-reduced divisor linearly equivalent to `d`.
pub fn dhar_reduce(g: &MultiGraph, d: &Divisor, q: usize) -> Reduction {
    reduce_impl(g, d, q, true)
}

fn reduce_impl(g: &MultiGraph, d: &Divisor, q: usize, record: bool) -> Reduction {
    let n = g.len();
    let mut cur = d.clone();
    let mut script = Vec::new();

    // Debt off q is repaid by borrowing (firing the complement of the
    // debtor); the least action principle bounds the number of borrows.
    loop {
        let debtor = (0..n).find(|&v| v != q && cur.coeffs()[v] < 0);
        let Some(v) = debtor else { break };
        let deficit = -cur.coeffs()[v];
        let times = (deficit + g.degree(v) - 1) / g.degree(v);
        let mut inside = vec![true; n];
        inside[v] = false;
        for _ in 0..times {
            cur = fire_mask(g, &cur, &inside);
            if record {
                script.push((0..n).filter(|&u| u != v).collect());
            }
        }
    }

    loop {
        let rest = unburnt(g, &cur, q);
        if !rest.contains(&true) {
            break;
        }
        cur = fire_mask(g, &cur, &rest);
        if record {
            script.push((0..n).filter(|&u| rest[u]).collect());
        }
    }
    Reduction { divisor: cur, script }
}

/// `K(v) = deg(v) - 2`.
pub fn canonical(g: &MultiGraph) -> Divisor {
    Divisor::from_coeffs((0..g.len()).map(|v| g.degree(v) - 2).collect())
}

/// Bounds on the rank search.
#[derive(Debug, Clone, Copy)]
pub struct RankLimits {
    pub max_vertices: usize,
    /// Number of memoized (class, level) states explored before giving up.
    pub max_states: usize,
}

impl Default for RankLimits {
    fn default() -> Self {
        RankLimits { max_vertices: 400, max_states: 2_000_000 }
    }
}

struct RankSearch<'g> {
    g: &'g MultiGraph,
    genus: i64,
    limits: RankLimits,
    memo: HashMap<(Divisor, i64), bool>,
}

impl RankSearch<'_> {
    fn class_key(&self, d: &Divisor) -> Divisor {
        reduce_impl(self.g, d, 0, false).divisor
    }

    /// `min_v D_v(v)` with the vertices sorted by it.
    fn local_values(&self, d: &Divisor) -> Vec<(i64, usize)> {
        let mut vals: Vec<(i64, usize)> = (0..self.g.len())
            .map(|v| (reduce_impl(self.g, d, v, false).divisor.coeffs()[v], v))
            .collect();
        vals.sort();
        vals
    }

    /// Is `rank(d) >= k`?
    fn at_least(&mut self, d: &Divisor, k: i64) -> Result<bool> {
        let key = self.class_key(d);
        if k <= 0 {
            return Ok(k < 0 || key.coeffs()[0] >= 0);
        }
        if d.degree() - k >= self.genus {
            // D - E has degree >= g, hence is equivalent to an effective divisor.
            return Ok(true);
        }
        if k > d.degree() {
            return Ok(false);
        }
        if let Some(&hit) = self.memo.get(&(key.clone(), k)) {
            return Ok(hit);
        }
        if self.memo.len() >= self.limits.max_states {
            return Err(Error::Resource(format!(
                "rank search exceeded {} states",
                self.limits.max_states
            )));
        }
        let vals = self.local_values(&key);
        let mut answer = vals[0].0 >= k;
        if answer {
            for &(_, v) in &vals {
                let mut next = key.clone();
                next.add_point(v, -1);
                if !self.at_least(&next, k - 1)? {
                    answer = false;
                    break;
                }
            }
        }
        self.memo.insert((key, k), answer);
        Ok(answer)
    }
}

/// Baker-Norine rank with default limits.
pub fn rank(g: &MultiGraph, d: &Divisor) -> Result<i64> {
    rank_with(g, d, RankLimits::default())
}

pub fn rank_with(g: &MultiGraph, d: &Divisor, limits: RankLimits) -> Result<i64> {
    if d.len() != g.len() {
        return Err(Error::Argument("divisor length does not match the graph".into()));
    }
    if d.degree() < 0 {
        return Ok(-1);
    }
    if g.len() > limits.max_vertices {
        return Err(Error::Resource(format!(
            "graph has {} vertices, rank engine cap is {}",
            g.len(),
            limits.max_vertices
        )));
    }
    let mut search = RankSearch { g, genus: g.genus(), limits, memo: HashMap::new() };
    if !search.at_least(d, 0)? {
        return Ok(-1);
    }
    let upper = search.local_values(d)[0].0.min(d.degree());
    let mut r = (d.degree() - g.genus()).max(0);
    while r < upper && search.at_least(d, r + 1)? {
        r += 1;
    }
    Ok(r)
}

#[derive(Debug, Clone, Serialize)]
pub struct RiemannRoch {
    pub degree: i64,
    pub genus: i64,
    pub rank: i64,
    pub dual_rank: i64,
    pub holds: bool,
}

/// Computes both sides of `r(D) - r(K - D) = deg(D) + 1 - g`.
pub fn rr_report(g: &MultiGraph, d: &Divisor) -> Result<RiemannRoch> {
    let k = canonical(g);
    let r = rank(g, d)?;
    let rk = rank(g, &k.minus(d))?;
    let genus = g.genus();
    Ok(RiemannRoch {
        degree: d.degree(),
        genus,
        rank: r,
        dual_rank: rk,
        holds: r - rk == d.degree() + 1 - genus,
    })
}

pub fn rr_check(g: &MultiGraph, d: &Divisor) -> Result<bool> {
    Ok(rr_report(g, d)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> MultiGraph {
        MultiGraph::complete(3)
    }

    #[test]
    fn fire_single_vertex() {
        let g = k3();
        let d = Divisor::from_coeffs(vec![2, 0, 0]);
        assert_eq!(fire(&g, &d, &[0]).coeffs(), &[0, 1, 1]);
        assert_eq!(fire(&g, &d, &[0, 1, 2]), d);
    }

    #[test]
    fn reduce_on_triangle() {
        let g = k3();
        let d = Divisor::from_coeffs(vec![2, 0, 0]);
        let red = dhar_reduce(&g, &d, 1);
        assert_eq!(red.divisor.coeffs(), &[0, 1, 1]);
        assert_eq!(red.replay(&g, &d), red.divisor);
        let zero = Divisor::zero(3);
        assert_eq!(dhar_reduce(&g, &zero, 2).divisor, zero);
    }

    #[test]
    fn reduce_handles_debt() {
        let g = k3();
        let d = Divisor::from_coeffs(vec![-3, 1, 4]);
        let red = dhar_reduce(&g, &d, 0);
        assert!(is_q_reduced(&g, &red.divisor, 0));
        assert_eq!(red.replay(&g, &d), red.divisor);
        assert_eq!(dhar_reduce(&g, &red.divisor, 0).divisor, red.divisor);
    }

    #[test]
    fn rank_basics() {
        let g = k3();
        assert_eq!(rank(&g, &Divisor::from_coeffs(vec![-1, 0, 0])).unwrap(), -1);
        assert_eq!(rank(&g, &Divisor::zero(3)).unwrap(), 0);
        assert_eq!(rank(&g, &Divisor::from_coeffs(vec![1, -1, 0])).unwrap(), -1);
        assert_eq!(rank(&g, &Divisor::from_coeffs(vec![1, 0, 0])).unwrap(), 0);
        assert_eq!(rank(&g, &Divisor::from_coeffs(vec![1, 1, 0])).unwrap(), 1);
    }

    #[test]
    fn canonical_of_triangle_is_zero() {
        assert_eq!(canonical(&k3()), Divisor::zero(3));
        assert!(rr_check(&k3(), &Divisor::zero(3)).unwrap());
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(MultiGraph::new(&["a", "b"], &[("a", "a")]).is_err());
        assert!(MultiGraph::new(&["a", "b", "c"], &[("a", "b")]).is_err());
        assert!(MultiGraph::new(&["a", "b"], &[("a", "z")]).is_err());
    }

    #[test]
    fn resource_guard() {
        let g = k3();
        let limits = RankLimits { max_vertices: 2, max_states: 10 };
        assert!(matches!(
            rank_with(&g, &Divisor::zero(3), limits),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = MultiGraph::new(&["a", "b"], &[("a", "b"), ("a", "b")]).unwrap();
        assert_eq!(MultiGraph::from_json(&g.to_json()).unwrap(), g);
        let d = Divisor::from_coeffs(vec![3, -1]);
        assert_eq!(Divisor::from_json(&g, &d.to_json(&g)).unwrap(), d);
        assert_eq!(d.display(&g), "3[a] - [b]");
        assert!(g.to_dot(Some(&d)).contains("a\\n3"));
    }
}
