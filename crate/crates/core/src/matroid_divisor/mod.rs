//! Divisors attached to matroids: the Levi graph `Γ_M`, the divisor `D_M`
//! and the numerology around it.

mod harmonic;

use serde::Serialize;

use crate::chip_firing::{rank_with, Divisor, MultiGraph, RankLimits};
use crate::error::Result;
use crate::matroid::{five_point, four_lines, is_isomorphic, two_flat, u2ext, u34, Matroid};

pub use harmonic::{
    build_harmonic_modification, central_fiber, check_harmonic, HarmonicModification, TreeDir, TreePos, TreeRay,
};

/// Bipartite incidence graph of a matroid. Vertices `0..n` are the
/// elements, `n..n+l` the flats.
#[derive(Debug, Clone)]
pub struct LeviGraph {
    pub graph: MultiGraph,
    pub elements: usize,
    pub flats: usize,
}

impl LeviGraph {
    pub fn element_vertex(&self, e: usize) -> usize {
        e
    }

    pub fn flat_vertex(&self, f: usize) -> usize {
        self.elements + f
    }

    pub fn is_element(&self, v: usize) -> bool {
        v < self.elements
    }
}

/// Vertex name of a flat: its elements in brackets.
pub fn flat_name(m: &Matroid, f: usize) -> String {
    format!("[{}]", m.flat_names(f).join(","))
}

pub fn levi_graph(m: &Matroid) -> LeviGraph {
    let n = m.len();
    let mut names: Vec<String> = m.elements().to_vec();
    names.extend((0..m.flats().len()).map(|f| flat_name(m, f)));
    let edges: Vec<(usize, usize)> = m
        .flats()
        .iter()
        .enumerate()
        .flat_map(|(fi, f)| f.iter().map(move |&e| (e, n + fi)))
        .collect();
    let graph = MultiGraph::from_indices(names, &edges).expect("Levi graph of a matroid is connected");
    LeviGraph { graph, elements: n, flats: m.flats().len() }
}

/// `D_M`: one chip on every element vertex.
pub fn matroid_divisor(m: &Matroid) -> Divisor {
    let lg = m.len() + m.flats().len();
    Divisor::from_points(lg, &(0..m.len()).collect::<Vec<_>>())
}

/// `m - n - l + 1`.
pub fn genus(m: &Matroid) -> i64 {
    let c = m.counts();
    c.m as i64 - c.n as i64 - c.l as i64 + 1
}

/// `ρ(g, r, d) = g - (r+1)(g + r - d)`.
pub fn brill_noether_rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g + r - d)
}

/// `5n + 2l - 2m - 8`, the Brill-Noether number of `(Γ_M, D_M)` at rank 2.
pub fn rho_matroid(m: &Matroid) -> i64 {
    let c = m.counts();
    5 * c.n as i64 + 2 * c.l as i64 - 2 * c.m as i64 - 8
}

/// `ρ` of two flats of sizes `a+1` and `b+1` meeting in a point.
pub fn two_flat_rho(a: i64, b: i64) -> i64 {
    -2 * a * b + 3 * a + 3 * b - 3
}

/// `m - 2n + 1`: residue fields larger than this admit lifts.
pub fn rr_threshold(m: &Matroid) -> i64 {
    let c = m.counts();
    let t = c.m as i64 - 2 * c.n as i64 + 1;
    debug_assert!(t >= c.l as i64 - 2);
    t
}

/// The matroids with `ρ >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// One-element extension of `U_{2,n-1}`.
    Extension,
    Uniform,
    FivePoint,
    TwoLines,
    FourLines,
    NotInList,
}

impl Classification {
    pub fn case(self) -> Option<u8> {
        match self {
            Classification::Extension => Some(1),
            Classification::Uniform => Some(2),
            Classification::FivePoint => Some(3),
            Classification::TwoLines => Some(4),
            Classification::FourLines => Some(5),
            Classification::NotInList => None,
        }
    }

    pub fn describe(self) -> String {
        match self.case() {
            Some(c) => format!("case {c}"),
            None => "not in list".into(),
        }
    }
}

pub fn classify(m: &Matroid) -> Classification {
    let families: [(Classification, Matroid); 4] = [
        (Classification::Uniform, u34()),
        (Classification::FivePoint, five_point()),
        (Classification::TwoLines, two_flat(2, 3)),
        (Classification::FourLines, four_lines()),
    ];
    if m.len() >= 3 && is_isomorphic(m, &u2ext(m.len())) {
        return Classification::Extension;
    }
    families
        .into_iter()
        .find(|(_, f)| is_isomorphic(m, f))
        .map_or(Classification::NotInList, |(c, _)| c)
}

/// Computes `rank(Γ_M, D_M)` and compares it with 2.
pub fn verify_rank2(m: &Matroid) -> Result<bool> {
    verify_rank2_with(m, RankLimits::default())
}

pub fn verify_rank2_with(m: &Matroid, limits: RankLimits) -> Result<bool> {
    let lg = levi_graph(m);
    Ok(rank_with(&lg.graph, &matroid_divisor(m), limits)? == 2)
}
