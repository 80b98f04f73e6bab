//! A tropical modification of `Γ_M` with a finite harmonic morphism to a
//! star tree. All bounded edges have length 1 and every vertex sits at an
//! integer distance from the center of the tree.

use std::fmt::Write;

use crate::chip_firing::Divisor;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

use super::{flat_name, levi_graph, LeviGraph};

/// A ray of the star tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeRay {
    /// `r_f` for a flat avoiding the distinguished element.
    Flat(usize),
    /// `r_e` for the distinguished element.
    Element,
}

/// A vertex of the tree: the center, or a point at distance `dist` on a ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreePos {
    Center,
    On(TreeRay, u32),
}

/// A tangent direction of the tree at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeDir {
    /// From the center into a ray.
    Along(TreeRay),
    Inward,
    Outward,
}

/// An unbounded edge of the modification, attached at `at`.
#[derive(Debug, Clone)]
pub struct Ray {
    pub name: String,
    pub at: usize,
    pub dir: TreeDir,
}

#[derive(Debug, Clone)]
pub struct HarmonicModification {
    pub levi: LeviGraph,
    pub element: usize,
    pub tree_rays: Vec<TreeRay>,
    /// Image of each finite vertex (indexed like the Levi graph).
    pub image: Vec<TreePos>,
    pub rays: Vec<Ray>,
    pub local_degree: Vec<u32>,
}

fn direction(from: TreePos, to: TreePos) -> Option<(TreeDir, u32)> {
    match (from, to) {
        (TreePos::Center, TreePos::On(r, d)) => Some((TreeDir::Along(r), d)),
        (TreePos::On(_, d), TreePos::Center) => Some((TreeDir::Inward, d)),
        (TreePos::On(r, a), TreePos::On(s, b)) if r == s && a != b => {
            Some(if b > a { (TreeDir::Outward, b - a) } else { (TreeDir::Inward, a - b) })
        }
        _ => None,
    }
}

pub fn build_harmonic_modification(m: &Matroid, e: usize) -> Result<HarmonicModification> {
    if e >= m.len() {
        return Err(Error::Argument(format!("element index {e} out of range")));
    }
    let levi = levi_graph(m);
    let flats = m.flats();
    let contains = |f: usize, x: usize| flats[f].binary_search(&x).is_ok();

    let mut tree_rays: Vec<TreeRay> = (0..flats.len()).filter(|&f| !contains(f, e)).map(TreeRay::Flat).collect();
    tree_rays.push(TreeRay::Element);

    let mut image = vec![TreePos::Center; levi.graph.len()];
    let mut local_degree = vec![0u32; levi.graph.len()];
    let mut rays = Vec::new();
    let through_e = m.flats_through(e).len() as u32;

    for x in 0..m.len() {
        let v = levi.element_vertex(x);
        if x == e {
            image[v] = TreePos::On(TreeRay::Element, 2);
            local_degree[v] = through_e;
            for f in m.flats_through(e) {
                rays.push(Ray { name: format!("s({},{})", m.element(e), flat_name(m, f)), at: v, dir: TreeDir::Outward });
            }
        } else {
            local_degree[v] = 1;
            for f in (0..flats.len()).filter(|&f| !contains(f, e) && !contains(f, x)) {
                rays.push(Ray {
                    name: format!("s({},{})", m.element(x), flat_name(m, f)),
                    at: v,
                    dir: TreeDir::Along(TreeRay::Flat(f)),
                });
            }
        }
    }
    for (f, members) in flats.iter().enumerate() {
        let v = levi.flat_vertex(f);
        let (pos, extra, deg) = if contains(f, e) {
            (TreePos::On(TreeRay::Element, 1), members.len() - 2, members.len() - 1)
        } else {
            (TreePos::On(TreeRay::Flat(f), 1), members.len(), members.len())
        };
        image[v] = pos;
        local_degree[v] = deg as u32;
        for i in 1..=extra {
            rays.push(Ray { name: format!("s({},{i})", flat_name(m, f)), at: v, dir: TreeDir::Outward });
        }
    }
    Ok(HarmonicModification { levi, element: e, tree_rays, image, rays, local_degree })
}

impl HarmonicModification {
    /// Tangent directions of the tree at a point.
    pub fn directions_at(&self, pos: TreePos) -> Vec<TreeDir> {
        match pos {
            TreePos::Center => self.tree_rays.iter().map(|&r| TreeDir::Along(r)).collect(),
            TreePos::On(..) => vec![TreeDir::Inward, TreeDir::Outward],
        }
    }

    fn vertex_name(&self, v: usize) -> &str {
        &self.levi.graph.vertices()[v]
    }

    fn pos_name(&self, pos: TreePos) -> String {
        let ray = |r: TreeRay| match r {
            TreeRay::Flat(f) => format!("r{}", self.vertex_name(self.levi.flat_vertex(f))),
            TreeRay::Element => format!("r({})", self.vertex_name(self.element)),
        };
        match pos {
            TreePos::Center => "w".into(),
            TreePos::On(r, d) => format!("{}@{d}", ray(r)),
        }
    }

    fn dir_name(&self, pos: TreePos, dir: TreeDir) -> String {
        match dir {
            TreeDir::Along(TreeRay::Flat(f)) => format!("w->r{}", self.vertex_name(self.levi.flat_vertex(f))),
            TreeDir::Along(TreeRay::Element) => format!("w->r({})", self.vertex_name(self.element)),
            TreeDir::Inward => format!("{} inward", self.pos_name(pos)),
            TreeDir::Outward => format!("{} outward", self.pos_name(pos)),
        }
    }

    /// Graphviz rendering with tree images as labels; rays end in small dots.
    pub fn to_dot(&self) -> String {
        let g = &self.levi.graph;
        let mut out = String::from("graph H {\n");
        for v in 0..g.len() {
            writeln!(
                out,
                "  \"{}\" [label=\"{}\\n{} deg {}\"];",
                self.vertex_name(v),
                self.vertex_name(v),
                self.pos_name(self.image[v]),
                self.local_degree[v]
            )
            .unwrap();
        }
        for (a, b) in g.edges() {
            writeln!(out, "  \"{}\" -- \"{}\";", self.vertex_name(a), self.vertex_name(b)).unwrap();
        }
        for ray in &self.rays {
            writeln!(out, "  \"{}\" [shape=point];", ray.name).unwrap();
            writeln!(out, "  \"{}\" -- \"{}\" [style=dashed];", self.vertex_name(ray.at), ray.name).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// At every finite vertex, each tree direction at its image must receive
/// the same number of edges, equal to the recorded local degree, and every
/// bounded edge must map with expansion factor 1.
pub fn check_harmonic(h: &HarmonicModification) -> Result<()> {
    let g = &h.levi.graph;
    for v in 0..g.len() {
        let pos = h.image[v];
        let dirs = h.directions_at(pos);
        let mut counts = vec![0u32; dirs.len()];
        let fail = |reason: String| Error::NotHarmonic { vertex: g.vertices()[v].clone(), reason };
        let mut bump = |dir: TreeDir, what: &str| -> Result<()> {
            let i = dirs
                .iter()
                .position(|&d| d == dir)
                .ok_or_else(|| fail(format!("{what} maps to {}, not a direction at the image", h.dir_name(pos, dir))))?;
            counts[i] += 1;
            Ok(())
        };
        for &(u, mult) in g.neighbors(v) {
            let (dir, len) = direction(pos, h.image[u])
                .ok_or_else(|| fail(format!("edge to {} is contracted", g.vertices()[u])))?;
            if len != 1 {
                return Err(fail(format!("edge to {} stretches by {len}", g.vertices()[u])));
            }
            for _ in 0..mult {
                bump(dir, &format!("edge to {}", g.vertices()[u]))?;
            }
        }
        for ray in h.rays.iter().filter(|r| r.at == v) {
            bump(ray.dir, &ray.name)?;
        }
        let want = h.local_degree[v];
        if want == 0 {
            return Err(fail("local degree is zero".into()));
        }
        for (d, &c) in dirs.iter().zip(&counts) {
            if c != want {
                return Err(fail(format!("{} receives {c} edges, local degree is {want}", h.dir_name(pos, *d))));
            }
        }
    }
    Ok(())
}

/// Sum of the local-degree-1 vertices over the center of the tree.
pub fn central_fiber(h: &HarmonicModification) -> Divisor {
    let pts: Vec<usize> = (0..h.levi.graph.len())
        .filter(|&v| h.image[v] == TreePos::Center && h.local_degree[v] == 1)
        .collect();
    Divisor::from_points(h.levi.graph.len(), &pts)
}
