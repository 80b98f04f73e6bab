use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Connected, loop-free multigraph with named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<String>,
    /// `(neighbor, multiplicity)`, sorted by neighbor.
    adj: Vec<Vec<(usize, u32)>>,
    degree: Vec<i64>,
    edge_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl MultiGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<MultiGraph> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != names.len() {
            return Err(Error::InvalidGraph("duplicate vertex name".into()));
        }
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let lookup = |v: &str| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::InvalidGraph(format!("edge mentions unknown vertex {v}")))
            };
            idx_edges.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        MultiGraph::from_indices(names, &idx_edges)
    }

    pub fn from_indices(vertices: Vec<String>, edges: &[(usize, usize)]) -> Result<MultiGraph> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut mult: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at {}", vertices[a])));
            }
            *mult[a].entry(b).or_default() += 1;
            *mult[b].entry(a).or_default() += 1;
        }
        let adj: Vec<Vec<(usize, u32)>> = mult.into_iter().map(|m| m.into_iter().collect()).collect();
        let degree = adj.iter().map(|nb| nb.iter().map(|&(_, m)| m as i64).sum()).collect();
        let g = MultiGraph { vertices, adj, degree, edge_count: edges.len() };
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Argument(format!("unknown vertex {name}")))
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u32)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> i64 {
        self.degree[v]
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> u32 {
        self.adj[a]
            .binary_search_by_key(&b, |&(u, _)| u)
            .map(|i| self.adj[a][i].1)
            .unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn genus(&self) -> i64 {
        self.edge_count as i64 - self.len() as i64 + 1
    }

    /// Edges with repetition, each once with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (a, nb) in self.adj.iter().enumerate() {
            for &(b, m) in nb {
                if a < b {
                    out.extend(std::iter::repeat_n((a, b), m as usize));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let j = GraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(a, b)| [self.vertices[a].clone(), self.vertices[b].clone()])
                .collect(),
        };
        serde_json::to_value(j).expect("graph serializes")
    }

    pub fn from_json(v: &Value) -> Result<MultiGraph> {
        let j: GraphJson = serde_json::from_value(v.clone()).map_err(|e| Error::Format(e.to_string()))?;
        let edges: Vec<(String, String)> = j.edges.into_iter().map(|[a, b]| (a, b)).collect();
        MultiGraph::new(&j.vertices, &edges)
    }

    /// Graphviz rendering; vertices carry their divisor coefficient when given.
    pub fn to_dot(&self, divisor: Option<&Divisor>) -> String {
        let mut out = String::from("graph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            match divisor {
                Some(d) => writeln!(out, "  \"{v}\" [label=\"{v}\\n{}\"];", d.coeffs()[i]).unwrap(),
                None => writeln!(out, "  \"{v}\";").unwrap(),
            }
        }
        for (a, b) in self.edges() {
            writeln!(out, "  \"{}\" -- \"{}\";", self.vertices[a], self.vertices[b]).unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// The complete graph on `n` vertices named `v0..`, or `a, b, c` for `n = 3`.
    pub fn complete(n: usize) -> MultiGraph {
        let names: Vec<String> = if n == 3 {
            vec!["a".into(), "b".into(), "c".into()]
        } else {
            (0..n).map(|i| format!("v{i}")).collect()
        };
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        MultiGraph::from_indices(names, &edges).expect("complete graph")
    }
}

/// Integer coefficient per vertex of a fixed graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Divisor {
        Divisor(vec![0; n])
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Divisor {
        Divisor(coeffs)
    }

    /// Sum of unit points.
    pub fn from_points(n: usize, points: &[usize]) -> Divisor {
        let mut d = Divisor::zero(n);
        for &p in points {
            d.0[p] += 1;
        }
        d
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeffs_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_point(&mut self, v: usize, c: i64) {
        self.0[v] += c;
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `{"coeffs": {vertex: int}}`, zero coefficients omitted.
    pub fn to_json(&self, g: &MultiGraph) -> Value {
        let coeffs: BTreeMap<String, i64> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (g.vertices()[i].clone(), c))
            .collect();
        serde_json::json!({ "coeffs": coeffs })
    }

    pub fn from_json(g: &MultiGraph, v: &Value) -> Result<Divisor> {
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Format("divisor needs a `coeffs` object".into()))?;
        let mut d = Divisor::zero(g.len());
        for (name, c) in coeffs {
            let c = c.as_i64().ok_or_else(|| Error::Format(format!("coefficient of {name} is not an integer")))?;
            d.0[g.vertex_index(name)?] += c;
        }
        Ok(d)
    }

    /// Human-readable formal sum such as `[a] + 2[b] - [c]`.
    pub fn display(&self, g: &MultiGraph) -> String {
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                write!(out, " {sign} ").unwrap();
            }
            if c.abs() != 1 {
                write!(out, "{}", c.abs()).unwrap();
            }
            write!(out, "[{}]", g.vertices()[i]).unwrap();
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
