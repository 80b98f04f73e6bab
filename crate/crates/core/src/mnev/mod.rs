//! From elementary monic representations to rank-3 matroids whose
//! realizations encode the points of the represented algebra.
//!
//! Every value lives on a horizontal line through `P_∞` carrying a zero, a
//! one and a variable point. Each instruction adds a new line and a few
//! projection centers; each equality or inequality pair carries both sides
//! to a fresh common line.

mod geometry;
mod witness;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::chip_firing::Divisor;
use crate::error::{Error, Result};
use crate::field::{is_prime, Field};
use crate::matroid::Matroid;
use crate::matroid_divisor::{levi_graph, matroid_divisor, LeviGraph};
use crate::monic_slp::{sqrt_floor_below, zinvp_rep, zmodp_rep, Instr, MonicRep, OpCounts, PolyZ};

pub use geometry::{gadget_check, GadgetKind, GadgetOutput};
pub use witness::{witness, witness_random, witness_with, Witness, WitnessOptions};

/// Which part of the construction a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum GadgetRef {
    Infinity,
    /// The shared line carrying the constant 1.
    OneLine,
    /// `x_0` or a free variable.
    Variable(usize),
    Instruction(usize),
    Equality(usize),
    Inequality(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Infinity,
    Zero,
    One,
    Var,
    /// The transported first operand on an instruction's line.
    Aux,
    Top,
    Bottom,
    Bottom1,
    Bottom2,
    Center1,
    Center2,
    Image,
    Image1,
    Image2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Provenance {
    pub gadget: GadgetRef,
    pub role: Role,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} of {:?}", self.role, self.gadget)
    }
}

/// Element count and realization-space dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountCertificate {
    pub ops: OpCounts,
    pub elements: usize,
    pub dimension: usize,
}

impl CountCertificate {
    pub fn from_counts(c: OpCounts) -> CountCertificate {
        CountCertificate {
            ops: c,
            elements: 3 * c.n + 7 * c.a + 7 * c.o + 6 * c.m + 5 * c.e + 6 * c.i + 6,
            dimension: 3 * (c.n + c.a + c.o + c.m + c.e + c.i) + 1,
        }
    }
}

impl fmt::Display for CountCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.ops;
        writeln!(f, "n = {}, a = {}, o = {}, m = {}, e = {}, i = {}", c.n, c.a, c.o, c.m, c.e, c.i)?;
        writeln!(
            f,
            "elements = 3*{} + 7*{} + 7*{} + 6*{} + 5*{} + 6*{} + 6 = {}",
            c.n, c.a, c.o, c.m, c.e, c.i, self.elements
        )?;
        write!(f, "N = 3*{} + 1 = {}", c.n + c.a + c.o + c.m + c.e + c.i, self.dimension)
    }
}

/// Indices of the zero, one and variable elements of a horizontal line.
pub type LineElems = [usize; 3];

#[derive(Debug, Clone)]
pub struct CompiledMatroid {
    pub rep: MonicRep,
    pub matroid: Matroid,
    pub provenance: Vec<Provenance>,
    /// Flats with at least three elements.
    pub lines: Vec<Vec<usize>>,
    /// Collinearities implied by the gadgets rather than drawn by them.
    pub forced: Vec<Vec<usize>>,
    pub(crate) gadgets: GadgetMaps<PolyZ>,
    /// Line of each index `x_0..x_last`.
    pub value_lines: Vec<LineElems>,
    pub one_line: LineElems,
    pub certificate: CountCertificate,
}

impl CompiledMatroid {
    pub fn to_json(&self) -> Value {
        json!({
            "matroid": self.matroid.to_json(),
            "provenance": self.provenance,
            "counts": self.certificate,
            "forced": self.forced.iter()
                .map(|l| l.iter().map(|&e| self.matroid.element(e)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// A projection center carrying line `from` to line `to`; in the zero/one
/// coordinates of the two lines it acts as `v -> alpha v + beta`.
#[derive(Debug, Clone)]
struct CenterMap<V> {
    center: usize,
    from: usize,
    to: usize,
    alpha: V,
    beta: V,
}

/// The projections of a template and the values of the points on each
/// horizontal line, either symbolically or at a point of the algebra.
#[derive(Debug, Clone)]
pub(crate) struct GadgetMaps<V> {
    maps: Vec<CenterMap<V>>,
    on_line: Vec<Vec<(usize, V)>>,
}

impl GadgetMaps<PolyZ> {
    pub(crate) fn at_point<F: Field>(&self, f: &F, y: &[F::Elem], t: &F::Elem) -> GadgetMaps<F::Elem> {
        let ev = |p: &PolyZ| p.eval(f, y, t);
        GadgetMaps {
            maps: self
                .maps
                .iter()
                .map(|m| CenterMap { center: m.center, from: m.from, to: m.to, alpha: ev(&m.alpha), beta: ev(&m.beta) })
                .collect(),
            on_line: self.on_line.iter().map(|l| l.iter().map(|(e, v)| (*e, ev(v))).collect()).collect(),
        }
    }
}

/// Ring operations on line values.
pub(crate) trait Values {
    type V: Clone + PartialEq;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn is_identity(&self, alpha: &Self::V, beta: &Self::V) -> bool;
}

struct Symbolic;

impl Values for Symbolic {
    type V = PolyZ;
    fn mul(&self, a: &PolyZ, b: &PolyZ) -> PolyZ {
        a.mul(b)
    }
    fn add(&self, a: &PolyZ, b: &PolyZ) -> PolyZ {
        a.add(b)
    }
    fn is_identity(&self, alpha: &PolyZ, beta: &PolyZ) -> bool {
        alpha.as_constant().is_some_and(|c| c == 1.into()) && beta.is_zero()
    }
}

pub(crate) struct InField<'a, F>(pub &'a F);

impl<F: Field> Values for InField<'_, F> {
    type V = F::Elem;
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.add(a, b)
    }
    fn is_identity(&self, alpha: &F::Elem, beta: &F::Elem) -> bool {
        *alpha == self.0.one() && *beta == self.0.zero()
    }
}

struct Template {
    names: Vec<String>,
    provenance: Vec<Provenance>,
    lines: Vec<Vec<usize>>,
    gadgets: GadgetMaps<PolyZ>,
}

impl Template {
    fn point(&mut self, name: String, gadget: GadgetRef, role: Role) -> usize {
        self.names.push(name);
        self.provenance.push(Provenance { gadget, role });
        self.names.len() - 1
    }

    fn line(&mut self, pts: &[usize]) {
        self.lines.push(pts.to_vec());
    }

    fn map(&mut self, center: usize, from: usize, to: usize, alpha: PolyZ, beta: PolyZ) {
        self.gadgets.maps.push(CenterMap { center, from, to, alpha, beta });
    }
}

/// Collinearities that follow from the mandated ones. A center sends a
/// point to a point whenever the values agree, and three centers between
/// three lines are collinear whenever their maps compose consistently
/// (Desargues).
pub(crate) fn forced_lines<R: Values>(r: &R, g: &GadgetMaps<R::V>, mandated: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut owner = HashMap::new();
    for (fid, l) in mandated.iter().enumerate() {
        for &a in l {
            for &b in l {
                owner.insert((a, b), fid);
            }
        }
    }
    let already = |x: usize, y: usize, z: usize| match (owner.get(&(x, y)), owner.get(&(x, z))) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    };
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut push = |x: usize, y: usize, z: usize| {
        if x != y && y != z && x != z && !already(x, y, z) {
            out.push(vec![x, y, z]);
        }
    };
    for m in &g.maps {
        for (p, vp) in &g.on_line[m.from] {
            let image = r.add(&r.mul(&m.alpha, vp), &m.beta);
            for (q, vq) in &g.on_line[m.to] {
                if &image == vq {
                    push(m.center, *p, *q);
                }
            }
        }
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, m) in g.maps.iter().enumerate() {
        by_pair.entry(key(m.from, m.to)).or_default().push(i);
    }
    for (x, f) in g.maps.iter().enumerate() {
        for (y, h) in g.maps.iter().enumerate().skip(x + 1) {
            // The triangle's lines: s shared by both maps, a and b the others.
            let s = [f.from, f.to].into_iter().find(|l| *l == h.from || *l == h.to);
            let Some(s) = s else { continue };
            let a = if f.from == s { f.to } else { f.from };
            let b = if h.from == s { h.to } else { h.from };
            if a == b {
                continue;
            }
            for &z in by_pair.get(&key(a, b)).into_iter().flatten() {
                if z > y && triangle_commutes(r, [f, h, &g.maps[z]]) {
                    push(f.center, h.center, g.maps[z].center);
                }
            }
        }
    }
    out
}

/// `g ∘ f` as an affine map.
fn compose<R: Values>(r: &R, g: (&R::V, &R::V), f: (&R::V, &R::V)) -> (R::V, R::V) {
    (r.mul(g.0, f.0), r.add(&r.mul(g.0, f.1), g.1))
}

/// Whether three maps on the sides of a triangle of lines compose to the
/// identity, orienting the condition so that no inverse is needed.
fn triangle_commutes<R: Values>(r: &R, maps: [&CenterMap<R::V>; 3]) -> bool {
    let outdeg = |l: usize| maps.iter().filter(|m| m.from == l).count();
    let next = |m: &CenterMap<R::V>| maps.iter().copied().find(|n| n.from == m.to);
    if maps.iter().all(|m| outdeg(m.from) == 1 && outdeg(m.to) == 1) {
        // A directed cycle.
        let (m1, m2) = (maps[0], next(maps[0]).expect("cycle"));
        let m3 = next(m2).expect("cycle");
        let (a, b) = compose(r, (&m2.alpha, &m2.beta), (&m1.alpha, &m1.beta));
        let (a, b) = compose(r, (&m3.alpha, &m3.beta), (&a, &b));
        return r.is_identity(&a, &b);
    }
    let Some(source) = maps.iter().map(|m| m.from).find(|&l| outdeg(l) == 2) else { return false };
    let direct = maps.iter().find(|m| m.from == source && next(m).is_none());
    let first = maps.iter().find(|m| m.from == source && next(m).is_some());
    let (Some(direct), Some(first)) = (direct, first) else { return false };
    let second = next(first).expect("middle line");
    let (a, b) = compose(r, (&second.alpha, &second.beta), (&first.alpha, &first.beta));
    a == direct.alpha && b == direct.beta
}

/// Repeatedly unions lines sharing two or more points.
fn merge_lines(mut lines: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for l in lines.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }
    loop {
        let mut merged = false;
        'outer: for a in 0..lines.len() {
            for b in a + 1..lines.len() {
                let shared = lines[a].iter().filter(|x| lines[b].binary_search(x).is_ok()).count();
                if shared >= 2 {
                    let other = lines.swap_remove(b);
                    lines[a].extend(other);
                    lines[a].sort_unstable();
                    lines[a].dedup();
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            return lines;
        }
    }
}

/// Assembles the gadgets of a valid representation into a matroid.
pub fn compile(rep: &MonicRep) -> Result<CompiledMatroid> {
    rep.check()?;
    for &(i, j) in rep.eq.iter().chain(&rep.ineq) {
        if i == j {
            return Err(Error::InvalidRep(vec![format!("pair ({i}, {i}) compares an index with itself")]));
        }
    }
    let vals = rep.eval_symbolic_all()?;
    let nv = rep.n;
    let (zero_v, one_v) = (PolyZ::zero(nv), PolyZ::constant(nv, 1));
    let one_id = rep.last_index() + 1;
    let pair_count = rep.eq.len() + rep.ineq.len();
    let mut t = Template {
        names: Vec::new(),
        provenance: Vec::new(),
        lines: Vec::new(),
        gadgets: GadgetMaps { maps: Vec::new(), on_line: vec![Vec::new(); one_id + 1 + pair_count] },
    };
    let inf = t.point("P_inf".into(), GadgetRef::Infinity, Role::Infinity);

    let mut value_lines: Vec<LineElems> = Vec::new();
    let line_of = |t: &mut Template, i: usize| -> LineElems {
        let g = GadgetRef::Variable(i);
        let z = t.point(format!("x{i}.zero"), g, Role::Zero);
        let o = t.point(format!("x{i}.one"), g, Role::One);
        let v = t.point(format!("x{i}.var"), g, Role::Var);
        t.line(&[inf, z, o, v]);
        t.gadgets.on_line[i] = vec![(z, zero_v.clone()), (o, one_v.clone()), (v, vals[i].clone())];
        [z, o, v]
    };
    value_lines.push(line_of(&mut t, 0));
    let oz = t.point("one.zero".into(), GadgetRef::OneLine, Role::Zero);
    let oo = t.point("one.one".into(), GadgetRef::OneLine, Role::One);
    t.line(&[inf, oz, oo]);
    t.gadgets.on_line[one_id] = vec![(oz, zero_v.clone()), (oo, one_v.clone())];
    let one_line = [oz, oo, oo];
    for i in 1..=rep.n {
        value_lines.push(line_of(&mut t, i));
    }

    for (pos, ins) in rep.instrs.iter().enumerate() {
        let i = rep.instr_index(pos);
        let g = GadgetRef::Instruction(i);
        let (jx, kx) = match *ins {
            Instr::Add(j, k) | Instr::Mul(j, k) => (j, k),
            Instr::Inc(j) => (j, one_id),
        };
        let j = value_lines[jx];
        let k = if kx == one_id { one_line } else { value_lines[kx] };
        let xj = vals[jx].clone();
        let z = t.point(format!("x{i}.zero"), g, Role::Zero);
        let o = t.point(format!("x{i}.one"), g, Role::One);
        let v = t.point(format!("x{i}.var"), g, Role::Var);
        let e = t.point(format!("x{i}.aux"), g, Role::Aux);
        let top = t.point(format!("x{i}.T"), g, Role::Top);
        t.line(&[inf, z, o, v, e]);
        t.line(&[top, j[0], z]);
        t.line(&[top, j[1], o]);
        t.line(&[top, j[2], e]);
        t.gadgets.on_line[i] = vec![(z, zero_v.clone()), (o, one_v.clone()), (v, vals[i].clone()), (e, xj.clone())];
        t.map(top, jx, i, one_v.clone(), zero_v.clone());
        if let Instr::Mul(..) = ins {
            let b = t.point(format!("x{i}.B"), g, Role::Bottom);
            t.line(&[b, k[0], z]);
            t.line(&[b, k[1], e]);
            t.line(&[b, k[2], v]);
            t.map(b, kx, i, xj, zero_v.clone());
        } else {
            let b1 = t.point(format!("x{i}.B1"), g, Role::Bottom1);
            let b2 = t.point(format!("x{i}.B2"), g, Role::Bottom2);
            t.line(&[inf, b1, b2]);
            t.line(&[b2, k[0], z]);
            t.line(&[b2, k[1], o]);
            t.line(&[b1, k[0], e]);
            t.line(&[b1, k[2], v]);
            t.map(b1, kx, i, one_v.clone(), xj);
            t.map(b2, kx, i, one_v.clone(), zero_v.clone());
        }
        value_lines.push([z, o, v]);
    }

    let pairs = rep.eq.iter().map(|&p| (p, true)).chain(rep.ineq.iter().map(|&p| (p, false)));
    let (mut ne, mut nq) = (0, 0);
    for (pair_no, ((a, b), equality)) in pairs.enumerate() {
        let cid = one_id + 1 + pair_no;
        let (g, prefix) = if equality {
            ne += 1;
            (GadgetRef::Equality(ne), format!("eq{ne}"))
        } else {
            nq += 1;
            (GadgetRef::Inequality(nq), format!("ne{nq}"))
        };
        let (la, lb) = (value_lines[a], value_lines[b]);
        let z = t.point(format!("{prefix}.zero"), g, Role::Zero);
        let o = t.point(format!("{prefix}.one"), g, Role::One);
        let c1 = t.point(format!("{prefix}.C1"), g, Role::Center1);
        let c2 = t.point(format!("{prefix}.C2"), g, Role::Center2);
        let (w1, w2) = if equality {
            let w = t.point(format!("{prefix}.w"), g, Role::Image);
            (w, w)
        } else {
            (t.point(format!("{prefix}.w1"), g, Role::Image1), t.point(format!("{prefix}.w2"), g, Role::Image2))
        };
        t.line(&[inf, z, o, w1, w2]);
        t.line(&[c1, la[0], z]);
        t.line(&[c1, la[1], o]);
        t.line(&[c1, la[2], w1]);
        t.line(&[c2, lb[0], z]);
        t.line(&[c2, lb[1], o]);
        t.line(&[c2, lb[2], w2]);
        t.gadgets.on_line[cid] = vec![(z, zero_v.clone()), (o, one_v.clone()), (w1, vals[a].clone()), (w2, vals[b].clone())];
        t.map(c1, a, cid, one_v.clone(), zero_v.clone());
        t.map(c2, b, cid, one_v.clone(), zero_v.clone());
    }

    let certificate = CountCertificate::from_counts(rep.counts());
    assert_eq!(t.names.len(), certificate.elements, "element count disagrees with the formula");
    let mandated = merge_lines(t.lines.clone());
    let forced = forced_lines(&Symbolic, &t.gadgets, &mandated);
    let lines = merge_lines(mandated.iter().chain(&forced).cloned().collect());
    let matroid = Matroid::from_lines(t.names, lines.clone())?;
    Ok(CompiledMatroid {
        rep: rep.clone(),
        matroid,
        provenance: t.provenance,
        lines,
        forced,
        gadgets: t.gadgets,
        value_lines,
        one_line,
        certificate,
    })
}

/// Element counts of the two matroids built from the `ℤ/p` and `ℤ[1/p]`
/// representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub p: u32,
    pub l: u64,
    pub increments: usize,
    pub equality_count: usize,
    pub inequality_count: usize,
    pub max_count: usize,
    pub pass: bool,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p = {}: l = {}, o = {}, counts {} (equality) and {} (inequality); max {} {} p: {}",
            self.p,
            self.l,
            self.increments,
            self.equality_count,
            self.inequality_count,
            self.max_count,
            if self.pass { "<" } else { ">=" },
            if self.pass { "pass" } else { "fail" }
        )
    }
}

/// Checks that both matroids have fewer than `p` elements, from the count
/// formula alone.
pub fn bound_check(p: u32) -> Result<BoundReport> {
    if !is_prime(p as u64) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    let l = sqrt_floor_below(p as u64);
    let o = (l + p as u64 - l * l) as usize;
    let base = OpCounts { n: 0, a: 4, m: 4, o, e: 0, i: 0 };
    let eq = CountCertificate::from_counts(OpCounts { e: 1, ..base }).elements;
    let ne = CountCertificate::from_counts(OpCounts { i: 1, ..base }).elements;
    let max = eq.max(ne);
    Ok(BoundReport {
        p,
        l,
        increments: o,
        equality_count: eq,
        inequality_count: ne,
        max_count: max,
        pass: max < p as usize,
    })
}

/// The matroids for `ℤ/p` and `ℤ[1/p]` with their Levi graphs and divisors.
#[derive(Debug, Clone)]
pub struct CharacteristicPair {
    pub zmodp: CompiledMatroid,
    pub zinvp: CompiledMatroid,
    pub levi: (LeviGraph, LeviGraph),
    pub divisors: (Divisor, Divisor),
}

pub fn characteristic_pair(p: u32) -> Result<CharacteristicPair> {
    let zmodp = compile(&zmodp_rep(p)?)?;
    let zinvp = compile(&zinvp_rep(p)?)?;
    let levi = (levi_graph(&zmodp.matroid), levi_graph(&zinvp.matroid));
    let divisors = (matroid_divisor(&zmodp.matroid), matroid_divisor(&zinvp.matroid));
    Ok(CharacteristicPair { zmodp, zinvp, levi, divisors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let c = compile(&MonicRep::free(1)).unwrap();
        assert_eq!(c.matroid.len(), 9);
        let c = compile(&zmodp_rep(5).unwrap()).unwrap();
        assert_eq!((c.matroid.len(), c.certificate.dimension), (84, 37));
        assert_eq!(compile(&zinvp_rep(5).unwrap()).unwrap().matroid.len(), 85);
    }

    #[test]
    fn squaring_merges_lines() {
        let c = compile(&zmodp_rep(5).unwrap()).unwrap();
        let names = |l: &Vec<usize>| l.iter().map(|&e| c.matroid.element(e).to_string()).collect::<Vec<_>>();
        let merged: Vec<_> = c.lines.iter().map(names).filter(|l| l.len() == 4 && l.contains(&"x1.T".to_string())).collect();
        assert_eq!(merged.len(), 1);
        assert!(merged[0].contains(&"x1.B".to_string()));
    }

    #[test]
    fn rejects_self_pairs() {
        let mut rep = MonicRep::free(1);
        rep.eq.push((1, 1));
        assert!(compile(&rep).is_err());
    }

    #[test]
    fn bounds() {
        let r = bound_check(443).unwrap();
        assert_eq!((r.l, r.increments, r.max_count, r.pass), (21, 23, 225, true));
        let r = bound_check(439).unwrap();
        assert_eq!((r.l, r.increments, r.max_count, r.pass), (20, 59, 477, false));
        let r = bound_check(1009).unwrap();
        assert_eq!((r.max_count, r.pass), (617, true));
        assert!(bound_check(440).is_err());
    }

    #[test]
    fn pair_degrees() {
        let pair = characteristic_pair(5).unwrap();
        assert_eq!((pair.divisors.0.degree(), pair.divisors.1.degree()), (84, 85));
    }

    #[test]
    fn chained_increments_force_desargues_lines() {
        let c = compile(&zmodp_rep(5).unwrap()).unwrap();
        let names: Vec<Vec<&str>> =
            c.forced.iter().map(|l| l.iter().map(|&e| c.matroid.element(e)).collect()).collect();
        assert_eq!(names, vec![vec!["x3.B2", "x4.T", "x4.B2"], vec!["x5.B2", "x6.T", "x6.B2"]]);
        assert!(compile(&MonicRep::free(2)).unwrap().forced.is_empty());
    }
}
