use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::{Exponents, Instr, MonicRep, PolyZ};

/// A finitely generated ℤ-algebra: `ℤ[y_1..y_n]` modulo `f_k = g_k`, with
/// `f_k - g_k` inverted for each inversion pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedAlgebra {
    pub n: usize,
    pub relations: Vec<(PolyZ, PolyZ)>,
    pub inversions: Vec<(PolyZ, PolyZ)>,
}

impl PresentedAlgebra {
    pub fn new(n: usize) -> PresentedAlgebra {
        PresentedAlgebra { n, relations: Vec::new(), inversions: Vec::new() }
    }

    /// Adds `f = g`, both given as polynomial strings.
    pub fn relation(mut self, f: &str, g: &str) -> Result<PresentedAlgebra> {
        self.relations.push((PolyZ::parse(self.n, f)?, PolyZ::parse(self.n, g)?));
        Ok(self)
    }

    /// Inverts `f - g`.
    pub fn inversion(mut self, f: &str, g: &str) -> Result<PresentedAlgebra> {
        self.inversions.push((PolyZ::parse(self.n, f)?, PolyZ::parse(self.n, g)?));
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let all = self.relations.iter().map(|p| ("relation", p)).chain(self.inversions.iter().map(|p| ("inversion", p)));
        for (k, (kind, (f, g))) in all.enumerate() {
            for side in [f, g] {
                if side.nvars() != self.n {
                    problems.push(format!("{kind} {k}: wrong number of variables"));
                } else if !side.is_t_free() {
                    problems.push(format!("{kind} {k}: {side} involves t"));
                } else if side.terms().values().any(|c| c.is_negative()) {
                    problems.push(format!("{kind} {k}: {side} has a negative coefficient"));
                }
            }
            if f.is_zero() && g.is_zero() {
                problems.push(format!("{kind} {k}: both sides are zero"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Format(problems.join("; ")))
        }
    }

    /// `{"n": 2, "relations": [["y1*y2", "1"]], "inversions": [["y1", "0"]]}`.
    pub fn from_json(v: &Value) -> Result<PresentedAlgebra> {
        let n = v["n"].as_u64().ok_or_else(|| Error::Format("missing \"n\"".into()))? as usize;
        let pairs = |key: &str| -> Result<Vec<(PolyZ, PolyZ)>> {
            let Some(list) = v.get(key) else { return Ok(Vec::new()) };
            let list = list.as_array().ok_or_else(|| Error::Format(format!("\"{key}\" must be a list")))?;
            list.iter()
                .map(|pair| match pair.as_array().map(Vec::as_slice) {
                    Some([Value::String(f), Value::String(g)]) => Ok((PolyZ::parse(n, f)?, PolyZ::parse(n, g)?)),
                    _ => Err(Error::Format(format!("\"{key}\" entries must be pairs of strings"))),
                })
                .collect()
        };
        let a = PresentedAlgebra { n, relations: pairs("relations")?, inversions: pairs("inversions")? };
        a.validate()?;
        Ok(a)
    }

    pub fn to_json(&self) -> Value {
        let s = |ps: &[(PolyZ, PolyZ)]| ps.iter().map(|(f, g)| json!([f.to_string(), g.to_string()])).collect::<Vec<_>>();
        json!({"n": self.n, "relations": s(&self.relations), "inversions": s(&self.inversions)})
    }
}

/// A program under construction, with symbolic values kept alongside.
struct Builder {
    rep: MonicRep,
    vals: Vec<PolyZ>,
    products: HashMap<Exponents, usize>,
    constants: HashMap<u64, usize>,
    t_powers: HashMap<u32, usize>,
}

impl Builder {
    fn new(n: usize) -> Builder {
        let rep = MonicRep::free(n);
        let vals = rep.eval_symbolic_all().expect("no instructions");
        let mut products = HashMap::new();
        for i in 1..=n {
            let mut e = vec![0; n + 1];
            e[i] = 1;
            products.insert(e, i);
        }
        Builder { rep, vals, products, constants: HashMap::new(), t_powers: HashMap::from([(1, 0)]) }
    }

    fn n(&self) -> usize {
        self.rep.n
    }

    fn push(&mut self, ins: Instr) -> usize {
        let one = PolyZ::constant(self.n(), 1);
        let v = match ins {
            Instr::Add(j, k) => self.vals[j].add(&self.vals[k]),
            Instr::Mul(j, k) => self.vals[j].mul(&self.vals[k]),
            Instr::Inc(j) => self.vals[j].add(&one),
        };
        debug_assert!(v.is_monic_in_t(), "{ins} = {v}");
        self.vals.push(v);
        self.rep.push(ins)
    }

    fn deg(&self, i: usize) -> u32 {
        self.vals[i].t_degree().expect("monic values are nonzero")
    }

    /// `t + c`, by increments from `x_0`.
    fn constant(&mut self, c: u64) -> usize {
        if c == 0 {
            return 0;
        }
        if let Some(&i) = self.constants.get(&c) {
            return i;
        }
        let below = self.constant(c - 1);
        let i = self.push(Instr::Inc(below));
        self.constants.insert(c, i);
        i
    }

    fn t_power(&mut self, d: u32) -> usize {
        if let Some(&i) = self.t_powers.get(&d) {
            return i;
        }
        let below = self.t_power(d - 1);
        let i = self.push(Instr::Mul(below, 0));
        self.t_powers.insert(d, i);
        i
    }

    /// `t^{e_0} · x_1^{e_1} ··· x_n^{e_n}`; the empty product is `t^0`,
    /// which has no index, so callers never ask for it.
    fn product(&mut self, e: &Exponents) -> usize {
        debug_assert!(e.iter().any(|&x| x > 0));
        if let Some(&i) = self.products.get(e) {
            return i;
        }
        let i = if e[1..].iter().all(|&x| x == 0) {
            self.t_power(e[0])
        } else {
            // Peel one factor off the last nonzero exponent.
            let last = e.iter().rposition(|&x| x > 0).expect("nonzero");
            let mut rest = e.clone();
            rest[last] -= 1;
            if rest.iter().all(|&x| x == 0) {
                last
            } else {
                let r = self.product(&rest);
                self.push(Instr::Mul(r, last))
            }
        };
        self.products.insert(e.clone(), i);
        i
    }

    /// `a + b` kept monic: when the degrees tie, `t^{d+1}` is added first.
    fn add_monic(&mut self, a: usize, b: usize) -> usize {
        let (da, db) = (self.deg(a), self.deg(b));
        if da != db {
            return self.push(Instr::Add(a, b));
        }
        let pad = self.t_power(da + 1);
        let a = self.push(Instr::Add(pad, a));
        self.push(Instr::Add(a, b))
    }

    /// A monic value whose `t^0` part is `f`.
    fn build(&mut self, f: &PolyZ) -> usize {
        if f.is_zero() {
            return 0;
        }
        let mut parts = Vec::new();
        for (e, c) in f.terms() {
            let c = c.to_u64().expect("nonnegative coefficients checked");
            let part = if e.iter().all(|&x| x == 0) {
                self.constant(c)
            } else {
                let base = self.product(e);
                if c == 1 {
                    base
                } else {
                    let k = self.constant(c);
                    self.push(Instr::Mul(base, k))
                }
            };
            parts.push(part);
        }
        parts.sort_by_key(|&i| std::cmp::Reverse(self.deg(i)));
        let mut acc = parts[0];
        for &p in &parts[1..] {
            acc = self.add_monic(acc, p);
        }
        acc
    }

    /// Adds `z` to `side`, first raising both sides by `t^d` if `side`
    /// does not dominate `z`.
    fn add_to(&mut self, side: &mut usize, other: &mut usize, z: usize) {
        if self.deg(*side) <= self.deg(z) {
            let d = self.deg(*side).max(self.deg(*other)).max(self.deg(z)) + 1;
            let pad = self.t_power(d);
            *side = self.push(Instr::Add(pad, *side));
            *other = self.push(Instr::Add(pad, *other));
        }
        *side = self.push(Instr::Add(*side, z));
    }

    /// Builds both sides and removes every `t`-term from their difference.
    fn pair(&mut self, f: &PolyZ, g: &PolyZ) -> (usize, usize) {
        let mut a = self.build(f);
        let mut b = self.build(g);
        loop {
            let diff = self.vals[a].sub(&self.vals[b]);
            let target = diff
                .terms()
                .iter()
                .filter(|(e, _)| e[0] > 0)
                .max_by(|(x, _), (y, _)| {
                    (PolyZ::y_degree(x), &x[1..], x[0]).cmp(&(PolyZ::y_degree(y), &y[1..], y[0]))
                })
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = target else { break };
            let z = self.product(&e);
            let times = c.abs().to_u64().expect("coefficient fits");
            for _ in 0..times {
                if c > BigInt::from(0) {
                    self.add_to(&mut b, &mut a, z);
                } else {
                    self.add_to(&mut a, &mut b, z);
                }
            }
        }
        (a, b)
    }
}

/// Builds an elementary monic representation of the algebra. Equality
/// pair `k` has symbolic difference exactly `f_k - g_k`; the inversions
/// become inequality pairs in the same way.
pub fn compile_algebra(a: &PresentedAlgebra) -> Result<MonicRep> {
    a.validate()?;
    let mut b = Builder::new(a.n);
    for (f, g) in &a.relations {
        let p = b.pair(f, g);
        b.rep.eq.push(p);
    }
    for (f, g) in &a.inversions {
        let p = b.pair(f, g);
        b.rep.ineq.push(p);
    }
    Ok(b.rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &PresentedAlgebra) -> MonicRep {
        let rep = compile_algebra(a).unwrap();
        assert!(rep.validate().is_empty(), "{:?}", rep.validate());
        let vals = rep.eval_symbolic_all().unwrap();
        for ((f, g), &(i, j)) in a.relations.iter().zip(&rep.eq) {
            assert_eq!(vals[i].sub(&vals[j]), f.sub(g));
        }
        for ((f, g), &(i, j)) in a.inversions.iter().zip(&rep.ineq) {
            assert_eq!(vals[i].sub(&vals[j]), f.sub(g));
        }
        rep
    }

    #[test]
    fn small_presentations() {
        check(&PresentedAlgebra::new(2).relation("y1*y2", "1").unwrap());
        let rep = check(&PresentedAlgebra::new(0).relation("5", "0").unwrap());
        assert_eq!(rep.equality_differences().unwrap(), vec![PolyZ::constant(0, 5)]);
        let rep = check(&PresentedAlgebra::new(1).relation("y", "y").unwrap());
        assert_eq!(rep.equality_differences().unwrap(), vec![PolyZ::zero(1)]);
        check(&PresentedAlgebra::new(1).relation("y^2 + 1", "0").unwrap());
        check(&PresentedAlgebra::new(2).relation("3*y1^2*y2 + y2 + 2", "y1^3 + 4*y2^2").unwrap());
        check(&PresentedAlgebra::new(1).inversion("y", "0").unwrap().relation("y^3", "y + 1").unwrap());
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(compile_algebra(&PresentedAlgebra::new(1).relation("0", "0").unwrap()).is_err());
        let neg = PresentedAlgebra { n: 1, relations: vec![(PolyZ::parse(1, "y").unwrap().neg(), PolyZ::zero(1))], inversions: vec![] };
        assert!(compile_algebra(&neg).is_err());
        let with_t = PresentedAlgebra { n: 1, relations: vec![(PolyZ::t(1), PolyZ::zero(1))], inversions: vec![] };
        assert!(compile_algebra(&with_t).is_err());
    }

    #[test]
    fn json() {
        let v = json!({"n": 2, "relations": [["y1*y2", "1"]], "inversions": [["y1", "0"]]});
        let a = PresentedAlgebra::from_json(&v).unwrap();
        assert_eq!(PresentedAlgebra::from_json(&a.to_json()).unwrap(), a);
        assert!(PresentedAlgebra::from_json(&json!({"n": 1, "relations": [["-y", "0"]]})).is_err());
    }
}
