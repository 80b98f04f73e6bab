//! Exact placement of gadget points. Horizontal lines all pass through
//! `P_∞ = (1:0:0)`; a value `v` on a line with anchors `zero`, `one` sits at
//! affine abscissa `zero + v (one - zero)`.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::projective::{line_through, meet, ProjPoint};

pub(crate) type Pt<F> = ProjPoint<<F as Field>::Elem>;

pub(crate) fn affine<F: Field>(f: &F, x: &F::Elem, y: &F::Elem) -> Pt<F> {
    ProjPoint::new(f, [x.clone(), y.clone(), f.one()]).expect("affine points are nonzero")
}

pub(crate) fn infinity<F: Field>(f: &F) -> Pt<F> {
    ProjPoint::new(f, [f.one(), f.zero(), f.zero()]).expect("nonzero")
}

/// The line `y = h`.
pub(crate) fn horizontal<F: Field>(f: &F, h: &F::Elem) -> Pt<F> {
    ProjPoint::new(f, [f.zero(), f.one(), f.neg(h)]).expect("nonzero")
}

/// Central projection of `p` from `c` onto `line`.
pub(crate) fn project<F: Field>(f: &F, c: &Pt<F>, p: &Pt<F>, line: &Pt<F>) -> Option<Pt<F>> {
    let l = line_through(f, c, p)?;
    meet(f, &l, line)
}

fn meet_of<F: Field>(f: &F, a: (&Pt<F>, &Pt<F>), b: (&Pt<F>, &Pt<F>)) -> Option<Pt<F>> {
    meet(f, &line_through(f, a.0, a.1)?, &line_through(f, b.0, b.1)?)
}

/// Cross-ratio coordinate of `var` with respect to `zero`, `one` and `P_∞`.
pub(crate) fn ratio<F: Field>(f: &F, zero: &Pt<F>, one: &Pt<F>, var: &Pt<F>) -> Option<F::Elem> {
    let x = |p: &Pt<F>| f.div(&p.coords()[0], &p.coords()[2]);
    let (z, o, v) = (x(zero)?, x(one)?, x(var)?);
    f.div(&f.sub(&v, &z), &f.sub(&o, &z))
}

/// Zero, one and variable points of a horizontal line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LinePts<E> {
    pub zero: ProjPoint<E>,
    pub one: ProjPoint<E>,
    pub var: ProjPoint<E>,
}

pub(crate) fn value_line<F: Field>(f: &F, h: &F::Elem, z: &F::Elem, o: &F::Elem, v: &F::Elem) -> LinePts<F::Elem> {
    let x = f.add(z, &f.mul(v, &f.sub(o, z)));
    LinePts { zero: affine(f, z, h), one: affine(f, o, h), var: affine(f, &x, h) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Arith {
    Mul,
    Add,
}

/// Output of an arithmetic gadget. `centers` is `[T, B]` for a product and
/// `[T, B1, B2]` for a sum.
#[derive(Debug, Clone)]
pub(crate) struct ArithPts<E> {
    pub line: LinePts<E>,
    pub aux: ProjPoint<E>,
    pub centers: Vec<ProjPoint<E>>,
}

impl<E: Clone> ArithPts<E> {
    /// In template order: zero, one, var, aux, then the centers.
    pub fn points(&self) -> Vec<ProjPoint<E>> {
        let mut v = vec![self.line.zero.clone(), self.line.one.clone(), self.line.var.clone(), self.aux.clone()];
        v.extend(self.centers.iter().cloned());
        v
    }
}

/// Transports `j` to the line `y = h` through `top`, then scales (product)
/// or translates (sum) by the value on `k`.
pub(crate) fn place_arith<F: Field>(
    f: &F,
    kind: Arith,
    j: &LinePts<F::Elem>,
    k: &LinePts<F::Elem>,
    h: &F::Elem,
    top: &Pt<F>,
) -> Option<ArithPts<F::Elem>> {
    let li = horizontal(f, h);
    let zero = project(f, top, &j.zero, &li)?;
    let one = project(f, top, &j.one, &li)?;
    let aux = project(f, top, &j.var, &li)?;
    match kind {
        Arith::Mul => {
            let b = meet_of(f, (&k.zero, &zero), (&k.one, &aux))?;
            let var = project(f, &b, &k.var, &li)?;
            Some(ArithPts { line: LinePts { zero, one, var }, aux, centers: vec![top.clone(), b] })
        }
        Arith::Add => {
            let b2 = meet_of(f, (&k.zero, &zero), (&k.one, &one))?;
            let level = line_through(f, &b2, &infinity(f))?;
            let b1 = meet(f, &line_through(f, &k.zero, &aux)?, &level)?;
            let var = project(f, &b1, &k.var, &li)?;
            Some(ArithPts { line: LinePts { zero, one, var }, aux, centers: vec![top.clone(), b1, b2] })
        }
    }
}

/// Output of a comparison gadget: both inputs carried to a common line.
#[derive(Debug, Clone)]
pub(crate) struct ComparePts<E> {
    pub zero: ProjPoint<E>,
    pub one: ProjPoint<E>,
    pub c1: ProjPoint<E>,
    pub c2: ProjPoint<E>,
    pub w1: ProjPoint<E>,
    pub w2: ProjPoint<E>,
}

pub(crate) fn place_compare<F: Field>(
    f: &F,
    a: &LinePts<F::Elem>,
    b: &LinePts<F::Elem>,
    h: &F::Elem,
    z: &F::Elem,
    o: &F::Elem,
) -> Option<ComparePts<F::Elem>> {
    let lc = horizontal(f, h);
    let zero = affine(f, z, h);
    let one = affine(f, o, h);
    let c1 = meet_of(f, (&a.zero, &zero), (&a.one, &one))?;
    let c2 = meet_of(f, (&b.zero, &zero), (&b.one, &one))?;
    let w1 = project(f, &c1, &a.var, &lc)?;
    let w2 = project(f, &c2, &b.var, &lc)?;
    Some(ComparePts { zero, one, c1, c2, w1, w2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    Mul,
    Add,
    Inc,
    Eq,
    Ne,
}

impl std::str::FromStr for GadgetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<GadgetKind> {
        Ok(match s {
            "mul" => GadgetKind::Mul,
            "add" => GadgetKind::Add,
            "inc" => GadgetKind::Inc,
            "eq" => GadgetKind::Eq,
            "ne" => GadgetKind::Ne,
            _ => return Err(Error::Argument(format!("unknown gadget {s}; expected mul, add, inc, eq or ne"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetOutput {
    /// Value read off the output line.
    Value(BigRational),
    /// Whether the two transported points coincide.
    Coincide(bool),
}

const GADGET_REDRAWS: usize = 64;

fn distinct<E: Eq + std::hash::Hash>(pts: &[ProjPoint<E>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    pts.iter().all(|p| seen.insert(p))
}

/// Realizes one gadget over ℚ with seeded random heights and centers and
/// reads off its output.
pub fn gadget_check(kind: GadgetKind, inputs: &[BigRational], seed: u64) -> Result<GadgetOutput> {
    let want = match kind {
        GadgetKind::Inc => 1,
        _ => 2,
    };
    if inputs.len() != want {
        return Err(Error::Argument(format!("{kind:?} takes {want} input(s), got {}", inputs.len())));
    }
    let q = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..GADGET_REDRAWS {
        let height = 8 + attempt as u32;
        let mut draw = || q.random(&mut rng, height);
        let (h1, z1, o1) = (draw(), draw(), draw());
        let (h2, z2, o2) = (draw(), draw(), draw());
        let (h, tx, ty) = (draw(), draw(), draw());
        if z1 == o1 || z2 == o2 || h1 == h2 || h == h1 || h == h2 || ty == h || ty == h1 || ty == h2 {
            continue;
        }
        let a = value_line(&q, &h1, &z1, &o1, &inputs[0]);
        let b = match kind {
            GadgetKind::Inc => value_line(&q, &q.zero(), &q.zero(), &q.one(), &q.one()),
            _ => value_line(&q, &h2, &z2, &o2, &inputs[1]),
        };
        if b.zero == a.zero || h1.eq(&q.zero()) {
            continue;
        }
        match kind {
            GadgetKind::Mul | GadgetKind::Add | GadgetKind::Inc => {
                let arith = if kind == GadgetKind::Mul { Arith::Mul } else { Arith::Add };
                let Some(out) = place_arith(&q, arith, &a, &b, &h, &affine(&q, &tx, &ty)) else { continue };
                let base = [&out.line.zero, &out.line.one, &out.aux];
                if !distinct(&base.map(Clone::clone)) || out.centers.iter().any(|c| c.coords()[2] == q.zero()) {
                    continue;
                }
                let Some(v) = ratio(&q, &out.line.zero, &out.line.one, &out.line.var) else { continue };
                return Ok(GadgetOutput::Value(v));
            }
            GadgetKind::Eq | GadgetKind::Ne => {
                let Some(out) = place_compare(&q, &a, &b, &h, &tx, &ty) else { continue };
                if tx == ty || out.c1 == out.c2 {
                    continue;
                }
                return Ok(GadgetOutput::Coincide(out.w1 == out.w2));
            }
        }
    }
    Err(Error::GenericityExhausted(GADGET_REDRAWS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn arithmetic_contracts() {
        assert_eq!(gadget_check(GadgetKind::Mul, &[r(2), r(3)], 1).unwrap(), GadgetOutput::Value(r(6)));
        assert_eq!(gadget_check(GadgetKind::Add, &[r(2), r(3)], 1).unwrap(), GadgetOutput::Value(r(5)));
        assert_eq!(gadget_check(GadgetKind::Inc, &[r(4)], 1).unwrap(), GadgetOutput::Value(r(5)));
        assert_eq!(gadget_check(GadgetKind::Eq, &[r(4), r(4)], 1).unwrap(), GadgetOutput::Coincide(true));
        assert_eq!(gadget_check(GadgetKind::Ne, &[r(4), r(3)], 1).unwrap(), GadgetOutput::Coincide(false));
        assert!(gadget_check(GadgetKind::Inc, &[r(4), r(1)], 1).is_err());
    }
}
