use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monic_slp::Instr;
use crate::projective::{collinearity_matroid, line_through, PointConfig};

use super::geometry::{affine, infinity, place_arith, place_compare, ratio, value_line, Arith, LinePts, Pt};
use super::{forced_lines, CompiledMatroid, InField};

#[derive(Debug, Clone, Copy)]
pub struct WitnessOptions {
    /// Parameter draws allowed per gadget before starting over.
    pub max_redraws: usize,
    pub max_restarts: usize,
    /// Starting height for random rationals; grows with the draw count.
    pub height: u32,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions { max_redraws: 2000, max_restarts: 4, height: 1000 }
    }
}

#[derive(Debug, Clone)]
pub struct Witness<F: Field> {
    pub config: PointConfig<F>,
    /// Value of every index at the chosen point.
    pub values: Vec<F::Elem>,
    /// Parameter draws rejected along the way.
    pub redraws: usize,
    pub restarts: usize,
}

/// Places points one gadget at a time, rejecting any collinearity that
/// is not mandated.
struct Placer<'a, F: Field> {
    f: &'a F,
    flat_of: &'a HashMap<(usize, usize), usize>,
    elems: Vec<usize>,
    pts: Vec<Pt<F>>,
}

impl<F: Field> Placer<'_, F> {
    fn mandated(&self, a: usize, b: usize) -> Option<usize> {
        self.flat_of.get(&(a.min(b), a.max(b))).copied()
    }

    /// Accepts the new points if every line they span with the points
    /// already placed is exactly the mandated one.
    fn try_add(&mut self, new: &[(usize, Pt<F>)]) -> bool {
        let base = self.elems.len();
        for (x, (e, p)) in new.iter().enumerate() {
            let mut by_line: HashMap<Pt<F>, Option<usize>> = HashMap::new();
            let mut line_of_flat: HashMap<usize, Pt<F>> = HashMap::new();
            let earlier = self.elems.iter().zip(&self.pts).chain(new[..x].iter().map(|(a, b)| (a, b)));
            for (&a, q) in earlier {
                let Some(l) = line_through(self.f, p, q) else {
                    self.rollback(base);
                    return false;
                };
                let fid = self.mandated(*e, a);
                match by_line.get(&l) {
                    Some(&prev) if prev.is_none() || prev != fid => {
                        self.rollback(base);
                        return false;
                    }
                    Some(_) => {}
                    None => {
                        by_line.insert(l.clone(), fid);
                    }
                }
                if let Some(fid) = fid {
                    if line_of_flat.entry(fid).or_insert_with(|| l.clone()) != &l {
                        self.rollback(base);
                        return false;
                    }
                }
            }
        }
        for (e, p) in new {
            self.elems.push(*e);
            self.pts.push(p.clone());
        }
        true
    }

    fn rollback(&mut self, base: usize) {
        self.elems.truncate(base);
        self.pts.truncate(base);
    }
}

/// Builds an exact realization of the compiled matroid at the point
/// `(y, t)` of the represented algebra.
pub fn witness<F: Field>(c: &CompiledMatroid, f: &F, y: &[F::Elem], t: &F::Elem, seed: u64) -> Result<Witness<F>> {
    witness_with(c, f, y, t, seed, WitnessOptions::default())
}

pub fn witness_with<F: Field>(
    c: &CompiledMatroid,
    f: &F,
    y: &[F::Elem],
    t: &F::Elem,
    seed: u64,
    opts: WitnessOptions,
) -> Result<Witness<F>> {
    let ev = c.rep.eval_at(f, y, t)?;
    if let Some(err) = ev.to_error() {
        return Err(err);
    }
    let at = c.gadgets.at_point(f, y, t);
    if let Some(l) = forced_lines(&InField(f), &at, &c.lines).first() {
        return Err(Error::ForcedCollinearity(l.iter().map(|&e| c.matroid.element(e).to_string()).collect()));
    }
    let mut flat_of = HashMap::new();
    for (fid, l) in c.lines.iter().enumerate() {
        for (x, &a) in l.iter().enumerate() {
            for &b in &l[x + 1..] {
                flat_of.insert((a.min(b), a.max(b)), fid);
            }
        }
    }
    let mut redraws = 0;
    for restart in 0..opts.max_restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add((restart as u64) << 32));
        match attempt(c, f, &ev.values, &flat_of, &mut rng, opts, &mut redraws)? {
            Some(pts) => {
                let labels = c.matroid.elements().to_vec();
                let config = PointConfig::new(f.clone(), pts, Some(labels))?;
                // Final, independent check of every collinearity.
                if collinearity_matroid(&config)? == c.matroid {
                    return Ok(Witness { config, values: ev.values, redraws, restarts: restart });
                }
            }
            None => continue,
        }
    }
    Err(Error::GenericityExhausted(redraws))
}

/// Draws `(y, t)` until the representation evaluates without flags, then
/// builds a witness there. Stops at the first error that another draw
/// cannot cure.
pub fn witness_random<F: Field>(c: &CompiledMatroid, f: &F, seed: u64, opts: WitnessOptions) -> Result<Witness<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut last = Error::Degenerate("no unflagged point drawn".into());
    for draw in 0..RANDOM_POINT_DRAWS {
        let height = opts.height + draw as u32;
        let y: Vec<F::Elem> = (0..c.rep.n).map(|_| f.random(&mut rng, height)).collect();
        let t = f.random(&mut rng, height);
        let ev = c.rep.eval_at(f, &y, &t)?;
        match ev.to_error() {
            None => match witness_with(c, f, &y, &t, seed.wrapping_add(draw as u64), opts) {
                Err(e @ Error::ForcedCollinearity(_)) => last = e,
                other => return other,
            },
            // Pair differences are t-free, so with no free variables they
            // are constants and another draw changes nothing.
            Some(e @ (Error::EqualityViolated(..) | Error::InequalityViolated(..))) if c.rep.n == 0 => return Err(e),
            Some(e) => last = e,
        }
    }
    Err(last)
}

const RANDOM_POINT_DRAWS: usize = 256;

fn attempt<F: Field>(
    c: &CompiledMatroid,
    f: &F,
    values: &[F::Elem],
    flat_of: &HashMap<(usize, usize), usize>,
    rng: &mut ChaCha8Rng,
    opts: WitnessOptions,
    redraws: &mut usize,
) -> Result<Option<Vec<Pt<F>>>> {
    let mut pl = Placer { f, flat_of, elems: Vec::new(), pts: Vec::new() };
    let (zero, one) = (f.zero(), f.one());
    let rep = &c.rep;
    let [x0z, x0o, x0v] = c.value_lines[0];
    let [oz, oo, _] = c.one_line;
    let frame = vec![
        (0, infinity(f)),
        (x0z, affine(f, &zero, &one)),
        (x0o, affine(f, &one, &one)),
        (x0v, affine(f, &values[0], &one)),
        (oz, affine(f, &zero, &zero)),
        (oo, affine(f, &one, &zero)),
    ];
    if !pl.try_add(&frame) {
        return Err(Error::Degenerate("frame points are not in general position".into()));
    }
    let mut lines: Vec<LinePts<F::Elem>> =
        vec![LinePts { zero: frame[1].1.clone(), one: frame[2].1.clone(), var: frame[3].1.clone() }];
    let one_line = LinePts { zero: frame[4].1.clone(), one: frame[5].1.clone(), var: frame[5].1.clone() };

    // Draws parameters until the gadget fits; `None` if the budget runs out.
    let mut draw_until = |pl: &mut Placer<F>,
                          rng: &mut ChaCha8Rng,
                          place: &mut dyn FnMut(&mut ChaCha8Rng, u32) -> Result<Option<Vec<(usize, Pt<F>)>>>|
     -> Result<Option<Vec<(usize, Pt<F>)>>> {
        for k in 0..opts.max_redraws {
            let height = opts.height + (k as u32) / 8;
            if let Some(new) = place(rng, height)? {
                if pl.try_add(&new) {
                    return Ok(Some(new));
                }
            }
            *redraws += 1;
        }
        Ok(None)
    };

    for i in 1..=rep.n {
        let [ez, eo, ev] = c.value_lines[i];
        let mut place = |rng: &mut ChaCha8Rng, height: u32| {
            let (h, z, o) = (f.random(rng, height), f.random(rng, height), f.random(rng, height));
            let l = value_line(f, &h, &z, &o, &values[i]);
            Ok(Some(vec![(ez, l.zero), (eo, l.one), (ev, l.var)]))
        };
        let Some(new) = draw_until(&mut pl, rng, &mut place)? else { return Ok(None) };
        lines.push(LinePts { zero: new[0].1.clone(), one: new[1].1.clone(), var: new[2].1.clone() });
    }

    for (pos, ins) in rep.instrs.iter().enumerate() {
        let idx = rep.instr_index(pos);
        let (kind, j, k) = match *ins {
            Instr::Mul(j, k) => (Arith::Mul, lines[j].clone(), lines[k].clone()),
            Instr::Add(j, k) => (Arith::Add, lines[j].clone(), lines[k].clone()),
            Instr::Inc(j) => (Arith::Add, lines[j].clone(), one_line.clone()),
        };
        // zero, one, var, aux, T, then B or B1, B2.
        let elems: Vec<usize> = (0..c.provenance.len())
            .filter(|&e| c.provenance[e].gadget == super::GadgetRef::Instruction(idx))
            .collect();
        let mut place = |rng: &mut ChaCha8Rng, height: u32| {
            let (h, tx, ty) = (f.random(rng, height), f.random(rng, height), f.random(rng, height));
            let Some(out) = place_arith(f, kind, &j, &k, &h, &affine(f, &tx, &ty)) else { return Ok(None) };
            if ratio(f, &out.line.zero, &out.line.one, &out.line.var).as_ref() != Some(&values[idx]) {
                return Ok(None);
            }
            Ok(Some(elems.iter().copied().zip(out.points()).collect()))
        };
        let Some(new) = draw_until(&mut pl, rng, &mut place)? else { return Ok(None) };
        lines.push(LinePts { zero: new[0].1.clone(), one: new[1].1.clone(), var: new[2].1.clone() });
    }

    let pairs = rep.eq.iter().map(|&p| (p, true)).chain(rep.ineq.iter().map(|&p| (p, false)));
    let (mut ne, mut nq) = (0, 0);
    for ((a, b), equality) in pairs {
        let g = if equality {
            ne += 1;
            super::GadgetRef::Equality(ne)
        } else {
            nq += 1;
            super::GadgetRef::Inequality(nq)
        };
        let elems: Vec<usize> = (0..c.provenance.len()).filter(|&e| c.provenance[e].gadget == g).collect();
        let (la, lb) = (lines[a].clone(), lines[b].clone());
        let mut place = |rng: &mut ChaCha8Rng, height: u32| {
            let (h, z, o) = (f.random(rng, height), f.random(rng, height), f.random(rng, height));
            let Some(out) = place_compare(f, &la, &lb, &h, &z, &o) else { return Ok(None) };
            match (equality, out.w1 == out.w2) {
                (true, false) => return Err(Error::EqualityViolated(a, b)),
                (false, true) => return Err(Error::InequalityViolated(a, b)),
                _ => {}
            }
            let mut pts = vec![out.zero, out.one, out.c1, out.c2, out.w1];
            if !equality {
                pts.push(out.w2);
            }
            Ok(Some(elems.iter().copied().zip(pts).collect()))
        };
        if draw_until(&mut pl, rng, &mut place)?.is_none() {
            return Ok(None);
        }
    }

    // Back to template order.
    let mut out: Vec<Option<Pt<F>>> = vec![None; c.matroid.len()];
    for (e, p) in pl.elems.into_iter().zip(pl.pts) {
        out[e] = Some(p);
    }
    Ok(Some(out.into_iter().map(|p| p.expect("every element placed")).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use crate::mnev::compile;
    use crate::monic_slp::{zmodp_rep, MonicRep};

    #[test]
    fn trivial_over_q() {
        let c = compile(&MonicRep::free(1)).unwrap();
        let q = Rationals;
        let w = witness(&c, &q, &[q.from_int(7)], &q.from_int(2), 0).unwrap();
        assert_eq!(w.config.len(), 9);
        assert_eq!(collinearity_matroid(&w.config).unwrap(), c.matroid);
    }

    #[test]
    fn wrong_characteristic() {
        let c = compile(&zmodp_rep(5).unwrap()).unwrap();
        let f7 = FiniteField::prime(7).unwrap();
        assert_eq!(witness(&c, &f7, &[], &3, 0).unwrap_err(), Error::EqualityViolated(11, 7));
    }

    #[test]
    fn small_programs_over_q() {
        let q = Rationals;
        let mut rep = MonicRep::free(1);
        let a = rep.push(Instr::Mul(0, 1));
        let b = rep.push(Instr::Inc(a));
        rep.push(Instr::Add(b, 1));
        rep.push(Instr::Mul(1, 1));
        let c = compile(&rep).unwrap();
        let w = witness(&c, &q, &[q.from_int(3)], &q.from_int(2), 7).unwrap();
        assert_eq!(collinearity_matroid(&w.config).unwrap(), c.matroid);
    }

    #[test]
    fn zmodp_round_trip() {
        let c = compile(&zmodp_rep(5).unwrap()).unwrap();
        let f = FiniteField::new(5, 6).unwrap();
        let t = (2..f.size()).find(|t| c.rep.eval_at(&f, &[], t).unwrap().is_clean()).unwrap();
        let w = witness(&c, &f, &[], &t, 3).unwrap();
        assert_eq!(collinearity_matroid(&w.config).unwrap(), c.matroid);
    }
}
