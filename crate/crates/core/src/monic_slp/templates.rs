use crate::error::{Error, Result};
use crate::field::is_prime;

use super::{Instr, MonicRep};

/// Largest `l` with `l^2 < p`.
pub fn sqrt_floor_below(p: u64) -> u64 {
    let mut l = (p as f64).sqrt() as u64;
    while l * l >= p && l > 0 {
        l -= 1;
    }
    while (l + 1) * (l + 1) < p {
        l += 1;
    }
    l
}

/// Builds `a = t^3 + 2t^2 + 2lt` and `b = t^3 + 2t^2 + 2lt + p` and returns
/// the program with the indices of `(b, a)`.
fn template(p: u32) -> Result<(MonicRep, (usize, usize))> {
    if !is_prime(p as u64) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    let l = sqrt_floor_below(p as u64) as usize;
    let mut rep = MonicRep::free(0);
    let x1 = rep.push(Instr::Mul(0, 0));
    let x2 = rep.push(Instr::Mul(0, x1));
    let mut tl = 0;
    for _ in 0..l {
        tl = rep.push(Instr::Inc(tl));
    }
    let s = rep.push(Instr::Add(x1, tl));
    let s = rep.push(Instr::Add(s, tl));
    let a = rep.push(Instr::Mul(0, s));
    let mut c = rep.push(Instr::Mul(tl, tl));
    for _ in 0..(p as usize - l * l) {
        c = rep.push(Instr::Inc(c));
    }
    let c = rep.push(Instr::Add(x2, c));
    let b = rep.push(Instr::Add(x1, c));
    Ok((rep, (b, a)))
}

/// A representation of `ℤ/p`: one equality with difference `p`.
pub fn zmodp_rep(p: u32) -> Result<MonicRep> {
    let (mut rep, pair) = template(p)?;
    rep.eq.push(pair);
    Ok(rep)
}

/// A representation of `ℤ[1/p]`: one inequality with difference `p`.
pub fn zinvp_rep(p: u32) -> Result<MonicRep> {
    let (mut rep, pair) = template(p)?;
    rep.ineq.push(pair);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monic_slp::{OpCounts, PolyZ};

    #[test]
    fn p5_layout() {
        let rep = zmodp_rep(5).unwrap();
        assert_eq!(rep.last_index(), 11);
        assert_eq!(rep.eq, vec![(11, 7)]);
        assert_eq!(rep.counts(), OpCounts { n: 0, a: 4, m: 4, o: 3, e: 1, i: 0 });
        assert_eq!(rep.eval_symbolic(1).unwrap(), PolyZ::parse(0, "t^2").unwrap());
        assert_eq!(rep.eval_symbolic(7).unwrap(), PolyZ::parse(0, "t^3 + 2*t^2 + 4*t").unwrap());
        assert!(rep.validate().is_empty());
        assert_eq!(rep.equality_differences().unwrap(), vec![PolyZ::constant(0, 5)]);
        let inv = zinvp_rep(5).unwrap();
        assert_eq!(inv.ineq, vec![(11, 7)]);
        assert!(inv.eq.is_empty());
    }

    #[test]
    fn sqrt_below() {
        assert_eq!(sqrt_floor_below(5), 2);
        assert_eq!(sqrt_floor_below(443), 21);
        assert_eq!(sqrt_floor_below(439), 20);
        assert_eq!(sqrt_floor_below(9), 2);
        assert_eq!(sqrt_floor_below(2), 1);
        assert_eq!(zmodp_rep(443).unwrap().counts().o, 23);
        assert!(zmodp_rep(9).is_err());
    }
}
