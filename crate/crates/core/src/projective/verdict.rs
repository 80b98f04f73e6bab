use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{is_prime, Field, FiniteField, MAX_FIELD_ORDER};
use crate::matroid::Matroid;
use crate::matroid_divisor::rr_threshold;

use super::{realization_search, PointConfig, ProjPoint, SearchBudget, SearchOutcome};

/// Parameters for [`lifting_verdict`].
#[derive(Debug, Clone, Copy)]
pub struct VerdictRequest {
    pub characteristic: u32,
    /// Search `F_{p^j}` for every `j <= extension_bound`.
    pub extension_bound: u32,
    /// An extra field `F_{p^k}` to try first.
    pub field_degree: Option<u32>,
    pub budget: SearchBudget,
}

#[derive(Debug, Clone)]
pub enum LiftingVerdict {
    /// A realization over a field larger than the threshold.
    Lifts { threshold: i64, certificate: PointConfig<FiniteField> },
    /// Exhaustive search found nothing over `F_{p^j}`, `j <= bound`.
    NoRealizationUpTo { bound: u32, searched: Vec<u64> },
    Undetermined { threshold: i64, reason: String },
}

impl LiftingVerdict {
    pub fn label(&self) -> String {
        match self {
            LiftingVerdict::Lifts { .. } => "LIFTS".into(),
            LiftingVerdict::NoRealizationUpTo { bound, .. } => format!("NO_REALIZATION_UP_TO({bound})"),
            LiftingVerdict::Undetermined { .. } => "UNDETERMINED".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            LiftingVerdict::Lifts { threshold, certificate } => json!({
                "verdict": self.label(),
                "threshold": threshold,
                "field_order": certificate.field.size(),
                "certificate": certificate.to_json(),
            }),
            LiftingVerdict::NoRealizationUpTo { searched, .. } => json!({
                "verdict": self.label(),
                "searched_orders": searched,
            }),
            LiftingVerdict::Undetermined { threshold, reason } => json!({
                "verdict": self.label(),
                "threshold": threshold,
                "reason": reason,
            }),
        }
    }
}

fn field_order(p: u32, k: u32) -> Option<u64> {
    (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER)
}

/// Decides what bounded search can say about lifting `(Γ_M, D_M)` in
/// characteristic `p`. A realization over a field with more than
/// `m - 2n + 1` elements gives `LIFTS`; exhaustive failure over all small
/// extensions gives `NO_REALIZATION_UP_TO(K)`, which is evidence but not
/// proof that no lift exists.
pub fn lifting_verdict(m: &Matroid, req: VerdictRequest) -> Result<LiftingVerdict> {
    let p = req.characteristic;
    if !is_prime(p as u64) {
        return Err(Error::Argument(format!("characteristic {p} is not prime")));
    }
    let threshold = rr_threshold(m);
    let mut degrees: Vec<u32> = req.field_degree.into_iter().collect();
    degrees.extend((1..=req.extension_bound).filter(|j| Some(*j) != req.field_degree));

    let mut searched = Vec::new();
    let mut realizing: Option<u32> = None;
    let mut exhausted = false;
    for &k in &degrees {
        let Some(q) = field_order(p, k) else {
            exhausted = true;
            continue;
        };
        let f = FiniteField::new(p, k)?;
        searched.push(q);
        match realization_search(m, &f, req.budget) {
            SearchOutcome::Found(cfg) if q as i64 > threshold => {
                return Ok(LiftingVerdict::Lifts { threshold, certificate: cfg });
            }
            SearchOutcome::Found(_) => {
                realizing = Some(realizing.map_or(k, |r: u32| r.min(k)));
            }
            SearchOutcome::NotRealizable => {}
            SearchOutcome::BudgetExhausted => exhausted = true,
        }
    }

    if let Some(k) = realizing {
        // A realization over F_{p^k} persists over every F_{p^{kj}}.
        let mut j = 2;
        while let Some(q) = field_order(p, k * j) {
            if q as i64 > threshold {
                let f = FiniteField::new(p, k * j)?;
                if let SearchOutcome::Found(cfg) = realization_search(m, &f, req.budget) {
                    return Ok(LiftingVerdict::Lifts { threshold, certificate: cfg });
                }
                break;
            }
            j += 1;
        }
        return Ok(LiftingVerdict::Undetermined {
            threshold,
            reason: format!("realizable over F_{{{p}^{k}}} but no certificate above the threshold"),
        });
    }
    if exhausted {
        return Ok(LiftingVerdict::Undetermined { threshold, reason: "search budget exhausted".into() });
    }
    Ok(LiftingVerdict::NoRealizationUpTo { bound: req.extension_bound, searched })
}

/// A Frobenius-stable realization of the one-element extension of `U_{2,n-1}`.
#[derive(Debug, Clone)]
pub struct GaloisRealization {
    pub config: PointConfig<FiniteField>,
    /// Monic, square-free, coefficients in `F_p` from the constant term up.
    pub polynomial: Vec<u32>,
}

/// Roots of a square-free polynomial over `F_p` of degree `n - 1` placed at
/// `(1:a:0)`, plus the apex `(0:0:1)`. The roots are taken as whole
/// Frobenius orbits in the smallest `F_{p^k}` where that is possible.
pub fn u2ext_galois_realization(n: usize, p: u32) -> Result<GaloisRealization> {
    if n < 4 {
        return Err(Error::Argument("u2ext_galois_realization needs n >= 4".into()));
    }
    if !is_prime(p as u64) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    let need = n - 1;
    let mut k = 1;
    while let Some(q) = field_order(p, k) {
        let f = FiniteField::new(p, k)?;
        if let Some(roots) = pick_orbits(&f, q as u32, need) {
            return Ok(build_realization(&f, roots));
        }
        k += 1;
    }
    Err(Error::Resource(format!("no field F_{{{p}^k}} within limits holds {need} roots")))
}

/// Whole Frobenius orbits with total size `need`, largest orbits first.
fn pick_orbits(f: &FiniteField, q: u32, need: usize) -> Option<Vec<u32>> {
    let mut seen = BTreeSet::new();
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for a in 0..q {
        if seen.contains(&a) {
            continue;
        }
        let mut orbit = vec![a];
        let mut x = f.frobenius(&a);
        while x != a {
            orbit.push(x);
            x = f.frobenius(&x);
        }
        seen.extend(orbit.iter().copied());
        orbits.push(orbit);
    }
    orbits.sort_by_key(|o| (std::cmp::Reverse(o.len()), o[0]));
    let mut roots = Vec::new();
    for o in orbits {
        if roots.len() + o.len() <= need {
            roots.extend(o);
        }
    }
    (roots.len() == need).then_some(roots)
}

fn build_realization(f: &FiniteField, roots: Vec<u32>) -> GaloisRealization {
    // prod (x - a), low degree first.
    let mut poly = vec![f.one()];
    for a in &roots {
        let mut next = vec![f.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], c);
            next[i] = f.sub(&next[i], &f.mul(c, a));
        }
        poly = next;
    }
    debug_assert!(poly.iter().all(|c| f.in_prime_field(*c)));
    let mut points: Vec<ProjPoint<u32>> =
        roots.iter().map(|&a| ProjPoint::new(f, [f.one(), a, f.zero()]).expect("nonzero")).collect();
    points.push(ProjPoint::new(f, [f.zero(), f.zero(), f.one()]).expect("nonzero"));
    let labels = (1..=points.len()).map(|i| i.to_string()).collect();
    GaloisRealization {
        config: PointConfig::new(f.clone(), points, Some(labels)).expect("distinct roots"),
        polynomial: poly,
    }
}
