//! The projective plane over an exact field: points, lines, collinearity,
//! point configurations and the matroids they induce.

mod search;
mod verdict;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{AnyField, Field, FieldSpec, FiniteField, Rationals};
use crate::matroid::Matroid;

pub use search::{realization_search, SearchBudget, SearchOutcome};
pub use verdict::{lifting_verdict, u2ext_galois_realization, GaloisRealization, LiftingVerdict, VerdictRequest};

/// Homogeneous coordinates scaled so the first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint<E>([E; 3]);

impl<E: Clone> ProjPoint<E> {
    /// Normalizes a nonzero triple; `None` for the zero vector.
    pub fn new<F: Field<Elem = E>>(f: &F, coords: [E; 3]) -> Option<ProjPoint<E>> {
        let lead = coords.iter().position(|c| !f.is_zero(c))?;
        let s = f.inv(&coords[lead])?;
        Some(ProjPoint(coords.map(|c| f.mul(&c, &s))))
    }

    pub fn coords(&self) -> &[E; 3] {
        &self.0
    }
}

pub fn det3<F: Field>(f: &F, a: &[F::Elem; 3], b: &[F::Elem; 3], c: &[F::Elem; 3]) -> F::Elem {
    let minor = |i: usize, j: usize| f.sub(&f.mul(&b[i], &c[j]), &f.mul(&b[j], &c[i]));
    let t0 = f.mul(&a[0], &minor(1, 2));
    let t1 = f.mul(&a[1], &minor(0, 2));
    let t2 = f.mul(&a[2], &minor(0, 1));
    f.add(&f.sub(&t0, &t1), &t2)
}

pub fn cross<F: Field>(f: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> [F::Elem; 3] {
    let m = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> F::Elem {
    (0..3).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&a[i], &b[i])))
}

pub fn collinear<F: Field>(f: &F, p: &ProjPoint<F::Elem>, q: &ProjPoint<F::Elem>, r: &ProjPoint<F::Elem>) -> bool {
    f.is_zero(&det3(f, p.coords(), q.coords(), r.coords()))
}

/// The line through two distinct points, as a normalized dual point.
pub fn line_through<F: Field>(f: &F, p: &ProjPoint<F::Elem>, q: &ProjPoint<F::Elem>) -> Option<ProjPoint<F::Elem>> {
    ProjPoint::new(f, cross(f, p.coords(), q.coords()))
}

/// Intersection of two distinct lines.
pub fn meet<F: Field>(f: &F, l: &ProjPoint<F::Elem>, m: &ProjPoint<F::Elem>) -> Option<ProjPoint<F::Elem>> {
    ProjPoint::new(f, cross(f, l.coords(), m.coords()))
}

pub fn on_line<F: Field>(f: &F, l: &ProjPoint<F::Elem>, p: &ProjPoint<F::Elem>) -> bool {
    f.is_zero(&dot(f, l.coords(), p.coords()))
}

/// Points whose normalized coordinates come from `values`, in the order
/// `(0:0:1)`, `(0:1:c)`, `(1:b:c)`.
pub fn points_over<F: Field>(f: &F, values: &[F::Elem]) -> Vec<ProjPoint<F::Elem>> {
    let mut out = vec![ProjPoint([f.zero(), f.zero(), f.one()])];
    for c in values {
        out.push(ProjPoint([f.zero(), f.one(), c.clone()]));
    }
    for b in values {
        for c in values {
            out.push(ProjPoint([f.one(), b.clone(), c.clone()]));
        }
    }
    out
}

/// Every point of the plane over a finite field (`q^2 + q + 1` of them).
pub fn all_points<F: Field>(f: &F) -> Vec<ProjPoint<F::Elem>> {
    let values = f.elements().expect("all_points needs a finite field");
    points_over(f, &values)
}

/// Rationals `a/b` with `|a|, b <= height`, sorted.
pub fn rational_values<F: Field>(f: &F, height: u32) -> Vec<F::Elem> {
    let h = height as i64;
    let mut vals = std::collections::BTreeSet::new();
    for b in 1..=h {
        for a in -h..=h {
            vals.insert(f.div(&f.from_int(a), &f.from_int(b)).expect("nonzero denominator"));
        }
    }
    vals.into_iter().collect()
}

/// Pairwise-distinct points over one field, optionally labeled.
#[derive(Debug, Clone)]
pub struct PointConfig<F: Field> {
    pub field: F,
    pub points: Vec<ProjPoint<F::Elem>>,
    pub labels: Option<Vec<String>>,
}

impl<F: Field> PointConfig<F> {
    pub fn new(field: F, points: Vec<ProjPoint<F::Elem>>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != points.len() {
                return Err(Error::Argument("label count differs from point count".into()));
            }
        }
        let mut seen = HashSet::new();
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::Argument(format!("point {i} repeats an earlier point")));
            }
        }
        Ok(PointConfig { field, points, labels })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => (i + 1).to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        let pts: Vec<Value> = self
            .points
            .iter()
            .map(|p| Value::Array(p.coords().iter().map(|c| self.field.elem_to_json(c)).collect()))
            .collect();
        let mut v = json!({ "field": self.field.spec().to_json(), "points": pts });
        if let Some(l) = &self.labels {
            v["labels"] = json!(l);
        }
        v
    }

    /// Reads points over an already-built field.
    pub fn from_json_with(field: F, v: &Value) -> Result<Self> {
        let pts = v
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("config needs a `points` array".into()))?;
        let mut points = Vec::with_capacity(pts.len());
        for (i, p) in pts.iter().enumerate() {
            let coords = p
                .as_array()
                .filter(|c| c.len() == 3)
                .ok_or_else(|| Error::Format(format!("point {i} must have three coordinates")))?;
            let c = [
                field.elem_from_json(&coords[0])?,
                field.elem_from_json(&coords[1])?,
                field.elem_from_json(&coords[2])?,
            ];
            points.push(ProjPoint::new(&field, c).ok_or_else(|| Error::Format(format!("point {i} is zero")))?);
        }
        let labels = match v.get("labels") {
            Some(l) => Some(serde_json::from_value(l.clone()).map_err(|e| Error::Format(e.to_string()))?),
            None => None,
        };
        PointConfig::new(field, points, labels)
    }

    /// Applies `x -> x^p` to every coordinate.
    pub fn frobenius_image(&self) -> Vec<ProjPoint<F::Elem>> {
        self.points
            .iter()
            .map(|p| ProjPoint::new(&self.field, p.coords().clone().map(|c| self.field.frobenius(&c))).expect("Frobenius is injective"))
            .collect()
    }
}

/// A configuration over a field chosen at runtime.
#[derive(Debug, Clone)]
pub enum AnyConfig {
    Q(PointConfig<Rationals>),
    F(PointConfig<FiniteField>),
}

impl AnyConfig {
    pub fn from_json(v: &Value) -> Result<AnyConfig> {
        let spec = FieldSpec::from_json(v.get("field").ok_or_else(|| Error::Format("config needs a `field`".into()))?)?;
        Ok(match spec.build()? {
            AnyField::Q(f) => AnyConfig::Q(PointConfig::from_json_with(f, v)?),
            AnyField::F(f) => AnyConfig::F(PointConfig::from_json_with(f, v)?),
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyConfig::Q(c) => c.to_json(),
            AnyConfig::F(c) => c.to_json(),
        }
    }

    pub fn collinearity_matroid(&self) -> Result<Matroid> {
        match self {
            AnyConfig::Q(c) => collinearity_matroid(c),
            AnyConfig::F(c) => collinearity_matroid(c),
        }
    }
}

/// The matroid whose flats are the maximal collinear subsets of size >= 2.
pub fn collinearity_matroid<F: Field>(config: &PointConfig<F>) -> Result<Matroid> {
    let f = &config.field;
    let pts = &config.points;
    let n = pts.len();
    if n < 3 {
        return Err(Error::Argument("need at least three points".into()));
    }
    let mut lines: HashMap<ProjPoint<F::Elem>, Vec<usize>> = HashMap::new();
    for i in 0..n {
        // Each line is recorded once, from its first point.
        let mut local: BTreeMap<ProjPoint<F::Elem>, Vec<usize>> = BTreeMap::new();
        for j in i + 1..n {
            let l = line_through(f, &pts[i], &pts[j])
                .ok_or_else(|| Error::Argument(format!("points {i} and {j} coincide")))?;
            local.entry(l).or_default().push(j);
        }
        for (l, members) in local {
            lines.entry(l).or_insert_with(|| {
                let mut v = vec![i];
                v.extend(members);
                v
            });
        }
    }
    if lines.len() < 2 {
        return Err(Error::Argument("all points are collinear".into()));
    }
    let names = (0..n).map(|i| config.label(i)).collect();
    Matroid::from_indices(names, lines.into_values().collect())
}

/// Is the point set closed under the `p`-power Frobenius?
pub fn frobenius_closed(config: &PointConfig<FiniteField>, p: u64) -> Result<bool> {
    if config.field.characteristic() != p {
        return Err(Error::Argument(format!(
            "{} is not an extension of F_{p}",
            config.field.spec()
        )));
    }
    let set: HashSet<&ProjPoint<u32>> = config.points.iter().collect();
    Ok(config.frobenius_image().iter().all(|q| set.contains(q)))
}
