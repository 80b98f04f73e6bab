//! Rank-3 simple matroids, stored as an element list plus the full list of
//! rank-2 flats (two-element flats included).

mod enumerate;
mod named;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{canonical_form, enumerate_rank3_simple, isomorphism, is_isomorphic, MAX_ENUMERATION_SIZE};
pub use named::{by_name, fano, five_point, four_lines, non_fano, pg2, two_flat, u2ext, u34, uniform};

/// Unvalidated matroid in its JSON shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidData {
    pub elements: Vec<String>,
    pub flats: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateElement(String),
    UnknownElement { flat: usize, element: String },
    RepeatedInFlat { flat: usize, element: String },
    SmallFlat { flat: usize, size: usize },
    PairUncovered(String, String),
    PairInSeveralFlats { pair: (String, String), flats: Vec<usize> },
    TooFewFlats(usize),
    FlagIdentity { sum: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateElement(e) => write!(f, "element {e} listed twice"),
            Violation::UnknownElement { flat, element } => {
                write!(f, "flat #{flat} mentions unknown element {element}")
            }
            Violation::RepeatedInFlat { flat, element } => {
                write!(f, "flat #{flat} lists {element} twice")
            }
            Violation::SmallFlat { flat, size } => write!(f, "flat #{flat} has only {size} element(s)"),
            Violation::PairUncovered(a, b) => write!(f, "pair {{{a},{b}}} is in no flat"),
            Violation::PairInSeveralFlats { pair: (a, b), flats } => {
                write!(f, "pair {{{a},{b}}} lies in flats {flats:?}")
            }
            Violation::TooFewFlats(n) => write!(f, "fewer than two flats ({n})"),
            Violation::FlagIdentity { sum, expected } => {
                write!(f, "sum |f|(|f|-1) = {sum}, expected n(n-1) = {expected}")
            }
        }
    }
}

/// Checks every rank-3 simple matroid axiom; an empty list means valid.
pub fn validate(data: &MatroidData) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut index = HashMap::new();
    for (i, e) in data.elements.iter().enumerate() {
        if index.insert(e.as_str(), i).is_some() {
            out.push(Violation::DuplicateElement(e.clone()));
        }
    }
    let n = data.elements.len();
    let mut owners: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut flag_sum = 0;
    for (fi, flat) in data.flats.iter().enumerate() {
        let mut members = BTreeSet::new();
        for e in flat {
            match index.get(e.as_str()) {
                None => out.push(Violation::UnknownElement { flat: fi, element: e.clone() }),
                Some(&i) => {
                    if !members.insert(i) {
                        out.push(Violation::RepeatedInFlat { flat: fi, element: e.clone() });
                    }
                }
            }
        }
        if flat.len() < 2 {
            out.push(Violation::SmallFlat { flat: fi, size: flat.len() });
        }
        flag_sum += members.len() * members.len().saturating_sub(1);
        let members: Vec<usize> = members.into_iter().collect();
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                owners.entry((a, b)).or_default().push(fi);
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            match owners.get(&(a, b)) {
                None => out.push(Violation::PairUncovered(
                    data.elements[a].clone(),
                    data.elements[b].clone(),
                )),
                Some(fs) if fs.len() > 1 => out.push(Violation::PairInSeveralFlats {
                    pair: (data.elements[a].clone(), data.elements[b].clone()),
                    flats: fs.clone(),
                }),
                _ => {}
            }
        }
    }
    if data.flats.len() < 2 {
        out.push(Violation::TooFewFlats(data.flats.len()));
    }
    if out.is_empty() && flag_sum != n * (n - 1) {
        out.push(Violation::FlagIdentity { sum: flag_sum, expected: n * (n - 1) });
    }
    out
}

/// `(n, l, m)`: elements, flats and complete flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidCounts {
    pub n: usize,
    pub l: usize,
    pub m: usize,
}

/// A validated rank-3 simple matroid.
#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    elements: Vec<String>,
    flats: Vec<Vec<usize>>,
    pair_flat: Vec<u32>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flats: Vec<Vec<&str>> = self
            .flats
            .iter()
            .map(|fl| fl.iter().map(|&e| self.elements[e].as_str()).collect())
            .collect();
        f.debug_struct("Matroid")
            .field("elements", &self.elements)
            .field("flats", &flats)
            .finish()
    }
}

impl Matroid {
    pub fn new<S: Into<String>>(elements: Vec<S>, flats: Vec<Vec<S>>) -> Result<Matroid> {
        Matroid::from_data(MatroidData {
            elements: elements.into_iter().map(Into::into).collect(),
            flats: flats
                .into_iter()
                .map(|f| f.into_iter().map(Into::into).collect())
                .collect(),
        })
    }

    pub fn from_data(data: MatroidData) -> Result<Matroid> {
        let violations = validate(&data);
        if !violations.is_empty() {
            return Err(Error::InvalidMatroid(violations.iter().map(ToString::to_string).collect()));
        }
        let index: HashMap<&str, usize> =
            data.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let flats = data
            .flats
            .iter()
            .map(|f| f.iter().map(|e| index[e.as_str()]).collect())
            .collect();
        Ok(Matroid::assemble(data.elements, flats))
    }

    /// Builds from element indices, validating the result.
    pub fn from_indices(elements: Vec<String>, flats: Vec<Vec<usize>>) -> Result<Matroid> {
        let n = elements.len();
        if let Some(bad) = flats.iter().flatten().find(|&&e| e >= n) {
            return Err(Error::InvalidMatroid(vec![format!("element index {bad} out of range")]));
        }
        let data = MatroidData {
            flats: flats
                .iter()
                .map(|f| f.iter().map(|&e| elements[e].clone()).collect())
                .collect(),
            elements,
        };
        Matroid::from_data(data)
    }

    /// Builds a matroid from its flats of size at least 3; every pair not
    /// covered by one of them becomes a two-element flat.
    pub fn from_lines(elements: Vec<String>, lines: Vec<Vec<usize>>) -> Result<Matroid> {
        let n = elements.len();
        let mut covered = vec![false; n * n];
        for l in &lines {
            for &a in l {
                for &b in l {
                    if a < n && b < n {
                        covered[a * n + b] = true;
                    }
                }
            }
        }
        let mut flats = lines;
        for a in 0..n {
            for b in a + 1..n {
                if !covered[a * n + b] {
                    flats.push(vec![a, b]);
                }
            }
        }
        Matroid::from_indices(elements, flats)
    }

    fn assemble(elements: Vec<String>, mut flats: Vec<Vec<usize>>) -> Matroid {
        for f in flats.iter_mut() {
            f.sort_unstable();
        }
        flats.sort();
        let n = elements.len();
        let mut pair_flat = vec![u32::MAX; n * n];
        for (fi, f) in flats.iter().enumerate() {
            for &a in f {
                for &b in f {
                    if a != b {
                        pair_flat[a * n + b] = fi as u32;
                    }
                }
            }
        }
        Matroid { elements, flats, pair_flat }
    }

    pub fn to_data(&self) -> MatroidData {
        MatroidData {
            elements: self.elements.clone(),
            flats: self
                .flats
                .iter()
                .map(|f| f.iter().map(|&e| self.elements[e].clone()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_data()).expect("matroid data serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Matroid> {
        let data: MatroidData =
            serde_json::from_value(v.clone()).map_err(|e| Error::Format(e.to_string()))?;
        Matroid::from_data(data)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    /// Flats as sorted element indices, in canonical order.
    pub fn flats(&self) -> &[Vec<usize>] {
        &self.flats
    }

    pub fn index_of(&self, e: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|x| x == e)
            .ok_or_else(|| Error::Argument(format!("unknown element {e}")))
    }

    pub fn counts(&self) -> MatroidCounts {
        MatroidCounts {
            n: self.elements.len(),
            l: self.flats.len(),
            m: self.flats.iter().map(Vec::len).sum(),
        }
    }

    /// Index of the unique flat through two distinct elements.
    pub fn flat_index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a != b);
        self.pair_flat[a * self.elements.len() + b] as usize
    }

    pub fn flat_of_pair(&self, a: &str, b: &str) -> Result<&[usize]> {
        let (ia, ib) = (self.index_of(a)?, self.index_of(b)?);
        if ia == ib {
            return Err(Error::Argument(format!("{a} and {b} are the same element")));
        }
        Ok(&self.flats[self.flat_index(ia, ib)])
    }

    pub fn flat_names(&self, fi: usize) -> Vec<&str> {
        self.flats[fi].iter().map(|&e| self.elements[e].as_str()).collect()
    }

    /// True iff the three (distinct) elements are not in a common flat.
    pub fn is_basis_idx(&self, a: usize, b: usize, c: usize) -> bool {
        self.flats[self.flat_index(a, b)].binary_search(&c).is_err()
    }

    pub fn is_basis(&self, a: &str, b: &str, c: &str) -> Result<bool> {
        let (ia, ib, ic) = (self.index_of(a)?, self.index_of(b)?, self.index_of(c)?);
        if ia == ib || ia == ic || ib == ic {
            return Err(Error::Argument("basis test needs three distinct elements".into()));
        }
        Ok(self.is_basis_idx(ia, ib, ic))
    }

    /// Flats through element `e`.
    pub fn flats_through(&self, e: usize) -> Vec<usize> {
        (0..self.flats.len()).filter(|&f| self.flats[f].binary_search(&e).is_ok()).collect()
    }

    /// Any basis, lexicographically first.
    pub fn find_basis(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if self.is_basis_idx(a, b, c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    /// Four elements with no three in a common flat, if any exist.
    pub fn find_frame(&self) -> Option<[usize; 4]> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if !self.is_basis_idx(a, b, c) {
                        continue;
                    }
                    for d in 0..n {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        if self.is_basis_idx(a, b, d)
                            && self.is_basis_idx(a, c, d)
                            && self.is_basis_idx(b, c, d)
                        {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Removes an element; one-element flats disappear.
    pub fn delete(&self, e: &str) -> Result<Matroid> {
        let ie = self.index_of(e)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != ie).collect();
        self.restrict(&keep).map_err(|err| match err {
            Error::InvalidMatroid(mut reasons) => {
                reasons.insert(0, format!("deleting {e} breaks the matroid axioms"));
                Error::InvalidMatroid(reasons)
            }
            other => other,
        })
    }

    /// The restriction to a subset of elements, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Result<Matroid> {
        let mut new_index = vec![usize::MAX; self.len()];
        for (j, &i) in keep.iter().enumerate() {
            new_index[i] = j;
        }
        let elements = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let flats = self
            .flats
            .iter()
            .map(|f| {
                f.iter()
                    .filter(|&&x| new_index[x] != usize::MAX)
                    .map(|&x| new_index[x])
                    .collect::<Vec<_>>()
            })
            .filter(|f| f.len() >= 2)
            .collect();
        Matroid::from_indices(elements, flats)
    }

    /// Renames elements; `perm[i]` is the new position of element `i`.
    pub fn permuted(&self, perm: &[usize]) -> Matroid {
        let mut elements = vec![String::new(); self.len()];
        for (i, &p) in perm.iter().enumerate() {
            elements[p] = self.elements[i].clone();
        }
        let flats = self.flats.iter().map(|f| f.iter().map(|&x| perm[x]).collect()).collect();
        Matroid::assemble(elements, flats)
    }

    /// Same structure, elements relabeled by `names` (index-aligned).
    pub fn relabeled(&self, names: Vec<String>) -> Result<Matroid> {
        if names.len() != self.len() || names.iter().collect::<HashSet<_>>().len() != names.len() {
            return Err(Error::Argument("relabeling needs distinct names for every element".into()));
        }
        Ok(Matroid::assemble(names, self.flats.clone()))
    }

    /// Pads flats by single-element extensions until every flat inherited
    /// from `self` has its own size.
    pub fn break_symmetry(&self) -> SymmetryBreaking {
        let mut order: Vec<usize> = (0..self.flats.len()).collect();
        order.sort_by_key(|&f| (self.flats[f].len(), f));
        let mut targets = vec![0usize; self.flats.len()];
        let mut prev = 0;
        for &f in &order {
            let t = self.flats[f].len().max(prev + 1);
            targets[f] = t;
            prev = t;
        }

        let mut elements = self.elements.clone();
        let mut flats = self.flats.clone();
        let mut provenance: Vec<Option<usize>> = (0..flats.len()).map(Some).collect();
        let taken: HashSet<String> = elements.iter().cloned().collect();
        let mut counter = 0;
        let mut fresh = || loop {
            counter += 1;
            let name = format!("x{counter}");
            if !taken.contains(&name) {
                return name;
            }
        };

        // Largest flats first.
        for &f in order.iter().rev() {
            while flats[f].len() < targets[f] {
                let x = elements.len();
                elements.push(fresh());
                let outside: Vec<usize> =
                    (0..x).filter(|e| flats[f].binary_search(e).is_err()).collect();
                flats[f].push(x);
                for e in outside {
                    flats.push(vec![e, x]);
                    provenance.push(None);
                }
            }
        }

        // Canonical flat order for the extended matroid, carrying provenance along.
        let mut tagged: Vec<(Vec<usize>, Option<usize>)> = flats
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .zip(provenance)
            .collect();
        tagged.sort();
        let provenance = tagged.iter().map(|(_, p)| *p).collect();
        let matroid = Matroid::assemble(elements, tagged.into_iter().map(|(f, _)| f).collect());
        debug_assert!(validate(&matroid.to_data()).is_empty());
        SymmetryBreaking { matroid, provenance, original_elements: self.len() }
    }
}

/// Output of [`Matroid::break_symmetry`].
#[derive(Debug, Clone)]
pub struct SymmetryBreaking {
    pub matroid: Matroid,
    /// For each flat of the extended matroid, the original flat it grew from.
    pub provenance: Vec<Option<usize>>,
    /// The original elements occupy indices `0..original_elements`.
    pub original_elements: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(elements: &[&str], flats: &[&[&str]]) -> MatroidData {
        MatroidData {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            flats: flats.iter().map(|f| f.iter().map(|s| s.to_string()).collect()).collect(),
        }
    }

    #[test]
    fn validate_reports_violations() {
        assert!(validate(&fano().to_data()).is_empty());
        let v = validate(&data(&["1", "2", "3"], &[&["1", "2"], &["1", "3"]]));
        assert_eq!(v, vec![Violation::PairUncovered("2".into(), "3".into())]);
        let v = validate(&data(&["1", "2", "3"], &[&["1", "2", "3"]]));
        assert_eq!(v, vec![Violation::TooFewFlats(1)]);
        let v = validate(&data(&["1", "2", "3"], &[&["1", "2", "3"], &["1", "2"], &["4", "1"]]));
        assert!(v.iter().any(|x| matches!(x, Violation::PairInSeveralFlats { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::UnknownElement { .. })));
    }

    #[test]
    fn counts_of_named_matroids() {
        assert_eq!(fano().counts(), MatroidCounts { n: 7, l: 7, m: 21 });
        assert_eq!(non_fano().counts(), MatroidCounts { n: 7, l: 9, m: 24 });
        assert_eq!(u34().counts(), MatroidCounts { n: 4, l: 6, m: 12 });
    }

    #[test]
    fn flat_of_pair_examples() {
        assert_eq!(u34().flat_of_pair("1", "2").unwrap(), &[0, 1]);
        let f = fano();
        let mut names = f.flat_of_pair("100", "010").unwrap().iter().map(|&i| f.element(i)).collect::<Vec<_>>();
        names.sort();
        assert_eq!(names, vec!["010", "100", "110"]);
        let nf = non_fano();
        assert_eq!(nf.flat_of_pair("110", "101").unwrap().len(), 2);
        assert!(f.flat_of_pair("100", "100").is_err());
        assert!(f.flat_of_pair("100", "999").is_err());
    }

    #[test]
    fn basis_examples() {
        let f = fano();
        assert!(!f.is_basis("100", "010", "110").unwrap());
        assert!(f.is_basis("100", "010", "001").unwrap());
        assert!(u34().is_basis("1", "2", "4").unwrap());
        assert!(f.is_basis("100", "100", "001").is_err());
    }

    #[test]
    fn deletion() {
        let m = u34().delete("4").unwrap();
        assert_eq!(m.counts(), MatroidCounts { n: 3, l: 3, m: 6 });
        for e in fano().elements() {
            assert_eq!(fano().delete(e).unwrap().counts(), MatroidCounts { n: 6, l: 7, m: 18 });
        }
        // The apex of u2ext(5) sits only on two-element flats.
        assert!(matches!(u2ext(5).delete("5"), Err(Error::InvalidMatroid(_))));
    }

    #[test]
    fn symmetry_breaking_sizes() {
        let b = u34().break_symmetry();
        assert_eq!(b.matroid.len(), 4 + 15);
        let b = fano().break_symmetry();
        assert_eq!(b.matroid.len(), 28);
        let mut sizes: Vec<usize> = b
            .provenance
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_some())
            .map(|(fi, _)| b.matroid.flats()[fi].len())
            .collect();
        sizes.sort();
        assert_eq!(sizes, (3..=9).collect::<Vec<_>>());
        let m = two_flat(1, 3);
        // four 2-element flats and one 4-element flat: targets 2, 3, 4, 5 and 6
        let b = m.break_symmetry();
        assert_eq!(b.matroid.len(), m.len() + 1 + 2 + 3 + 2);
    }

    #[test]
    fn symmetry_breaking_restricts_back() {
        for m in [u34(), fano(), two_flat(2, 3), four_lines()] {
            let b = m.break_symmetry();
            assert!(validate(&b.matroid.to_data()).is_empty());
            let keep: Vec<usize> = (0..b.original_elements).collect();
            assert_eq!(b.matroid.restrict(&keep).unwrap(), m);
        }
    }
}
