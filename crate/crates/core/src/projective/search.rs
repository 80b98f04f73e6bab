use std::collections::HashMap;

use crate::field::Field;
use crate::matroid::Matroid;

use super::{line_through, meet, on_line, points_over, rational_values, PointConfig, ProjPoint};

#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Candidate placements tried before giving up.
    pub max_nodes: u64,
    /// Coordinate height for searches over the rationals.
    pub height: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 20_000_000, height: 3 }
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome<F: Field> {
    Found(PointConfig<F>),
    NotRealizable,
    BudgetExhausted,
}

impl<F: Field> SearchOutcome<F> {
    pub fn found(&self) -> Option<&PointConfig<F>> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::NotRealizable => "none",
            SearchOutcome::BudgetExhausted => "budget_exhausted",
        }
    }
}

struct Search<'a, F: Field> {
    m: &'a Matroid,
    f: &'a F,
    candidates: Vec<ProjPoint<F::Elem>>,
    placed: Vec<Option<ProjPoint<F::Elem>>>,
    flats_through: Vec<Vec<usize>>,
    nodes: u64,
    max_nodes: u64,
    out_of_budget: bool,
}

impl<F: Field> Search<'_, F> {
    /// Lines of flats through `e` that already hold two placed points.
    fn committed_lines(&self, e: usize) -> Vec<ProjPoint<F::Elem>> {
        let mut lines = Vec::new();
        for &fi in &self.flats_through[e] {
            let mut on = self.m.flats()[fi].iter().filter_map(|&x| self.placed[x].as_ref());
            if let (Some(a), Some(b)) = (on.next(), on.next()) {
                lines.push(line_through(self.f, a, b).expect("placed points are distinct"));
            }
        }
        lines
    }

    /// Every placed point collinear with `x` and another placed point must
    /// share a flat with `e`.
    fn consistent(&self, e: usize, x: &ProjPoint<F::Elem>) -> bool {
        let mut buckets: HashMap<ProjPoint<F::Elem>, usize> = HashMap::new();
        for (g, p) in self.placed.iter().enumerate() {
            let Some(p) = p else { continue };
            let Some(l) = line_through(self.f, x, p) else { return false };
            match buckets.get(&l) {
                Some(&g0) => {
                    if self.m.flat_index(e, g) != self.m.flat_index(e, g0) {
                        return false;
                    }
                }
                None => {
                    buckets.insert(l, g);
                }
            }
        }
        true
    }

    fn choose(&self) -> Option<usize> {
        (0..self.m.len())
            .filter(|&e| self.placed[e].is_none())
            .max_by_key(|&e| {
                let committed = self.committed_lines(e).len();
                let touched = self.flats_through[e]
                    .iter()
                    .filter(|&&fi| self.m.flats()[fi].len() > 2)
                    .filter(|&&fi| self.m.flats()[fi].iter().any(|&x| self.placed[x].is_some()))
                    .count();
                (committed, touched, std::cmp::Reverse(e))
            })
    }

    fn run(&mut self) -> bool {
        let Some(e) = self.choose() else { return true };
        let lines = self.committed_lines(e);
        let options: Vec<ProjPoint<F::Elem>> = match lines.len() {
            0 => self.candidates.clone(),
            1 => self.candidates.iter().filter(|p| on_line(self.f, &lines[0], p)).cloned().collect(),
            _ => match meet(self.f, &lines[0], &lines[1]) {
                Some(p) if lines[2..].iter().all(|l| on_line(self.f, l, &p)) => vec![p],
                _ => Vec::new(),
            },
        };
        for x in options {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                self.out_of_budget = true;
                return false;
            }
            if self.placed.iter().flatten().any(|p| *p == x) || !self.consistent(e, &x) {
                continue;
            }
            self.placed[e] = Some(x);
            if self.run() {
                return true;
            }
            self.placed[e] = None;
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Backtracking search for a realization of `m` in the plane over `f`.
///
/// Over a finite field the search is exhaustive, so `NotRealizable` is a
/// proof. Over the rationals only points of bounded height are tried (plus
/// exact intersections of committed lines) and failure is reported as
/// `BudgetExhausted`.
pub fn realization_search<F: Field>(m: &Matroid, f: &F, budget: SearchBudget) -> SearchOutcome<F> {
    let finite = f.order();
    if let Some(q) = finite {
        if m.len() as u64 > q * q + q + 1 {
            return SearchOutcome::NotRealizable;
        }
    }
    let candidates = match f.elements() {
        Some(values) => points_over(f, &values),
        None => points_over(f, &rational_values(f, budget.height)),
    };
    let n = m.len();
    let mut search = Search {
        m,
        f,
        candidates,
        placed: vec![None; n],
        flats_through: (0..n).map(|e| m.flats_through(e)).collect(),
        nodes: 0,
        max_nodes: budget.max_nodes,
        out_of_budget: false,
    };

    // Quotient by PGL_3: a frame goes to the standard frame, else a basis
    // goes to the coordinate triangle.
    let unit = |i: usize| {
        let mut c = [f.zero(), f.zero(), f.zero()];
        c[i] = f.one();
        ProjPoint::new(f, c).expect("unit vector")
    };
    let ones = ProjPoint::new(f, [f.one(), f.one(), f.one()]).expect("nonzero");
    if let Some(frame) = m.find_frame() {
        for (i, &e) in frame.iter().enumerate() {
            search.placed[e] = Some(if i < 3 { unit(i) } else { ones.clone() });
        }
    } else if let Some(basis) = m.find_basis() {
        for (i, &e) in basis.iter().enumerate() {
            search.placed[e] = Some(unit(i));
        }
    }

    if search.run() {
        let points = search.placed.into_iter().map(|p| p.expect("all placed")).collect();
        let config = PointConfig::new(f.clone(), points, Some(m.elements().to_vec())).expect("distinct points");
        return SearchOutcome::Found(config);
    }
    if search.out_of_budget || finite.is_none() {
        SearchOutcome::BudgetExhausted
    } else {
        SearchOutcome::NotRealizable
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use crate::matroid::{fano, four_lines, non_fano, u34};
    use crate::projective::collinearity_matroid;

    fn search_fq(m: &Matroid, p: u32, k: u32) -> SearchOutcome<FiniteField> {
        realization_search(m, &FiniteField::new(p, k).unwrap(), SearchBudget::default())
    }

    #[test]
    fn fano_needs_characteristic_two() {
        let found = search_fq(&fano(), 2, 1);
        assert_eq!(collinearity_matroid(found.found().unwrap()).unwrap(), fano());
        assert!(matches!(search_fq(&fano(), 3, 1), SearchOutcome::NotRealizable));
        assert!(search_fq(&fano(), 2, 2).found().is_some());
    }

    #[test]
    fn non_fano_avoids_characteristic_two() {
        assert!(matches!(search_fq(&non_fano(), 2, 1), SearchOutcome::NotRealizable));
        let c = search_fq(&non_fano(), 3, 1);
        assert_eq!(collinearity_matroid(c.found().unwrap()).unwrap(), non_fano());
    }

    #[test]
    fn rational_search() {
        let out = realization_search(&four_lines(), &Rationals, SearchBudget::default());
        assert_eq!(collinearity_matroid(out.found().unwrap()).unwrap(), four_lines());
        // Fano is not realizable over Q; bounded search cannot prove it.
        let out = realization_search(&fano(), &Rationals, SearchBudget { max_nodes: 100_000, height: 2 });
        assert!(matches!(out, SearchOutcome::BudgetExhausted));
    }

    #[test]
    fn pigeonhole() {
        let pg3 = crate::matroid::pg2(3).unwrap();
        assert!(matches!(search_fq(&pg3, 2, 1), SearchOutcome::NotRealizable));
        assert!(search_fq(&u34(), 2, 1).found().is_some());
    }
}
