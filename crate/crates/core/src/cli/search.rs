//! Exhaustive search over line removals for the most negative subarrangement.
//!
//! Subsets are visited depth first in lexicographic order, one rayon task
//! per smallest removed index, with multiplicities updated incrementally.
//! For coordinate input in characteristic zero a candidate whose lower
//! bound `-4 + (2d + t_2 + t_3/4)/s` already exceeds the task's best value
//! is skipped. The bound is a theorem for complex lines, so skipping never
//! changes the result.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::{remove_lines, ArrangementError, IncidenceStructure, Origin, PointPolicy};
use crate::fields::Rational;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search needs point-line membership data")]
    NoIncidenceData,
    #[error("search needs the complete singular locus")]
    IncompleteLocus,
    #[error("{candidates} removal subsets exceed the budget of {budget}")]
    SearchTooLarge { candidates: u128, budget: u128 },
    #[error("nothing to search: max-remove must be at least 1 and leave two lines")]
    Empty,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub max_remove: usize,
    pub budget: u128,
    pub prune: bool,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub removed: Vec<usize>,
    pub h: Rational,
    /// The subarrangement at its singular locus.
    pub structure: IncidenceStructure,
    pub candidates: u128,
    pub evaluated: u128,
    pub pruned: u128,
    pub pruning: bool,
}

fn binom(n: u128, k: u128) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of subsets of size `1..=r` out of `d`.
pub fn subset_count(d: usize, r: usize) -> u128 {
    (1..=r.min(d)).fold(0u128, |acc, j| acc.saturating_add(binom(d as u128, j as u128)))
}

struct Worker<'a> {
    d: usize,
    limit: usize,
    on: &'a [Vec<usize>],
    mult: Vec<usize>,
    t: Vec<usize>,
    stack: Vec<usize>,
    prune: bool,
    best: Option<(Rational, Vec<usize>)>,
    evaluated: u128,
    pruned: u128,
}

impl Worker<'_> {
    fn remove(&mut self, l: usize) {
        for &p in &self.on[l] {
            self.t[self.mult[p]] -= 1;
            self.mult[p] -= 1;
            self.t[self.mult[p]] += 1;
        }
        self.stack.push(l);
    }

    fn restore(&mut self) {
        let l = self.stack.pop().expect("nonempty stack");
        for &p in &self.on[l] {
            self.t[self.mult[p]] -= 1;
            self.mult[p] += 1;
            self.t[self.mult[p]] += 1;
        }
    }

    fn visit(&mut self) {
        let d = self.d - self.stack.len();
        let (mut s, mut sum) = (0usize, 0usize);
        for k in 2..=d {
            s += self.t[k];
            sum += k * self.t[k];
        }
        let big = |n: usize| Rational::from_integer(BigInt::from(n));
        if self.prune && self.t[d] == 0 && self.t[d - 1] == 0 {
            if let Some((best, _)) = &self.best {
                let bound = (big(2 * d) + big(self.t[2]) + Rational::new(BigInt::from(self.t[3]), BigInt::from(4)))
                    / big(s)
                    - big(4);
                if &bound > best {
                    self.pruned += 1;
                    return;
                }
            }
        }
        self.evaluated += 1;
        let h = (big(d) - big(sum)) / big(s);
        if self.best.as_ref().is_none_or(|(b, _)| &h < b) {
            self.best = Some((h, self.stack.clone()));
        }
    }

    fn descend(&mut self, next: usize) {
        self.visit();
        if self.stack.len() == self.limit {
            return;
        }
        for l in next..self.d {
            self.remove(l);
            self.descend(l + 1);
            self.restore();
        }
    }
}

/// Minimizes `h_full` over removals of `1..=max_remove` lines that leave at
/// least two lines. Ties go to the lexicographically smallest index set.
pub fn search_min_h(is: &IncidenceStructure, opts: SearchOptions) -> Result<SearchOutcome, SearchError> {
    if !is.has_members() {
        return Err(SearchError::NoIncidenceData);
    }
    if !is.is_complete() {
        return Err(SearchError::IncompleteLocus);
    }
    let d = is.d();
    let limit = opts.max_remove.min(d.saturating_sub(2));
    if limit == 0 {
        return Err(SearchError::Empty);
    }
    let requested = subset_count(d, opts.max_remove);
    if requested > opts.budget {
        return Err(SearchError::SearchTooLarge {
            candidates: requested,
            budget: opts.budget,
        });
    }
    let on = is.points_on_lines()?;
    let mult: Vec<usize> = is.multiplicities().collect();
    let mut t = vec![0usize; d + 1];
    for &m in &mult {
        t[m] += 1;
    }
    let pruning =
        opts.prune && is.origin() == Origin::Coordinates && is.field().is_none_or(|f| f.characteristic() == 0);
    let results: Vec<Worker> = (0..d)
        .into_par_iter()
        .map(|first| {
            let mut w = Worker {
                d,
                limit,
                on: &on,
                mult: mult.clone(),
                t: t.clone(),
                stack: Vec::with_capacity(limit),
                prune: pruning,
                best: None,
                evaluated: 0,
                pruned: 0,
            };
            w.remove(first);
            w.descend(first + 1);
            w
        })
        .collect();
    let evaluated = results.iter().map(|w| w.evaluated).sum();
    let pruned = results.iter().map(|w| w.pruned).sum();
    let (h, removed) = results
        .into_iter()
        .filter_map(|w| w.best)
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .ok_or(SearchError::Empty)?;
    let set: BTreeSet<usize> = removed.iter().copied().collect();
    let structure = remove_lines(is, &set, PointPolicy::RestrictToNewSingular)?;
    Ok(SearchOutcome {
        removed,
        h,
        structure,
        candidates: subset_count(d, limit),
        evaluated,
        pruned,
        pruning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{singular_points, spectrum_of};
    use crate::catalog::{gen_fermat, gen_finite_field_full, gen_generic};
    use crate::negativity::h_full;

    fn opts(r: usize, prune: bool) -> SearchOptions {
        SearchOptions {
            max_remove: r,
            budget: DEFAULT_BUDGET,
            prune,
        }
    }

    /// Brute force over explicit subsets, recomputing each locus from scratch.
    fn oracle(is: &IncidenceStructure, r: usize) -> (Rational, Vec<usize>) {
        let d = is.d();
        let mut best: Option<(Rational, Vec<usize>)> = None;
        for mask in 1u32..(1 << d) {
            let set: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
            if set.len() > r || d - set.len() < 2 {
                continue;
            }
            let sub = remove_lines(is, &set.iter().copied().collect(), PointPolicy::RestrictToNewSingular).unwrap();
            let h = h_full(&spectrum_of(&sub)).unwrap().h;
            let better = match &best {
                None => true,
                Some((bh, bs)) => h < *bh || (h == *bh && set < *bs),
            };
            if better {
                best = Some((h, set));
            }
        }
        best.unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(subset_count(6, 2), 21);
        assert_eq!(subset_count(7, 7), 127);
        assert_eq!(subset_count(45, 3), 45 + 990 + 14190);
    }

    #[test]
    fn matches_brute_force() {
        for (is, r) in [
            (singular_points(&gen_generic(6).unwrap()).unwrap(), 2),
            (singular_points(&gen_fermat(3).unwrap()).unwrap(), 3),
            (singular_points(&gen_finite_field_full(2).unwrap()).unwrap(), 7),
        ] {
            let (h, set) = oracle(&is, r);
            for prune in [false, true] {
                let out = search_min_h(&is, opts(r, prune)).unwrap();
                assert_eq!(out.h, h);
                assert_eq!(out.removed, set);
                assert_eq!(h_full(&spectrum_of(&out.structure)).unwrap().h, h);
                assert_eq!(out.evaluated + out.pruned, out.candidates);
            }
        }
    }

    #[test]
    fn fermat_single_removals_are_symmetric() {
        let is = singular_points(&gen_fermat(3).unwrap()).unwrap();
        let out = search_min_h(&is, opts(1, true)).unwrap();
        assert_eq!(out.removed, vec![0]);
        // 8 lines, 12 points: the 4 triple points on the removed line become double
        assert_eq!(out.h, Rational::new(BigInt::from(8 - 32), BigInt::from(12)));
    }

    #[test]
    fn budget() {
        let is = singular_points(&gen_generic(12).unwrap()).unwrap();
        let err = search_min_h(
            &is,
            SearchOptions {
                max_remove: 3,
                budget: 100,
                prune: true,
            },
        )
        .unwrap_err();
        assert_eq!(
            err,
            SearchError::SearchTooLarge {
                candidates: 12 + 66 + 220,
                budget: 100
            }
        );
    }
}
