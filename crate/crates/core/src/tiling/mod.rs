//! Tiling pairs `A + T = Z_N` (every element uniquely `a + t`).

mod cm;
mod construct;

pub use cm::{cm_spectrum, t1_t2_check, CmOutcome, PrimePowerSpectrumData};
pub use construct::{profile_complement, ProfileComplement, ProfileInapplicable};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::groupring::zero_set;
use crate::sets::ResidueSet;
use crate::{SearchOutcome, SearchResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TilingFailure {
    SizeProduct { a: usize, t: usize, n: u32 },
    /// The least element of `Z_N` not covered by `A + T`.
    Uncovered(u32),
    /// The least element covered more than once.
    DoublyCovered(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilingVerdict {
    pub is_pair: bool,
    pub failure: Option<TilingFailure>,
}

fn cover_counts(a: &ResidueSet, t: &ResidueSet) -> Vec<u32> {
    let m = a.modulus();
    let mut counts = vec![0u32; m.n() as usize];
    for x in a.iter() {
        for y in t.iter() {
            counts[m.add(x, y) as usize] += 1;
        }
    }
    counts
}

fn differences_meet_trivially(a: &ResidueSet, t: &ResidueSet) -> bool {
    let da = a.difference_counts();
    let dt = t.difference_counts();
    da.iter().zip(&dt).skip(1).all(|(x, y)| *x == 0 || *y == 0)
}

fn zero_sets_cover(a: &ResidueSet, t: &ResidueSet) -> Result<bool> {
    let za = zero_set(&a.to_element())?;
    let zt = zero_set(&t.to_element())?;
    Ok((1..a.n()).all(|g| za.contains(g) || zt.contains(g)))
}

/// Decides whether `(A, T)` tiles `Z_N` by an exact-cover count, and
/// cross-checks the answer against the difference criterion
/// (`|A||T| = N`, `(A - A) cap (T - T) = {0}`) and the zero-set criterion
/// (`|A||T| = N`, `Z_A cup Z_T = Z_N minus 0`).
pub fn is_tiling_pair(a: &ResidueSet, t: &ResidueSet) -> Result<TilingVerdict> {
    if a.modulus() != t.modulus() {
        return Err(Error::ModulusMismatch {
            left: a.n(),
            right: t.n(),
        });
    }
    let n = a.n();
    if a.len() * t.len() != n as usize {
        return Ok(TilingVerdict {
            is_pair: false,
            failure: Some(TilingFailure::SizeProduct {
                a: a.len(),
                t: t.len(),
                n,
            }),
        });
    }
    let counts = cover_counts(a, t);
    let failure = counts.iter().enumerate().find_map(|(g, &c)| match c {
        0 => Some(TilingFailure::Uncovered(g as u32)),
        1 => None,
        _ => Some(TilingFailure::DoublyCovered(g as u32)),
    });
    let direct = failure.is_none();
    assert_eq!(
        direct,
        differences_meet_trivially(a, t),
        "difference criterion disagrees for {a} / {t}"
    );
    assert_eq!(
        direct,
        zero_sets_cover(a, t)?,
        "zero-set criterion disagrees for {a} / {t}"
    );
    Ok(TilingVerdict {
        is_pair: direct,
        failure,
    })
}

struct Cover<'a> {
    n: usize,
    a: &'a [u32],
    budget: u64,
    nodes: u64,
}

enum Step {
    Found,
    Fail,
    Exhausted,
}

impl Cover<'_> {
    fn fits(&self, covered: &FixedBitSet, t: usize) -> bool {
        self.a.iter().all(|&x| !covered.contains((x as usize + t) % self.n))
    }

    fn place(&self, covered: &mut FixedBitSet, t: usize, on: bool) {
        for &x in self.a {
            covered.set((x as usize + t) % self.n, on);
        }
    }

    fn extend(&mut self, covered: &mut FixedBitSet, chosen: &mut Vec<u32>) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::Exhausted;
        }
        let Some(x) = covered.zeroes().next() else {
            return Step::Found;
        };
        let mut translates: Vec<usize> = self
            .a
            .iter()
            .map(|&a| (x + self.n - a as usize) % self.n)
            .collect();
        translates.sort_unstable();
        for t in translates {
            if !self.fits(covered, t) {
                continue;
            }
            self.place(covered, t, true);
            chosen.push(t as u32);
            match self.extend(covered, chosen) {
                Step::Fail => {}
                other => return other,
            }
            chosen.pop();
            self.place(covered, t, false);
        }
        Step::Fail
    }
}

/// Backtracking exact cover: with `0 in T`, repeatedly cover the least
/// uncovered residue by a translate of `A`, trying translates in ascending
/// order.
pub fn complement_search(a: &ResidueSet, budget: u64) -> Result<SearchResult<ResidueSet>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = a.n() as usize;
    if n % a.len() != 0 {
        return Ok(SearchResult {
            outcome: SearchOutcome::None,
            nodes: 0,
        });
    }
    let mut search = Cover {
        n,
        a: a.elems(),
        budget,
        nodes: 0,
    };
    let mut covered = FixedBitSet::with_capacity(n);
    search.place(&mut covered, 0, true);
    let mut chosen = vec![0u32];
    let outcome = match search.extend(&mut covered, &mut chosen) {
        Step::Found => SearchOutcome::Found(ResidueSet::new(a.modulus().clone(), chosen)?),
        Step::Fail => SearchOutcome::None,
        Step::Exhausted => SearchOutcome::BudgetExhausted,
    };
    Ok(SearchResult {
        outcome,
        nodes: search.nodes.min(budget),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BUDGET;

    fn set(n: u32, xs: &[u32]) -> ResidueSet {
        ResidueSet::of(n, xs).unwrap()
    }

    fn complement(n: u32, xs: &[u32]) -> SearchOutcome<ResidueSet> {
        complement_search(&set(n, xs), DEFAULT_BUDGET).unwrap().outcome
    }

    #[test]
    fn tiling_examples() {
        assert!(is_tiling_pair(&set(4, &[0, 1]), &set(4, &[0, 2])).unwrap().is_pair);
        assert!(is_tiling_pair(&set(8, &[0, 1, 2, 3]), &set(8, &[0, 4])).unwrap().is_pair);
        let v = is_tiling_pair(&set(8, &[0, 1]), &set(8, &[0, 1, 2])).unwrap();
        assert_eq!(
            v.failure,
            Some(TilingFailure::SizeProduct { a: 2, t: 3, n: 8 })
        );
        let v = is_tiling_pair(&set(4, &[0, 1]), &set(4, &[0, 1])).unwrap();
        assert_eq!(v.failure, Some(TilingFailure::DoublyCovered(1)));
        let v = is_tiling_pair(&set(6, &[0, 1, 2]), &set(6, &[0, 1])).unwrap();
        assert_eq!(v.failure, Some(TilingFailure::DoublyCovered(1)));
        let v = is_tiling_pair(&set(4, &[1, 2]), &set(4, &[0, 1])).unwrap();
        assert_eq!(v.failure, Some(TilingFailure::Uncovered(0)));
        assert!(is_tiling_pair(&set(6, &[1, 2, 3]), &set(6, &[0, 3])).unwrap().is_pair);
        let v = is_tiling_pair(&set(4, &[0, 2]), &set(4, &[0, 2])).unwrap();
        assert_eq!(v.failure, Some(TilingFailure::DoublyCovered(0)));
    }

    #[test]
    fn no_complement_for_0_1_3_mod_9() {
        let a = set(9, &[0, 1, 3]);
        let m = a.modulus().clone();
        for mask in 0u64..1 << 9 {
            if mask.count_ones() == 3 {
                let t = ResidueSet::from_mask(m.clone(), mask);
                assert!(!is_tiling_pair(&a, &t).unwrap().is_pair);
            }
        }
        assert_eq!(complement(9, &[0, 1, 3]), SearchOutcome::None);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(4, &[0, 2]).found(), Some(&set(4, &[0, 1])));
        assert_eq!(complement(9, &[0, 1, 2]).found(), Some(&set(9, &[0, 3, 6])));
        assert_eq!(complement(10, &[0, 1, 2]), SearchOutcome::None);
        let a = set(24, &[0, 1, 8, 9, 16, 17]);
        let t = complement_search(&a, DEFAULT_BUDGET).unwrap().outcome;
        assert!(is_tiling_pair(&a, t.found().unwrap()).unwrap().is_pair);
    }

    #[test]
    fn complement_budget() {
        let r = complement_search(&set(12, &[0, 1, 2]), 1).unwrap();
        assert_eq!(r.outcome, SearchOutcome::BudgetExhausted);
    }
}
