use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::groupring::zero_set;
use crate::modulus::Modulus;
use crate::sets::ResidueSet;
use crate::{SearchOutcome, SearchResult};

/// Branch-and-bound clique search in the circulant graph `Cay(Z_N, D)`.
struct Clique {
    adj: Vec<FixedBitSet>,
    budget: u64,
    nodes: u64,
}

enum Step {
    Found,
    Fail,
    Exhausted,
}

impl Clique {
    fn new(n: usize, conn: &FixedBitSet, budget: u64) -> Self {
        let adj = (0..n)
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(n);
                for z in conn.ones() {
                    row.insert((v + z) % n);
                }
                row
            })
            .collect();
        Clique {
            adj,
            budget,
            nodes: 0,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    /// Greedy colouring of `cands`, stopping once `need` colours are used.
    /// Fewer than `need` colours means no clique of size `need` inside.
    fn colour_bound(&self, cands: &FixedBitSet, need: usize) -> usize {
        let mut left = cands.clone();
        let mut colours = 0;
        while colours < need {
            let Some(first) = left.ones().next() else {
                break;
            };
            colours += 1;
            let mut class = left.clone();
            let mut v = first;
            loop {
                left.set(v, false);
                class.set(v, false);
                class.difference_with(&self.adj[v]);
                match class.ones().next() {
                    Some(w) => v = w,
                    None => break,
                }
            }
        }
        colours
    }

    fn extend(&mut self, clique: &mut Vec<usize>, mut cands: FixedBitSet, need: usize) -> Step {
        if !self.tick() {
            return Step::Exhausted;
        }
        if need == 0 {
            return Step::Found;
        }
        if cands.count_ones(..) < need || self.colour_bound(&cands, need) < need {
            return Step::Fail;
        }
        while let Some(v) = cands.ones().next() {
            cands.set(v, false);
            let mut next = cands.clone();
            next.intersect_with(&self.adj[v]);
            clique.push(v);
            match self.extend(clique, next, need - 1) {
                Step::Fail => {}
                other => return other,
            }
            clique.pop();
            if cands.count_ones(..) < need {
                break;
            }
        }
        Step::Fail
    }
}

/// Finds a `k`-clique of `Cay(Z_N, D)` for a connection set `D` that is a
/// union of gcd-classes (so invariant under units and negation).
///
/// Any clique can be translated to contain 0 and then scaled by a unit so
/// that a second member is a divisor of `N`. Branches are opened for those
/// divisors in ascending order, each excluding the divisors of earlier
/// branches. The search is deterministic and its node count depends only
/// on `(N, D, k, budget)`.
pub fn clique_in_cayley(
    modulus: &Modulus,
    conn: &FixedBitSet,
    k: usize,
    budget: u64,
) -> SearchResult<Vec<u32>> {
    let n = modulus.n() as usize;
    let mut search = Clique::new(n, conn, budget);
    let result = |outcome, search: &Clique| SearchResult {
        outcome,
        nodes: search.nodes.min(budget),
    };
    if k == 0 {
        return result(SearchOutcome::Found(Vec::new()), &search);
    }
    if !search.tick() {
        return result(SearchOutcome::BudgetExhausted, &search);
    }
    if k == 1 {
        return result(SearchOutcome::Found(vec![0]), &search);
    }
    if k > n {
        return result(SearchOutcome::None, &search);
    }
    let divisors: Vec<usize> = modulus
        .proper_divisors()
        .into_iter()
        .map(|d| d as usize)
        .filter(|&d| conn.contains(d))
        .collect();
    let mut excluded = FixedBitSet::with_capacity(n);
    excluded.insert(0);
    for &d in &divisors {
        let mut cands = search.adj[0].clone();
        cands.intersect_with(&search.adj[d]);
        cands.difference_with(&excluded);
        let mut clique = vec![0, d];
        match search.extend(&mut clique, cands, k - 2) {
            Step::Found => {
                let mut out: Vec<u32> = clique.into_iter().map(|v| v as u32).collect();
                out.sort_unstable();
                return result(SearchOutcome::Found(out), &search);
            }
            Step::Exhausted => return result(SearchOutcome::BudgetExhausted, &search),
            Step::Fail => {}
        }
        excluded.insert(d);
    }
    result(SearchOutcome::None, &search)
}

/// Searches for `B` with `(A, B)` a spectral pair: a clique of size `|A|`
/// in `Cay(Z_N, Z_A)`. A returned spectrum contains 0.
pub fn spectrum_search(a: &ResidueSet, budget: u64) -> Result<SearchResult<ResidueSet>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let z = zero_set(&a.to_element())?;
    let r = clique_in_cayley(a.modulus(), z.members(), a.len(), budget);
    let outcome = match r.outcome {
        SearchOutcome::Found(b) => SearchOutcome::Found(ResidueSet::new(a.modulus().clone(), b)?),
        SearchOutcome::None => SearchOutcome::None,
        SearchOutcome::BudgetExhausted => SearchOutcome::BudgetExhausted,
    };
    Ok(SearchResult {
        outcome,
        nodes: r.nodes,
    })
}
