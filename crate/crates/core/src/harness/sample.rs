//! Random tiles and spectral pairs.
//!
//! Tiles come from mixed-radix digit trees: the prime factors of `N` are put
//! in a random order, giving places `M_l = p_1 ... p_{l-1}`. A set of free
//! places `S` is chosen, and each element is
//! `sum_{l in S} d_l M_l + sum_{l notin S} f_l(lower free digits) M_l`
//! with arbitrary functions `f_l`. Such a set tiles with the standard set on
//! the complementary places, since digits can be peeled off from the bottom.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::modulus::{factorize, Modulus};
use crate::sets::ResidueSet;
use crate::spectral::{spectrum_search, AffineMap};
use crate::SearchOutcome;

/// A tile `A` together with a complement `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledTile {
    pub tile: ResidueSet,
    pub complement: ResidueSet,
}

/// Draws a digit-tree tile of the given size (a divisor of `N`), followed by
/// a random affine map; the complement is moved by the same unit scaling.
pub fn random_tile<R: Rng>(m: &Modulus, size: u32, rng: &mut R) -> Result<SampledTile> {
    let n = m.n();
    if size == 0 || n % size != 0 {
        return Err(Error::InvalidArgument(format!("{size} does not divide {n}")));
    }
    let mut places: Vec<u32> = m
        .factorization()
        .iter()
        .flat_map(|&(p, e)| std::iter::repeat_n(p, e as usize))
        .collect();
    places.shuffle(rng);
    // Pick the free places so that their primes multiply to `size`.
    let mut free = vec![false; places.len()];
    for (p, e) in factorize(size) {
        let mut slots: Vec<usize> = (0..places.len()).filter(|&l| places[l] == p).collect();
        slots.shuffle(rng);
        for &l in &slots[..e as usize] {
            free[l] = true;
        }
    }
    let mut weights = Vec::with_capacity(places.len());
    let mut w = 1u32;
    for &p in &places {
        weights.push(w);
        w *= p;
    }

    // Elements are built place by place; `digits` holds the free digits so
    // far, which is what each dependent digit may look at.
    let mut partial: Vec<(u32, Vec<u32>)> = vec![(0, Vec::new())];
    for (l, &p) in places.iter().enumerate() {
        if free[l] {
            partial = partial
                .into_iter()
                .flat_map(|(v, digits)| {
                    let w = weights[l];
                    (0..p).map(move |d| {
                        let mut next = digits.clone();
                        next.push(d);
                        (v + d * w, next)
                    })
                })
                .collect();
        } else {
            // Mostly constant-zero digits keep some structure; otherwise an
            // arbitrary function of the free digits seen so far.
            let dependent = rng.random_bool(0.5);
            let mut f: HashMap<Vec<u32>, u32> = HashMap::new();
            for (v, digits) in partial.iter_mut() {
                let d = if dependent {
                    *f.entry(digits.clone()).or_insert_with(|| rng.random_range(0..p))
                } else {
                    0
                };
                *v += d * weights[l];
            }
        }
    }
    let tile: Vec<u32> = partial.into_iter().map(|(v, _)| v).collect();
    let mut complement = vec![0u32];
    for (l, &p) in places.iter().enumerate() {
        if !free[l] {
            complement = complement
                .iter()
                .flat_map(|&v| {
                    let w = weights[l];
                    (0..p).map(move |d| v + d * w)
                })
                .collect();
        }
    }
    let units = m.units();
    let u = units[rng.random_range(0..units.len())];
    let f = AffineMap::new(m, u as i64, rng.random_range(0..n) as i64)?;
    let g = AffineMap::new(m, u as i64, 0)?;
    Ok(SampledTile {
        tile: ResidueSet::new(m.clone(), tile.into_iter().map(|x| f.apply(x)))?,
        complement: ResidueSet::new(m.clone(), complement.into_iter().map(|x| g.apply(x)))?,
    })
}

/// A spectral pair `(A, B)` grown from a random tile: `B` is a spectrum
/// found by search, moved by an independent random affine map, and the roles
/// are swapped half of the time. `None` only if the search is inconclusive.
pub fn random_spectral_pair<R: Rng>(
    m: &Modulus,
    size: u32,
    budget: u64,
    rng: &mut R,
) -> Result<Option<(ResidueSet, ResidueSet)>> {
    let a = random_tile(m, size, rng)?.tile;
    let b = match spectrum_search(&a, budget)?.outcome {
        SearchOutcome::Found(b) => b,
        SearchOutcome::None => {
            return Err(Error::InvalidArgument(format!("tile {a} has no spectrum")))
        }
        SearchOutcome::BudgetExhausted => return Ok(None),
    };
    let units = m.units();
    let u = units[rng.random_range(0..units.len())];
    let f = AffineMap::new(m, u as i64, rng.random_range(0..m.n()) as i64)?;
    let b = ResidueSet::new(m.clone(), b.iter().map(|x| f.apply(x)))?;
    Ok(Some(if rng.random_bool(0.5) { (b, a) } else { (a, b) }))
}
