use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::groupring::{is_char_zero, GroupRingElement};
use crate::modulus::prime_power;
use crate::sets::ResidueSet;
use crate::spectral::is_spectral_pair;

/// The prime-power divisors `s > 1` of `N` with `Phi_s | A(x)` and the two
/// conditions built from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerSpectrumData {
    pub s_a: BTreeSet<u32>,
    /// `|A| = prod_{s in S_A} Phi_s(1)`.
    pub t1_holds: bool,
    /// `Phi_{s_1 ... s_k} | A(x)` for powers `s_i in S_A` of distinct primes.
    pub t2_holds: bool,
    /// The first product `s_1 ... s_k` whose cyclotomic factor is missing.
    pub t2_failure: Option<u32>,
}

/// `Phi_s | A(x)` for `s | N`, read off the character at `N / s`.
fn phi_divides(x: &GroupRingElement, s: u32) -> bool {
    is_char_zero(x, x.modulus().n() / s)
}

pub fn t1_t2_check(a: &ResidueSet) -> Result<PrimePowerSpectrumData> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let x = a.to_element();
    let s_a: BTreeSet<u32> = a
        .modulus()
        .divisors()
        .into_iter()
        .filter(|&s| prime_power(s).is_some())
        .filter(|&s| phi_divides(&x, s))
        .collect();
    let product: u64 = s_a
        .iter()
        .map(|&s| prime_power(s).expect("prime power").0 as u64)
        .product();
    let t1_holds = product == a.len() as u64;

    // Group by prime, then choose one power from each of >= 2 primes.
    let mut by_prime: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &s in &s_a {
        let p = prime_power(s).expect("prime power").0;
        by_prime.entry(p).or_default().push(s);
    }
    let by_prime: Vec<Vec<u32>> = by_prime.into_values().collect();
    let mut t2_failure = None;
    let k = by_prime.len();
    'subsets: for chosen in 1u32..(1 << k) {
        if chosen.count_ones() < 2 {
            continue;
        }
        let groups: Vec<&Vec<u32>> = (0..k)
            .filter(|i| chosen >> i & 1 == 1)
            .map(|i| &by_prime[i])
            .collect();
        let mut idx = vec![0usize; groups.len()];
        loop {
            let prod: u32 = groups.iter().zip(&idx).map(|(g, &i)| g[i]).product();
            if !phi_divides(&x, prod) {
                t2_failure = Some(prod);
                break 'subsets;
            }
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < groups[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Ok(PrimePowerSpectrumData {
        s_a,
        t1_holds,
        t2_holds: t2_failure.is_none(),
        t2_failure,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CmOutcome {
    /// The constructed spectrum, validated.
    Spectrum(ResidueSet),
    Inapplicable { t1_holds: bool, t2_holds: bool },
    /// The construction produced a set that is not a spectrum (listed with
    /// multiplicity if residues collided).
    ConstructionFailed(Vec<u32>),
}

/// `B = {sum_{s in S_A} k_s N/s : 0 <= k_s < p(s)}` for sets satisfying both
/// conditions, accepted only after `is_spectral_pair(A, B)` confirms it.
pub fn cm_spectrum(a: &ResidueSet) -> Result<CmOutcome> {
    let data = t1_t2_check(a)?;
    if !(data.t1_holds && data.t2_holds) {
        return Ok(CmOutcome::Inapplicable {
            t1_holds: data.t1_holds,
            t2_holds: data.t2_holds,
        });
    }
    let m = a.modulus();
    let mut elems = vec![0u32];
    for &s in &data.s_a {
        let p = prime_power(s).expect("prime power").0;
        let step = m.n() / s;
        elems = elems
            .iter()
            .flat_map(|&b| (0..p).map(move |k| m.add(b, m.mul(k, step))))
            .collect();
    }
    elems.sort_unstable();
    let distinct = elems.windows(2).all(|w| w[0] != w[1]);
    if !distinct {
        return Ok(CmOutcome::ConstructionFailed(elems));
    }
    let b = ResidueSet::new(m.clone(), elems.iter().copied())?;
    Ok(if is_spectral_pair(a, &b)?.is_pair {
        CmOutcome::Spectrum(b)
    } else {
        CmOutcome::ConstructionFailed(elems)
    })
}
