use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::{is_char_zero_with, GroupRingElement, PreparedPhi};
use crate::error::{Error, Result};
use crate::modulus::Modulus;

/// The zero set `Z_X = {g : chi_g(X) = 0}`.
///
/// Membership depends only on `gcd(g, N)` (Galois conjugates of zero are
/// zero), so the set is kept both element-wise and as the list of divisors
/// `d < N` whose whole gcd-class `{g : gcd(g, N) = d}` lies in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSet {
    modulus: Modulus,
    members: FixedBitSet,
    divisor_classes: BTreeSet<u32>,
}

impl ZeroSet {
    /// Builds the zero set that is the union of the given gcd-classes.
    pub fn from_classes(modulus: Modulus, classes: impl IntoIterator<Item = u32>) -> Self {
        let divisor_classes: BTreeSet<u32> = classes.into_iter().collect();
        let n = modulus.n();
        let mut members = FixedBitSet::with_capacity(n as usize);
        for g in 1..n {
            if divisor_classes.contains(&modulus.gcd_with(g)) {
                members.insert(g as usize);
            }
        }
        ZeroSet {
            modulus,
            members,
            divisor_classes,
        }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn contains(&self, g: u32) -> bool {
        self.members.contains((g % self.modulus.n()) as usize)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.ones().map(|g| g as u32)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.divisor_classes.is_empty()
    }

    pub fn divisor_classes(&self) -> &BTreeSet<u32> {
        &self.divisor_classes
    }

    pub fn contains_class(&self, d: u32) -> bool {
        self.divisor_classes.contains(&d)
    }
}

/// Cyclotomic moduli for every proper divisor class of one `N`, prepared once
/// so that many zero sets over the same group can be computed cheaply.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    modulus: Modulus,
    divisors: Vec<u32>,
    phis: Vec<PreparedPhi>,
}

impl ZeroTable {
    pub fn new(modulus: Modulus) -> Self {
        let divisors = modulus.proper_divisors();
        let phis = divisors
            .iter()
            .map(|&d| PreparedPhi::new(modulus.n() / d))
            .collect();
        ZeroTable {
            modulus,
            divisors,
            phis,
        }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// Proper divisors of `N`, ascending; class `i` is `{g : gcd(g, N) = divisors()[i]}`.
    pub fn divisors(&self) -> &[u32] {
        &self.divisors
    }

    pub fn zero_set(&self, x: &GroupRingElement) -> Result<ZeroSet> {
        if x.modulus() != &self.modulus {
            return Err(Error::ModulusMismatch {
                left: x.modulus().n(),
                right: self.modulus.n(),
            });
        }
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let classes = self
            .divisors
            .iter()
            .zip(&self.phis)
            .filter(|(&d, phi)| is_char_zero_with(x, d, phi))
            .map(|(&d, _)| d);
        Ok(ZeroSet::from_classes(self.modulus.clone(), classes))
    }

    /// Zero-set classes of a plain subset, as a bitmask over `divisors()`
    /// (bit `i` set iff class `i` is in the zero set). `scratch` is reused
    /// between calls. Requires at most 64 proper divisors.
    ///
    /// For the class representative `g = d` the fold index of `a` is simply
    /// `a mod (N/d)`.
    pub fn zero_class_mask(&self, elems: &[u32], scratch: &mut Vec<i64>) -> u64 {
        assert!(self.divisors.len() <= 64);
        let mut mask = 0u64;
        for (i, phi) in self.phis.iter().enumerate() {
            let m = phi.order as usize;
            scratch.clear();
            scratch.resize(m, 0);
            for &a in elems {
                scratch[a as usize % m] += 1;
            }
            let zero = match phi.vanishes_small(scratch) {
                Some(z) => z,
                None => {
                    let x = crate::ResidueSet::new(self.modulus.clone(), elems.iter().copied())
                        .expect("valid subset")
                        .to_element();
                    is_char_zero_with(&x, self.divisors[i], phi)
                }
            };
            if zero {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Element-wise membership bitmask (`N <= 64`) of the union of the classes in `class_mask`.
    pub fn members_mask(&self, class_mask: u64) -> u64 {
        assert!(self.modulus.n() <= 64);
        let mut out = 0u64;
        for g in 1..self.modulus.n() {
            let d = self.modulus.gcd_with(g);
            let i = self.divisors.binary_search(&d).expect("proper divisor");
            if class_mask >> i & 1 == 1 {
                out |= 1 << g;
            }
        }
        out
    }
}

/// The zero set of a nonzero group-ring element. One character is evaluated
/// per gcd-class and the verdict is replicated across the class.
pub fn zero_set(x: &GroupRingElement) -> Result<ZeroSet> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    ZeroTable::new(x.modulus().clone()).zero_set(x)
}
