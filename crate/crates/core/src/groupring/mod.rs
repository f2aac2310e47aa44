//! The integral group ring `Z[Z_N]` and exact character arithmetic.
//!
//! A group-ring element `X = sum_g x_g g` is stored as its length-`N`
//! coefficient vector. Character values `chi_g(X)` live in `Z[zeta_d]` with
//! `d = N / gcd(g, N)` and are represented by residues modulo `Phi_d`, so
//! vanishing is decided by exact polynomial division.

mod cyclotomic;
pub(crate) mod poly;
mod zeros;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

pub use cyclotomic::{
    char_value, cyclotomic, is_char_zero, prime_power_vanishing, CyclotomicInteger, CyclotomicPoly,
};
pub(crate) use cyclotomic::{is_char_zero_with, PreparedPhi};
pub use zeros::{zero_set, ZeroSet, ZeroTable};

use crate::error::{Error, Result};
use crate::modulus::Modulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// `sum_g x_g g` in `Z[Z_N]`. Sets are the special case of 0/1 coefficients,
/// multisets of nonnegative ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    modulus: Modulus,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn zero(modulus: Modulus) -> Self {
        let coeffs = vec![BigInt::zero(); modulus.n() as usize];
        GroupRingElement { modulus, coeffs }
    }

    pub fn from_coeffs(modulus: Modulus, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != modulus.n() as usize {
            return Err(Error::LengthMismatch {
                expected: modulus.n() as usize,
                got: coeffs.len(),
            });
        }
        Ok(GroupRingElement { modulus, coeffs })
    }

    pub fn from_i64(modulus: Modulus, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(modulus, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Adds `mult` copies of the group element `g` (reduced mod `N`).
    pub fn add_term(&mut self, g: u64, mult: impl Into<BigInt>) {
        let i = (g % self.modulus.n() as u64) as usize;
        self.coeffs[i] += mult.into();
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, g: u32) -> &BigInt {
        &self.coeffs[g as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Sum of coefficients (the trivial character).
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Support, ascending.
    pub fn support(&self) -> Vec<u32> {
        (0..self.modulus.n())
            .filter(|&g| !self.coeffs[g as usize].is_zero())
            .collect()
    }

    /// `X * h`: every element translated by `h`.
    pub fn shift(&self, h: u32) -> Self {
        let n = self.modulus.n() as usize;
        let h = h as usize % n;
        let mut coeffs = vec![BigInt::zero(); n];
        for (g, c) in self.coeffs.iter().enumerate() {
            coeffs[(g + h) % n] = c.clone();
        }
        GroupRingElement {
            modulus: self.modulus.clone(),
            coeffs,
        }
    }

    /// Coefficient vector as `i64`, if every coefficient fits.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}; S=", self.modulus.n())?;
        let mut first = true;
        for (g, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if *c == BigInt::from(1) {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}:{c}")?;
            }
        }
        Ok(())
    }
}

/// Componentwise sum/difference, or the group-ring product
/// `(XY)_g = sum_h x_h y_{g - h}`.
pub fn ring_combine(
    x: &GroupRingElement,
    y: &GroupRingElement,
    op: RingOp,
) -> Result<GroupRingElement> {
    if x.modulus != y.modulus {
        return Err(Error::ModulusMismatch {
            left: x.modulus.n(),
            right: y.modulus.n(),
        });
    }
    let n = x.modulus.n() as usize;
    let coeffs = match op {
        RingOp::Add => x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect(),
        RingOp::Sub => x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a - b).collect(),
        RingOp::Mul => {
            let mut out = vec![BigInt::zero(); n];
            let ys: Vec<(usize, &BigInt)> = y
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            for (h, xh) in x.coeffs.iter().enumerate() {
                if xh.is_zero() {
                    continue;
                }
                for &(k, yk) in &ys {
                    out[(h + k) % n] += xh * yk;
                }
            }
            out
        }
    };
    Ok(GroupRingElement {
        modulus: x.modulus.clone(),
        coeffs,
    })
}

/// `X^(t) = sum_g x_g g^t`: in additive notation the coefficient at `t*g`
/// accumulates `x_g`. Multiplicities merge when `t` is not a unit.
pub fn twist(x: &GroupRingElement, t: i64) -> GroupRingElement {
    let m = &x.modulus;
    let t = m.reduce(t);
    let mut coeffs = vec![BigInt::zero(); m.n() as usize];
    for (g, c) in x.coeffs.iter().enumerate() {
        if !c.is_zero() {
            coeffs[m.mul(g as u32, t) as usize] += c;
        }
    }
    GroupRingElement {
        modulus: m.clone(),
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ResidueSet;

    fn set(n: u32, xs: &[u32]) -> GroupRingElement {
        ResidueSet::of(n, xs).unwrap().to_element()
    }

    fn ints(x: &GroupRingElement) -> Vec<i64> {
        x.to_i64().unwrap()
    }

    #[test]
    fn product_of_disjoint_sumset() {
        let p = ring_combine(&set(4, &[0, 1]), &set(4, &[0, 2]), RingOp::Mul).unwrap();
        assert_eq!(ints(&p), vec![1, 1, 1, 1]);
    }

    #[test]
    fn sum_doubles() {
        let s = ring_combine(&set(2, &[0]), &set(2, &[0]), RingOp::Add).unwrap();
        assert_eq!(ints(&s), vec![2, 0]);
        let d = ring_combine(&set(2, &[0]), &set(2, &[0]), RingOp::Sub).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn perfect_difference_set() {
        let a = set(7, &[0, 1, 3]);
        let p = ring_combine(&a, &twist(&a, -1), RingOp::Mul).unwrap();
        // brute-force difference multiset
        let diffs = ResidueSet::of(7, &[0, 1, 3]).unwrap().difference_counts();
        let expected: Vec<i64> = diffs.iter().map(|&c| c as i64).collect();
        assert_eq!(ints(&p), expected);
        assert_eq!(ints(&p), vec![3, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn modulus_mismatch() {
        assert_eq!(
            ring_combine(&set(4, &[0]), &set(6, &[0]), RingOp::Mul),
            Err(Error::ModulusMismatch { left: 4, right: 6 })
        );
    }

    #[test]
    fn twist_examples() {
        assert_eq!(ints(&twist(&set(4, &[0, 1]), -1)), vec![1, 0, 0, 1]);
        assert_eq!(twist(&set(4, &[0, 1]), 1), set(4, &[0, 1]));
        assert_eq!(ints(&twist(&set(4, &[0, 2]), 2)), vec![2, 0, 0, 0]);
    }

    #[test]
    fn display_uses_multiset_literal() {
        let mut x = set(6, &[1, 4]);
        x.add_term(4, 2);
        assert_eq!(x.to_string(), "N=6; S=1,4:3");
    }
}
