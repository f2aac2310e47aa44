use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The order `N` of a cyclic group `Z_N`, together with its factorization.
///
/// Primes in the factorization are strictly increasing and their prime
/// powers multiply back to `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus {
    n: u32,
    factors: Vec<(u32, u32)>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if !(2..=u32::MAX as u64).contains(&n) {
            return Err(Error::InvalidModulus(n));
        }
        let n = n as u32;
        Ok(Modulus {
            n,
            factors: factorize(n),
        })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `(prime, exponent)` pairs, primes ascending.
    pub fn factorization(&self) -> &[(u32, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u32) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// All positive divisors of `N`, ascending.
    pub fn divisors(&self) -> Vec<u32> {
        divisors_from_factors(&self.factors)
    }

    /// Divisors `d` of `N` with `d < N`, ascending. These index the nonzero
    /// gcd-classes `{g : gcd(g, N) = d}`.
    pub fn proper_divisors(&self) -> Vec<u32> {
        let mut d = self.divisors();
        d.pop();
        d
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.n as i64) as u32
    }

    pub fn gcd_with(&self, g: u32) -> u32 {
        if g == 0 {
            self.n
        } else {
            g.gcd(&self.n)
        }
    }

    pub fn is_unit(&self, u: u64) -> bool {
        (u % self.n as u64).gcd(&(self.n as u64)) == 1
    }

    /// The units of `Z_N`, ascending.
    pub fn units(&self) -> Vec<u32> {
        (1..self.n).filter(|&u| self.is_unit(u as u64)).collect()
    }

    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u64 - 1) * (p as u64).pow(e - 1))
            .product()
    }

    pub fn inverse(&self, u: u32) -> Result<u32> {
        let n = self.n as i64;
        let ext = (u as i64).rem_euclid(n).extended_gcd(&n);
        if ext.gcd != 1 {
            return Err(Error::NotAUnit {
                u: u as u64,
                n: self.n,
            });
        }
        Ok(ext.x.rem_euclid(n) as u32)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.n as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.n as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.n as u64 - b as u64 % self.n as u64) % self.n as u64) as u32
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Modulus::new(n as u64)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.n
    }
}

pub fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors_from_factors(factors: &[(u32, u32)]) -> Vec<u32> {
    let mut divs = vec![1u32];
    for &(p, e) in factors {
        let len = divs.len();
        let mut pk = 1u32;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Möbius function.
pub fn mobius(n: u32) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient of an arbitrary positive integer.
pub fn totient(n: u32) -> u64 {
    factorize(n)
        .iter()
        .map(|&(p, e)| (p as u64 - 1) * (p as u64).pow(e - 1))
        .product()
}

/// If `n` is a prime power `p^k` with `k >= 1`, returns `(p, k)`.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_round_trips() {
        for n in 2..2000u32 {
            let m = Modulus::new(n as u64).unwrap();
            let prod: u64 = m
                .factorization()
                .iter()
                .map(|&(p, e)| (p as u64).pow(e))
                .product();
            assert_eq!(prod, n as u64);
            assert!(m.factorization().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(m.factorization().iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn divisors_and_units() {
        let m = Modulus::new(30).unwrap();
        assert_eq!(m.divisors(), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(m.proper_divisors().len(), 7);
        assert_eq!(m.units(), vec![1, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(m.totient(), 8);
        assert_eq!(m.inverse(7).unwrap(), 13);
        assert!(m.inverse(6).is_err());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(Modulus::new(0), Err(Error::InvalidModulus(0)));
        assert_eq!(Modulus::new(1), Err(Error::InvalidModulus(1)));
        assert!(Modulus::new(1 << 33).is_err());
        assert!(Modulus::new(u32::MAX as u64).is_ok());
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(6), 1);
    }
}
