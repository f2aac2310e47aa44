//! Coordinates for `N = p^n q r`.
//!
//! Fixing CRT generators `a, b, c` of orders `p^n, q, r` writes every
//! `g in Z_N` uniquely as `x a + j b + k c`, so a subset `A` becomes a
//! `q x r` grid of subsets `A_{jk}` of `Z_{p^n}`. Zero-set membership of the
//! divisor classes `p^i, p^i q, p^i r, p^i qr` then reduces to vanishing
//! tests over `Z_{p^n}` on sums and differences of grid cells.

mod digits;
mod grid;
mod profile;

pub use digits::{digit_set_reconstruct, digit_span, generating_pair, is_generating, DigitHypothesis, DigitVerdict, GeneratingPair};
pub use grid::{
    class_zero_predicate, decompose, grid_implications, Conclusion, ConclusionCheck, Cell,
    GridDecomposition, ImplicationReport,
};
pub use profile::{cross_profile_check, divisor_profile, CrossProfile, DivisorProfile};

use std::fmt;

use crate::error::{Error, Result};
use crate::modulus::{factorize, is_prime, Modulus};

/// `Z_N` with `N = p^n q r` and a fixed CRT coordinate system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnqrModulus {
    p: u32,
    n: u32,
    q: u32,
    r: u32,
    pn: u32,
    modulus: Modulus,
    local: Modulus,
    a: u32,
    b: u32,
    c: u32,
}

/// The idempotent `e` with `e = 1 mod m` and `e = 0 mod (N/m)`, for coprime `m`, `N/m`.
fn idempotent(big: &Modulus, m: u32) -> u32 {
    let rest = big.n() / m;
    let local = Modulus::new(m as u64).expect("m >= 2");
    let inv = local.inverse(rest % m).expect("coprime factors");
    big.mul(rest, inv)
}

impl PnqrModulus {
    pub fn new(p: u32, n: u32, q: u32, r: u32) -> Result<Self> {
        for x in [p, q, r] {
            if !is_prime(x) {
                return Err(Error::InvalidArgument(format!("{x} is not prime")));
            }
        }
        if p == q || p == r || q == r {
            return Err(Error::InvalidArgument(format!(
                "primes must be distinct, got p={p}, q={q}, r={r}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let pn = (p as u64)
            .checked_pow(n)
            .filter(|&v| v <= u32::MAX as u64)
            .ok_or(Error::InvalidModulus(u64::MAX))?;
        let total = pn * q as u64 * r as u64;
        let modulus = Modulus::new(total)?;
        let local = Modulus::new(pn)?;
        let pn = pn as u32;
        let a = idempotent(&modulus, pn);
        let b = idempotent(&modulus, q);
        let c = idempotent(&modulus, r);
        let order = |g: u32| modulus.n() / modulus.gcd_with(g);
        assert_eq!(
            (order(a), order(b), order(c)),
            (pn, q, r),
            "generator orders"
        );
        Ok(PnqrModulus {
            p,
            n,
            q,
            r,
            pn,
            modulus,
            local,
            a,
            b,
            c,
        })
    }

    /// Reads `N` as `p^n q r` for the given `p`, with `q < r`.
    pub fn from_n(total: u32, p: u32) -> Result<Self> {
        let factors = factorize(total);
        let n = factors
            .iter()
            .find(|&&(f, _)| f == p)
            .map(|&(_, e)| e)
            .ok_or(Error::NotPrimeDivisor { prime: p, n: total })?;
        let others: Vec<(u32, u32)> = factors.iter().copied().filter(|&(f, _)| f != p).collect();
        match others.as_slice() {
            [(q, 1), (r, 1)] => Self::new(p, n, *q, *r),
            _ => Err(Error::NotPnqr(total)),
        }
    }

    /// Every reading of `N` as `p^n q r` (one per admissible choice of `p`).
    pub fn readings(total: u32) -> Vec<Self> {
        factorize(total)
            .iter()
            .filter_map(|&(p, _)| Self::from_n(total, p).ok())
            .collect()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `p^n`.
    pub fn pn(&self) -> u32 {
        self.pn
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// `Z_{p^n}`, the group the grid cells live in.
    pub fn local(&self) -> &Modulus {
        &self.local
    }

    /// The generators `(a, b, c)` of orders `(p^n, q, r)`.
    pub fn generators(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }

    /// `g = x a + j b + k c`, returned as `(x, j, k)`.
    pub fn coords(&self, g: u32) -> (u32, u32, u32) {
        (g % self.pn, g % self.q, g % self.r)
    }

    pub fn element(&self, x: u32, j: u32, k: u32) -> u32 {
        let m = &self.modulus;
        m.add(m.add(m.mul(x, self.a), m.mul(j, self.b)), m.mul(k, self.c))
    }

    fn p_pow(&self, i: u32) -> u32 {
        self.p.pow(i)
    }
}

impl fmt::Display for PnqrModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}*{}*{}", self.p, self.n, self.q, self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    P,
    PQ,
    PR,
    PQR,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::P, Shape::PQ, Shape::PR, Shape::PQR];
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::P => "p^i",
            Shape::PQ => "p^i q",
            Shape::PR => "p^i r",
            Shape::PQR => "p^i qr",
        })
    }
}

/// One of the divisors `p^i, p^i q, p^i r, p^i qr` of `N`, standing for its
/// gcd-class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    pub shape: Shape,
    pub exponent: u32,
}

impl DivisorClass {
    pub fn new(shape: Shape, exponent: u32) -> Self {
        DivisorClass { shape, exponent }
    }

    pub fn check(&self, m: &PnqrModulus) -> Result<()> {
        let top = if self.shape == Shape::PQR { m.n } else { m.n + 1 };
        if self.exponent >= top {
            return Err(Error::ExponentOutOfRange {
                exponent: self.exponent,
                n: m.n,
            });
        }
        Ok(())
    }

    pub fn divisor(&self, m: &PnqrModulus) -> u32 {
        let base = m.p_pow(self.exponent);
        match self.shape {
            Shape::P => base,
            Shape::PQ => base * m.q,
            Shape::PR => base * m.r,
            Shape::PQR => base * m.q * m.r,
        }
    }

    /// All proper divisor classes of `N`.
    pub fn all(m: &PnqrModulus) -> Vec<DivisorClass> {
        let mut out = Vec::new();
        for shape in Shape::ALL {
            for i in 0..=m.n {
                let c = DivisorClass::new(shape, i);
                if c.check(m).is_ok() {
                    out.push(c);
                }
            }
        }
        out
    }
}
