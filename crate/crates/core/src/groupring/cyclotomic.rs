use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::poly::{cyclotomic_coeffs, reduce_in_place, sparse_tail};
use super::GroupRingElement;
use crate::error::{Error, Result};
use crate::modulus::totient;

/// The `d`-th cyclotomic polynomial with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPoly {
    order: u32,
    /// Ascending coefficients; length `phi(d) + 1`, last entry 1.
    coeffs: Vec<BigInt>,
}

impl CyclotomicPoly {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Phi_d(1)`: `p` when `d` is a power of the prime `p`, `0` for `d = 1`, else `1`.
    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

/// The `d`-th cyclotomic polynomial. `d` must be at least 1.
pub fn cyclotomic(d: u32) -> CyclotomicPoly {
    assert!(d >= 1, "cyclotomic polynomials are indexed from 1");
    let coeffs = match cyclotomic_coeffs::<i64>(d) {
        Some(c) => c.into_iter().map(BigInt::from).collect(),
        None => cyclotomic_coeffs::<BigInt>(d).expect("BigInt arithmetic cannot overflow"),
    };
    CyclotomicPoly { order: d, coeffs }
}

/// An element of `Z[x]/Phi_d(x)`, i.e. of `Z[zeta_d]`, in the power basis
/// `1, zeta_d, ..., zeta_d^{phi(d)-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    order: u32,
    residue: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn zero(order: u32) -> Self {
        CyclotomicInteger {
            order,
            residue: vec![BigInt::zero(); totient(order) as usize],
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn residue(&self) -> &[BigInt] {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInteger {
            order: self.order,
            residue: self.residue.iter().map(|c| c * k).collect(),
        }
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.order, o.order, "cyclotomic integers of different orders");
        CyclotomicInteger {
            order: self.order,
            residue: self
                .residue
                .iter()
                .zip(&o.residue)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, o: Self) -> CyclotomicInteger {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, o: Self) -> CyclotomicInteger {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            order: self.order,
            residue: self.residue.iter().map(|c| -c).collect(),
        }
    }
}

/// A cyclotomic modulus prepared for repeated reductions, in both `i64` and
/// exact form.
#[derive(Debug, Clone)]
pub(crate) struct PreparedPhi {
    pub order: u32,
    pub degree: usize,
    small: Option<Vec<(usize, i64)>>,
    big: Vec<(usize, BigInt)>,
}

impl PreparedPhi {
    pub fn new(d: u32) -> Self {
        let poly = cyclotomic(d);
        let big = sparse_tail(&poly.coeffs);
        let small = big
            .iter()
            .map(|(i, c)| c.to_i64().map(|c| (*i, c)))
            .collect::<Option<Vec<_>>>();
        PreparedPhi {
            order: d,
            degree: poly.degree(),
            small,
            big,
        }
    }

    /// Reduces a folded `i64` vector (length `order`); `None` on overflow.
    pub fn reduce_small(&self, f: &mut [i64]) -> Option<()> {
        let tail = self.small.as_ref()?;
        reduce_in_place(f, self.degree, tail)
    }

    pub fn reduce_big(&self, f: &mut [BigInt]) {
        reduce_in_place(f, self.degree, &self.big).expect("exact arithmetic");
    }

    /// Whether the folded vector vanishes at a primitive `order`-th root of unity.
    pub fn vanishes_small(&self, f: &mut [i64]) -> Option<bool> {
        self.reduce_small(f)?;
        Some(f[..self.degree].iter().all(|&c| c == 0))
    }
}

/// Folds `X` along the character `chi_g` onto `Z[x]/(x^d - 1)` where
/// `d = N / gcd(g, N)`: coefficient of `x^((g*a mod N)/(N/d))` accumulates `x_a`.
fn fold_big(x: &GroupRingElement, g: u32) -> (u32, Vec<BigInt>) {
    let m = x.modulus();
    let n = m.n();
    let g = g % n;
    let d = n / m.gcd_with(g);
    let step = (n / d) as u64;
    let mut f = vec![BigInt::zero(); d as usize];
    for (a, c) in x.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let e = (g as u64 * a as u64 % n as u64) / step;
            f[e as usize] += c;
        }
    }
    (d, f)
}

fn fold_small(x: &GroupRingElement, g: u32) -> Option<(u32, Vec<i64>)> {
    let m = x.modulus();
    let n = m.n();
    let g = g % n;
    let d = n / m.gcd_with(g);
    let step = (n / d) as u64;
    let mut f = vec![0i64; d as usize];
    for (a, c) in x.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let e = ((g as u64 * a as u64 % n as u64) / step) as usize;
            f[e] = f[e].checked_add(c.to_i64()?)?;
        }
    }
    Some((d, f))
}

/// The character sum `chi_g(X) = sum_a x_a zeta_N^{g a}` as an exact element
/// of `Z[zeta_d]`, `d = N / gcd(g, N)`.
pub fn char_value(x: &GroupRingElement, g: u32) -> CyclotomicInteger {
    let m = x.modulus();
    let d = m.n() / m.gcd_with(g % m.n());
    let phi = PreparedPhi::new(d);
    char_value_with(x, g, &phi)
}

pub(crate) fn char_value_with(x: &GroupRingElement, g: u32, phi: &PreparedPhi) -> CyclotomicInteger {
    if let Some((d, mut f)) = fold_small(x, g) {
        debug_assert_eq!(d, phi.order);
        if phi.reduce_small(&mut f).is_some() {
            f.truncate(phi.degree);
            return CyclotomicInteger {
                order: d,
                residue: f.into_iter().map(BigInt::from).collect(),
            };
        }
    }
    let (d, mut f) = fold_big(x, g);
    debug_assert_eq!(d, phi.order);
    phi.reduce_big(&mut f);
    f.truncate(phi.degree);
    CyclotomicInteger { order: d, residue: f }
}

/// Whether `chi_g(X) = 0`, i.e. `Phi_d` divides the folded mask polynomial.
pub fn is_char_zero(x: &GroupRingElement, g: u32) -> bool {
    let d = x.modulus().n() / x.modulus().gcd_with(g % x.modulus().n());
    is_char_zero_with(x, g, &PreparedPhi::new(d))
}

pub(crate) fn is_char_zero_with(x: &GroupRingElement, g: u32, phi: &PreparedPhi) -> bool {
    if let Some((_, mut f)) = fold_small(x, g) {
        if let Some(z) = phi.vanishes_small(&mut f) {
            return z;
        }
    }
    char_value_with(x, g, phi).is_zero()
}

/// Vanishing criterion for sums of `p^n`-th roots of unity:
/// `sum_i c_i zeta_{p^n}^i = 0` iff `c` is constant on every residue class
/// modulo `p^{n-1}`.
pub fn prime_power_vanishing<T: PartialEq>(c: &[T], p: u32, n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    let len = (p as usize)
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidArgument("p^n too large".into()))?;
    if c.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            got: c.len(),
        });
    }
    let period = len / p as usize;
    Ok((period..len).all(|i| c[i] == c[i % period]))
}
