//! Dense integer polynomial kernels shared by the `i64` fast path and the
//! arbitrary-precision path. Every routine returns `None` on `i64` overflow so
//! callers can redo the computation exactly with `BigInt`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::modulus::{divisors_from_factors, factorize, mobius};

pub(crate) trait Coeff: Clone + PartialEq + Zero + One {
    fn c_add(&self, o: &Self) -> Option<Self>;
    fn c_sub(&self, o: &Self) -> Option<Self>;
    fn c_mul(&self, o: &Self) -> Option<Self>;
}

impl Coeff for i64 {
    #[inline]
    fn c_add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    #[inline]
    fn c_sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    #[inline]
    fn c_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

impl Coeff for BigInt {
    #[inline]
    fn c_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    #[inline]
    fn c_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    #[inline]
    fn c_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

/// `p * (x^e - 1)`.
fn mul_binomial<T: Coeff>(p: &[T], e: usize) -> Option<Vec<T>> {
    let mut out = vec![T::zero(); p.len() + e];
    for (i, c) in p.iter().enumerate() {
        out[i + e] = out[i + e].c_add(c)?;
        out[i] = out[i].c_sub(c)?;
    }
    Some(out)
}

/// Exact quotient `p / (x^e - 1)`; panics if the division is not exact.
fn div_binomial<T: Coeff>(p: &[T], e: usize) -> Option<Vec<T>> {
    assert!(p.len() > e, "dividend degree too small");
    let qlen = p.len() - e;
    let mut q = vec![T::zero(); qlen];
    for k in (e..p.len()).rev() {
        // p[k] = q[k - e] - q[k]
        let upper = if k < qlen { q[k].clone() } else { T::zero() };
        q[k - e] = p[k].c_add(&upper)?;
    }
    for k in 0..e {
        let qk = if k < qlen { q[k].clone() } else { T::zero() };
        assert!(
            p[k].c_add(&qk)? == T::zero(),
            "inexact division by x^{e} - 1"
        );
    }
    Some(q)
}

/// Coefficients (ascending) of the `d`-th cyclotomic polynomial via
/// `Phi_d = prod_{e | d} (x^e - 1)^{mu(d/e)}`.
pub(crate) fn cyclotomic_coeffs<T: Coeff>(d: u32) -> Option<Vec<T>> {
    assert!(d >= 1);
    let divs = divisors_from_factors(&factorize(d));
    let mut poly = vec![T::one()];
    for &e in &divs {
        if mobius(d / e) == 1 {
            poly = mul_binomial(&poly, e as usize)?;
        }
    }
    for &e in &divs {
        if mobius(d / e) == -1 {
            poly = div_binomial(&poly, e as usize)?;
        }
    }
    Some(poly)
}

/// Nonzero terms `(index, coeff)` of a monic modulus below its leading term.
pub(crate) fn sparse_tail<T: Coeff>(monic: &[T]) -> Vec<(usize, T)> {
    monic[..monic.len() - 1]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Reduces `f` in place modulo a monic polynomial of degree `deg` given by
/// its sparse tail; afterwards only `f[..deg]` is meaningful.
pub(crate) fn reduce_in_place<T: Coeff>(f: &mut [T], deg: usize, tail: &[(usize, T)]) -> Option<()> {
    for k in (deg..f.len()).rev() {
        if f[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut f[k], T::zero());
        let base = k - deg;
        for (j, pj) in tail {
            let t = c.c_mul(pj)?;
            f[base + j] = f[base + j].c_sub(&t)?;
        }
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_division_inverts_multiplication() {
        let p: Vec<i64> = vec![3, -1, 4, 1, 5];
        for e in 1..5 {
            let m = mul_binomial(&p, e).unwrap();
            assert_eq!(div_binomial(&m, e).unwrap(), p);
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = vec![i64::MAX, 1];
        assert!(mul_binomial(&big, 1).is_some());
        let tail = vec![(0usize, 2i64)];
        let mut f = vec![0, i64::MAX];
        assert!(reduce_in_place(&mut f, 1, &tail).is_none());
    }
}
