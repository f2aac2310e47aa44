use crate::error::{Error, Result};
use crate::modulus::Modulus;
use crate::sets::ResidueSet;

/// `x -> u*x + v` with `u` a unit mod `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineMap {
    scale: u32,
    shift: u32,
    n: u32,
}

impl AffineMap {
    pub fn new(modulus: &Modulus, scale: i64, shift: i64) -> Result<Self> {
        let u = modulus.reduce(scale);
        if !modulus.is_unit(u as u64) {
            return Err(Error::NotAUnit {
                u: scale.unsigned_abs(),
                n: modulus.n(),
            });
        }
        Ok(AffineMap {
            scale: u,
            shift: modulus.reduce(shift),
            n: modulus.n(),
        })
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn apply(&self, x: u32) -> u32 {
        ((self.scale as u64 * x as u64 + self.shift as u64) % self.n as u64) as u32
    }
}

pub fn affine_image(x: &ResidueSet, f: &AffineMap) -> Result<ResidueSet> {
    if f.n != x.n() {
        return Err(Error::ModulusMismatch {
            left: x.n(),
            right: f.n,
        });
    }
    ResidueSet::new(x.modulus().clone(), x.iter().map(|e| f.apply(e)))
}

/// Compares two equal-size sets as bit vectors read from the top residue
/// down, i.e. as the integers `sum 2^x`.
fn mask_cmp(a_desc: &[u32], b_desc: &[u32]) -> std::cmp::Ordering {
    a_desc.cmp(b_desc)
}

/// The least bit vector (as the integer `sum_{x in X} 2^x`) over the affine
/// orbit `{u X + v}`. Idempotent; equal exactly for affinely equivalent sets.
pub fn canonical_form(x: &ResidueSet) -> ResidueSet {
    let m = x.modulus();
    if x.is_empty() {
        return x.clone();
    }
    let mut best: Option<Vec<u32>> = None;
    let mut image = Vec::with_capacity(x.len());
    let mut cand = Vec::with_capacity(x.len());
    for u in m.units() {
        image.clear();
        image.extend(x.iter().map(|e| m.mul(u, e)));
        // The minimum contains 0, so only shifts sending some member to 0 matter.
        for &y in &image {
            cand.clear();
            cand.extend(image.iter().map(|&e| m.sub(e, y)));
            cand.sort_unstable_by(|a, b| b.cmp(a));
            if best
                .as_ref()
                .is_none_or(|b| mask_cmp(&cand, b) == std::cmp::Ordering::Less)
            {
                best = Some(cand.clone());
            }
        }
    }
    let mut elems = best.expect("nonempty orbit");
    elems.reverse();
    ResidueSet::new(m.clone(), elems).expect("image of a set is a set")
}

/// [`canonical_form`] on bitmasks for `N <= 64`; `units` are the units of `Z_N`.
pub fn canonical_mask(n: u32, units: &[u32], mask: u64) -> u64 {
    debug_assert!(n <= 64);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = u64::MAX;
    for &u in units {
        let mut img = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            img |= 1 << ((u as u64 * x as u64) % n as u64);
        }
        for s in 0..n {
            // rotate right by s: element x -> x - s
            let r = if s == 0 {
                img
            } else {
                ((img >> s) | (img << (n - s))) & full
            };
            if r < best {
                best = r;
            }
        }
    }
    best
}
