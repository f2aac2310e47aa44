//! Spectral pairs in `Z_N`.
//!
//! `(A, B)` is a spectral pair iff `|A| = |B|` and every nonzero difference
//! of `B` lies in the zero set `Z_A`. Finding a spectrum of `A` is therefore
//! a clique problem in the circulant graph on `Z_N` with connection set `Z_A`.

mod affine;
mod search;

pub use affine::{affine_image, canonical_form, canonical_mask, AffineMap};
pub use search::{clique_in_cayley, spectrum_search};

use crate::error::{Error, Result};
use crate::groupring::zero_set;
use crate::sets::ResidueSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralViolation {
    SizeMismatch { primary: usize, partner: usize },
    /// `b - b'` is not in the zero set of the primary set.
    Difference { b: u32, b_prime: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectralVerdict {
    pub is_pair: bool,
    pub violation: Option<SpectralViolation>,
}

impl SpectralVerdict {
    fn from_violation(violation: Option<SpectralViolation>) -> Self {
        SpectralVerdict {
            is_pair: violation.is_none(),
            violation,
        }
    }
}

fn check_nonempty_same_group(a: &ResidueSet, b: &ResidueSet) -> Result<()> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// Checks one direction: `(B - B) \ {0}` inside `Z_A`. Differences are
/// scanned as `(larger, smaller)` residue pairs in ascending order.
fn one_direction(a: &ResidueSet, b: &ResidueSet) -> Result<Option<SpectralViolation>> {
    if a.len() != b.len() {
        return Ok(Some(SpectralViolation::SizeMismatch {
            primary: a.len(),
            partner: b.len(),
        }));
    }
    let z = zero_set(&a.to_element())?;
    let m = a.modulus();
    for (j, &hi) in b.elems().iter().enumerate() {
        for &lo in &b.elems()[..j] {
            if !z.contains(m.sub(hi, lo)) {
                return Ok(Some(SpectralViolation::Difference { b: hi, b_prime: lo }));
            }
        }
    }
    Ok(None)
}

/// Decides whether `(A, B)` is a spectral pair. The dual pair `(B, A)` is
/// checked as well and must agree.
pub fn is_spectral_pair(a: &ResidueSet, b: &ResidueSet) -> Result<SpectralVerdict> {
    check_nonempty_same_group(a, b)?;
    let forward = one_direction(a, b)?;
    let backward = one_direction(b, a)?;
    assert_eq!(
        forward.is_none(),
        backward.is_none(),
        "spectral duality violated for {a} / {b}"
    );
    Ok(SpectralVerdict::from_violation(forward))
}
