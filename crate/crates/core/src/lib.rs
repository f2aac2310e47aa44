//! Exact decisions about spectral sets and translational tiles in finite
//! cyclic groups `Z_N`.
//!
//! The crate is organised bottom-up:
//!
//! - [`groupring`]: the integral group ring `Z[Z_N]`, cyclotomic polynomials
//!   and exact character-sum vanishing tests (zero sets).
//! - [`structure`]: coordinates for `N = p^n q r` (grid decomposition),
//!   divisor-class predicates, divisor profiles and the small structural
//!   facts used when reasoning about such groups.
//! - [`spectral`]: spectral-pair verification, spectrum search and affine
//!   canonical forms.
//! - [`tiling`]: tiling-pair verification, complement search, the
//!   Coven–Meyerowitz conditions and explicit complement/spectrum
//!   constructions.
//! - [`harness`]: exhaustive and sampled scans, property suites and
//!   replayable certificates.
//!
//! All arithmetic that decides a verdict is exact.

pub mod error;
pub mod groupring;
pub mod harness;
pub mod modulus;
pub mod sets;
pub mod spectral;
pub mod structure;
pub mod tiling;

pub use error::{Error, Result};
pub use groupring::{
    char_value, cyclotomic, is_char_zero, prime_power_vanishing, ring_combine, twist, zero_set,
    CyclotomicInteger, CyclotomicPoly, GroupRingElement, RingOp, ZeroSet,
};
pub use modulus::Modulus;
pub use sets::ResidueSet;

/// Outcome of a budgeted search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted without a witness.
    None,
    /// The node budget ran out before the search could decide.
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, SearchOutcome::BudgetExhausted)
    }
}

/// A search outcome together with the number of search nodes it consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult<T> {
    pub outcome: SearchOutcome<T>,
    pub nodes: u64,
}

/// Default node budget for spectrum and complement searches.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
