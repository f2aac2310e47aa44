use std::collections::BTreeSet;

use super::PnqrModulus;
use crate::error::{Error, Result};
use crate::groupring::{zero_set, GroupRingElement, ZeroSet};

/// Which of the classes `p^i qr` (`i < n`) and `p^n q`, `p^n r` lie in a zero set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorProfile {
    /// Exponents `i < n` with `p^i qr` in the zero set.
    pub top: BTreeSet<u32>,
    /// The residues among `p^n q`, `p^n r` that lie in the zero set.
    pub edge: BTreeSet<u32>,
}

impl DivisorProfile {
    pub fn from_zero_set(z: &ZeroSet, m: &PnqrModulus) -> Self {
        let qr = m.q() * m.r();
        let top = (0..m.n()).filter(|&i| z.contains(m.p().pow(i) * qr)).collect();
        let edge = [m.pn() * m.q(), m.pn() * m.r()]
            .into_iter()
            .filter(|&g| z.contains(g))
            .collect();
        DivisorProfile { top, edge }
    }
}

pub fn divisor_profile(x: &GroupRingElement, m: &PnqrModulus) -> Result<DivisorProfile> {
    if x.modulus() != m.modulus() {
        return Err(Error::ModulusMismatch {
            left: x.modulus().n(),
            right: m.modulus().n(),
        });
    }
    Ok(DivisorProfile::from_zero_set(&zero_set(x)?, m))
}

/// Outcome of the implication "`q, r in Z_X` and `qr notin Z_X` force
/// `p^n q, p^n r in Z_Y`", checked for `(X, Y) = (A, B)` and `(B, A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossProfile {
    /// How many of the two directions had their premise satisfied.
    pub premises_met: u32,
    /// Whether every direction with a satisfied premise had its conclusion.
    pub holds: bool,
}

impl CrossProfile {
    pub fn is_vacuous(&self) -> bool {
        self.premises_met == 0
    }
}

/// Evaluates the implication on the zero sets of a (presumed spectral)
/// pair. Only zero sets are consulted.
pub fn cross_profile_check(za: &ZeroSet, zb: &ZeroSet, m: &PnqrModulus) -> CrossProfile {
    let (q, r) = (m.q(), m.r());
    let mut out = CrossProfile {
        premises_met: 0,
        holds: true,
    };
    for (x, y) in [(za, zb), (zb, za)] {
        if x.contains(q) && x.contains(r) && !x.contains(q * r) {
            out.premises_met += 1;
            if !(y.contains(m.pn() * q) && y.contains(m.pn() * r)) {
                out.holds = false;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::ResidueSet;

    fn elem(n: u32, xs: &[u32]) -> GroupRingElement {
        ResidueSet::of(n, xs).unwrap().to_element()
    }

    #[test]
    fn profile_examples() {
        let m60 = PnqrModulus::from_n(60, 2).unwrap();
        let sub: Vec<u32> = (0..60).step_by(4).collect();
        let prof = divisor_profile(&elem(60, &sub), &m60).unwrap();
        assert!(prof.top.is_empty());
        assert_eq!(prof.edge.iter().copied().collect::<Vec<_>>(), vec![12, 20]);

        let m30 = PnqrModulus::from_n(30, 2).unwrap();
        let prof = divisor_profile(&elem(30, &[0, 15]), &m30).unwrap();
        assert_eq!(prof.top.iter().copied().collect::<Vec<_>>(), vec![0]);
        assert!(prof.edge.is_empty());

        let prof = divisor_profile(&elem(30, &[0]), &m30).unwrap();
        assert_eq!(prof, DivisorProfile::default());
    }

    #[test]
    fn cross_profile_on_spectral_pair() {
        // Z_A is the odd residues (so qr = 15 is in it) and Z_B = {15}:
        // neither premise holds.
        let m = PnqrModulus::from_n(30, 2).unwrap();
        let za = zero_set(&elem(30, &[0, 15])).unwrap();
        let zb = zero_set(&elem(30, &[0, 1])).unwrap();
        let c = cross_profile_check(&za, &zb, &m);
        assert!(c.holds);
        assert!(c.is_vacuous());
    }
}
