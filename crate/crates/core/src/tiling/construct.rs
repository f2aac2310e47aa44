use crate::error::{Error, Result};
use crate::groupring::zero_set;
use crate::sets::ResidueSet;
use crate::spectral::is_spectral_pair;
use crate::structure::{DivisorProfile, PnqrModulus};
use crate::tiling::is_tiling_pair;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileInapplicable {
    NotSpectral,
    /// Neither profile contains both `p^n q` and `p^n r`.
    EdgeClasses { a_edges: usize, b_edges: usize },
    /// `|A|` differs from `p^t q r` with `t = |J_1|`.
    Size { size: usize, expected: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileComplement {
    Complement(ResidueSet),
    Inapplicable(ProfileInapplicable),
    /// The construction ran but its output does not tile with `A`.
    ConstructionFailed(ResidueSet),
}

/// For a spectral pair `(A, B)` in `Z_{p^n q r}` where one of the profiles
/// holds both `p^n q` and `p^n r`, and `|A| = p^t q r` with `J_1` the set of
/// `i < n` with `p^i qr in Z_B`, `t = |J_1|`, builds
/// `T = {qr sum_{i notin J_1} x_i p^i : 0 <= x_i < p}` and checks that it
/// tiles with `A`. `J_1` is always recomputed from `B`.
pub fn profile_complement(a: &ResidueSet, b: &ResidueSet, m: &PnqrModulus) -> Result<ProfileComplement> {
    for s in [a, b] {
        if s.modulus() != m.modulus() {
            return Err(Error::ModulusMismatch {
                left: s.n(),
                right: m.modulus().n(),
            });
        }
    }
    let inapplicable = |why| Ok(ProfileComplement::Inapplicable(why));
    if !is_spectral_pair(a, b)?.is_pair {
        return inapplicable(ProfileInapplicable::NotSpectral);
    }
    let pa = DivisorProfile::from_zero_set(&zero_set(&a.to_element())?, m);
    let pb = DivisorProfile::from_zero_set(&zero_set(&b.to_element())?, m);
    if pa.edge.len() < 2 && pb.edge.len() < 2 {
        return inapplicable(ProfileInapplicable::EdgeClasses {
            a_edges: pa.edge.len(),
            b_edges: pb.edge.len(),
        });
    }
    let t = pb.top.len() as u32;
    let expected = (m.p() as u64).pow(t) * m.q() as u64 * m.r() as u64;
    if a.len() as u64 != expected {
        return inapplicable(ProfileInapplicable::Size {
            size: a.len(),
            expected,
        });
    }
    let qr = m.q() * m.r();
    let md = m.modulus();
    let mut elems = vec![0u32];
    for i in (0..m.n()).filter(|i| !pb.top.contains(i)) {
        let step = md.mul(qr, m.p().pow(i));
        elems = elems
            .iter()
            .flat_map(|&e| (0..m.p()).map(move |x| md.add(e, md.mul(x, step))))
            .collect();
    }
    let t_set = ResidueSet::new(md.clone(), elems)?;
    Ok(if is_tiling_pair(a, &t_set)?.is_pair {
        ProfileComplement::Complement(t_set)
    } else {
        ProfileComplement::ConstructionFailed(t_set)
    })
}
