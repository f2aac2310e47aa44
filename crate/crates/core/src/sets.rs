//! Subsets of `Z_N` and the textual set-literal format
//! `N=<int>; S=<comma-separated residues>` (multisets use `g:mult` entries).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::modulus::Modulus;

/// A subset of `Z_N`, stored as its residues in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: Modulus,
    elems: Vec<u32>,
}

impl ResidueSet {
    /// Builds a set from residues in `[0, N)`. Duplicates are rejected.
    pub fn new(modulus: Modulus, residues: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut elems: Vec<u32> = residues.into_iter().collect();
        if let Some(&bad) = elems.iter().find(|&&x| x >= modulus.n()) {
            return Err(Error::Parse(format!(
                "residue {bad} out of range for N = {}",
                modulus.n()
            )));
        }
        elems.sort_unstable();
        if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateResidue { residue: w[0] });
        }
        Ok(ResidueSet { modulus, elems })
    }

    /// Builds a set from arbitrary integers, reducing mod `N` and merging repeats.
    pub fn from_reduced(modulus: Modulus, values: impl IntoIterator<Item = i64>) -> Self {
        let mut elems: Vec<u32> = values.into_iter().map(|v| modulus.reduce(v)).collect();
        elems.sort_unstable();
        elems.dedup();
        ResidueSet { modulus, elems }
    }

    /// Convenience constructor used heavily in tests and examples.
    pub fn of(n: u32, residues: &[u32]) -> Result<Self> {
        ResidueSet::new(Modulus::new(n as u64)?, residues.iter().copied())
    }

    pub fn full(modulus: Modulus) -> Self {
        let elems = (0..modulus.n()).collect();
        ResidueSet { modulus, elems }
    }

    /// Bit `i` of `mask` is residue `i`. Requires `N <= 64`.
    pub fn from_mask(modulus: Modulus, mask: u64) -> Self {
        debug_assert!(modulus.n() <= 64);
        let elems = (0..modulus.n()).filter(|&i| mask >> i & 1 == 1).collect();
        ResidueSet { modulus, elems }
    }

    pub fn mask(&self) -> Option<u64> {
        (self.modulus.n() <= 64).then(|| self.elems.iter().fold(0u64, |m, &x| m | 1 << x))
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> u32 {
        self.modulus.n()
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.elems.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn translate(&self, v: i64) -> ResidueSet {
        let n = self.n() as i64;
        ResidueSet::from_reduced(self.modulus.clone(), self.iter().map(|x| x as i64 + v % n))
    }

    /// The group-ring element with coefficient 1 on each member.
    pub fn to_element(&self) -> GroupRingElement {
        let mut coeffs = vec![BigInt::from(0); self.n() as usize];
        for &x in &self.elems {
            coeffs[x as usize] = BigInt::from(1);
        }
        GroupRingElement::from_coeffs(self.modulus.clone(), coeffs)
            .expect("length matches modulus")
    }

    /// Multiplicity of each residue in `X - X` (the difference multiset).
    pub fn difference_counts(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.n() as usize];
        for &a in &self.elems {
            for &b in &self.elems {
                counts[self.modulus.sub(a, b) as usize] += 1;
            }
        }
        counts
    }

    /// Renders the set-literal form `N=<n>; S=<residues>`.
    pub fn literal(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}; S=", self.n())?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

struct Literal<'a> {
    n: u64,
    entries: Vec<&'a str>,
}

fn split_literal(s: &str) -> Result<Literal<'_>> {
    let (n_part, s_part) = s
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("expected `N=<int>; S=<residues>`, got {s:?}")))?;
    let n_val = n_part
        .trim()
        .strip_prefix("N=")
        .ok_or_else(|| Error::Parse("missing `N=`".into()))?;
    let n: u64 = n_val
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad modulus {n_val:?}")))?;
    let body = s_part
        .trim()
        .strip_prefix("S=")
        .ok_or_else(|| Error::Parse("missing `S=`".into()))?
        .trim();
    let entries = if body.is_empty() {
        Vec::new()
    } else {
        body.split(',').map(str::trim).collect()
    };
    Ok(Literal { n, entries })
}

fn parse_residue(tok: &str, n: u32) -> Result<u32> {
    let v: u64 = tok
        .parse()
        .map_err(|_| Error::Parse(format!("bad residue {tok:?}")))?;
    if v >= n as u64 {
        return Err(Error::Parse(format!("residue {v} out of range for N = {n}")));
    }
    Ok(v as u32)
}

impl FromStr for ResidueSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lit = split_literal(s)?;
        let modulus = Modulus::new(lit.n)?;
        let mut elems = Vec::with_capacity(lit.entries.len());
        for tok in lit.entries {
            if tok.contains(':') {
                return Err(Error::Parse(format!(
                    "multiplicity entry {tok:?} in a set literal"
                )));
            }
            elems.push(parse_residue(tok, modulus.n())?);
        }
        ResidueSet::new(modulus, elems)
    }
}

/// Parses a multiset literal, e.g. `N=6; S=0:2,3,5:-1`. Plain entries count
/// once; repeated entries accumulate.
pub fn parse_multiset(s: &str) -> Result<GroupRingElement> {
    let lit = split_literal(s)?;
    let modulus = Modulus::new(lit.n)?;
    let mut coeffs = vec![BigInt::from(0); modulus.n() as usize];
    for tok in lit.entries {
        let (g, mult) = match tok.split_once(':') {
            Some((g, m)) => (
                g.trim(),
                m.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity in {tok:?}")))?,
            ),
            None => (tok, BigInt::from(1)),
        };
        let g = parse_residue(g, modulus.n())?;
        coeffs[g as usize] += mult;
    }
    GroupRingElement::from_coeffs(modulus, coeffs)
}
