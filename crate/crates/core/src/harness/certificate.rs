use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modulus::Modulus;
use crate::sets::ResidueSet;
use crate::spectral::is_spectral_pair;
use crate::tiling::{is_tiling_pair, t1_t2_check};

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    SpectralPair,
    TilingPair,
    NonSpectralTileCandidate,
    NonTileSpectralCandidate,
}

/// A replayable verdict. Every entry of `checks` names a verifier that can
/// be rerun from the two recorded sets alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format_version: u32,
    pub tool_version: String,
    pub modulus: u32,
    pub kind: CertificateKind,
    pub primary_set: Vec<u32>,
    pub partner_set: Vec<u32>,
    pub checks: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Check names understood by [`replay_certificate`].
pub const CHECKS: [&str; 4] = ["spectral_pair", "tiling_pair", "t1", "t2"];

fn run_check(name: &str, a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    match name {
        "spectral_pair" => Ok(is_spectral_pair(a, b)?.is_pair),
        "tiling_pair" => Ok(is_tiling_pair(a, b)?.is_pair),
        "t1" => Ok(t1_t2_check(a)?.t1_holds),
        "t2" => Ok(t1_t2_check(a)?.t2_holds),
        other => Err(Error::MalformedRecord(format!("unknown check `{other}`"))),
    }
}

impl Certificate {
    /// Builds a certificate by running the named checks on `(primary, partner)`.
    pub fn issue(
        kind: CertificateKind,
        primary: &ResidueSet,
        partner: &ResidueSet,
        checks: &[&str],
        seed: Option<u64>,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for &name in checks {
            out.insert(name.to_string(), run_check(name, primary, partner)?);
        }
        Ok(Certificate {
            format_version: FORMAT_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            modulus: primary.n(),
            kind,
            primary_set: primary.elems().to_vec(),
            partner_set: partner.elems().to_vec(),
            checks: out,
            seed,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cert: Certificate =
            serde_json::from_str(s).map_err(|e| Error::MalformedRecord(e.to_string()))?;
        if cert.format_version != FORMAT_VERSION {
            return Err(Error::VersionMismatch {
                found: cert.format_version,
                expected: FORMAT_VERSION,
            });
        }
        Ok(cert)
    }
}

pub fn emit_certificate(cert: &Certificate, path: &Path) -> Result<()> {
    std::fs::write(path, cert.to_json() + "\n")?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub recomputed: BTreeMap<String, bool>,
    /// Every recomputed check equals the recorded one.
    pub reproduced: bool,
}

/// Reruns the recorded checks (verifiers only, no searches).
pub fn replay_certificate(cert: &Certificate) -> Result<Replay> {
    if cert.format_version != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            found: cert.format_version,
            expected: FORMAT_VERSION,
        });
    }
    let m = Modulus::new(cert.modulus as u64)?;
    let parse = |v: &[u32], what: &str| {
        if v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedRecord(format!("{what} is not strictly ascending")));
        }
        ResidueSet::new(m.clone(), v.iter().copied())
            .map_err(|e| Error::MalformedRecord(format!("{what}: {e}")))
    };
    let a = parse(&cert.primary_set, "primary_set")?;
    let b = parse(&cert.partner_set, "partner_set")?;
    let mut recomputed = BTreeMap::new();
    for name in cert.checks.keys() {
        let value = match run_check(name, &a, &b) {
            Ok(v) => v,
            // A verifier rejecting its input (say an empty set) counts as failure.
            Err(Error::MalformedRecord(m)) => return Err(Error::MalformedRecord(m)),
            Err(_) => false,
        };
        recomputed.insert(name.clone(), value);
    }
    let reproduced = recomputed == cert.checks;
    Ok(Replay {
        recomputed,
        reproduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, xs: &[u32]) -> ResidueSet {
        ResidueSet::of(n, xs).unwrap()
    }

    fn sample() -> Certificate {
        Certificate::issue(
            CertificateKind::SpectralPair,
            &set(4, &[0, 1]),
            &set(4, &[0, 2]),
            &["spectral_pair"],
            None,
        )
        .unwrap()
    }

    #[test]
    fn round_trip_and_replay() {
        let cert = sample();
        assert_eq!(cert.checks["spectral_pair"], true);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert!(replay_certificate(&back).unwrap().reproduced);
    }

    #[test]
    fn tampering_is_detected() {
        let mut cert = sample();
        cert.partner_set = vec![0, 1];
        let r = replay_certificate(&cert).unwrap();
        assert!(!r.reproduced);
        assert_eq!(r.recomputed["spectral_pair"], false);
    }

    #[test]
    fn malformed_records() {
        let json = sample().to_json().replace("spectral_pair\",", "mystery_pair\",");
        assert!(matches!(
            Certificate::from_json(&json),
            Err(Error::MalformedRecord(_))
        ));
        let json = sample().to_json().replace("\"format_version\":1", "\"format_version\":9");
        assert_eq!(
            Certificate::from_json(&json),
            Err(Error::VersionMismatch {
                found: 9,
                expected: 1
            })
        );
        assert!(matches!(
            Certificate::from_json("{\"modulus\":4}"),
            Err(Error::MalformedRecord(_))
        ));
    }
}
