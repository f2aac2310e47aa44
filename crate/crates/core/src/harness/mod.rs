//! Scans, property suites and certificates.

mod certificate;
mod sample;
mod scan;
mod suites;

pub use certificate::{
    emit_certificate, replay_certificate, Certificate, CertificateKind, Replay, CHECKS,
    FORMAT_VERSION, TOOL_VERSION,
};
pub use scan::{
    canonical_classes, classes_of, estimated_classes, fuglede_scan, record_key, sample_classes,
    ScanConfig, ScanMode, ScanRecord, ScanReport, ScanStatus, TileConditions, Verdict,
    DEFAULT_CHUNK_SIZE, DEFAULT_CLASS_CEILING,
};
pub use sample::{random_spectral_pair, random_tile, SampledTile};
pub use suites::{lemma_suite, Suite, SuiteParams, SuiteReport};
