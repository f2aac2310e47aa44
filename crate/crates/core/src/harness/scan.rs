//! Fuglede scans: every affine class of subsets of `Z_N` (or a seeded
//! sample of them) is tested for spectrality and tiling, and any class on
//! which the two verdicts differ is flagged with a certificate.
//!
//! Classes are processed in fixed-size chunks of the ascending list of
//! canonical masks. With an output directory each chunk is persisted as
//! line-delimited JSON; an interrupted scan resumes by skipping records
//! already present, and the final report depends only on the record set.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::certificate::{Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::groupring::ZeroTable;
use crate::modulus::Modulus;
use crate::sets::ResidueSet;
use crate::spectral::{canonical_mask, clique_in_cayley};
use crate::tiling::{cm_spectrum, complement_search, t1_t2_check, CmOutcome};
use crate::{SearchOutcome, DEFAULT_BUDGET};

pub const DEFAULT_CLASS_CEILING: u64 = 5_000_000;
pub const DEFAULT_CHUNK_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    Sample,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub n: u32,
    pub mode: ScanMode,
    /// Distinct classes to draw in sample mode.
    pub sample_count: u64,
    pub seed: u64,
    pub budget: u64,
    /// Exhaustive mode refuses when the estimated class count exceeds this.
    pub class_ceiling: u64,
    pub chunk_size: usize,
    pub out: Option<PathBuf>,
    /// Stop after this many chunks have been processed in this run.
    pub max_chunks: Option<usize>,
}

impl ScanConfig {
    pub fn new(n: u32, mode: ScanMode) -> Self {
        ScanConfig {
            n,
            mode,
            sample_count: 1000,
            seed: 0,
            budget: DEFAULT_BUDGET,
            class_ceiling: DEFAULT_CLASS_CEILING,
            chunk_size: DEFAULT_CHUNK_SIZE,
            out: None,
            max_chunks: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl<T> From<&SearchOutcome<T>> for Verdict {
    fn from(o: &SearchOutcome<T>) -> Self {
        match o {
            SearchOutcome::Found(_) => Verdict::Yes,
            SearchOutcome::None => Verdict::No,
            SearchOutcome::BudgetExhausted => Verdict::Inconclusive,
        }
    }
}

/// The conditions checked on every tile: both Coven–Meyerowitz conditions
/// and validity of the spectrum they construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileConditions {
    pub t1: bool,
    pub t2: bool,
    pub cm_spectrum: bool,
}

impl TileConditions {
    pub fn all(&self) -> bool {
        self.t1 && self.t2 && self.cm_spectrum
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanRecord {
    pub n: u32,
    pub key: String,
    pub set: Vec<u32>,
    pub size: usize,
    pub has_spectrum: Verdict,
    pub tiles: Verdict,
    pub spectrum_nodes: u64,
    pub complement_nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tile_conditions: Option<TileConditions>,
    /// Spectrum or complement, kept only when the two verdicts disagree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
}

impl ScanRecord {
    pub fn is_counterexample(&self) -> bool {
        matches!(
            (self.has_spectrum, self.tiles),
            (Verdict::Yes, Verdict::No) | (Verdict::No, Verdict::Yes)
        )
    }
}

pub fn record_key(n: u32, mask: u64) -> String {
    format!("{n}:{mask:x}")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: u32,
    pub mode: ScanMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub budget: u64,
    pub classes: u64,
    pub spectral: u64,
    pub tiles: u64,
    pub spectral_and_tile: u64,
    pub inconclusive: u64,
    pub tiles_checked: u64,
    pub tile_condition_failures: u64,
    pub counterexamples: Vec<Certificate>,
    /// SHA-256 over the chunk digests, each over that chunk's record lines.
    pub digest: String,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn counterexample_count(&self) -> usize {
        self.counterexamples.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanStatus {
    Complete(ScanReport),
    Interrupted { chunks_done: usize, chunks_total: usize },
}

/// Rough count of affine classes, `2^N / (N phi(N))`.
pub fn estimated_classes(n: u32) -> u64 {
    let m = Modulus::new(n as u64).expect("valid modulus");
    ((1u128 << n) / (n as u128 * m.totient() as u128)) as u64
}

fn full_mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn scale_mask(n: u32, mask: u64, u: u32) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        out |= 1 << ((u as u64 * x as u64) % n as u64);
    }
    out
}

/// `mask - s`: rotates residue `x` to `x - s`.
fn rotate_down(n: u32, mask: u64, s: u32) -> u64 {
    if s == 0 {
        mask
    } else {
        ((mask >> s) | (mask << (n - s))) & full_mask(n)
    }
}

fn nontrivial(n: u32, mask: u64) -> bool {
    let k = mask.count_ones();
    k >= 2 && k < n
}

/// All canonical masks (least in their affine orbit) of sizes `2..N-1`,
/// ascending. Masks are visited in increasing order and each new orbit is
/// marked as soon as its least member appears.
pub fn canonical_classes(n: u32) -> Vec<u64> {
    assert!((2..=40).contains(&n));
    let m = Modulus::new(n as u64).expect("valid modulus");
    let units = m.units();
    let half = 1usize << (n - 1);
    // Index `i` stands for the mask `2 i + 1` (every canonical form holds 0).
    let mut seen = FixedBitSet::with_capacity(half);
    let mut out = Vec::new();
    for i in 0..half {
        if seen.contains(i) {
            continue;
        }
        let mask = (i as u64) << 1 | 1;
        for &u in &units {
            let img = scale_mask(n, mask, u);
            let mut rest = img;
            while rest != 0 {
                let s = rest.trailing_zeros();
                rest &= rest - 1;
                seen.insert((rotate_down(n, img, s) >> 1) as usize);
            }
        }
        if nontrivial(n, mask) {
            out.push(mask);
        }
    }
    out
}

/// Draws uniform random subsets until `count` distinct nontrivial classes are
/// collected (or the draw cap `100 count + 10^4` is reached), ascending.
pub fn sample_classes(n: u32, count: u64, seed: u64) -> Vec<u64> {
    let m = Modulus::new(n as u64).expect("valid modulus");
    let units = m.units();
    let full = full_mask(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let cap = count.saturating_mul(100).saturating_add(10_000);
    let mut draws = 0u64;
    while (seen.len() as u64) < count && draws < cap {
        draws += 1;
        let mask = rng.random::<u64>() & full;
        if !nontrivial(n, mask) {
            continue;
        }
        seen.insert(canonical_mask(n, &units, mask));
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

#[derive(Clone)]
struct SpectrumEntry {
    verdict: Verdict,
    witness: Option<Vec<u32>>,
    nodes: u64,
}

/// Shared per-scan state. Whether a spectrum exists, and the one found,
/// depend only on `(Z_A, |A|)`, so clique searches are cached on that key.
struct Context {
    n: u32,
    modulus: Modulus,
    table: ZeroTable,
    budget: u64,
    spectra: Mutex<HashMap<(u64, usize), Arc<SpectrumEntry>>>,
}

impl Context {
    fn new(n: u32, budget: u64) -> Self {
        let modulus = Modulus::new(n as u64).expect("valid modulus");
        Context {
            n,
            table: ZeroTable::new(modulus.clone()),
            modulus,
            budget,
            spectra: Mutex::new(HashMap::new()),
        }
    }

    fn spectrum(&self, class_mask: u64, k: usize) -> Arc<SpectrumEntry> {
        if let Some(e) = self.spectra.lock().expect("cache lock").get(&(class_mask, k)) {
            return e.clone();
        }
        let members = self.table.members_mask(class_mask);
        let mut conn = FixedBitSet::with_capacity(self.n as usize);
        for g in 1..self.n {
            if members >> g & 1 == 1 {
                conn.insert(g as usize);
            }
        }
        let r = clique_in_cayley(&self.modulus, &conn, k, self.budget);
        let entry = Arc::new(SpectrumEntry {
            verdict: Verdict::from(&r.outcome),
            witness: r.outcome.found().cloned(),
            nodes: r.nodes,
        });
        self.spectra
            .lock()
            .expect("cache lock")
            .insert((class_mask, k), entry.clone());
        entry
    }

    fn process(&self, mask: u64, scratch: &mut Vec<i64>) -> Result<ScanRecord> {
        let set = ResidueSet::from_mask(self.modulus.clone(), mask);
        let k = set.len();
        let class_mask = self.table.zero_class_mask(set.elems(), scratch);
        let spec = self.spectrum(class_mask, k);
        if let Some(b) = &spec.witness {
            // The cached clique must be a spectrum for this very set.
            let members = self.table.members_mask(class_mask);
            let ok = b.iter().all(|&x| {
                b.iter()
                    .all(|&y| x == y || members >> self.modulus.sub(x, y) & 1 == 1)
            });
            assert!(ok, "cached spectrum rejected for {set}");
        }
        let tile = complement_search(&set, self.budget)?;
        let tiles = Verdict::from(&tile.outcome);
        let tile_conditions = match tile.outcome {
            SearchOutcome::Found(_) => {
                let data = t1_t2_check(&set)?;
                let cm = matches!(cm_spectrum(&set)?, CmOutcome::Spectrum(_));
                Some(TileConditions {
                    t1: data.t1_holds,
                    t2: data.t2_holds,
                    cm_spectrum: cm,
                })
            }
            _ => None,
        };
        let mut record = ScanRecord {
            n: self.n,
            key: record_key(self.n, mask),
            set: set.elems().to_vec(),
            size: k,
            has_spectrum: spec.verdict,
            tiles,
            spectrum_nodes: spec.nodes,
            complement_nodes: tile.nodes,
            tile_conditions,
            witness: None,
        };
        if record.is_counterexample() {
            record.witness = match (&spec.witness, tile.outcome) {
                (Some(b), _) => Some(b.clone()),
                (None, SearchOutcome::Found(t)) => Some(t.elems().to_vec()),
                _ => None,
            };
        }
        Ok(record)
    }
}

#[derive(Debug, Clone, Default)]
struct ChunkSummary {
    classes: u64,
    spectral: u64,
    tiles: u64,
    both: u64,
    inconclusive: u64,
    tiles_checked: u64,
    tile_condition_failures: u64,
    counterexamples: Vec<Certificate>,
    digest: String,
}

fn record_line(r: &ScanRecord) -> String {
    serde_json::to_string(r).expect("record serialises") + "\n"
}

fn certificate_for(r: &ScanRecord, seed: Option<u64>) -> Result<Certificate> {
    let m = Modulus::new(r.n as u64)?;
    let a = ResidueSet::new(m.clone(), r.set.iter().copied())?;
    let w = ResidueSet::new(m, r.witness.clone().unwrap_or_default())?;
    if r.tiles == Verdict::Yes {
        Certificate::issue(
            CertificateKind::NonSpectralTileCandidate,
            &a,
            &w,
            &["tiling_pair", "t1", "t2"],
            seed,
        )
    } else {
        Certificate::issue(
            CertificateKind::NonTileSpectralCandidate,
            &a,
            &w,
            &["spectral_pair", "t1", "t2"],
            seed,
        )
    }
}

fn summarize(records: &[ScanRecord], seed: Option<u64>) -> Result<ChunkSummary> {
    let mut s = ChunkSummary::default();
    let mut hasher = Sha256::new();
    for r in records {
        hasher.update(record_line(r).as_bytes());
        s.classes += 1;
        let spectral = r.has_spectrum == Verdict::Yes;
        let tile = r.tiles == Verdict::Yes;
        s.spectral += spectral as u64;
        s.tiles += tile as u64;
        s.both += (spectral && tile) as u64;
        if r.has_spectrum == Verdict::Inconclusive || r.tiles == Verdict::Inconclusive {
            s.inconclusive += 1;
        }
        if let Some(c) = r.tile_conditions {
            s.tiles_checked += 1;
            if !c.all() {
                s.tile_condition_failures += 1;
            }
        }
        if r.is_counterexample() {
            s.counterexamples.push(certificate_for(r, seed)?);
        }
    }
    s.digest = hex::encode(hasher.finalize());
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Manifest {
    n: u32,
    mode: ScanMode,
    sample_count: Option<u64>,
    seed: Option<u64>,
    budget: u64,
    chunk_size: usize,
}

fn chunk_path(dir: &Path, i: usize) -> PathBuf {
    dir.join(format!("chunk-{i:06}.jsonl"))
}

fn done_path(dir: &Path, i: usize) -> PathBuf {
    dir.join(format!("chunk-{i:06}.done"))
}

/// Reads the complete records of a chunk file, dropping (and truncating
/// away) a torn final line.
fn read_chunk(path: &Path) -> Result<Vec<ScanRecord>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut reader = BufReader::new(file);
    let mut records = Vec::new();
    let mut good_len = 0u64;
    let mut line = String::new();
    loop {
        line.clear();
        let read = reader.read_line(&mut line)?;
        if read == 0 {
            break;
        }
        if !line.ends_with('\n') {
            break;
        }
        match serde_json::from_str::<ScanRecord>(line.trim_end()) {
            Ok(r) => {
                records.push(r);
                good_len += read as u64;
            }
            Err(_) => break,
        }
    }
    let actual = fs::metadata(path)?.len();
    if actual != good_len {
        OpenOptions::new().write(true).open(path)?.set_len(good_len)?;
    }
    Ok(records)
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn run_chunk(
    ctx: &Context,
    classes: &[u64],
    index: usize,
    dir: Option<&Path>,
    seed: Option<u64>,
) -> Result<ChunkSummary> {
    let mut scratch = Vec::new();
    let Some(dir) = dir else {
        let records = classes
            .iter()
            .map(|&m| ctx.process(m, &mut scratch))
            .collect::<Result<Vec<_>>>()?;
        return summarize(&records, seed);
    };
    let path = chunk_path(dir, index);
    let mut have: HashMap<String, ScanRecord> = read_chunk(&path)?
        .into_iter()
        .map(|r| (r.key.clone(), r))
        .collect();
    {
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        let mut w = BufWriter::new(file);
        for &m in classes {
            let key = record_key(ctx.n, m);
            if have.contains_key(&key) {
                continue;
            }
            let r = ctx.process(m, &mut scratch)?;
            w.write_all(record_line(&r).as_bytes())?;
            have.insert(key, r);
        }
        w.flush()?;
    }
    let records: Vec<ScanRecord> = classes
        .iter()
        .map(|&m| {
            have.remove(&record_key(ctx.n, m))
                .ok_or_else(|| Error::MalformedRecord(format!("missing record {m:x}")))
        })
        .collect::<Result<_>>()?;
    let body: String = records.iter().map(record_line).collect();
    write_atomic(&path, &body)?;
    fs::write(done_path(dir, index), "")?;
    summarize(&records, seed)
}

/// Runs a scan. See the module documentation for persistence and resume.
pub fn fuglede_scan(cfg: &ScanConfig) -> Result<ScanStatus> {
    let n = cfg.n;
    Modulus::new(n as u64)?;
    if n > 64 {
        return Err(Error::InvalidArgument(format!(
            "scans are limited to N <= 64, got {n}"
        )));
    }
    if cfg.chunk_size == 0 {
        return Err(Error::InvalidArgument("chunk size must be positive".into()));
    }
    let seed = (cfg.mode == ScanMode::Sample).then_some(cfg.seed);
    let classes = match cfg.mode {
        ScanMode::Exhaustive => {
            let estimate = estimated_classes(n);
            if estimate > cfg.class_ceiling || n > 40 {
                return Err(Error::CeilingExceeded {
                    n,
                    estimate,
                    ceiling: cfg.class_ceiling,
                });
            }
            canonical_classes(n)
        }
        ScanMode::Sample => sample_classes(n, cfg.sample_count, cfg.seed),
    };
    let manifest = Manifest {
        n,
        mode: cfg.mode,
        sample_count: seed.map(|_| cfg.sample_count),
        seed,
        budget: cfg.budget,
        chunk_size: cfg.chunk_size,
    };
    let dir = cfg.out.as_deref();
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
        let mpath = dir.join("manifest.json");
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises") + "\n";
        match fs::read_to_string(&mpath) {
            Ok(existing) if existing != text => {
                return Err(Error::InvalidArgument(format!(
                    "{} holds a different scan",
                    dir.display()
                )))
            }
            Ok(_) => {}
            Err(_) => write_atomic(&mpath, &text)?,
        }
    }

    let chunks: Vec<&[u64]> = classes.chunks(cfg.chunk_size).collect();
    let total = chunks.len();
    let ctx = Context::new(n, cfg.budget);
    let is_done = |i: usize| dir.is_some_and(|d| done_path(d, i).exists());
    let pending: Vec<usize> = (0..total).filter(|&i| !is_done(i)).collect();
    let run_now: Vec<usize> = match cfg.max_chunks {
        Some(k) => pending.iter().copied().take(k).collect(),
        None => pending.clone(),
    };
    let mut fresh: HashMap<usize, ChunkSummary> = run_now
        .par_iter()
        .map(|&i| run_chunk(&ctx, chunks[i], i, dir, seed).map(|s| (i, s)))
        .collect::<Result<_>>()?;
    if run_now.len() < pending.len() {
        return Ok(ScanStatus::Interrupted {
            chunks_done: total - pending.len() + run_now.len(),
            chunks_total: total,
        });
    }

    let mut report = ScanReport {
        n,
        mode: cfg.mode,
        sample_count: manifest.sample_count,
        seed,
        budget: cfg.budget,
        classes: 0,
        spectral: 0,
        tiles: 0,
        spectral_and_tile: 0,
        inconclusive: 0,
        tiles_checked: 0,
        tile_condition_failures: 0,
        counterexamples: Vec::new(),
        digest: String::new(),
    };
    let mut outer = Sha256::new();
    let mut merged = dir
        .map(|d| File::create(d.join("records.jsonl.tmp")).map(BufWriter::new))
        .transpose()?;
    for (i, chunk) in chunks.iter().enumerate() {
        let s = match fresh.remove(&i) {
            Some(s) => s,
            None => {
                let d = dir.expect("completed chunks imply an output directory");
                let records = read_chunk(&chunk_path(d, i))?;
                if records.len() != chunk.len() {
                    return Err(Error::MalformedRecord(format!(
                        "chunk {i} holds {} records, expected {}",
                        records.len(),
                        chunk.len()
                    )));
                }
                summarize(&records, seed)?
            }
        };
        if let (Some(w), Some(d)) = (merged.as_mut(), dir) {
            let mut f = File::open(chunk_path(d, i))?;
            std::io::copy(&mut f, w)?;
        }
        outer.update(s.digest.as_bytes());
        outer.update(b"\n");
        report.classes += s.classes;
        report.spectral += s.spectral;
        report.tiles += s.tiles;
        report.spectral_and_tile += s.both;
        report.inconclusive += s.inconclusive;
        report.tiles_checked += s.tiles_checked;
        report.tile_condition_failures += s.tile_condition_failures;
        report.counterexamples.extend(s.counterexamples);
    }
    report.digest = hex::encode(outer.finalize());
    if let (Some(mut w), Some(d)) = (merged, dir) {
        w.flush()?;
        drop(w);
        fs::rename(d.join("records.jsonl.tmp"), d.join("records.jsonl"))?;
        write_atomic(&d.join("report.json"), &report.to_json())?;
    }
    Ok(ScanStatus::Complete(report))
}

/// Distinct canonical classes reachable from `masks`, for tests.
pub fn classes_of(n: u32, masks: impl IntoIterator<Item = u64>) -> BTreeSet<u64> {
    let units = Modulus::new(n as u64).expect("valid modulus").units();
    masks
        .into_iter()
        .map(|m| canonical_mask(n, &units, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(status: ScanStatus) -> ScanReport {
        match status {
            ScanStatus::Complete(r) => r,
            other => panic!("scan did not finish: {other:?}"),
        }
    }

    #[test]
    fn canonical_classes_match_brute_force() {
        for n in [4u32, 6, 8, 9, 10, 12] {
            let full = full_mask(n);
            let brute: BTreeSet<u64> = classes_of(n, (1..full).filter(|&m| nontrivial(n, m)));
            let fast: BTreeSet<u64> = canonical_classes(n).into_iter().collect();
            assert_eq!(fast, brute, "N={n}");
        }
    }

    #[test]
    fn small_exhaustive_scan() {
        let r = complete(fuglede_scan(&ScanConfig::new(8, ScanMode::Exhaustive)).unwrap());
        assert_eq!(r.counterexample_count(), 0);
        assert_eq!(r.spectral, r.tiles);
        assert_eq!(r.spectral, r.spectral_and_tile);
        assert_eq!(r.tile_condition_failures, 0);
        assert!(r.classes > 0);
    }

    #[test]
    fn ceiling_is_enforced() {
        let mut cfg = ScanConfig::new(30, ScanMode::Exhaustive);
        cfg.class_ceiling = 1000;
        assert!(matches!(
            fuglede_scan(&cfg),
            Err(Error::CeilingExceeded { n: 30, .. })
        ));
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(sample_classes(20, 50, 7), sample_classes(20, 50, 7));
        assert_ne!(sample_classes(20, 50, 7), sample_classes(20, 50, 8));
        assert_eq!(sample_classes(20, 50, 7).len(), 50);
    }

    #[test]
    fn persisted_scan_resumes_identically() {
        let base = tempfile::tempdir().unwrap();
        let mut cfg = ScanConfig::new(12, ScanMode::Exhaustive);
        cfg.chunk_size = 16;
        cfg.out = Some(base.path().join("a"));
        let first = complete(fuglede_scan(&cfg).unwrap());

        cfg.out = Some(base.path().join("b"));
        cfg.max_chunks = Some(2);
        assert!(matches!(
            fuglede_scan(&cfg).unwrap(),
            ScanStatus::Interrupted { chunks_done: 2, .. }
        ));
        // Tear the tail of a pending chunk as a crash would.
        let torn = chunk_path(base.path().join("b").as_path(), 2);
        fs::write(&torn, "{\"n\":12,\"key\":\"12:").unwrap();
        cfg.max_chunks = None;
        let second = complete(fuglede_scan(&cfg).unwrap());
        assert_eq!(first.to_json(), second.to_json());
        let read = |d: &str| fs::read(base.path().join(d).join("records.jsonl")).unwrap();
        assert_eq!(read("a"), read("b"));
    }
}
