use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use spectile::harness::{
    emit_certificate, fuglede_scan, lemma_suite, replay_certificate, Certificate, CertificateKind,
    ScanConfig, ScanMode, ScanStatus, Suite, SuiteParams, DEFAULT_CHUNK_SIZE, DEFAULT_CLASS_CEILING,
};
use spectile::sets::parse_multiset;
use spectile::spectral::{is_spectral_pair, spectrum_search};
use spectile::tiling::{cm_spectrum, complement_search, is_tiling_pair, t1_t2_check, CmOutcome};
use spectile::{zero_set, Error, ResidueSet, SearchOutcome, DEFAULT_BUDGET};

const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "spectile", version, about = "Spectral sets and tiles in cyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the zero set of a set or multiset (entries `g` or `g:mult`).
    Zeros {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        set: String,
    },
    /// Search for a spectrum.
    Spectrum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Search for a tiling complement.
    Tile {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check whether two sets form a spectral or tiling pair.
    VerifyPair {
        #[arg(long)]
        n: u32,
        /// Pass twice: the primary set, then its partner.
        #[arg(long, num_args = 1, required = true)]
        set: Vec<String>,
        #[arg(long, value_enum, default_value_t = PairKind::Spectral)]
        kind: PairKind,
        /// Write a certificate for the verdict.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coven–Meyerowitz conditions and the spectrum they construct.
    T1t2 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        set: String,
    },
    /// Compare spectrality and tiling over affine classes of subsets.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Classes to sample in sample mode.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Directory for chunk files, merged records and the report; an
        /// existing directory is resumed.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
        chunk_size: usize,
        #[arg(long, default_value_t = DEFAULT_CLASS_CEILING)]
        ceiling: u64,
        /// Stop after this many chunks (resume later with the same --out).
        #[arg(long)]
        max_chunks: Option<usize>,
    },
    /// Run a property suite.
    Lemmas {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        exhaustive: Option<bool>,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rerun the verifiers recorded in certificates (one JSON object per line).
    Replay { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PairKind {
    Spectral,
    Tiling,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

fn parse_set(n: u32, set: &str) -> Result<ResidueSet> {
    Ok(format!("N={n}; S={set}").parse::<ResidueSet>()?)
}

fn residues(s: &ResidueSet) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn search_exit<T>(o: &SearchOutcome<T>) -> u8 {
    match o {
        SearchOutcome::Found(_) => 0,
        SearchOutcome::None => EXIT_FAIL,
        SearchOutcome::BudgetExhausted => EXIT_INCONCLUSIVE,
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Zeros { n, set } => {
            let x = parse_multiset(&format!("N={n}; S={set}"))?;
            let z = zero_set(&x)?;
            let classes: Vec<String> = z.divisor_classes().iter().map(|d| d.to_string()).collect();
            let members: Vec<String> = z.iter().map(|g| g.to_string()).collect();
            println!("divisor classes: {{{}}}", classes.join(","));
            println!("zero set: {{{}}}", members.join(","));
            Ok(0)
        }
        Command::Spectrum { n, set, budget } => {
            let a = parse_set(n, &set)?;
            let r = spectrum_search(&a, budget)?;
            match &r.outcome {
                SearchOutcome::Found(b) => println!("spectrum: {}", residues(b)),
                SearchOutcome::None => println!("no spectrum"),
                SearchOutcome::BudgetExhausted => println!("inconclusive: budget exhausted"),
            }
            println!("nodes: {}", r.nodes);
            Ok(search_exit(&r.outcome))
        }
        Command::Tile { n, set, budget } => {
            let a = parse_set(n, &set)?;
            let r = complement_search(&a, budget)?;
            match &r.outcome {
                SearchOutcome::Found(t) => println!("complement: {}", residues(t)),
                SearchOutcome::None => println!("does not tile"),
                SearchOutcome::BudgetExhausted => println!("inconclusive: budget exhausted"),
            }
            println!("nodes: {}", r.nodes);
            Ok(search_exit(&r.outcome))
        }
        Command::VerifyPair { n, set, kind, out } => {
            let [a, b] = set.as_slice() else {
                bail!(Error::InvalidArgument("verify-pair takes exactly two --set values".into()));
            };
            let (a, b) = (parse_set(n, a)?, parse_set(n, b)?);
            let (ok, cert_kind, check) = match kind {
                PairKind::Spectral => {
                    let v = is_spectral_pair(&a, &b)?;
                    match v.violation {
                        None => println!("spectral pair"),
                        Some(why) => println!("not a spectral pair: {why:?}"),
                    }
                    (v.is_pair, CertificateKind::SpectralPair, "spectral_pair")
                }
                PairKind::Tiling => {
                    let v = is_tiling_pair(&a, &b)?;
                    match v.failure {
                        None => println!("tiling pair"),
                        Some(why) => println!("not a tiling pair: {why:?}"),
                    }
                    (v.is_pair, CertificateKind::TilingPair, "tiling_pair")
                }
            };
            if let Some(path) = out {
                let cert = Certificate::issue(cert_kind, &a, &b, &[check], None)?;
                emit_certificate(&cert, &path)?;
            }
            Ok(if ok { 0 } else { EXIT_FAIL })
        }
        Command::T1t2 { n, set } => {
            let a = parse_set(n, &set)?;
            let d = t1_t2_check(&a)?;
            let s: Vec<String> = d.s_a.iter().map(|x| x.to_string()).collect();
            println!("S_A: {{{}}}", s.join(","));
            println!("T1: {}", d.t1_holds);
            match d.t2_failure {
                None => println!("T2: true"),
                Some(s) => println!("T2: false (Phi_{s} does not divide)"),
            }
            let ok = match cm_spectrum(&a)? {
                CmOutcome::Spectrum(b) => {
                    println!("spectrum: {}", residues(&b));
                    true
                }
                CmOutcome::Inapplicable { .. } => false,
                CmOutcome::ConstructionFailed(v) => {
                    println!("construction failed: {v:?}");
                    false
                }
            };
            Ok(if ok { 0 } else { EXIT_FAIL })
        }
        Command::Scan {
            n,
            mode,
            trials,
            seed,
            budget,
            out,
            chunk_size,
            ceiling,
            max_chunks,
        } => {
            let mut cfg = ScanConfig::new(
                n,
                match mode {
                    Mode::Exhaustive => ScanMode::Exhaustive,
                    Mode::Sample => ScanMode::Sample,
                },
            );
            cfg.sample_count = trials;
            cfg.seed = seed;
            cfg.budget = budget;
            cfg.out = out;
            cfg.chunk_size = chunk_size;
            cfg.class_ceiling = ceiling;
            cfg.max_chunks = max_chunks;
            match fuglede_scan(&cfg)? {
                ScanStatus::Interrupted {
                    chunks_done,
                    chunks_total,
                } => {
                    eprintln!("stopped after {chunks_done} of {chunks_total} chunks; rerun to resume");
                    Ok(0)
                }
                ScanStatus::Complete(report) => {
                    print!("{}", report.to_json());
                    Ok(if !report.counterexamples.is_empty() || report.tile_condition_failures > 0 {
                        EXIT_FAIL
                    } else if report.inconclusive > 0 {
                        EXIT_INCONCLUSIVE
                    } else {
                        0
                    })
                }
            }
        }
        Command::Lemmas {
            suite,
            trials,
            seed,
            n,
            p,
            e,
            t,
            exhaustive,
            out,
        } => {
            let suite: Suite = suite.parse()?;
            let params = SuiteParams {
                n,
                p,
                e,
                t,
                exhaustive,
            };
            let report = lemma_suite(suite, &params, trials, seed)?;
            print!("{}", report.to_json());
            if let Some(path) = out {
                fs::write(&path, report.to_json())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if report.all_pass() { 0 } else { EXIT_FAIL })
        }
        Command::Replay { file } => {
            let text =
                fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let mut all = true;
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let cert = Certificate::from_json(line)?;
                let r = replay_certificate(&cert)?;
                let verdict = if r.reproduced { "reproduced" } else { "MISMATCH" };
                println!("N={} {:?}: {verdict} {:?}", cert.modulus, cert.kind, r.recomputed);
                all &= r.reproduced;
            }
            Ok(if all { 0 } else { EXIT_FAIL })
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::MalformedRecord(_) | Error::VersionMismatch { .. } | Error::Io(_),
        )
        | None => EXIT_FAIL,
        Some(_) => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
