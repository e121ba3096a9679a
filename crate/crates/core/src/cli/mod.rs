//! Command-line driver: argument parsing, engine setup, report emission and
//! cache maintenance. [`run`] is the whole program minus process exit.

mod render;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use render::{render_csv, render_json, render_text};
pub use verify::{reference_tables, ReferenceCase, VerifyOutcome};

use crate::congruence::{candidate_primes, validate_level, validate_prime};
use crate::error::Error;
use crate::hecke::toy;
use crate::hecke::ToySubalgebra;
use crate::newform::cache::ENV_VAR;
use crate::newform::{EigenCache, Engine, EngineConfig};
use crate::report::{DepthReport, ReportOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "eisdepth", version, about = "Depth of Eisenstein congruences at squarefree level")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Eigenvalue cache directory.
    #[arg(long, env = ENV_VAR, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Do not read or write the eigenvalue cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads for the eigenvalue pass (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for the randomized splitting and the toy generator.
    #[arg(long, default_value_t = crate::newform::engine::DEFAULT_SEED, global = true)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Congruence table and Eisenstein-ideal data for a level.
    Compute {
        /// Squarefree level N > 6.
        #[arg(long)]
        level: u64,
        /// Prime p; default: every odd prime dividing prod (q^2 - 1).
        #[arg(long)]
        prime: Option<u64>,
        /// Scan and generator bound (default: the Sturm bound).
        #[arg(long)]
        bound: Option<u64>,
        /// Skip the Hecke lattice and the Eisenstein ideal.
        #[arg(long)]
        no_index: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the invariant suites; exit status 0 iff everything passes.
    Verify {
        /// Check a single level instead of the reference tables.
        #[arg(long, requires = "prime")]
        level: Option<u64>,
        #[arg(long)]
        prime: Option<u64>,
        /// Restrict the reference tables to levels up to this value.
        #[arg(long)]
        max_level: Option<u64>,
        /// Number of random toy instances.
        #[arg(long, default_value_t = 100)]
        toy_count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalue cache maintenance.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
        #[command(flatten)]
        common: Common,
    },
    /// Check the length inequality on random and worked toy examples.
    Toy {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Cached levels with their orbit counts and eigenvalue bounds.
    List,
    /// Remove every cache file.
    Clear,
    /// Raise the cached eigenvalue bound for every level dividing `level`.
    Extend {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        bound: u64,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotSquarefree(_)
        | Error::LevelTooSmall(_)
        | Error::PrimeTwoExcluded
        | Error::NotPrime(_)
        | Error::PrimeDividesLevel { .. } => EXIT_USAGE,
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_COMPUTATION,
    }
}

fn engine(common: &Common) -> Result<Engine, Error> {
    let cache_dir = if common.no_cache {
        None
    } else {
        common.cache_dir.clone().or_else(EigenCache::default_dir)
    };
    Engine::new(EngineConfig {
        cache_dir,
        seed: common.seed,
        threads: common.threads,
    })
}

fn cache_of(common: &Common) -> Result<EigenCache, Error> {
    let dir = common
        .cache_dir
        .clone()
        .or_else(EigenCache::default_dir)
        .ok_or_else(|| Error::Cache("no cache directory (set --cache-dir or EISDEPTH_CACHE_DIR)".into()))?;
    EigenCache::new(dir)
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match cli.command {
        Command::Compute {
            level,
            prime,
            bound,
            no_index,
            common,
        } => {
            validate_level(level)?;
            let primes = match prime {
                Some(p) => {
                    validate_prime(p)?;
                    vec![p]
                }
                None => candidate_primes(level)?,
            };
            let mut eng = engine(&common)?;
            let opts = ReportOptions {
                bound,
                skip_index: no_index,
            };
            let mut reports = Vec::with_capacity(primes.len());
            for p in primes {
                reports.push(DepthReport::compute(&mut eng, level, p, &opts)?);
            }
            for w in eng.warnings() {
                writeln!(err, "warning: {w}")?;
            }
            let text = match common.format {
                Format::Text => render_text(&reports),
                Format::Json => render_json(&reports),
                Format::Csv => render_csv(&reports),
            };
            out.write_all(text.as_bytes())?;
            let failed: Vec<_> = reports.iter().flat_map(|r| r.failed_checks()).collect();
            if failed.is_empty() {
                Ok(EXIT_OK)
            } else {
                for c in failed {
                    writeln!(err, "invariant violated: {}: {}", c.name, c.detail)?;
                }
                Ok(EXIT_INVARIANT)
            }
        }
        Command::Verify {
            level,
            prime,
            max_level,
            toy_count,
            common,
        } => {
            let mut eng = engine(&common)?;
            let outcome = match (level, prime) {
                (Some(n), Some(p)) => verify::verify_single(&mut eng, n, p)?,
                _ => verify::verify_all(&mut eng, max_level, toy_count, common.seed, |line| {
                    let _ = writeln!(err, "{line}");
                })?,
            };
            let text = match common.format {
                Format::Json => json_line(&outcome),
                _ => outcome.render_text(),
            };
            out.write_all(text.as_bytes())?;
            Ok(if outcome.passed { EXIT_OK } else { EXIT_INVARIANT })
        }
        Command::Cache { action, common } => {
            let cache = cache_of(&common)?;
            match action {
                CacheAction::List => {
                    #[derive(Serialize)]
                    struct Entry {
                        level: u64,
                        orbits: usize,
                        bound: u64,
                    }
                    let mut entries = Vec::new();
                    for m in cache.levels()? {
                        match cache.load(m) {
                            Ok(Some(s)) => entries.push(Entry {
                                level: m,
                                orbits: s.orbits.len(),
                                bound: s.bound(),
                            }),
                            Ok(None) => {}
                            Err(e) => writeln!(err, "warning: level {m}: {e}")?,
                        }
                    }
                    let text = match common.format {
                        Format::Json => json_line(&entries),
                        Format::Csv => {
                            let mut s = String::from("level,orbits,bound\n");
                            for e in &entries {
                                s.push_str(&format!("{},{},{}\n", e.level, e.orbits, e.bound));
                            }
                            s
                        }
                        Format::Text => entries
                            .iter()
                            .map(|e| format!("level {:>5}  orbits {:>3}  a_l cached for l <= {}\n", e.level, e.orbits, e.bound))
                            .collect(),
                    };
                    out.write_all(text.as_bytes())?;
                }
                CacheAction::Clear => {
                    let n = cache.clear()?;
                    writeln!(out, "removed {n} cache file(s) from {}", cache.dir().display())?;
                }
                CacheAction::Extend { level, bound } => {
                    validate_level(level)?;
                    let mut eng = Engine::new(EngineConfig {
                        cache_dir: Some(cache.dir().to_path_buf()),
                        seed: common.seed,
                        threads: common.threads,
                    })?;
                    eng.ensure_bound(level, bound)?;
                    for w in eng.warnings() {
                        writeln!(err, "warning: {w}")?;
                    }
                    writeln!(out, "eigenvalues cached for l <= {bound} at every level dividing {level}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Toy { count, common } => {
            let hand = ToySubalgebra::hand_examples();
            let random = toy::random_instances(common.seed, count);
            #[derive(Serialize)]
            struct Item<'a> {
                kind: &'static str,
                instance: &'a ToySubalgebra,
                report: crate::hecke::ToyReport,
            }
            let mut items = Vec::new();
            for (kind, inst) in hand
                .iter()
                .map(|i| ("worked", i))
                .chain(random.iter().map(|i| ("random", i)))
            {
                items.push(Item {
                    kind,
                    instance: inst,
                    report: inst.verify()?,
                });
            }
            let passed = items.iter().all(|i| i.report.passed());
            let text = match common.format {
                Format::Json => json_line(&items),
                Format::Csv => {
                    let mut s = String::from("kind,p,n,s,colength,block_colengths,minimal_generators,multiplicity,theorem_applies,passed\n");
                    for i in &items {
                        let r = &i.report;
                        s.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{},{}\n",
                            i.kind,
                            r.p,
                            r.n,
                            r.s,
                            r.colength,
                            r.block_colengths.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                            r.minimal_generators,
                            r.multiplicity,
                            r.theorem_applies,
                            r.passed()
                        ));
                    }
                    s
                }
                Format::Text => render::render_toy(items.iter().map(|i| (i.kind, &i.report))),
            };
            out.write_all(text.as_bytes())?;
            Ok(if passed { EXIT_OK } else { EXIT_INVARIANT })
        }
    }
}
