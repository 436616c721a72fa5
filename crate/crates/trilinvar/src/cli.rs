//! Command-line interface. `main` only parses arguments and maps the
//! outcome to an exit code; everything else is here so it can be tested.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use trilinvar_core::monomial::generate_weight_zero;
use trilinvar_core::pipeline::{self, Config, InvariantRecord, Mode};
use trilinvar_core::poly::{invariance_trial, transform};
use trilinvar_core::symmetry::orbit_decomposition;
use trilinvar_core::{DegreeBasis, OperatorId, Polynomial};

use crate::formats;
use crate::manifest::ManifestWriter;

/// Exit code for a failed verification.
pub const EXIT_FAILURE: u8 = 1;
/// Exit code for bad arguments.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "trilinvar", version, about = "Fundamental invariants of 3x3x3 arrays")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Working prime for modular elimination.
    #[arg(long, global = true, default_value_t = trilinvar_core::DEFAULT_PRIME)]
    pub prime: u32,

    /// Suppress progress messages on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the weight-zero and the six higher-weight monomial bases.
    Basis {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=12))]
        degree: u32,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Write the orbit decomposition of the weight-zero monomials.
    Orbits {
        #[arg(long, value_parser = degree_parser())]
        degree: u32,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Compute the invariant(s) of a degree and write them with a manifest.
    Compute {
        #[arg(long, value_parser = degree_parser())]
        degree: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::OrbitFast)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Both)]
        format: FormatArg,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Print the dimension of the kernel of the raising operators.
    Nullspace {
        #[arg(long, value_parser = degree_parser())]
        degree: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::OrbitFast)]
        mode: ModeArg,
    },
    /// Check over Z that a polynomial file is killed by all six raising operators.
    Verify { file: PathBuf },
    /// Express I6^2 in terms of I12 and I'12 and check the identity exactly.
    Relation,
    /// Evaluate a polynomial file at an array given as JSON.
    Eval { file: PathBuf, array: PathBuf },
    /// Randomized SL3(Z) x SL3(Z) x SL3(Z) invariance test.
    Invariance {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn degree_parser() -> impl clap::builder::TypedValueParser<Value = u32> {
    use clap::builder::TypedValueParser;
    clap::builder::PossibleValuesParser::new(["3", "6", "9", "12"]).map(|s| s.parse::<u32>().expect("listed value"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    OrbitFast,
    FullBasis,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::OrbitFast => Mode::OrbitFast,
            ModeArg::FullBasis => Mode::FullBasis,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Orbit,
    Expanded,
    Both,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Failure(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

/// Successful completion, or a check that ran and failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => EXIT_FAILURE,
        }
    }
}

fn progress(quiet: bool) -> Option<&'static (dyn Fn(&str) + Sync)> {
    fn log(msg: &str) {
        eprintln!("{msg}");
    }
    if quiet {
        None
    } else {
        Some(&log)
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let config = Config { prime: cli.prime, progress: progress(cli.quiet) };
    let io = |e: std::io::Error| CliError::Failure(e.into());
    match &cli.command {
        Command::Basis { degree, out: dir } => basis(*degree, dir, out, cli.quiet),
        Command::Orbits { degree, out: dir } => orbits(*degree, dir, out),
        Command::Compute { degree, mode, format, out: dir } => compute(*degree, (*mode).into(), *format, dir, &config, out),
        Command::Nullspace { degree, mode } => {
            let mode = Mode::from(*mode);
            if mode == Mode::FullBasis && *degree > 9 {
                return Err(CliError::Usage("full-basis mode is limited to degree 9".into()));
            }
            let dim = pipeline::nullspace_dimension(*degree, mode, &config).map_err(usage_or_failure)?;
            writeln!(out, "{dim}").map_err(io)?;
            Ok(Outcome::Success)
        }
        Command::Verify { file } => {
            let p = load(file)?;
            let report = pipeline::verify_annihilation(&p);
            if report.passed() {
                writeln!(out, "{}: {} terms, annihilated by all six raising operators", file.display(), p.len()).map_err(io)?;
                Ok(Outcome::Success)
            } else {
                for (op, n) in OperatorId::ALL.iter().zip(report.image_terms) {
                    if n != 0 {
                        writeln!(out, "{}: image under {op} has {n} terms", file.display()).map_err(io)?;
                    }
                }
                Ok(Outcome::VerificationFailed)
            }
        }
        Command::Relation => relation(&config, out),
        Command::Eval { file, array } => {
            let p = load(file)?;
            let x = formats::read_array_json(&formats::read_file(array).map_err(anyhow::Error::from)?)
                .with_context(|| array.display().to_string())?;
            writeln!(out, "{}", p.evaluate(&x)).map_err(io)?;
            Ok(Outcome::Success)
        }
        Command::Invariance { file, trials, seed } => invariance(&load(file)?, *trials, *seed, out),
    }
}

fn usage_or_failure(e: trilinvar_core::Error) -> CliError {
    match e {
        trilinvar_core::Error::InvalidInput(msg) => CliError::Usage(msg),
        other => CliError::Failure(other.into()),
    }
}

fn load(file: &Path) -> Result<Polynomial, CliError> {
    Ok(formats::read_polynomial_file(file).with_context(|| format!("reading {}", file.display()))?)
}

fn basis(degree: u32, dir: &Path, out: &mut dyn Write, quiet: bool) -> Result<Outcome, CliError> {
    if degree % 3 != 0 && !quiet {
        eprintln!("warning: degree {degree} is not a multiple of 3, so there are no weight-zero monomials");
    }
    let b = DegreeBasis::new(degree);
    let mut w = ManifestWriter::new(dir, "basis").context("creating output directory")?;
    w.manifest.degree = Some(degree);
    let name = format!("degree{degree}_weight_zero.txt");
    w.write(&name, &formats::write_monomials(&b.weight_zero)).context("writing basis")?;
    w.manifest.dimensions.insert("weight_zero".into(), b.weight_zero.len() as u64);
    writeln!(out, "weight zero: {}", b.weight_zero.len()).context("stdout")?;
    for op in OperatorId::ALL {
        let (l, m) = (op.direction() + 1, op.root() + 1);
        let list = b.higher(op);
        w.write(&format!("degree{degree}_higher_{l}{m}.txt"), &formats::write_monomials(list)).context("writing basis")?;
        w.manifest.dimensions.insert(format!("higher_{l}{m}"), list.len() as u64);
        writeln!(out, "weight of {op}: {}", list.len()).context("stdout")?;
    }
    w.finish().context("writing manifest")?;
    Ok(Outcome::Success)
}

fn orbits(degree: u32, dir: &Path, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let orbits = orbit_decomposition(degree);
    let mut w = ManifestWriter::new(dir, "orbits").context("creating output directory")?;
    w.manifest.degree = Some(degree);
    // plain listing: every orbit with coefficient 1
    let rows: Vec<pipeline::OrbitCoefficient> = orbits
        .iter()
        .map(|o| pipeline::OrbitCoefficient {
            coefficient: 1.into(),
            min_rep: o.min_rep,
            size: o.size,
            kind: pipeline::invariant_kind(degree),
        })
        .collect();
    w.write(&format!("degree{degree}.orbits"), &formats::write_orbit_table(&rows)).context("writing orbits")?;
    let total: usize = orbits.iter().map(|o| o.size).sum();
    w.manifest.dimensions.insert("orbits".into(), orbits.len() as u64);
    w.manifest.dimensions.insert("weight_zero".into(), total as u64);
    w.finish().context("writing manifest")?;
    writeln!(out, "{} orbits covering {} weight-zero monomials", orbits.len(), total).context("stdout")?;
    debug_assert_eq!(total, generate_weight_zero(degree).len());
    Ok(Outcome::Success)
}

/// File stem for an invariant name (`I'12` → `I12prime`).
pub fn file_stem(name: &str) -> String {
    name.replace('\'', "") + if name.contains('\'') { "prime" } else { "" }
}

fn write_record(w: &mut ManifestWriter, rec: &InvariantRecord, format: FormatArg) -> anyhow::Result<()> {
    let stem = file_stem(&rec.name);
    if format != FormatArg::Expanded {
        w.write(&format!("{stem}.orbits"), &formats::write_orbit_table(rec.nonzero_rows()))?;
    }
    if format != FormatArg::Orbit {
        w.write(&format!("{stem}.expanded"), &formats::write_expanded(&rec.expanded))?;
    }
    let m = &mut w.manifest;
    m.pins.insert(rec.name.clone(), rec.meta.normalization.clone());
    m.dimensions.insert(format!("{}_terms", rec.name), rec.term_count() as u64);
    m.dimensions.insert(format!("{}_orbits_nonzero", rec.name), rec.nonzero_rows().count() as u64);
    Ok(())
}

fn compute(
    degree: u32,
    mode: Mode,
    format: FormatArg,
    dir: &Path,
    config: &Config<'_>,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    if mode == Mode::FullBasis && degree == 12 {
        return Err(CliError::Usage("full-basis mode is limited to degree 9".into()));
    }
    let mut w = ManifestWriter::new(dir, "compute").context("creating output directory")?;
    w.manifest.degree = Some(degree);
    w.manifest.prime = Some(config.prime);
    w.manifest.mode = Some(mode.to_string());
    let mut records = Vec::new();
    match degree {
        3 => {
            let dim = pipeline::nullspace_dimension(3, mode, config).map_err(usage_or_failure)?;
            w.manifest.dimensions.insert("nullspace".into(), dim as u64);
            writeln!(out, "degree 3: nullspace dimension {dim}, no invariant").context("stdout")?;
        }
        6 => records.push(pipeline::compute_i6(config).map_err(usage_or_failure)?),
        9 => records.push(pipeline::compute_i9(mode, config).map_err(usage_or_failure)?),
        12 => {
            let pair = pipeline::compute_i12_pair(config).map_err(usage_or_failure)?;
            let r = &pair.report;
            w.manifest.ranks.insert("modular".into(), r.modular_ranks.clone());
            w.manifest.ranks.insert("integer".into(), r.integer_ranks.clone());
            w.manifest.dimensions.insert("modular_nullspace".into(), r.modular_nullity as u64);
            w.manifest.dimensions.insert("blocks_per_operator".into(), r.blocks_per_operator as u64);
            w.manifest.dimensions.insert("distinct_rows".into(), r.distinct_rows as u64);
            w.manifest.dimensions.insert("orbits".into(), r.orbit_count as u64);
            records.push(pair.i12);
            records.push(pair.i12_prime);
        }
        _ => unreachable!("validated by clap"),
    }
    for rec in &records {
        if let Some(m) = rec.meta.mode {
            w.manifest.mode = Some(m.to_string());
        }
        w.manifest.ranks.entry("modular".into()).or_insert_with(|| rec.meta.ranks.clone());
        w.manifest.dimensions.insert("nullspace".into(), rec.meta.nullspace_dimension as u64);
        write_record(&mut w, rec, format)?;
        writeln!(
            out,
            "{}: {} nonzero orbits, {} terms, annihilated over Z",
            rec.name,
            rec.nonzero_rows().count(),
            rec.term_count()
        )
        .context("stdout")?;
    }
    let m = w.finish().context("writing manifest")?;
    for f in &m.outputs {
        writeln!(out, "wrote {} ({} bytes, sha256 {})", dir.join(&f.path).display(), f.bytes, f.sha256).context("stdout")?;
    }
    Ok(Outcome::Success)
}

fn relation(config: &Config<'_>, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let i6 = pipeline::compute_i6(config).map_err(usage_or_failure)?;
    let pair = pipeline::compute_i12_pair(config).map_err(usage_or_failure)?;
    let report = pipeline::verify_relation(&i6, &pair.i12, &pair.i12_prime).map_err(usage_or_failure)?;
    writeln!(out, "{report}").context("stdout")?;
    if report.holds() {
        Ok(Outcome::Success)
    } else {
        writeln!(out, "residual has {} terms", report.residual.len()).context("stdout")?;
        Ok(Outcome::VerificationFailed)
    }
}

fn invariance(p: &Polynomial, trials: usize, seed: u64, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let failures: Vec<u64> = (0..trials as u64)
        .into_par_iter()
        .filter(|&t| {
            let (x, g) = invariance_trial(seed, t);
            p.evaluate(&x) != p.evaluate(&transform(&x, &g))
        })
        .collect();
    writeln!(out, "{}/{} trials invariant", trials - failures.len(), trials).context("stdout")?;
    match failures.first() {
        None => Ok(Outcome::Success),
        Some(&t) => {
            let (x, g) = invariance_trial(seed, t);
            writeln!(out, "first counterexample: trial {t}, matrices {:?}", g.matrices()).context("stdout")?;
            write!(out, "array: {}", formats::write_array_json(&x)).context("stdout")?;
            Ok(Outcome::VerificationFailed)
        }
    }
}

/// Caps the worker pool at `TRILINVAR_THREADS` when set.
pub fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("TRILINVAR_THREADS") {
        let n: usize = v.parse().with_context(|| format!("TRILINVAR_THREADS={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}
