//! Command-line front end for `cycmon`.
//!
//! [`run`] takes the argument list and the two output streams and returns the
//! process exit code, so the binary is a thin wrapper and tests can drive the
//! whole surface in-process.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use cycmon::search::{
    build_atlas, scan_double_loci, scan_special, scan_triple_loci, Atlas, AtlasRecord, RecordMeta,
    SearchBounds, SearchOptions,
};
use cycmon::{degeneration_chain, Error, MonodromyDatum};

mod render;
mod verify;

pub use render::CSV_COLUMNS;
pub use verify::{verify, VerifyOutcome, DOUBLE_LOCI, TRIPLE_LOCI};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REGRESSION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable that overrides the default atlas directory.
pub const ATLAS_CACHE_ENV: &str = "ATLAS_CACHE_DIR";
const ATLAS_FILE: &str = "atlas.jsonl";

#[derive(Debug, Parser)]
#[command(name = "cycmon", version, about = "Monodromy of families of cyclic covers of curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenspace profile, factors and verdict for one datum.
    Analyze(DatumArgs),
    /// Repeatedly degenerate a datum down to base genus 0.
    Degenerate(DatumArgs),
    /// Enumerate all data within the bounds, one record per orbit.
    Enumerate(BoundsArgs),
    /// Special loci of double covers.
    ScanDouble(ScanArgs),
    /// Special loci of Galois triple covers.
    ScanTriple(ScanArgs),
    /// Special families within the bounds.
    ScanSpecial(BoundsArgs),
    /// Check the golden tables, and optionally a stored atlas.
    Verify(VerifyArgs),
    /// Re-render a stored atlas.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DatumArgs {
    /// Order of the cyclic group.
    #[arg(long)]
    pub d: i64,
    /// Genus of the base curve.
    #[arg(long = "g")]
    pub genus_base: i64,
    /// Local monodromy exponents, comma separated; negative values are
    /// reduced mod d.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub theta: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Largest total genus.
    #[arg(long = "g-max", visible_alias = "genus-max")]
    pub genus_max: u64,
    /// Smallest total genus.
    #[arg(long = "g-min", visible_alias = "genus-min", default_value_t = 0)]
    pub genus_min: u64,
    /// Largest group order; defaults to max(4 g_max + 2, 6).
    #[arg(long)]
    pub d_max: Option<u32>,
    /// Only this group order.
    #[arg(long)]
    pub d: Option<u32>,
    /// Largest base genus.
    #[arg(long)]
    pub base_genus_max: Option<u32>,
    /// Only this base genus.
    #[arg(long = "g")]
    pub genus_base: Option<u32>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Also store the atlas at this path.
    #[arg(long)]
    pub atlas: Option<PathBuf>,
    /// Also store the atlas at the default cache location.
    #[arg(long)]
    pub cache: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long = "g-max", visible_alias = "genus-max", default_value_t = 100)]
    pub genus_max: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Genus bound for the double and triple cover tables.
    #[arg(long = "g-max", visible_alias = "genus-max", default_value_t = 100)]
    pub genus_max: u64,
    /// Upper end of the exhaustive emptiness window starting at genus 8.
    #[arg(long, default_value_t = 30)]
    pub emptiness_max: u64,
    /// Compare this stored atlas against a fresh computation. Without the
    /// flag the cached atlas is checked when present.
    #[arg(long)]
    pub atlas: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Atlas to read; defaults to the cache location.
    #[arg(long)]
    pub atlas: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Where the atlas lives when no path is given.
pub fn default_atlas_path() -> PathBuf {
    if let Some(dir) = std::env::var_os(ATLAS_CACHE_ENV).filter(|d| !d.is_empty()) {
        return PathBuf::from(dir).join(ATLAS_FILE);
    }
    match std::env::var_os("HOME") {
        Some(home) => PathBuf::from(home).join(".cache").join("cycmon").join(ATLAS_FILE),
        None => PathBuf::from(".cycmon").join(ATLAS_FILE),
    }
}

fn exit_code(err: &Error) -> i32 {
    if err.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_INPUT
    }
}

fn report_error(stderr: &mut dyn Write, err: &Error) -> i32 {
    let _ = writeln!(stderr, "error[{}]: {err}", err.code());
    exit_code(err)
}

/// Parse `args` (program name first) and execute. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => report_error(stderr, &e),
    }
}

fn parse_datum(args: &DatumArgs) -> Result<MonodromyDatum, Error> {
    let theta = cycmon::datum::parse_theta(&args.theta)
        .ok_or_else(|| Error::Parse(format!("theta: cannot parse {:?}", args.theta)))?;
    MonodromyDatum::from_residues(args.d, args.genus_base, &theta)
}

fn bounds_from(args: &BoundsArgs) -> Result<SearchBounds, Error> {
    let mut bounds = SearchBounds::up_to_genus(args.genus_max).with_genus_min(args.genus_min);
    if let Some(d_max) = args.d_max {
        bounds = bounds.with_d_max(d_max);
    }
    if let Some(d) = args.d {
        bounds = bounds.with_d(d);
    }
    if let Some(h) = args.base_genus_max {
        bounds = bounds.with_genus_base_max(h);
    }
    if let Some(h) = args.genus_base {
        bounds = bounds.with_genus_base(h);
    }
    bounds.validate()?;
    Ok(bounds)
}

/// Buffer output, then send it to `--out` or stdout.
fn emit(output: &OutputArgs, stdout: &mut dyn Write, body: &[u8]) -> Result<(), Error> {
    match &output.out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            let mut file = BufWriter::new(File::create(path)?);
            file.write_all(body)?;
            file.flush()?;
        }
        None => stdout.write_all(body)?,
    }
    Ok(())
}

fn store_atlas(atlas: &Atlas, path: &Path) -> Result<(), Error> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    atlas.save(path)
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Analyze(args) => {
            let datum = parse_datum(&args)?;
            let record = AtlasRecord::analyze(&datum, RecordMeta::standalone())?;
            let Some(v) = &record.verdict else {
                return Err(Error::ZeroDimensionalFamily);
            };
            let body = render::records(args.output.format, std::slice::from_ref(&record), Some(&datum))?;
            emit(&args.output, stdout, &body)?;
            if v.theorem_violation {
                writeln!(stderr, "error[TheoremViolation]: special family of genus {} >= 8", record.genus)?;
                return Ok(EXIT_INTERNAL);
            }
            Ok(EXIT_OK)
        }
        Command::Degenerate(args) => {
            let datum = parse_datum(&args)?;
            let chain = degeneration_chain(&datum)?;
            let body = render::chain(args.output.format, &datum, &chain)?;
            emit(&args.output, stdout, &body)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate(args) => enumerate(args, false, stdout, stderr),
        Command::ScanSpecial(args) => enumerate(args, true, stdout, stderr),
        Command::ScanDouble(args) => {
            let rows = scan_double_loci(args.genus_max)?;
            emit(&args.output, stdout, &render::double_loci(args.output.format, &rows)?)?;
            Ok(EXIT_OK)
        }
        Command::ScanTriple(args) => {
            let rows = scan_triple_loci(args.genus_max)?;
            emit(&args.output, stdout, &render::triple_loci(args.output.format, &rows)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let atlas = args.atlas.clone().or_else(|| {
                let path = default_atlas_path();
                path.exists().then_some(path)
            });
            let options = SearchOptions::with_workers(args.workers);
            let outcome = verify(args.genus_max, args.emptiness_max, atlas.as_deref(), &options)?;
            stdout.write_all(outcome.report.as_bytes())?;
            if outcome.theorem_violation {
                return Ok(EXIT_INTERNAL);
            }
            Ok(if outcome.passed { EXIT_OK } else { EXIT_REGRESSION })
        }
        Command::Export(args) => {
            let path = args.atlas.clone().unwrap_or_else(default_atlas_path);
            let atlas = Atlas::load(&path)?;
            let body = match args.output.format {
                Format::Json => atlas.to_bytes(),
                format => render::records(format, &atlas.records, None)?,
            };
            emit(&args.output, stdout, &body)?;
            Ok(EXIT_OK)
        }
    }
}

fn enumerate(
    args: BoundsArgs,
    special_only: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Error> {
    let bounds = bounds_from(&args)?;
    let options = SearchOptions::with_workers(args.workers);
    let atlas = if special_only {
        let records = scan_special(&bounds, &options)?;
        Atlas::new(&bounds, records)
    } else {
        build_atlas(&bounds, &options)?
    };
    if let Some(path) = &args.atlas {
        store_atlas(&atlas, path)?;
    }
    if args.cache {
        store_atlas(&atlas, &default_atlas_path())?;
    }
    let body = match args.output.format {
        Format::Json => atlas.to_bytes(),
        format => render::records(format, &atlas.records, None)?,
    };
    emit(&args.output, stdout, &body)?;
    let violations: Vec<_> = atlas
        .records
        .iter()
        .filter(|r| r.verdict.as_ref().is_some_and(|v| v.theorem_violation))
        .collect();
    for r in &violations {
        writeln!(stderr, "error[TheoremViolation]: {} has genus {}", r.key(), r.genus)?;
    }
    Ok(if violations.is_empty() { EXIT_OK } else { EXIT_INTERNAL })
}

/// Entry point used by the binary.
pub fn main_with_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}
