//! The `propus` command line.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0  | success |
//! | 1  | verification failure |
//! | 2  | inadmissible even `v` |
//! | 3  | search budget exhausted with nothing found |
//! | 64 | usage error |
//! | 65 | data error (unparseable or invalid input file) |
//! | 66 | I/O error |

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::arrays::{goethals_seidel_matrix, is_hadamard, is_skew_type, is_symmetric_matrix, propus_matrix};
use crate::catalog::{self, load_catalog, verify_entry, verify_family, VerificationReport};
use crate::family::{DifferenceFamily, SymmetricSlot};
use crate::format::{parse_family, parse_family_unchecked, write_family, write_matrix, MatrixFormat};
use crate::params::{enumerate_even_sets, enumerate_propus_sets, even_v_admissible, PropusParameterSet};
use crate::search::{
    exhaustive_propus_search, golay_search, propus_search, ExhaustiveOptions, SearchConfig, SearchEvent,
    SearchStats, SignMode, Split, Variant,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INADMISSIBLE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 66;

#[derive(Debug, Parser)]
#[command(name = "propus", version, about = "Symmetric Hadamard matrices from propus difference families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the parameter sets (v;x,y,y,z;λ) for a given v.
    Params {
        v: usize,
        /// Allow even v and report its admissibility.
        #[arg(long)]
        even_ok: bool,
        /// Append the known existence marks (odd v < 50 only).
        #[arg(long)]
        annotate: bool,
    },
    /// Randomized search for propus families.
    Search(SearchArgs),
    /// Complete search for small v.
    Exhaustive {
        params: String,
        #[arg(long, value_enum, default_value_t = SlotArg::A)]
        slot: SlotArg,
        /// Run beyond the default size cap.
        #[arg(long)]
        allow_large: bool,
        /// Write each family into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Assemble the matrix of a family file.
    Build {
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long, value_enum, default_value_t = ArrayArg::Propus)]
        array: ArrayArg,
        /// Output path; the matrix goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a family file, or every bundled family.
    Verify {
        #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
        path: Option<PathBuf>,
        #[arg(long)]
        catalog: bool,
    },
    /// Randomized search for periodic Golay pairs of even length v.
    Golay(GolayArgs),
    /// Inspect the bundled catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// One line per family.
    List,
    /// Write every family as a family file.
    Export { dir: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SlotArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "D", alias = "d")]
    D,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SplitArg {
    /// Symmetric block with B against the other outer block.
    WithMiddle,
    /// Symmetric block alone against B with the other outer block.
    Alone,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignArg {
    Binary,
    Ternary,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Brute,
    TwoTable,
    HashTree,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Pbm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ArrayArg {
    Gs,
    Propus,
}

#[derive(Debug, Args)]
struct Budget {
    /// RNG seed; drawn from system entropy and reported when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Crown exponent m (2^m branches).
    #[arg(long, env = "PROPUS_CROWN_M", default_value_t = 12)]
    crown_m: u32,
    /// Leaves per branch side.
    #[arg(long, env = "PROPUS_CAPACITY", default_value_t = 64)]
    capacity: usize,
    #[arg(long, value_enum, default_value_t = SignArg::Ternary)]
    sign: SignArg,
    /// Candidates per batch between budget checks.
    #[arg(long, default_value_t = 1024)]
    batch: usize,
    #[arg(long)]
    max_candidates: Option<u64>,
    /// For example `30s` or `5m`.
    #[arg(long, value_parser = humantime::parse_duration)]
    time_budget: Option<Duration>,
    /// Stop after this many solutions; 0 means no limit.
    #[arg(long, default_value_t = 1)]
    max_solutions: usize,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Parameter set, e.g. "(9;3,3,3,3;3)".
    params: String,
    #[command(flatten)]
    budget: Budget,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = SlotArg::A)]
    slot: SlotArg,
    #[arg(long, value_enum, default_value_t = SplitArg::WithMiddle)]
    split: SplitArg,
    /// Write each family into this directory; printed to stdout otherwise.
    #[arg(long)]
    emit_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GolayArgs {
    v: usize,
    k1: usize,
    k2: usize,
    #[command(flatten)]
    budget: Budget,
    #[arg(long, value_enum, default_value_t = VariantArg::HashTree)]
    variant: VariantArg,
}

/// A failed command: exit code and message for stderr.
struct Failure(i32, String);

type Outcome = std::result::Result<i32, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

fn data(e: impl ToString) -> Failure {
    Failure(EXIT_DATA, e.to_string())
}

fn io(path: &Path, e: std::io::Error) -> Failure {
    Failure(EXIT_IO, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io(path, e))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| io(path, e))
}

fn emit_json(value: &impl serde::Serialize) {
    if let Ok(line) = serde_json::to_string(value) {
        let _ = writeln!(std::io::stderr().lock(), "{line}");
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Params { v, even_ok, annotate } => cmd_params(v, even_ok, annotate),
        Command::Search(args) => cmd_search(args),
        Command::Exhaustive {
            params,
            slot,
            allow_large,
            emit_dir,
        } => cmd_exhaustive(&params, slot, allow_large, emit_dir.as_deref()),
        Command::Build {
            family,
            format,
            array,
            out,
        } => cmd_build(&family, format, array, out.as_deref()),
        Command::Verify { path, catalog } => cmd_verify(path.as_deref(), catalog),
        Command::Golay(args) => cmd_golay(args),
        Command::Catalog(CatalogCommand::List) => cmd_catalog_list(),
        Command::Catalog(CatalogCommand::Export { dir }) => cmd_catalog_export(&dir),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            eprintln!("propus: {message}");
            code
        }
    }
}

fn cmd_params(v: usize, even_ok: bool, annotate: bool) -> Outcome {
    if v < 2 {
        return Err(usage(format!("v must be at least 2, got {v}")));
    }
    let sets = if v % 2 == 1 {
        enumerate_propus_sets(v).map_err(usage)?
    } else {
        if !even_ok {
            return Err(usage(format!("v = {v} is even; pass --even-ok to enumerate even v")));
        }
        if !even_v_admissible(v).map_err(usage)? {
            println!("inadmissible: v = 2^{{2k+1}}(8m+7)");
            return Ok(EXIT_INADMISSIBLE);
        }
        enumerate_even_sets(v).map_err(usage)?
    };
    for s in sets {
        match catalog::annotations(&s).filter(|_| annotate) {
            Some(marks) => println!("{s} {}", marks.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")),
            None => println!("{s}"),
        }
    }
    Ok(EXIT_OK)
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let seed = rand::random();
        emit_json(&serde_json::json!({ "event": "seed", "seed": seed }));
        seed
    })
}

fn config_from(budget: &Budget) -> SearchConfig {
    SearchConfig {
        seed: resolve_seed(budget.seed),
        crown_exponent: budget.crown_m,
        branch_capacity: budget.capacity,
        batch_size: budget.batch,
        max_candidates: budget.max_candidates,
        time_budget: budget.time_budget,
        max_solutions: (budget.max_solutions > 0).then_some(budget.max_solutions),
        sign_mode: match budget.sign {
            SignArg::Binary => SignMode::Binary,
            SignArg::Ternary => SignMode::Ternary,
        },
        ..SearchConfig::default()
    }
}

fn slot_of(slot: SlotArg) -> SymmetricSlot {
    match slot {
        SlotArg::A => SymmetricSlot::A,
        SlotArg::D => SymmetricSlot::D,
    }
}

/// `family-v-x-y-z-<digest>.txt`, derived from the file's bytes.
pub fn family_file_name(family: &DifferenceFamily) -> String {
    let text = write_family(family);
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let p = family.params();
    format!("family-{}-{}-{}-{}-{}.txt", p.v(), p.x(), p.y(), p.z(), &digest[..16])
}

fn emit_families(families: &[DifferenceFamily], dir: Option<&Path>) -> std::result::Result<(), Failure> {
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
            for f in families {
                let path = dir.join(family_file_name(f));
                write(&path, &write_family(f))?;
                println!("{}", path.display());
            }
        }
        None => {
            for f in families {
                print!("{}", write_family(f));
            }
        }
    }
    Ok(())
}

fn summary(stats: &SearchStats, found: usize) {
    println!(
        "candidates={} sequences={} comparisons={} collisions={} matches={} found={} elapsed_ms={}",
        stats.candidates, stats.sequences, stats.comparisons, stats.collisions, stats.verified, found, stats.elapsed_ms
    );
}

fn cmd_search(args: SearchArgs) -> Outcome {
    let params: PropusParameterSet = args.params.parse().map_err(usage)?;
    let config = SearchConfig {
        workers: args.workers,
        symmetric_slot: slot_of(args.slot),
        split: match args.split {
            SplitArg::WithMiddle => Split::SymmetricWithMiddle,
            SplitArg::Alone => Split::SymmetricAlone,
        },
        ..config_from(&args.budget)
    };
    let log = Mutex::new(());
    let sink = |event: &SearchEvent| {
        let _guard = log.lock();
        emit_json(event);
    };
    let outcome = propus_search(&params, &config, Some(&sink)).map_err(usage)?;
    emit_families(&outcome.families, args.emit_dir.as_deref())?;
    summary(&outcome.stats, outcome.families.len());
    Ok(if outcome.families.is_empty() { EXIT_EXHAUSTED } else { EXIT_OK })
}

fn cmd_exhaustive(params: &str, slot: SlotArg, allow_large: bool, emit_dir: Option<&Path>) -> Outcome {
    let params: PropusParameterSet = params.parse().map_err(usage)?;
    let options = ExhaustiveOptions {
        slot: slot_of(slot),
        allow_large,
    };
    let families = exhaustive_propus_search(&params, &options).map_err(usage)?;
    emit_families(&families, emit_dir)?;
    println!("found={}", families.len());
    Ok(if families.is_empty() { EXIT_EXHAUSTED } else { EXIT_OK })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_build(path: &Path, format: FormatArg, array: ArrayArg, out: Option<&Path>) -> Outcome {
    let family = parse_family(&read(path)?).map_err(data)?;
    let h = match array {
        ArrayArg::Gs => goethals_seidel_matrix(&family),
        ArrayArg::Propus => propus_matrix(&family),
    };
    let format = match format {
        FormatArg::Text => MatrixFormat::Text,
        FormatArg::Pbm => MatrixFormat::Pbm,
    };
    let text = write_matrix(&h, format).map_err(data)?;
    let hadamard = is_hadamard(&h).map_err(data)?;
    let verdict = format!(
        "hadamard: {}, symmetric: {}, skew-type: {}",
        yes_no(hadamard),
        yes_no(is_symmetric_matrix(&h)),
        yes_no(is_skew_type(&h))
    );
    match out {
        Some(out) => {
            write(out, &text)?;
            println!("{verdict}");
        }
        None => {
            print!("{text}");
            eprintln!("{verdict}");
        }
    }
    Ok(if hadamard { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn print_report(prefix: &str, report: &VerificationReport) {
    for c in &report.checks {
        println!(
            "{prefix}{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
}

fn cmd_verify(path: Option<&Path>, catalog: bool) -> Outcome {
    let mut all_passed = true;
    if catalog {
        let entries = load_catalog().map_err(data)?;
        for entry in &entries {
            let report = verify_entry(entry);
            print_report(&format!("{} {} ", entry.source, entry.family.params()), &report);
            all_passed &= report.passed();
        }
        println!(
            "{} families: {}",
            entries.len(),
            if all_passed { "all pass" } else { "failures" }
        );
    } else if let Some(path) = path {
        let family = parse_family_unchecked(&read(path)?).map_err(data)?;
        let report = verify_family(&family, None);
        print_report("", &report);
        if let Some(slot) = report.symmetric_slot {
            println!("slot {slot}");
        }
        all_passed = report.passed();
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_golay(args: GolayArgs) -> Outcome {
    if args.v % 2 == 1 {
        return Err(usage(format!(
            "periodic Golay pairs exist only for even v, got {}",
            args.v
        )));
    }
    let config = SearchConfig {
        variant: match args.variant {
            VariantArg::Brute => Variant::Brute,
            VariantArg::TwoTable => Variant::TwoTable,
            VariantArg::HashTree => Variant::HashTree,
        },
        ..config_from(&args.budget)
    };
    let outcome = golay_search(args.v, args.k1, args.k2, &config).map_err(usage)?;
    for pair in &outcome.pairs {
        println!("{} / {}", pair.a, pair.b);
    }
    summary(&outcome.stats, outcome.pairs.len());
    Ok(if outcome.pairs.is_empty() { EXIT_EXHAUSTED } else { EXIT_OK })
}

fn cmd_catalog_list() -> Outcome {
    for entry in load_catalog().map_err(data)? {
        println!("{}\t{}\t{}", entry.source, entry.claimed_slot, entry.family);
    }
    Ok(EXIT_OK)
}

fn cmd_catalog_export(dir: &Path) -> Outcome {
    let entries = load_catalog().map_err(data)?;
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    for (i, entry) in entries.iter().enumerate() {
        let p = entry.family.params();
        let name = format!("{:02}-{}-{}-{}-{}.txt", i + 1, p.v(), p.x(), p.y(), p.z());
        let text = format!("# {} slot={}\n{}", entry.source, entry.claimed_slot, write_family(&entry.family));
        write(&dir.join(name), &text)?;
    }
    println!("exported {} families to {}", entries.len(), dir.display());
    Ok(EXIT_OK)
}
