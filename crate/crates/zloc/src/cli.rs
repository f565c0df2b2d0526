//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage or input errors, 2 when a
//! verification fails (an eigenvalue escaped a region, or the bound chain
//! was violated).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use zloc_core::oracle::{merge_eigenpairs, newton_restart, verify_inclusion, z_eigs_sweep_n2};
use zloc_core::regions::{region_k, region_m, region_omega, RadialRegion};
use zloc_core::{compare_report, DenseTensor, Eigenpair, OracleConfig};

use crate::format::{fmt_human, parse_tensor, region_to_csv, to_json};
use crate::report::{BoundReportDoc, EigenpairDoc, InfoDoc, RegionDoc, VerifyDoc};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;

/// Exit code plus the text destined for stdout (`report`) and stderr
/// (`diagnostic`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: u8,
    pub report: String,
    pub diagnostic: String,
}

impl CommandOutcome {
    fn ok(report: String) -> Self {
        CommandOutcome { exit_code: EXIT_OK, report, diagnostic: String::new() }
    }

    fn input_error(diagnostic: String) -> Self {
        CommandOutcome { exit_code: EXIT_INPUT, report: String::new(), diagnostic }
    }
}

#[derive(Debug, Parser)]
#[command(name = "zloc", version, about = "Z-eigenvalue inclusion regions and Z-spectral radius bounds for real tensors")]
struct Cli {
    /// Emit machine-readable JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shape, structure flags and row sums of a tensor.
    Info { file: PathBuf },
    /// Upper bounds on the Z-spectral radius.
    Bounds { file: PathBuf },
    /// Inclusion regions as radius intervals.
    Regions {
        file: PathBuf,
        /// K, M, Omega or all.
        #[arg(long, default_value = "all")]
        set: String,
        /// Write the region(s) as CSV; with `--set all` the set name is
        /// appended to the file stem.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Real Z-eigenpairs from the brute-force oracle.
    Eigs {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Newton)]
        method: Method,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Checks oracle eigenvalues against the regions and the Ω_max bound.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Verify a stored eigenpair list instead of running the oracle.
        #[arg(long)]
        pairs: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Sweep,
    Newton,
}

#[derive(Debug, clap::Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 1000)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Angle grid size for the dimension-2 sweep.
    #[arg(long, default_value_t = 100_000)]
    grid: usize,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    /// Worker threads for Newton restarts; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            restarts: self.restarts,
            max_iter: self.max_iter,
            seed: self.seed,
            ..OracleConfig::default()
        }
    }
}

/// Which inclusion set(s) to print.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetChoice {
    K,
    M,
    Omega,
    All,
}

impl FromStr for SetChoice {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "k" => Ok(SetChoice::K),
            "m" => Ok(SetChoice::M),
            "omega" => Ok(SetChoice::Omega),
            "all" => Ok(SetChoice::All),
            _ => bail!("unknown set `{s}`; expected K, M, Omega or all"),
        }
    }
}

/// Parses arguments (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutcome::ok(e.to_string()),
                _ => CommandOutcome::input_error(e.to_string()),
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(e) => CommandOutcome::input_error(format!("error: {e:#}\n")),
    }
}

fn load(path: &Path) -> anyhow::Result<DenseTensor> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_tensor(&text).with_context(|| format!("parsing {}", path.display()))
}

fn dispatch(cli: &Cli) -> anyhow::Result<CommandOutcome> {
    match &cli.command {
        Command::Info { file } => cmd_info(&load(file)?, cli.json),
        Command::Bounds { file } => cmd_bounds(&load(file)?, cli.json),
        Command::Regions { file, set, csv } => {
            let set: SetChoice = set.parse()?;
            cmd_regions(&load(file)?, set, csv.as_deref(), cli.json)
        }
        Command::Eigs { file, method, oracle } => cmd_eigs(&load(file)?, *method, oracle, cli.json),
        Command::Verify { file, oracle, pairs } => {
            let t = load(file)?;
            cmd_verify(&t, oracle, pairs.as_deref(), cli.json)
        }
    }
}

fn cmd_info(t: &DenseTensor, json: bool) -> anyhow::Result<CommandOutcome> {
    let doc = InfoDoc::new(t);
    if json {
        return Ok(CommandOutcome::ok(to_json(&doc)));
    }
    let mut out = String::new();
    writeln!(out, "order             {}", doc.order)?;
    writeln!(out, "dimension         {}", doc.dim)?;
    writeln!(out, "entries           {} ({} nonzero)", doc.entries, doc.nonzero_entries)?;
    writeln!(out, "nonnegative       {}", doc.nonnegative)?;
    writeln!(out, "symmetric         {}", doc.symmetric)?;
    writeln!(out, "weakly symmetric  {}", doc.weakly_symmetric)?;
    let sums: Vec<String> = doc.row_sums.iter().map(|&r| fmt_human(r)).collect();
    writeln!(out, "row sums          {}", sums.join(" "))?;
    let top = doc.row_sums.iter().cloned().fold(0.0, f64::max);
    writeln!(out, "max row sum       {}", fmt_human(top))?;
    Ok(CommandOutcome::ok(out))
}

fn cmd_bounds(t: &DenseTensor, json: bool) -> anyhow::Result<CommandOutcome> {
    let report = compare_report(t);
    let exit_code = if report.chain_holds { EXIT_OK } else { EXIT_VERIFY };
    let doc = BoundReportDoc::from(&report);
    let text = if json {
        to_json(&doc)
    } else {
        let mut out = String::new();
        let (i, j) = report.attaining_pair;
        writeln!(out, "omega_max        {}  at ({i}, {j})", fmt_human(doc.omega_max))?;
        writeln!(out, "omega_hat_max    {}", fmt_human(doc.omega_hat_max))?;
        writeln!(out, "omega_tilde_max  {}", fmt_human(doc.omega_tilde_max))?;
        writeln!(out, "chain_middle     {}", fmt_human(doc.chain_middle))?;
        writeln!(out, "gershgorin       {}", fmt_human(doc.gershgorin))?;
        writeln!(out, "chain            {}", if report.chain_holds { "holds" } else { "VIOLATED" })?;
        for w in &doc.warnings {
            writeln!(out, "warning: {w}")?;
        }
        out
    };
    Ok(CommandOutcome { exit_code, report: text, diagnostic: String::new() })
}

fn selected_regions(t: &DenseTensor, set: SetChoice) -> Vec<(&'static str, RadialRegion)> {
    let agg = t.aggregates();
    let all = [SetChoice::K, SetChoice::M, SetChoice::Omega];
    all.into_iter()
        .filter(|&s| set == SetChoice::All || set == s)
        .map(|s| match s {
            SetChoice::K => ("K", region_k(&agg)),
            SetChoice::M => ("M", region_m(&agg)),
            _ => ("Omega", region_omega(&agg)),
        })
        .collect()
}

/// `regions.csv` becomes `regions_Omega.csv` when several sets are written.
fn csv_path(base: &Path, set: &str, many: bool) -> PathBuf {
    if !many {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_{set}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{set}"),
    };
    base.with_file_name(name)
}

fn cmd_regions(t: &DenseTensor, set: SetChoice, csv: Option<&Path>, json: bool) -> anyhow::Result<CommandOutcome> {
    let regions = selected_regions(t, set);
    if let Some(base) = csv {
        for (name, region) in &regions {
            let path = csv_path(base, name, regions.len() > 1);
            fs::write(&path, region_to_csv(region)).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let docs: Vec<RegionDoc> = regions.iter().map(|(name, r)| RegionDoc::new(name, r)).collect();
    if json {
        return Ok(CommandOutcome::ok(to_json(&docs)));
    }
    let mut out = String::new();
    for doc in &docs {
        writeln!(out, "{:<6} supremum {}", doc.set, fmt_human(doc.supremum))?;
        for iv in &doc.intervals {
            let open = if iv.lo_open { '(' } else { '[' };
            let close = if iv.hi_open { ')' } else { ']' };
            writeln!(out, "  {open}{}, {}{close}", fmt_human(iv.lo), fmt_human(iv.hi))?;
        }
    }
    Ok(CommandOutcome::ok(out))
}

/// Newton oracle with optional parallel restarts. Restarts are collected in
/// index order before merging, so the result does not depend on `threads`.
pub fn newton_eigenpairs(t: &DenseTensor, cfg: &OracleConfig, threads: usize) -> anyhow::Result<Vec<Eigenpair>> {
    cfg.validate()?;
    let found: Vec<Option<Eigenpair>> = if threads <= 1 {
        (0..cfg.restarts).map(|r| newton_restart(t, cfg, r)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
        pool.install(|| (0..cfg.restarts).into_par_iter().map(|r| newton_restart(t, cfg, r)).collect())
    };
    Ok(merge_eigenpairs(found.into_iter().flatten().collect(), cfg.dedupe_tol_lambda, cfg.dedupe_tol_x))
}

fn cmd_eigs(t: &DenseTensor, method: Method, args: &OracleArgs, json: bool) -> anyhow::Result<CommandOutcome> {
    let pairs = match method {
        Method::Sweep => z_eigs_sweep_n2(t, args.grid)?,
        Method::Newton => newton_eigenpairs(t, &args.config(), args.threads)?,
    };
    let docs: Vec<EigenpairDoc> = pairs.iter().map(EigenpairDoc::from).collect();
    if json {
        return Ok(CommandOutcome::ok(to_json(&docs)));
    }
    let mut out = String::new();
    match method {
        Method::Sweep => writeln!(out, "method sweep  grid {}  found {}", args.grid, docs.len())?,
        Method::Newton => writeln!(
            out,
            "method newton  seed {}  restarts {}  found {}",
            args.seed,
            args.restarts,
            docs.len()
        )?,
    }
    writeln!(out, "{:>12}  {:>12}  x", "lambda", "residual")?;
    for d in &docs {
        let x: Vec<String> = d.x.iter().map(|&v| fmt_human(v)).collect();
        writeln!(out, "{:>12}  {:>12}  {}", fmt_human(d.lambda), fmt_human(d.residual), x.join(" "))?;
    }
    Ok(CommandOutcome::ok(out))
}

fn cmd_verify(t: &DenseTensor, args: &OracleArgs, pairs: Option<&Path>, json: bool) -> anyhow::Result<CommandOutcome> {
    let (method, seed, found) = if let Some(path) = pairs {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let docs: Vec<EigenpairDoc> =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if let Some(bad) = docs.iter().find(|d| d.x.len() != t.dim()) {
            bail!("eigenpair with lambda {} has {} components, tensor dimension is {}", bad.lambda, bad.x.len(), t.dim());
        }
        ("file", None, docs.into_iter().map(Eigenpair::from).collect())
    } else if t.dim() == 2 {
        ("sweep", None, z_eigs_sweep_n2(t, args.grid)?)
    } else {
        ("newton", Some(args.seed), newton_eigenpairs(t, &args.config(), args.threads)?)
    };
    let report = verify_inclusion(t, &found);
    let doc = VerifyDoc::new(method, seed, &report);
    let exit_code = if doc.passed { EXIT_OK } else { EXIT_VERIFY };
    let text = if json {
        to_json(&doc)
    } else {
        let mut out = String::new();
        write!(out, "method {method}")?;
        if let Some(s) = seed {
            write!(out, "  seed {s}")?;
        }
        writeln!(out, "  eigenpairs {}", doc.eigenpairs)?;
        writeln!(out, "omega_max {}  certified {}", fmt_human(doc.omega_max), doc.certified)?;
        for v in report.violations() {
            writeln!(
                out,
                "violation: lambda {}  in Omega {}  in M {}  in K {}  under omega_max {}",
                fmt_human(v.lambda),
                v.in_omega,
                v.in_m,
                v.in_k,
                v.under_omega_max.map_or("n/a".to_string(), |b| b.to_string())
            )?;
        }
        writeln!(out, "{}", if doc.passed { "PASS" } else { "FAIL" })?;
        out
    };
    Ok(CommandOutcome { exit_code, report: text, diagnostic: String::new() })
}
