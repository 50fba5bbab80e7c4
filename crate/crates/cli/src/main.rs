use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mols_cli::{
    merge_reports, parse_mols, render_mols, resolve_dataset, verify_dataset, verify_mols_set, MolsFormat, Options,
    VerificationReport,
};
use mols_core::datasets::{self, Dataset};

#[derive(Parser)]
#[command(name = "mols", version, about = "Build and verify mutually orthogonal Latin squares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a permutation-array dataset (group order, orbits, distance, separation).
    VerifyPa(VerifyArgs),
    /// Verify a difference-matrix dataset (expansion and row-pair differences).
    VerifyDm(VerifyArgs),
    /// Build MOLS from a dataset, verify them and write them out.
    BuildMols(BuildArgs),
    /// Verify MOLS files in the text format or its JSON mirror.
    VerifyMols(VerifyMolsArgs),
    /// List the embedded datasets, or print one of them.
    Datasets(DatasetsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Mols,
    Json,
}

#[derive(Args)]
struct Common {
    /// Stop at the first failure.
    #[arg(long)]
    fail_fast: bool,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Embedded dataset name or path to a dataset file.
    dataset: String,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also build the MOLS and verify them.
    #[arg(long)]
    build: bool,
    /// With --build, write the verified MOLS (text format) here.
    #[arg(long, requires = "build")]
    mols_out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct BuildArgs {
    dataset: String,
    /// Destination file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "mols")]
    format: OutputFormat,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyMolsArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DatasetsArgs {
    /// Print this dataset instead of the listing.
    name: Option<String>,
    #[arg(long)]
    json: bool,
}

/// Usage and parse errors exit with 2, verification failures with 1.
enum Failure {
    Usage(String),
    Verification,
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyPa(a) => run_verify(a, "verify-pa"),
        Command::VerifyDm(a) => run_verify(a, "verify-dm"),
        Command::BuildMols(a) => run_build(a),
        Command::VerifyMols(a) => run_verify_mols(a),
        Command::Datasets(a) => run_datasets(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("mols: {msg}");
            ExitCode::from(2)
        }
    }
}

fn init_threads(common: &Common) -> CmdResult {
    rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build_global()
        .map_err(usage)
}

fn write_output(path: Option<&Path>, content: &str) -> CmdResult {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit(report: &VerificationReport, format: ReportFormat, out: Option<&Path>) -> CmdResult {
    let text = match format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json(),
    };
    write_output(out, &text)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run_verify(a: VerifyArgs, command: &str) -> CmdResult {
    init_threads(&a.common)?;
    let dataset = resolve_dataset(&a.dataset).map_err(usage)?;
    let expected_kind = if command == "verify-pa" { "pa" } else { "dm" };
    if dataset.summary().kind != expected_kind {
        return Err(usage(format!(
            "{} is a {} dataset; use verify-{}",
            a.dataset,
            dataset.summary().kind,
            dataset.summary().kind
        )));
    }
    let start = Instant::now();
    let opts = Options {
        build: a.build,
        fail_fast: a.common.fail_fast,
    };
    let mut outcome = verify_dataset(command, &dataset, opts);
    outcome.report.wall_time = Some(start.elapsed());
    if let (Some(path), Some(mols)) = (&a.mols_out, &outcome.mols) {
        write_output(Some(path), &render_mols(mols, MolsFormat::Mols))?;
    }
    emit(&outcome.report, a.format, a.out.as_deref())
}

fn run_build(a: BuildArgs) -> CmdResult {
    init_threads(&a.common)?;
    let dataset = resolve_dataset(&a.dataset).map_err(usage)?;
    let opts = Options {
        build: true,
        fail_fast: a.common.fail_fast,
    };
    let outcome = verify_dataset("build-mols", &dataset, opts);
    let Some(mols) = outcome.mols else {
        eprint!("{}", outcome.report.to_text());
        eprintln!("mols: verification failed, nothing written");
        return Err(Failure::Verification);
    };
    let format = match a.format {
        OutputFormat::Mols => MolsFormat::Mols,
        OutputFormat::Json => MolsFormat::Json,
    };
    write_output(a.out.as_deref(), &render_mols(&mols, format))?;
    eprintln!(
        "mols: {} verified squares of order {} from {}",
        mols.len(),
        mols.order(),
        dataset.name()
    );
    Ok(())
}

fn run_verify_mols(a: VerifyMolsArgs) -> CmdResult {
    init_threads(&a.common)?;
    let start = Instant::now();
    let mut reports = Vec::new();
    for path in &a.files {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let mols = parse_mols(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        reports.push(verify_mols_set(&path.display().to_string(), &mols, a.common.fail_fast));
    }
    let mut report = merge_reports("verify-mols", reports);
    report.wall_time = Some(start.elapsed());
    emit(&report, a.format, a.out.as_deref())
}

fn run_datasets(a: DatasetsArgs) -> CmdResult {
    match a.name {
        None => {
            let list = datasets::list_embedded().map_err(usage)?;
            if a.json {
                println!("{}", serde_json::to_string_pretty(&list).expect("summary serializes"));
            } else {
                for d in list {
                    println!("{:<8} {:<3} n={:<4} {}", d.name, d.kind, d.n, d.description);
                }
            }
        }
        Some(name) => {
            let text = datasets::embedded_text(&name).ok_or_else(|| usage(format!("unknown dataset `{name}`")))?;
            if a.json {
                let d = Dataset::parse(text).map_err(usage)?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&d.summary()).expect("summary serializes")
                );
            } else {
                print!("{text}");
            }
        }
    }
    Ok(())
}
