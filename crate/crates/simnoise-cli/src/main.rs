use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use simnoise::decompose::{decompose_with, DecomposeOptions};
use simnoise_cli::analysis::analyze;
use simnoise_cli::error::CliError;
use simnoise_cli::export::{export_comparison_tables, export_report, ExportFormat};
use simnoise_cli::manifest::{AnalysisParameters, Manifest, TTestKind};
use simnoise_cli::plan::{generate_dataset, GenerationPlan};
use simnoise_cli::trace::write_trace;

#[derive(Parser)]
#[command(
    name = "simnoise",
    version,
    about = "Decomposes repeated motion recordings into deterministic and stochastic noise and compares trial sets statistically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize trace files and a manifest from a generation plan
    Generate {
        /// Generation plan (JSON)
        #[arg(long)]
        plan: PathBuf,
        /// Output directory for traces/ and manifest.json
        #[arg(long)]
        out: PathBuf,
        /// Override the plan's base noise seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write per-set decomposition traces (deterministic, total, stochastic)
    Decompose {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Decompose only the set with this label
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        overrides: AnalysisArgs,
    },
    /// Per-set metrics (rms, SNR, DSR, spectra, averaging curves); ignores comparisons
    Metrics(RunArgs),
    /// Statistical comparisons only; the manifest must list comparison pairs
    Compare(RunArgs),
    /// Full pipeline: per-set metrics, comparisons, and all export tables
    Report(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Analysis manifest (JSON)
    #[arg(long)]
    manifest: PathBuf,
    /// Output directory for report files
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    overrides: AnalysisArgs,
    /// Which outputs to write; omit for both
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

/// Flags mirroring the manifest's analysis parameters; set ones override it.
#[derive(Args)]
struct AnalysisArgs {
    /// Low-pass cutoff in Hz
    #[arg(long)]
    cutoff_hz: Option<f64>,
    /// Upper edge of the binned spectrum in Hz
    #[arg(long)]
    f_max_hz: Option<f64>,
    /// Spectrum bin width in Hz
    #[arg(long)]
    bin_width_hz: Option<f64>,
    /// Significance level for all tests
    #[arg(long)]
    alpha: Option<f64>,
    /// t-test variant for rms comparisons
    #[arg(long, value_enum)]
    t_test: Option<TTestArg>,
    /// Subtract a per-trial fitted fundamental instead of the nominal command
    #[arg(long, value_enum)]
    fit_fundamental: Option<OnOff>,
    /// Use seeded random subsets (instead of prefixes) for averaging curves
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy)]
enum TTestArg {
    Pooled,
    Welch,
}

#[derive(ValueEnum, Clone, Copy)]
enum OnOff {
    On,
    Off,
}

#[derive(ValueEnum, Clone, Copy)]
enum FormatArg {
    Json,
    Csv,
}

impl AnalysisArgs {
    fn apply(&self, params: &mut AnalysisParameters) -> Result<(), CliError> {
        if let Some(v) = self.cutoff_hz {
            params.cutoff_hz = v;
        }
        if let Some(v) = self.f_max_hz {
            params.f_max_hz = v;
        }
        if let Some(v) = self.bin_width_hz {
            params.bin_width_hz = v;
        }
        if let Some(v) = self.alpha {
            params.alpha = v;
        }
        if let Some(v) = self.t_test {
            params.t_test = match v {
                TTestArg::Pooled => TTestKind::Pooled,
                TTestArg::Welch => TTestKind::Welch,
            };
        }
        if let Some(v) = self.fit_fundamental {
            params.fit_fundamental = matches!(v, OnOff::On);
        }
        if let Some(v) = self.seed {
            params.averaging_seed = Some(v);
        }
        params.validate()
    }
}

fn export_format(arg: Option<FormatArg>) -> ExportFormat {
    match arg {
        Some(FormatArg::Json) => ExportFormat::Json,
        Some(FormatArg::Csv) => ExportFormat::Csv,
        None => ExportFormat::All,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; bad usage is a
            // validation failure.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(degenerate) => std::process::exit(if degenerate { 3 } else { 0 }),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(i32::from(e.exit_code()));
        }
    }
}

/// Returns whether the run produced degenerate statistics (exit code 3).
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Generate { plan, out, seed } => {
            let plan = GenerationPlan::load(&plan)?;
            let manifest_path = generate_dataset(&plan, &out, seed)?;
            println!("wrote {}", manifest_path.display());
            Ok(false)
        }
        Command::Decompose {
            manifest,
            out,
            label,
            overrides,
        } => {
            let (manifest, base_dir) = load_manifest(&manifest)?;
            let mut params = manifest.parameters.clone();
            overrides.apply(&mut params)?;
            run_decompose(&manifest, &base_dir, &out, label.as_deref(), &params)?;
            Ok(false)
        }
        Command::Metrics(args) => run_analysis_command(args, Mode::Metrics),
        Command::Compare(args) => run_analysis_command(args, Mode::Compare),
        Command::Report(args) => run_analysis_command(args, Mode::Report),
    }
}

enum Mode {
    Metrics,
    Compare,
    Report,
}

fn load_manifest(path: &Path) -> Result<(Manifest, PathBuf), CliError> {
    let manifest = Manifest::load(path)?;
    let base_dir = path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    Ok((manifest, base_dir))
}

fn run_analysis_command(args: RunArgs, mode: Mode) -> Result<bool, CliError> {
    let (manifest, base_dir) = load_manifest(&args.manifest)?;
    let mut params = manifest.parameters.clone();
    args.overrides.apply(&mut params)?;

    let comparisons = match mode {
        Mode::Metrics => Vec::new(),
        Mode::Compare => {
            if manifest.comparisons.is_empty() {
                return Err(CliError::validation(
                    "compare requires a manifest with a non-empty comparisons list",
                ));
            }
            manifest.comparisons.clone()
        }
        Mode::Report => manifest.comparisons.clone(),
    };

    let sets = manifest.load_trial_sets(&base_dir)?;
    let report = analyze(&sets, &comparisons, &params)?;

    let format = export_format(args.format);
    let written = match mode {
        Mode::Compare => export_comparison_tables(&report, format, &args.out)?,
        _ => export_report(&report, format, &args.out)?,
    };
    for path in &written {
        println!("wrote {}", path.display());
    }
    if report.degenerate_statistics {
        eprintln!("warning: degenerate statistics present (see report)");
    }
    Ok(report.degenerate_statistics)
}

fn run_decompose(
    manifest: &Manifest,
    base_dir: &Path,
    out: &Path,
    label: Option<&str>,
    params: &AnalysisParameters,
) -> Result<(), CliError> {
    if let Some(wanted) = label {
        if !manifest.trial_sets.iter().any(|s| s.label == wanted) {
            return Err(CliError::validation(format!(
                "unknown trial-set label '{wanted}'"
            )));
        }
    }
    let sets = manifest.load_trial_sets(base_dir)?;
    let options = DecomposeOptions {
        cutoff_hz: params.cutoff_hz,
        fit_fundamental: params.fit_fundamental,
    };
    for set in sets
        .iter()
        .filter(|s| label.is_none_or(|wanted| s.label == wanted))
    {
        let decomposition = decompose_with(set, &options).map_err(|e| {
            CliError::validation(format!("trial set '{}': {e}", set.label))
        })?;
        let set_dir = out.join(&set.label);
        std::fs::create_dir_all(&set_dir).map_err(|e| CliError::io(&set_dir, e))?;
        write_trace(&set_dir.join("deterministic.csv"), &decomposition.deterministic)?;
        for (k, signal) in decomposition.total.iter().enumerate() {
            write_trace(&set_dir.join(format!("total_{:02}.csv", k + 1)), signal)?;
        }
        for (k, signal) in decomposition.stochastic.iter().enumerate() {
            write_trace(
                &set_dir.join(format!("stochastic_{:02}.csv", k + 1)),
                signal,
            )?;
        }
        println!("wrote {}", set_dir.display());
    }
    Ok(())
}
