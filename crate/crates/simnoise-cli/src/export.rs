//! Report serialization: one JSON document plus plot-ready CSV tables.
//!
//! All numbers are formatted with Rust's shortest round-trip `Display`, so
//! re-running on identical inputs yields byte-identical files.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::report::{AnovaTableReport, ComparisonReport, TTestReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
    /// Both the JSON document and the CSV tables (the default).
    All,
}

impl ExportFormat {
    fn wants_json(self) -> bool {
        matches!(self, ExportFormat::Json | ExportFormat::All)
    }

    fn wants_csv(self) -> bool {
        matches!(self, ExportFormat::Csv | ExportFormat::All)
    }
}

/// Writes the report files into `out_dir`, returning the paths written.
pub fn export_report(
    report: &ComparisonReport,
    format: ExportFormat,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut written = Vec::new();
    let mut emit = |name: &str, content: String| -> Result<(), CliError> {
        let path = out_dir.join(name);
        write_atomic(&path, content.as_bytes())?;
        written.push(path);
        Ok(())
    };

    if format.wants_json() {
        let mut json = serde_json::to_string_pretty(report)
            .map_err(|e| CliError::validation(format!("report serialization: {e}")))?;
        json.push('\n');
        emit("report.json", json)?;
    }

    if format.wants_csv() {
        emit("spectra.csv", spectra_csv(report))?;
        emit("snr_by_intensity.csv", snr_csv(report))?;
        emit("rms_dsr_by_intensity.csv", rms_dsr_csv(report))?;
        emit("averaging_curves.csv", averaging_csv(report))?;
        if !report.comparisons.is_empty() {
            emit("comparisons.csv", comparisons_csv(report))?;
        }
    }

    Ok(written)
}

/// Writes only the comparison outputs: the JSON document and/or the test
/// table. Backs the `compare` subcommand.
pub fn export_comparison_tables(
    report: &ComparisonReport,
    format: ExportFormat,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut written = Vec::new();
    if format.wants_json() {
        let mut json = serde_json::to_string_pretty(report)
            .map_err(|e| CliError::validation(format!("report serialization: {e}")))?;
        json.push('\n');
        let path = out_dir.join("report.json");
        write_atomic(&path, json.as_bytes())?;
        written.push(path);
    }
    if format.wants_csv() && !report.comparisons.is_empty() {
        let path = out_dir.join("comparisons.csv");
        write_atomic(&path, comparisons_csv(report).as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

/// Writes to a `.tmp` sibling and renames into place, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::validation(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

/// Empty string for `None`, `Display` for `Some`: blank CSV cells mark
/// not-applicable or degenerate values.
fn opt<T: Display>(value: &Option<T>) -> String {
    value.as_ref().map(T::to_string).unwrap_or_default()
}

fn csv_join(cells: &[String]) -> String {
    cells.join(",")
}

struct CsvTable {
    lines: Vec<String>,
}

impl CsvTable {
    fn new(header: &[&str]) -> Self {
        Self {
            lines: vec![header.join(",")],
        }
    }

    fn row(&mut self, cells: &[String]) {
        self.lines.push(csv_join(cells));
    }

    fn finish(self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

fn spectra_csv(report: &ComparisonReport) -> String {
    let mut table = CsvTable::new(&[
        "label",
        "frequency_hz",
        "total_mean",
        "total_sd",
        "deterministic",
        "stochastic_mean",
        "stochastic_sd",
    ]);
    for set in &report.trial_sets {
        let s = &set.spectra;
        for (k, freq) in s.frequency_hz.iter().enumerate() {
            table.row(&[
                set.label.clone(),
                freq.to_string(),
                s.total_mean[k].to_string(),
                s.total_sd[k].to_string(),
                s.deterministic[k].to_string(),
                s.stochastic_mean[k].to_string(),
                s.stochastic_sd[k].to_string(),
            ]);
        }
    }
    table.finish()
}

fn snr_csv(report: &ComparisonReport) -> String {
    let mut table = CsvTable::new(&[
        "label",
        "direction",
        "peak_amplitude_mps2",
        "snr_mean",
        "snr_sd",
        "n_trials",
    ]);
    for set in &report.trial_sets {
        table.row(&[
            set.label.clone(),
            opt(&set.command.direction),
            opt(&set.command.peak_amplitude_mps2),
            opt(&set.snr_mean),
            opt(&set.snr_sd),
            set.n_trials.to_string(),
        ]);
    }
    table.finish()
}

fn rms_dsr_csv(report: &ComparisonReport) -> String {
    let mut table = CsvTable::new(&[
        "label",
        "direction",
        "peak_amplitude_mps2",
        "rms_total_mean",
        "rms_total_sd",
        "rms_stochastic_mean",
        "rms_stochastic_sd",
        "deterministic_rms",
        "stochastic_rms_pooled",
        "dsr",
    ]);
    for set in &report.trial_sets {
        table.row(&[
            set.label.clone(),
            opt(&set.command.direction),
            opt(&set.command.peak_amplitude_mps2),
            set.rms_total_mean.to_string(),
            set.rms_total_sd.to_string(),
            set.rms_stochastic_mean.to_string(),
            set.rms_stochastic_sd.to_string(),
            set.deterministic_rms.to_string(),
            set.stochastic_rms_pooled.to_string(),
            opt(&set.dsr),
        ]);
    }
    table.finish()
}

fn averaging_csv(report: &ComparisonReport) -> String {
    let mut table = CsvTable::new(&["label", "n", "inv_sqrt_n", "residual_rms", "pearson_r"]);
    for set in &report.trial_sets {
        let Some(curve) = &set.averaging else {
            continue;
        };
        for (k, n) in curve.n.iter().enumerate() {
            table.row(&[
                set.label.clone(),
                n.to_string(),
                curve.inv_sqrt_n[k].to_string(),
                curve.residual_rms[k].to_string(),
                opt(&curve.pearson_r),
            ]);
        }
    }
    table.finish()
}

/// One row per (pair, noise kind, test), mirroring a four-column results
/// table read row-wise. ANOVA rows carry the profile effect's F with
/// (df1, df2) = (effect df, residual df); t-test rows put df in df1.
fn comparisons_csv(report: &ComparisonReport) -> String {
    let mut table = CsvTable::new(&[
        "reference",
        "comparison",
        "noise_kind",
        "test",
        "statistic",
        "df1",
        "df2",
        "p_value",
        "significant",
        "degenerate",
    ]);
    for pair in &report.comparisons {
        let base = [pair.reference.clone(), pair.comparison.clone()];
        let t_row = |kind: &str, t: &TTestReport| {
            let mut row = base.to_vec();
            row.extend([
                kind.to_string(),
                format!("rms_t_{}", t.variant),
                opt(&t.t_statistic),
                t.degrees_of_freedom.to_string(),
                String::new(),
                t.p_value.to_string(),
                t.significant.to_string(),
                t.degenerate.to_string(),
            ]);
            row
        };
        let anova_row = |kind: &str, a: &Option<AnovaTableReport>| {
            let mut row = base.to_vec();
            row.push(kind.to_string());
            row.push("spectrum_anova_profile".to_string());
            match a {
                Some(table) => {
                    let effect = ComparisonReport::headline_effect(table);
                    row.extend([
                        opt(&effect.f_statistic),
                        effect.df.to_string(),
                        table.residual.df.to_string(),
                        opt(&effect.p_value),
                        opt(&effect.significant),
                        effect.f_statistic.is_none().to_string(),
                    ]);
                }
                None => row.extend(std::iter::repeat(String::new()).take(6)),
            }
            row
        };
        table.row(&t_row("total", &pair.rms_t_test_total));
        table.row(&t_row("stochastic", &pair.rms_t_test_stochastic));
        table.row(&anova_row("total", &pair.spectrum_anova_total));
        table.row(&anova_row("stochastic", &pair.spectrum_anova_stochastic));
    }
    table.finish()
}
