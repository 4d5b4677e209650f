//! Manifest schema: which trial sets to analyze, which pairs to compare,
//! and the analysis parameters.

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use simnoise::signal::{CommandSpec, Direction, TrialSet};

use crate::error::CliError;
use crate::trace::load_trace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    /// Default sample rate for single-column traces; per-set rates override.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_rate_hz: Option<f64>,
    #[serde(default)]
    pub parameters: AnalysisParameters,
    pub trial_sets: Vec<TrialSetEntry>,
    #[serde(default)]
    pub comparisons: Vec<ComparisonEntry>,
    /// Present on datasets produced by `simnoise generate`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_by: Option<GeneratedBy>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisParameters {
    #[serde(default = "default_cutoff_hz")]
    pub cutoff_hz: f64,
    #[serde(default = "default_f_max_hz")]
    pub f_max_hz: f64,
    #[serde(default = "default_bin_width_hz")]
    pub bin_width_hz: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub t_test: TTestKind,
    #[serde(default)]
    pub fit_fundamental: bool,
    /// When set, averaging curves use seeded random subsets instead of
    /// prefix subsets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub averaging_seed: Option<u64>,
}

fn default_cutoff_hz() -> f64 {
    80.0
}
fn default_f_max_hz() -> f64 {
    80.0
}
fn default_bin_width_hz() -> f64 {
    1.0
}
fn default_alpha() -> f64 {
    0.05
}

impl Default for AnalysisParameters {
    fn default() -> Self {
        Self {
            cutoff_hz: default_cutoff_hz(),
            f_max_hz: default_f_max_hz(),
            bin_width_hz: default_bin_width_hz(),
            alpha: default_alpha(),
            t_test: TTestKind::default(),
            fit_fundamental: false,
            averaging_seed: None,
        }
    }
}

impl AnalysisParameters {
    pub fn validate(&self) -> Result<(), CliError> {
        let check = |ok: bool, msg: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::validation(format!("parameters: {msg}")))
            }
        };
        check(
            self.cutoff_hz.is_finite() && self.cutoff_hz > 0.0,
            "cutoff_hz must be positive",
        )?;
        check(
            self.f_max_hz.is_finite() && self.f_max_hz >= 0.0,
            "f_max_hz must be non-negative",
        )?;
        check(
            self.bin_width_hz.is_finite() && self.bin_width_hz > 0.0,
            "bin_width_hz must be positive",
        )?;
        check(
            self.alpha.is_finite() && self.alpha > 0.0 && self.alpha < 1.0,
            "alpha must lie strictly between 0 and 1",
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TTestKind {
    #[default]
    Pooled,
    Welch,
}

impl TTestKind {
    pub fn to_core(self) -> simnoise::stats::TTestVariant {
        match self {
            TTestKind::Pooled => simnoise::stats::TTestVariant::Pooled,
            TTestKind::Welch => simnoise::stats::TTestVariant::Welch,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TTestKind::Pooled => "pooled",
            TTestKind::Welch => "welch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSetEntry {
    pub label: String,
    pub command: CommandField,
    /// Overrides the manifest-level rate for this set's traces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_rate_hz: Option<f64>,
    pub traces: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CommandField {
    Sinusoid {
        frequency_hz: f64,
        peak_amplitude_mps2: f64,
        direction: DirectionField,
        duration_s: f64,
    },
    Sampled {
        /// Path to a trace file holding the nominal command, relative to the
        /// manifest.
        trace: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionField {
    Up,
    Down,
}

impl DirectionField {
    pub fn to_core(self) -> Direction {
        match self {
            DirectionField::Up => Direction::Up,
            DirectionField::Down => Direction::Down,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub reference: String,
    pub comparison: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedBy {
    pub generator: String,
    pub seed: u64,
    /// Resolved per-set noise seeds, keyed by label.
    #[serde(default)]
    pub set_seeds: BTreeMap<String, u64>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let content =
            std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let manifest: Manifest = serde_json::from_str(&content)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
        manifest.validate().map_err(|e| match e {
            CliError::Validation(msg) => {
                CliError::validation(format!("{}: {msg}", path.display()))
            }
            other => other,
        })?;
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.parameters.validate()?;
        if self.trial_sets.is_empty() {
            return Err(CliError::validation("manifest contains no trial sets"));
        }
        let mut seen = HashSet::new();
        for entry in &self.trial_sets {
            validate_label(&entry.label)?;
            if !seen.insert(entry.label.as_str()) {
                return Err(CliError::validation(format!(
                    "duplicate trial-set label '{}'",
                    entry.label
                )));
            }
            if entry.traces.is_empty() {
                return Err(CliError::validation(format!(
                    "trial set '{}' lists no trace files",
                    entry.label
                )));
            }
        }
        for pair in &self.comparisons {
            for label in [&pair.reference, &pair.comparison] {
                if !seen.contains(label.as_str()) {
                    return Err(CliError::validation(format!(
                        "comparison references unknown label '{label}'"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Loads every referenced trace, resolving paths relative to `base_dir`
    /// (normally the manifest's directory).
    pub fn load_trial_sets(&self, base_dir: &Path) -> Result<Vec<TrialSet>, CliError> {
        self.trial_sets
            .iter()
            .map(|entry| {
                let declared = entry.sample_rate_hz.or(self.sample_rate_hz);
                let command = match &entry.command {
                    CommandField::Sinusoid {
                        frequency_hz,
                        peak_amplitude_mps2,
                        direction,
                        duration_s,
                    } => CommandSpec::sinusoid(
                        entry.label.clone(),
                        *frequency_hz,
                        *peak_amplitude_mps2,
                        direction.to_core(),
                        *duration_s,
                    ),
                    CommandField::Sampled { trace } => {
                        let signal = load_trace(&base_dir.join(trace), declared)
                            .map_err(|e| tag(&entry.label, e))?;
                        CommandSpec::sampled(entry.label.clone(), signal)
                    }
                };
                let trials = entry
                    .traces
                    .iter()
                    .map(|t| load_trace(&base_dir.join(t), declared))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| tag(&entry.label, e))?;
                Ok(TrialSet {
                    label: entry.label.clone(),
                    command,
                    trials,
                })
            })
            .collect()
    }
}

fn tag(label: &str, e: CliError) -> CliError {
    match e {
        CliError::Validation(msg) => {
            CliError::validation(format!("trial set '{label}': {msg}"))
        }
        other => other,
    }
}

/// Labels become directory names and CSV cells, so keep them to a safe
/// character set.
pub fn validate_label(label: &str) -> Result<(), CliError> {
    if label.is_empty() || label.len() > 100 {
        return Err(CliError::validation(format!(
            "label '{label}' must be 1..=100 characters"
        )));
    }
    if label == "." || label == ".." {
        return Err(CliError::validation(format!(
            "label '{label}' is a reserved path name"
        )));
    }
    if !label
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
    {
        return Err(CliError::validation(format!(
            "label '{label}' may only contain ASCII letters, digits, '-', '_' and '.'"
        )));
    }
    Ok(())
}
