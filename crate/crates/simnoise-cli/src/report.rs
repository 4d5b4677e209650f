//! Serializable report model.
//!
//! Every value that can be degenerate (infinite SNR, undefined DSR,
//! zero-residual F) is an `Option<f64>` with a sibling flag, so the JSON
//! round-trips exactly: serde_json writes non-finite floats as null, which
//! would otherwise lose the distinction on reload.

use serde::{Deserialize, Serialize};

use crate::manifest::AnalysisParameters;

/// Current report schema. Bump when fields change incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub schema_version: u32,
    pub parameters: AnalysisParameters,
    pub trial_sets: Vec<TrialSetReport>,
    pub comparisons: Vec<ComparisonResult>,
    /// Direction x intensity ANOVA on per-trial SNR over the sinusoid trial
    /// sets; `None` (with a note) when the design is not a balanced
    /// two-level-or-more factorial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snr_anova: Option<AnovaTableReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snr_anova_note: Option<String>,
    /// True when any statistic in the report hit a degenerate case
    /// (infinite SNR, undefined DSR or F). Drives exit code 3.
    pub degenerate_statistics: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSetReport {
    pub label: String,
    pub command: CommandSummary,
    pub n_trials: usize,
    pub n_samples: usize,
    pub sample_rate_hz: f64,
    /// Per-trial rms of the total noise, in manifest trace order.
    pub rms_total: Vec<f64>,
    pub rms_total_mean: f64,
    pub rms_total_sd: f64,
    pub rms_stochastic: Vec<f64>,
    pub rms_stochastic_mean: f64,
    pub rms_stochastic_sd: f64,
    pub deterministic_rms: f64,
    pub stochastic_rms_pooled: f64,
    /// Per-trial SNR; `None` marks a non-finite ratio (noise rms of zero).
    pub snr: Vec<Option<f64>>,
    pub snr_mean: Option<f64>,
    pub snr_sd: Option<f64>,
    /// `None` when the pooled stochastic rms is zero.
    pub dsr: Option<f64>,
    pub degenerate: bool,
    pub spectra: SpectraReport,
    /// `None` for sets with fewer than 3 trials.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub averaging: Option<AveragingReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandSummary {
    /// "sinusoid" or "sampled".
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peak_amplitude_mps2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    pub duration_s: f64,
    pub rms: f64,
}

/// Binned amplitude spectra, column-per-quantity with one row per bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectraReport {
    pub bin_width_hz: f64,
    pub frequency_hz: Vec<f64>,
    /// Mean and sample sd over trials, per bin.
    pub total_mean: Vec<f64>,
    pub total_sd: Vec<f64>,
    pub deterministic: Vec<f64>,
    pub stochastic_mean: Vec<f64>,
    pub stochastic_sd: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragingReport {
    pub n: Vec<usize>,
    pub inv_sqrt_n: Vec<f64>,
    pub residual_rms: Vec<f64>,
    /// `None` when every residual is zero and the correlation is undefined.
    pub pearson_r: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub reference: String,
    pub comparison: String,
    pub rms_t_test_total: TTestReport,
    pub rms_t_test_stochastic: TTestReport,
    /// Frequency x profile ANOVA on per-trial binned spectra; `None` (with a
    /// note) when the design cannot be balanced, e.g. unequal trial counts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum_anova_total: Option<AnovaTableReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum_anova_stochastic: Option<AnovaTableReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum_anova_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TTestReport {
    pub variant: String,
    /// `None` marks the zero-variance unequal-means case (infinite t).
    pub t_statistic: Option<f64>,
    pub degrees_of_freedom: f64,
    pub p_value: f64,
    pub significant: bool,
    pub degenerate: bool,
}

/// A two-factor ANOVA table plus the headline effect used for the
/// significance decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnovaTableReport {
    pub factor_a_name: String,
    pub factor_b_name: String,
    pub factor_a: EffectReport,
    pub factor_b: EffectReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interaction: Option<EffectReport>,
    pub residual: EffectReport,
    pub ss_total: f64,
    /// Which effect answers the study question ("factor_a" or "factor_b").
    pub effect_of_interest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectReport {
    pub sum_of_squares: f64,
    pub df: usize,
    /// `None` when the residual mean square is zero.
    pub f_statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub significant: Option<bool>,
}

impl ComparisonReport {
    /// The effect carrying each ANOVA's significance decision.
    pub fn headline_effect(table: &AnovaTableReport) -> &EffectReport {
        if table.effect_of_interest == "factor_b" {
            &table.factor_b
        } else {
            &table.factor_a
        }
    }
}
