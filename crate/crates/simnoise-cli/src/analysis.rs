//! Runs the full pipeline on loaded trial sets and assembles the report.

use simnoise::decompose::{decompose_with, DecomposeOptions};
use simnoise::metrics::{
    amplitude_spectrum, averaging_curve_with, dsr, rms, snr, AveragingMode, SpectrumBins,
};
use simnoise::signal::{render_command, Signal, TrialSet, Waveform};
use simnoise::stats::{anova_two_way, t_test_unpaired, AnovaResult, FactorialTable};
use simnoise::Error as CoreError;

use crate::error::CliError;
use crate::manifest::{AnalysisParameters, ComparisonEntry};
use crate::report::{
    AnovaTableReport, AveragingReport, CommandSummary, ComparisonReport, ComparisonResult,
    EffectReport, ComparisonReport as Report, SpectraReport, TTestReport, TrialSetReport,
    SCHEMA_VERSION,
};

/// Per-set results the comparisons need beyond what lands in the report.
struct SetAnalysis {
    report: TrialSetReport,
    /// Per-trial binned total-noise spectra, indexed [trial][bin].
    spectra_total: Vec<Vec<f64>>,
    spectra_stochastic: Vec<Vec<f64>>,
    bin_centers_hz: Vec<f64>,
    /// Per-trial SNR values when all of them are finite.
    finite_snr: Option<Vec<f64>>,
    sinusoid: Option<SinusoidFactors>,
}

#[derive(Clone)]
struct SinusoidFactors {
    direction: String,
    intensity: String,
}

pub fn analyze(
    sets: &[TrialSet],
    comparisons: &[ComparisonEntry],
    params: &AnalysisParameters,
) -> Result<ComparisonReport, CliError> {
    let analyses: Vec<SetAnalysis> = sets
        .iter()
        .map(|set| analyze_set(set, params).map_err(|e| tag_set(&set.label, e)))
        .collect::<Result<_, _>>()?;

    let comparison_results: Vec<ComparisonResult> = comparisons
        .iter()
        .map(|pair| {
            compare_pair(&analyses, pair, params)
                .map_err(|e| tag_pair(&pair.reference, &pair.comparison, e))
        })
        .collect::<Result<_, _>>()?;

    let (snr_anova, snr_anova_note) = snr_anova(&analyses, comparisons, params);

    let degenerate_statistics = analyses.iter().any(|a| a.report.degenerate)
        || comparison_results.iter().any(comparison_degenerate)
        || snr_anova.as_ref().is_some_and(table_degenerate);

    Ok(ComparisonReport {
        schema_version: SCHEMA_VERSION,
        parameters: params.clone(),
        trial_sets: analyses.into_iter().map(|a| a.report).collect(),
        comparisons: comparison_results,
        snr_anova,
        snr_anova_note,
        degenerate_statistics,
    })
}

fn analyze_set(set: &TrialSet, params: &AnalysisParameters) -> Result<SetAnalysis, CliError> {
    set.validate()?;
    let options = DecomposeOptions {
        cutoff_hz: params.cutoff_hz,
        fit_fundamental: params.fit_fundamental,
    };
    let decomposition = decompose_with(set, &options)?;
    let rate = decomposition.sample_rate_hz();
    let n_samples = decomposition.deterministic.len();
    let command = render_command(&set.command, rate, n_samples)?;

    let rms_total: Vec<f64> = decomposition.total.iter().map(rms).collect();
    let rms_stochastic: Vec<f64> = decomposition.stochastic.iter().map(rms).collect();
    let deterministic_rms = rms(&decomposition.deterministic);
    let stochastic_rms_pooled = simnoise::metrics::rms_pooled(&decomposition.stochastic)?;

    let snr_values: Vec<f64> = decomposition
        .total
        .iter()
        .map(|t| snr(&command, t))
        .collect();
    let snr_opt: Vec<Option<f64>> = snr_values
        .iter()
        .map(|&v| v.is_finite().then_some(v))
        .collect();
    let all_snr_finite = snr_opt.iter().all(Option::is_some);
    let (snr_mean, snr_sd) = if all_snr_finite {
        (Some(mean(&snr_values)), Some(sample_sd(&snr_values)))
    } else {
        (None, None)
    };

    let dsr_value = match dsr(&decomposition) {
        Ok(v) => Some(v),
        Err(CoreError::Degenerate(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let degenerate = !all_snr_finite || dsr_value.is_none();

    let spectrum =
        |sig: &Signal| amplitude_spectrum(sig, params.f_max_hz, params.bin_width_hz);
    let spectra_total: Vec<SpectrumBins> = decomposition
        .total
        .iter()
        .map(spectrum)
        .collect::<Result<_, _>>()?;
    let spectra_stochastic: Vec<SpectrumBins> = decomposition
        .stochastic
        .iter()
        .map(spectrum)
        .collect::<Result<_, _>>()?;
    let deterministic_spectrum = spectrum(&decomposition.deterministic)?;
    let bin_centers_hz = deterministic_spectrum.bin_centers_hz.clone();

    let total_matrix: Vec<Vec<f64>> =
        spectra_total.iter().map(|s| s.amplitudes.clone()).collect();
    let stochastic_matrix: Vec<Vec<f64>> = spectra_stochastic
        .iter()
        .map(|s| s.amplitudes.clone())
        .collect();

    let averaging = if decomposition.n_trials() >= 3 {
        let mode = match params.averaging_seed {
            Some(seed) => AveragingMode::RandomSubsets { seed },
            None => AveragingMode::PrefixSubsets,
        };
        let curve = averaging_curve_with(&decomposition, mode)?;
        Some(AveragingReport {
            inv_sqrt_n: curve.n_values.iter().map(|&n| 1.0 / (n as f64).sqrt()).collect(),
            n: curve.n_values,
            residual_rms: curve.residual_rms,
            pearson_r: curve.pearson_r,
        })
    } else {
        None
    };

    let (command_summary, sinusoid) = summarize_command(set, &command);

    let report = TrialSetReport {
        label: set.label.clone(),
        command: command_summary,
        n_trials: decomposition.n_trials(),
        n_samples,
        sample_rate_hz: rate,
        rms_total_mean: mean(&rms_total),
        rms_total_sd: sample_sd(&rms_total),
        rms_total,
        rms_stochastic_mean: mean(&rms_stochastic),
        rms_stochastic_sd: sample_sd(&rms_stochastic),
        rms_stochastic,
        deterministic_rms,
        stochastic_rms_pooled,
        snr: snr_opt,
        snr_mean,
        snr_sd,
        dsr: dsr_value,
        degenerate,
        spectra: SpectraReport {
            bin_width_hz: params.bin_width_hz,
            frequency_hz: bin_centers_hz.clone(),
            total_mean: column_means(&total_matrix),
            total_sd: column_sds(&total_matrix),
            deterministic: deterministic_spectrum.amplitudes,
            stochastic_mean: column_means(&stochastic_matrix),
            stochastic_sd: column_sds(&stochastic_matrix),
        },
        averaging,
    };

    Ok(SetAnalysis {
        report,
        spectra_total: total_matrix,
        spectra_stochastic: stochastic_matrix,
        bin_centers_hz,
        finite_snr: all_snr_finite.then_some(snr_values),
        sinusoid,
    })
}

fn summarize_command(
    set: &TrialSet,
    rendered: &Signal,
) -> (CommandSummary, Option<SinusoidFactors>) {
    match &set.command.waveform {
        Waveform::Sinusoid {
            frequency_hz,
            peak_amplitude,
            direction,
            duration_s,
        } => (
            CommandSummary {
                kind: "sinusoid".into(),
                frequency_hz: Some(*frequency_hz),
                peak_amplitude_mps2: Some(*peak_amplitude),
                direction: Some(direction.as_str().into()),
                duration_s: *duration_s,
                rms: rms(rendered),
            },
            Some(SinusoidFactors {
                direction: direction.as_str().into(),
                intensity: peak_amplitude.to_string(),
            }),
        ),
        Waveform::Sampled(trace) => (
            CommandSummary {
                kind: "sampled".into(),
                frequency_hz: None,
                peak_amplitude_mps2: None,
                direction: None,
                duration_s: trace.duration_s(),
                rms: rms(rendered),
            },
            None,
        ),
    }
}

fn compare_pair(
    analyses: &[SetAnalysis],
    pair: &ComparisonEntry,
    params: &AnalysisParameters,
) -> Result<ComparisonResult, CliError> {
    let reference = find_set(analyses, &pair.reference)?;
    let comparison = find_set(analyses, &pair.comparison)?;

    let variant = params.t_test.to_core();
    let t_total = t_test_unpaired(
        &reference.report.rms_total,
        &comparison.report.rms_total,
        variant,
    )?;
    let t_stochastic = t_test_unpaired(
        &reference.report.rms_stochastic,
        &comparison.report.rms_stochastic,
        variant,
    )?;

    let (anova_total, anova_stochastic, note) = spectrum_anovas(reference, comparison, params)?;

    Ok(ComparisonResult {
        reference: pair.reference.clone(),
        comparison: pair.comparison.clone(),
        rms_t_test_total: t_test_report(&t_total, params),
        rms_t_test_stochastic: t_test_report(&t_stochastic, params),
        spectrum_anova_total: anova_total,
        spectrum_anova_stochastic: anova_stochastic,
        spectrum_anova_note: note,
    })
}

type SpectrumAnovas = (
    Option<AnovaTableReport>,
    Option<AnovaTableReport>,
    Option<String>,
);

/// Frequency x profile ANOVA over per-trial binned amplitudes, run on both
/// the total and the stochastic spectra. Design limitations degrade to a
/// note instead of failing the run.
fn spectrum_anovas(
    reference: &SetAnalysis,
    comparison: &SetAnalysis,
    params: &AnalysisParameters,
) -> Result<SpectrumAnovas, CliError> {
    if reference.bin_centers_hz.len() < 2 {
        return Ok((
            None,
            None,
            Some("spectrum ANOVA skipped: fewer than 2 frequency bins".into()),
        ));
    }
    if reference.bin_centers_hz != comparison.bin_centers_hz {
        return Ok((
            None,
            None,
            Some("spectrum ANOVA skipped: sets have different frequency bins".into()),
        ));
    }
    let (nr, nc) = (
        reference.report.n_trials,
        comparison.report.n_trials,
    );
    if nr != nc {
        return Ok((
            None,
            None,
            Some(format!(
                "spectrum ANOVA skipped: unequal trial counts ({nr} vs {nc})"
            )),
        ));
    }

    let run = |ref_matrix: &[Vec<f64>], cmp_matrix: &[Vec<f64>]| -> Result<AnovaTableReport, CliError> {
        let mut observations = Vec::new();
        for (profile, matrix) in [("reference", ref_matrix), ("comparison", cmp_matrix)] {
            for trial in matrix {
                for (bin, value) in trial.iter().enumerate() {
                    observations.push((
                        reference.bin_centers_hz[bin].to_string(),
                        profile.to_string(),
                        *value,
                    ));
                }
            }
        }
        let table = FactorialTable::from_observations(observations)?;
        let result = anova_two_way(&table)?;
        Ok(anova_table_report(
            &result,
            "frequency_hz",
            "profile",
            "factor_b",
            params,
        ))
    };

    let total = run(&reference.spectra_total, &comparison.spectra_total)?;
    let stochastic = run(&reference.spectra_stochastic, &comparison.spectra_stochastic)?;
    Ok((Some(total), Some(stochastic), None))
}

/// Direction x intensity ANOVA on per-trial SNR across sinusoid trial sets.
///
/// Uses the sets named as references in the comparisons (all sinusoid sets
/// when there are no comparisons), mirroring a design where each reference
/// intensity appears in both motion directions. Returns a note instead of a
/// table when the design does not form a balanced factorial.
fn snr_anova(
    analyses: &[SetAnalysis],
    comparisons: &[ComparisonEntry],
    params: &AnalysisParameters,
) -> (Option<AnovaTableReport>, Option<String>) {
    let reference_labels: Vec<&str> = if comparisons.is_empty() {
        analyses.iter().map(|a| a.report.label.as_str()).collect()
    } else {
        let mut labels: Vec<&str> = comparisons.iter().map(|c| c.reference.as_str()).collect();
        labels.dedup();
        labels.sort_unstable();
        labels.dedup();
        labels
    };

    let selected: Vec<&SetAnalysis> = analyses
        .iter()
        .filter(|a| reference_labels.contains(&a.report.label.as_str()))
        .collect();

    let mut observations = Vec::new();
    for set in &selected {
        let Some(factors) = &set.sinusoid else {
            return (
                None,
                Some(format!(
                    "SNR ANOVA skipped: set '{}' has a sampled command without direction/intensity factors",
                    set.report.label
                )),
            );
        };
        let Some(snr_values) = &set.finite_snr else {
            return (
                None,
                Some(format!(
                    "SNR ANOVA skipped: set '{}' has non-finite SNR values",
                    set.report.label
                )),
            );
        };
        for value in snr_values {
            observations.push((factors.direction.clone(), factors.intensity.clone(), *value));
        }
    }

    if observations.is_empty() {
        return (None, Some("SNR ANOVA skipped: no sinusoid trial sets".into()));
    }

    let table = match FactorialTable::from_observations(observations) {
        Ok(t) => t,
        Err(e) => return (None, Some(format!("SNR ANOVA skipped: {e}"))),
    };
    match anova_two_way(&table) {
        Ok(result) => (
            Some(anova_table_report(
                &result,
                "direction",
                "intensity_mps2",
                "factor_b",
                params,
            )),
            None,
        ),
        Err(e) => (None, Some(format!("SNR ANOVA skipped: {e}"))),
    }
}

fn find_set<'a>(analyses: &'a [SetAnalysis], label: &str) -> Result<&'a SetAnalysis, CliError> {
    analyses
        .iter()
        .find(|a| a.report.label == label)
        .ok_or_else(|| CliError::validation(format!("unknown trial-set label '{label}'")))
}

fn t_test_report(result: &simnoise::stats::TTestResult, params: &AnalysisParameters) -> TTestReport {
    let finite = result.t_statistic.is_finite();
    TTestReport {
        variant: params.t_test.as_str().into(),
        t_statistic: finite.then_some(result.t_statistic),
        degrees_of_freedom: result.degrees_of_freedom,
        p_value: result.p_value,
        significant: result.p_value < params.alpha,
        degenerate: !finite,
    }
}

fn anova_table_report(
    result: &AnovaResult,
    factor_a_name: &str,
    factor_b_name: &str,
    effect_of_interest: &str,
    params: &AnalysisParameters,
) -> AnovaTableReport {
    let effect = |e: &simnoise::stats::AnovaEffect| EffectReport {
        sum_of_squares: e.sum_of_squares,
        df: e.df,
        f_statistic: e.f_statistic,
        p_value: e.p_value,
        significant: e.p_value.map(|p| p < params.alpha),
    };
    AnovaTableReport {
        factor_a_name: factor_a_name.into(),
        factor_b_name: factor_b_name.into(),
        factor_a: effect(&result.factor_a),
        factor_b: effect(&result.factor_b),
        interaction: result.interaction.as_ref().map(&effect),
        residual: effect(&result.residual),
        ss_total: result.ss_total,
        effect_of_interest: effect_of_interest.into(),
    }
}

fn comparison_degenerate(result: &ComparisonResult) -> bool {
    result.rms_t_test_total.degenerate
        || result.rms_t_test_stochastic.degenerate
        || result
            .spectrum_anova_total
            .as_ref()
            .is_some_and(table_degenerate)
        || result
            .spectrum_anova_stochastic
            .as_ref()
            .is_some_and(table_degenerate)
}

/// A tested effect without an F statistic means the residual mean square
/// was zero: flag it.
fn table_degenerate(table: &AnovaTableReport) -> bool {
    Report::headline_effect(table).f_statistic.is_none()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sample_sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

fn column_means(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n_cols = matrix.first().map_or(0, Vec::len);
    (0..n_cols)
        .map(|j| matrix.iter().map(|row| row[j]).sum::<f64>() / matrix.len() as f64)
        .collect()
}

fn column_sds(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n_cols = matrix.first().map_or(0, Vec::len);
    (0..n_cols)
        .map(|j| {
            let col: Vec<f64> = matrix.iter().map(|row| row[j]).collect();
            sample_sd(&col)
        })
        .collect()
}

fn tag_set(label: &str, e: CliError) -> CliError {
    match e {
        CliError::Validation(msg) => CliError::validation(format!("trial set '{label}': {msg}")),
        other => other,
    }
}

fn tag_pair(reference: &str, comparison: &str, e: CliError) -> CliError {
    match e {
        CliError::Validation(msg) => CliError::validation(format!(
            "comparison '{reference}' vs '{comparison}': {msg}"
        )),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use simnoise::signal::{CommandSpec, Direction};
    use simnoise::synth::{generate_trialset, DeterministicTerm, SynthSpec};

    fn synth_set(label: &str, amplitude: f64, direction: Direction, sigma: f64, seed: u64) -> TrialSet {
        let spec = SynthSpec {
            command: CommandSpec::sinusoid(label, 2.0, amplitude, direction, 1.0),
            deterministic_terms: vec![DeterministicTerm {
                frequency_hz: 7.0,
                amplitude: 0.02,
                phase_rad: 0.4,
            }],
            stochastic_sigma: sigma,
            n_trials: 6,
            sample_rate_hz: 200.0,
            duration_s: 1.0,
            seed,
        };
        generate_trialset(&spec).unwrap()
    }

    fn default_params() -> AnalysisParameters {
        AnalysisParameters {
            cutoff_hz: 40.0,
            f_max_hz: 40.0,
            ..AnalysisParameters::default()
        }
    }

    fn experiment_inputs() -> (Vec<TrialSet>, Vec<ComparisonEntry>) {
        let sets = vec![
            synth_set("ref-up", 0.5, Direction::Up, 0.01, 1),
            synth_set("ref-down", 0.5, Direction::Down, 0.01, 2),
            synth_set("cmp-up", 0.8, Direction::Up, 0.02, 3),
            synth_set("cmp-down", 0.8, Direction::Down, 0.02, 4),
        ];
        let comparisons = vec![
            ComparisonEntry {
                reference: "ref-up".into(),
                comparison: "cmp-up".into(),
            },
            ComparisonEntry {
                reference: "ref-down".into(),
                comparison: "cmp-down".into(),
            },
        ];
        (sets, comparisons)
    }

    #[test]
    fn full_report_has_all_sections() {
        let (sets, comparisons) = experiment_inputs();
        let report = analyze(&sets, &comparisons, &default_params()).unwrap();

        assert_eq!(report.trial_sets.len(), 4);
        assert_eq!(report.comparisons.len(), 2);
        for set in &report.trial_sets {
            assert_eq!(set.n_trials, 6);
            assert_eq!(set.rms_total.len(), 6);
            assert!(set.dsr.is_some());
            assert!(set.snr_mean.is_some());
            assert_eq!(set.spectra.frequency_hz.len(), 41);
            assert!(set.averaging.is_some());
            assert!(!set.degenerate);
        }
        for pair in &report.comparisons {
            assert!(pair.rms_t_test_total.p_value >= 0.0);
            assert!(pair.rms_t_test_total.p_value <= 1.0);
            assert!(pair.spectrum_anova_total.is_some());
            assert!(pair.spectrum_anova_stochastic.is_some());
            assert!(pair.spectrum_anova_note.is_none());
        }
        // 2 directions x 2 intensities of reference+comparison? references
        // only: 2 directions x 1 intensity -> skipped with a note.
        assert!(report.snr_anova.is_none());
        assert!(report.snr_anova_note.is_some());
        assert!(!report.degenerate_statistics);
    }

    #[test]
    fn snr_anova_runs_on_a_two_by_two_reference_design() {
        let sets = vec![
            synth_set("a-up", 0.5, Direction::Up, 0.01, 1),
            synth_set("a-down", 0.5, Direction::Down, 0.01, 2),
            synth_set("b-up", 1.5, Direction::Up, 0.01, 3),
            synth_set("b-down", 1.5, Direction::Down, 0.01, 4),
        ];
        let report = analyze(&sets, &[], &default_params()).unwrap();
        let table = report.snr_anova.expect("balanced 2x2 design");
        assert_eq!(table.factor_a_name, "direction");
        assert_eq!(table.factor_b_name, "intensity_mps2");
        // 2 x 2 cells, 6 replicates: df_a=1, df_b=1, df_ab=1, df_res=20.
        assert_eq!(table.factor_a.df, 1);
        assert_eq!(table.residual.df, 20);
        let headline = ComparisonReport::headline_effect(&table);
        // 3x the intensity with the same noise: SNR must differ massively.
        assert_eq!(headline.significant, Some(true));
    }

    #[test]
    fn identical_sets_compare_as_not_significant() {
        let set_a = synth_set("twin-a", 0.5, Direction::Up, 0.01, 42);
        let mut set_b = synth_set("twin-a", 0.5, Direction::Up, 0.01, 42);
        set_b.label = "twin-b".into();
        set_b.command.label = "twin-b".into();
        let comparisons = vec![ComparisonEntry {
            reference: "twin-a".into(),
            comparison: "twin-b".into(),
        }];
        let report = analyze(&[set_a, set_b], &comparisons, &default_params()).unwrap();
        let pair = &report.comparisons[0];
        assert_eq!(pair.rms_t_test_total.t_statistic, Some(0.0));
        assert_eq!(pair.rms_t_test_total.p_value, 1.0);
        assert!(!pair.rms_t_test_total.significant);
        assert!(!pair.rms_t_test_stochastic.significant);
    }

    #[test]
    fn unequal_trial_counts_skip_the_anova_with_a_note() {
        let set_a = synth_set("a", 0.5, Direction::Up, 0.01, 1);
        let mut spec_b = SynthSpec {
            command: CommandSpec::sinusoid("b", 2.0, 0.5, Direction::Up, 1.0),
            deterministic_terms: vec![],
            stochastic_sigma: 0.01,
            n_trials: 5,
            sample_rate_hz: 200.0,
            duration_s: 1.0,
            seed: 2,
        };
        spec_b.n_trials = 5;
        let set_b = generate_trialset(&spec_b).unwrap();
        let comparisons = vec![ComparisonEntry {
            reference: "a".into(),
            comparison: "b".into(),
        }];
        let report = analyze(&[set_a, set_b], &comparisons, &default_params()).unwrap();
        let pair = &report.comparisons[0];
        assert!(pair.spectrum_anova_total.is_none());
        assert!(pair
            .spectrum_anova_note
            .as_deref()
            .unwrap()
            .contains("unequal trial counts"));
        // The t-test still runs: it does not need balance.
        assert!(pair.rms_t_test_total.p_value.is_finite());
    }

    #[test]
    fn zero_noise_sets_are_flagged_degenerate() {
        // Two identical noise-free trials: their mean is exact, so the
        // stochastic residual is exactly zero and the DSR is undefined.
        // (Total noise keeps a tiny filter residue, so SNR stays finite.)
        let spec = SynthSpec {
            command: CommandSpec::sinusoid("quiet", 2.0, 0.5, Direction::Up, 1.0),
            deterministic_terms: vec![],
            stochastic_sigma: 0.0,
            n_trials: 2,
            sample_rate_hz: 200.0,
            duration_s: 1.0,
            seed: 9,
        };
        let set = generate_trialset(&spec).unwrap();
        let report = analyze(&[set], &[], &default_params()).unwrap();
        let s = &report.trial_sets[0];
        assert_eq!(s.stochastic_rms_pooled, 0.0);
        assert!(s.dsr.is_none());
        assert!(s.degenerate);
        assert!(report.degenerate_statistics);
    }

    #[test]
    fn errors_carry_the_trial_set_label() {
        let mut set = synth_set("tagged", 0.5, Direction::Up, 0.01, 1);
        set.trials.truncate(1);
        let err = analyze(&[set], &[], &default_params()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("tagged"), "got: {msg}");
    }

    #[test]
    fn averaging_seed_switches_to_random_subsets() {
        let set = synth_set("avg", 0.5, Direction::Up, 0.02, 5);
        let mut params = default_params();
        let prefix = analyze(std::slice::from_ref(&set), &[], &params).unwrap();
        params.averaging_seed = Some(11);
        let random = analyze(std::slice::from_ref(&set), &[], &params).unwrap();
        let a = prefix.trial_sets[0].averaging.as_ref().unwrap();
        let b = random.trial_sets[0].averaging.as_ref().unwrap();
        assert_eq!(a.n, b.n);
        assert_ne!(a.residual_rms, b.residual_rms);
        // The final point averages all trials either way; only summation
        // order differs, leaving float dust.
        assert!(a.residual_rms.last().unwrap() < &1e-12);
        assert!(b.residual_rms.last().unwrap() < &1e-12);
    }
}
