//! Generation plans: a compact recipe from which `generate` synthesizes a
//! full dataset (trace files plus a ready-to-analyze manifest).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use simnoise::signal::CommandSpec;
use simnoise::synth::{generate_trialset, DeterministicTerm, SynthSpec, GENERATOR_NAME};

use crate::error::CliError;
use crate::export::write_atomic;
use crate::manifest::{
    validate_label, AnalysisParameters, CommandField, ComparisonEntry, GeneratedBy, Manifest,
    TrialSetEntry,
};
use crate::trace::write_trace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationPlan {
    pub sample_rate_hz: f64,
    pub duration_s: f64,
    /// Trials per set unless a set overrides it.
    pub n_trials: usize,
    /// Base noise seed; set i defaults to `seed.wrapping_add(i)`.
    pub seed: u64,
    /// Copied into the generated manifest.
    #[serde(default)]
    pub parameters: AnalysisParameters,
    pub sets: Vec<PlanSet>,
    #[serde(default)]
    pub comparisons: Vec<ComparisonEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanSet {
    pub label: String,
    pub command: CommandField,
    #[serde(default)]
    pub deterministic_terms: Vec<PlanTerm>,
    pub stochastic_sigma_mps2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_trials: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanTerm {
    pub frequency_hz: f64,
    pub amplitude_mps2: f64,
    pub phase_rad: f64,
}

impl GenerationPlan {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let content =
            std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let plan: GenerationPlan = serde_json::from_str(&content)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
        plan.validate().map_err(|e| match e {
            CliError::Validation(msg) => {
                CliError::validation(format!("{}: {msg}", path.display()))
            }
            other => other,
        })?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.sample_rate_hz.is_finite() && self.sample_rate_hz > 0.0) {
            return Err(CliError::validation("plan: sample_rate_hz must be positive"));
        }
        if !(self.duration_s.is_finite() && self.duration_s > 0.0) {
            return Err(CliError::validation("plan: duration_s must be positive"));
        }
        self.parameters.validate()?;
        if self.sets.is_empty() {
            return Err(CliError::validation("plan contains no sets"));
        }
        let mut labels = std::collections::HashSet::new();
        for set in &self.sets {
            validate_label(&set.label)?;
            if !labels.insert(set.label.as_str()) {
                return Err(CliError::validation(format!(
                    "duplicate set label '{}'",
                    set.label
                )));
            }
            if matches!(set.command, CommandField::Sampled { .. }) {
                return Err(CliError::validation(format!(
                    "set '{}': generate requires sinusoid commands",
                    set.label
                )));
            }
            if set.n_trials.unwrap_or(self.n_trials) == 0 {
                return Err(CliError::validation(format!(
                    "set '{}': n_trials must be at least 1",
                    set.label
                )));
            }
            if !(set.stochastic_sigma_mps2.is_finite() && set.stochastic_sigma_mps2 >= 0.0) {
                return Err(CliError::validation(format!(
                    "set '{}': stochastic_sigma_mps2 must be non-negative",
                    set.label
                )));
            }
        }
        for pair in &self.comparisons {
            for label in [&pair.reference, &pair.comparison] {
                if !labels.contains(label.as_str()) {
                    return Err(CliError::validation(format!(
                        "comparison references unknown label '{label}'"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Synthesizes every set, writes `traces/<label>/trial_NN.csv`, and writes a
/// manifest pointing at them. Returns the manifest path.
pub fn generate_dataset(
    plan: &GenerationPlan,
    out_dir: &Path,
    seed_override: Option<u64>,
) -> Result<PathBuf, CliError> {
    plan.validate()?;
    let base_seed = seed_override.unwrap_or(plan.seed);

    let mut entries = Vec::with_capacity(plan.sets.len());
    let mut set_seeds = std::collections::BTreeMap::new();

    for (index, set) in plan.sets.iter().enumerate() {
        let seed = set
            .seed
            .unwrap_or_else(|| base_seed.wrapping_add(index as u64));
        let command = plan_command(set)?;
        let spec = SynthSpec {
            command,
            deterministic_terms: set
                .deterministic_terms
                .iter()
                .map(|t| DeterministicTerm {
                    frequency_hz: t.frequency_hz,
                    amplitude: t.amplitude_mps2,
                    phase_rad: t.phase_rad,
                })
                .collect(),
            stochastic_sigma: set.stochastic_sigma_mps2,
            n_trials: set.n_trials.unwrap_or(plan.n_trials),
            sample_rate_hz: plan.sample_rate_hz,
            duration_s: plan.duration_s,
            seed,
        };
        let trial_set = generate_trialset(&spec)
            .map_err(|e| CliError::validation(format!("set '{}': {e}", set.label)))?;

        let set_dir = out_dir.join("traces").join(&set.label);
        std::fs::create_dir_all(&set_dir).map_err(|e| CliError::io(&set_dir, e))?;
        let mut traces = Vec::with_capacity(trial_set.trials.len());
        for (k, trial) in trial_set.trials.iter().enumerate() {
            let name = format!("trial_{:02}.csv", k + 1);
            write_trace(&set_dir.join(&name), trial)?;
            traces.push(format!("traces/{}/{name}", set.label));
        }

        set_seeds.insert(set.label.clone(), seed);
        entries.push(TrialSetEntry {
            label: set.label.clone(),
            command: set.command.clone(),
            sample_rate_hz: None,
            traces,
        });
    }

    let manifest = Manifest {
        sample_rate_hz: Some(plan.sample_rate_hz),
        parameters: plan.parameters.clone(),
        trial_sets: entries,
        comparisons: plan.comparisons.clone(),
        generated_by: Some(GeneratedBy {
            generator: GENERATOR_NAME.into(),
            seed: base_seed,
            set_seeds,
        }),
    };
    let manifest_path = out_dir.join("manifest.json");
    let mut json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::validation(format!("manifest serialization: {e}")))?;
    json.push('\n');
    write_atomic(&manifest_path, json.as_bytes())?;
    Ok(manifest_path)
}

fn plan_command(set: &PlanSet) -> Result<CommandSpec, CliError> {
    match &set.command {
        CommandField::Sinusoid {
            frequency_hz,
            peak_amplitude_mps2,
            direction,
            duration_s,
        } => Ok(CommandSpec::sinusoid(
            set.label.clone(),
            *frequency_hz,
            *peak_amplitude_mps2,
            direction.to_core(),
            *duration_s,
        )),
        CommandField::Sampled { .. } => Err(CliError::validation(format!(
            "set '{}': generate requires sinusoid commands",
            set.label
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::DirectionField;

    fn small_plan() -> GenerationPlan {
        GenerationPlan {
            sample_rate_hz: 100.0,
            duration_s: 0.5,
            n_trials: 3,
            seed: 11,
            parameters: AnalysisParameters {
                cutoff_hz: 20.0,
                f_max_hz: 20.0,
                ..AnalysisParameters::default()
            },
            sets: vec![
                PlanSet {
                    label: "s-up".into(),
                    command: CommandField::Sinusoid {
                        frequency_hz: 2.0,
                        peak_amplitude_mps2: 0.5,
                        direction: DirectionField::Up,
                        duration_s: 0.5,
                    },
                    deterministic_terms: vec![PlanTerm {
                        frequency_hz: 6.0,
                        amplitude_mps2: 0.02,
                        phase_rad: 0.0,
                    }],
                    stochastic_sigma_mps2: 0.01,
                    seed: None,
                    n_trials: None,
                },
                PlanSet {
                    label: "s-down".into(),
                    command: CommandField::Sinusoid {
                        frequency_hz: 2.0,
                        peak_amplitude_mps2: 0.5,
                        direction: DirectionField::Down,
                        duration_s: 0.5,
                    },
                    deterministic_terms: vec![],
                    stochastic_sigma_mps2: 0.01,
                    seed: Some(99),
                    n_trials: Some(4),
                },
            ],
            comparisons: vec![ComparisonEntry {
                reference: "s-up".into(),
                comparison: "s-down".into(),
            }],
        }
    }

    #[test]
    fn generated_dataset_loads_back_bit_identical() {
        let plan = small_plan();
        let dir = tempfile::tempdir().unwrap();
        let manifest_path = generate_dataset(&plan, dir.path(), None).unwrap();

        let manifest = Manifest::load(&manifest_path).unwrap();
        assert_eq!(manifest.trial_sets.len(), 2);
        let meta = manifest.generated_by.as_ref().unwrap();
        assert_eq!(meta.seed, 11);
        assert_eq!(meta.set_seeds["s-up"], 11);
        assert_eq!(meta.set_seeds["s-down"], 99);

        let sets = manifest.load_trial_sets(dir.path()).unwrap();
        assert_eq!(sets[0].trials.len(), 3);
        assert_eq!(sets[1].trials.len(), 4);

        // The loaded trials must match an in-memory regeneration exactly:
        // write_trace uses shortest round-trip formatting.
        let spec = SynthSpec {
            command: CommandSpec::sinusoid(
                "s-up",
                2.0,
                0.5,
                simnoise::signal::Direction::Up,
                0.5,
            ),
            deterministic_terms: vec![DeterministicTerm {
                frequency_hz: 6.0,
                amplitude: 0.02,
                phase_rad: 0.0,
            }],
            stochastic_sigma: 0.01,
            n_trials: 3,
            sample_rate_hz: 100.0,
            duration_s: 0.5,
            seed: 11,
        };
        let regenerated = generate_trialset(&spec).unwrap();
        for (loaded, fresh) in sets[0].trials.iter().zip(&regenerated.trials) {
            assert_eq!(loaded.samples(), fresh.samples());
        }
    }

    #[test]
    fn generation_is_byte_deterministic() {
        let plan = small_plan();
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        generate_dataset(&plan, dir_a.path(), None).unwrap();
        generate_dataset(&plan, dir_b.path(), None).unwrap();
        for rel in [
            "manifest.json",
            "traces/s-up/trial_01.csv",
            "traces/s-down/trial_04.csv",
        ] {
            let a = std::fs::read(dir_a.path().join(rel)).unwrap();
            let b = std::fs::read(dir_b.path().join(rel)).unwrap();
            assert_eq!(a, b, "{rel} differs");
        }
    }

    #[test]
    fn seed_override_shifts_unpinned_sets_only() {
        let plan = small_plan();
        let dir = tempfile::tempdir().unwrap();
        let manifest_path = generate_dataset(&plan, dir.path(), Some(500)).unwrap();
        let manifest = Manifest::load(&manifest_path).unwrap();
        let meta = manifest.generated_by.unwrap();
        assert_eq!(meta.seed, 500);
        assert_eq!(meta.set_seeds["s-up"], 500);
        // Explicit per-set seeds are pinned.
        assert_eq!(meta.set_seeds["s-down"], 99);
    }

    #[test]
    fn sampled_commands_are_rejected() {
        let mut plan = small_plan();
        plan.sets[0].command = CommandField::Sampled {
            trace: "cmd.csv".into(),
        };
        let err = plan.validate().unwrap_err();
        assert!(err.to_string().contains("sinusoid"));
    }

    #[test]
    fn plan_json_round_trips() {
        let plan = small_plan();
        let json = serde_json::to_string_pretty(&plan).unwrap();
        let back: GenerationPlan = serde_json::from_str(&json).unwrap();
        assert_eq!(plan, back);
    }
}
