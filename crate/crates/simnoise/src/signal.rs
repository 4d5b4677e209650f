//! Core signal types: uniformly sampled traces, command descriptions, and
//! sets of repeated trials.

use crate::error::{Error, Result};

/// Relative tolerance used when two sample rates must agree. The rates of
/// traces recovered from timestamped files carry round-off in the last few
/// digits, so exact float equality is too strict.
pub const RATE_REL_TOL: f64 = 1e-9;

/// A uniformly sampled acceleration trace.
///
/// Invariants (enforced at construction): at least one sample, a positive
/// finite sample rate, and every sample finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate_hz: f64,
}

impl Signal {
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidParameter {
                name: "samples",
                reason: "signal must contain at least one sample".into(),
            });
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::InvalidParameter {
                name: "sample_rate_hz",
                reason: format!("must be positive and finite, got {sample_rate_hz}"),
            });
        }
        if let Some(idx) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "samples",
                reason: format!("sample {idx} is not finite"),
            });
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty sample vectors
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// True when `other` has the same length and (within [`RATE_REL_TOL`])
    /// the same sample rate.
    pub fn aligned_with(&self, other: &Signal) -> bool {
        self.len() == other.len() && rates_match(self.sample_rate_hz, other.sample_rate_hz)
    }
}

pub(crate) fn rates_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= RATE_REL_TOL * a.abs().max(b.abs())
}

/// Direction of a vertical motion profile. `Up` means positive acceleration
/// values; `Down` mirrors the profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Up => 1.0,
            Direction::Down => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }
}

/// The waveform a command specifies.
#[derive(Debug, Clone, PartialEq)]
pub enum Waveform {
    /// `sign(direction) * peak_amplitude * sin(2*pi*frequency_hz*t)`.
    Sinusoid {
        frequency_hz: f64,
        peak_amplitude: f64,
        direction: Direction,
        duration_s: f64,
    },
    /// An explicit nominal trace, used when the command is not an analytic
    /// waveform.
    Sampled(Signal),
}

/// A commanded acceleration profile.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandSpec {
    pub label: String,
    pub waveform: Waveform,
}

impl CommandSpec {
    pub fn sinusoid(
        label: impl Into<String>,
        frequency_hz: f64,
        peak_amplitude: f64,
        direction: Direction,
        duration_s: f64,
    ) -> Self {
        Self {
            label: label.into(),
            waveform: Waveform::Sinusoid {
                frequency_hz,
                peak_amplitude,
                direction,
                duration_s,
            },
        }
    }

    pub fn sampled(label: impl Into<String>, trace: Signal) -> Self {
        Self {
            label: label.into(),
            waveform: Waveform::Sampled(trace),
        }
    }

    /// Fundamental frequency, when the command is an analytic sinusoid.
    pub fn frequency_hz(&self) -> Option<f64> {
        match self.waveform {
            Waveform::Sinusoid { frequency_hz, .. } => Some(frequency_hz),
            Waveform::Sampled(_) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.waveform {
            Waveform::Sinusoid {
                frequency_hz,
                peak_amplitude,
                duration_s,
                ..
            } => {
                if !(frequency_hz.is_finite() && *frequency_hz > 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "frequency_hz",
                        reason: format!("must be positive and finite, got {frequency_hz}"),
                    });
                }
                if !(peak_amplitude.is_finite() && *peak_amplitude >= 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "peak_amplitude",
                        reason: format!("must be non-negative and finite, got {peak_amplitude}"),
                    });
                }
                if !(duration_s.is_finite() && *duration_s > 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "duration_s",
                        reason: format!("must be positive and finite, got {duration_s}"),
                    });
                }
                Ok(())
            }
            Waveform::Sampled(_) => Ok(()), // Signal's constructor already checked it
        }
    }
}

/// Repeated recordings of one command.
#[derive(Debug, Clone)]
pub struct TrialSet {
    pub label: String,
    pub command: CommandSpec,
    pub trials: Vec<Signal>,
}

impl TrialSet {
    /// Checks the invariants other operations rely on: a valid command, at
    /// least one trial, and all trials mutually aligned.
    pub fn validate(&self) -> Result<()> {
        self.command.validate()?;
        let first = self.trials.first().ok_or(Error::InsufficientTrials {
            required: 1,
            found: 0,
        })?;
        for (i, trial) in self.trials.iter().enumerate().skip(1) {
            if !trial.aligned_with(first) {
                return Err(Error::Misaligned(format!(
                    "trial {i} of set '{}' has {} samples at {} Hz, expected {} at {} Hz",
                    self.label,
                    trial.len(),
                    trial.sample_rate_hz(),
                    first.len(),
                    first.sample_rate_hz()
                )));
            }
        }
        Ok(())
    }

    pub fn n_trials(&self) -> usize {
        self.trials.len()
    }

    pub fn sample_rate_hz(&self) -> Option<f64> {
        self.trials.first().map(Signal::sample_rate_hz)
    }

    pub fn n_samples(&self) -> Option<usize> {
        self.trials.first().map(Signal::len)
    }
}

/// Renders a command as a concrete trace of `n_samples` points at
/// `sample_rate_hz`.
///
/// For sinusoids, sample `k` is taken at `t = k / sample_rate_hz`; the
/// declared duration is descriptive and the requested length is
/// authoritative. A sampled waveform must already match the requested length
/// and rate and is returned as-is.
pub fn render_command(spec: &CommandSpec, sample_rate_hz: f64, n_samples: usize) -> Result<Signal> {
    spec.validate()?;
    if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
        return Err(Error::InvalidParameter {
            name: "sample_rate_hz",
            reason: format!("must be positive and finite, got {sample_rate_hz}"),
        });
    }
    if n_samples == 0 {
        return Err(Error::InvalidParameter {
            name: "n_samples",
            reason: "must be at least 1".into(),
        });
    }
    match &spec.waveform {
        Waveform::Sinusoid {
            frequency_hz,
            peak_amplitude,
            direction,
            ..
        } => {
            let w = 2.0 * std::f64::consts::PI * frequency_hz / sample_rate_hz;
            let scale = direction.sign() * peak_amplitude;
            let samples = (0..n_samples).map(|k| scale * (w * k as f64).sin()).collect();
            Signal::new(samples, sample_rate_hz)
        }
        Waveform::Sampled(trace) => {
            if trace.len() != n_samples || !rates_match(trace.sample_rate_hz(), sample_rate_hz) {
                return Err(Error::Misaligned(format!(
                    "sampled command '{}' has {} samples at {} Hz, requested {} at {} Hz",
                    spec.label,
                    trace.len(),
                    trace.sample_rate_hz(),
                    n_samples,
                    sample_rate_hz
                )));
            }
            Ok(trace.clone())
        }
    }
}

/// Total noise of one filtered trial: the pointwise difference
/// `trial - command`.
pub fn total_noise(trial: &Signal, command: &Signal) -> Result<Signal> {
    if !trial.aligned_with(command) {
        return Err(Error::Misaligned(format!(
            "trial has {} samples at {} Hz, command has {} at {} Hz",
            trial.len(),
            trial.sample_rate_hz(),
            command.len(),
            command.sample_rate_hz()
        )));
    }
    let samples = trial
        .samples()
        .iter()
        .zip(command.samples())
        .map(|(t, c)| t - c)
        .collect();
    Signal::new(samples, trial.sample_rate_hz())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn signal_rejects_empty_nonfinite_and_bad_rate() {
        assert!(matches!(
            Signal::new(vec![], 500.0),
            Err(Error::InvalidParameter { name: "samples", .. })
        ));
        assert!(Signal::new(vec![1.0, f64::NAN], 500.0).is_err());
        assert!(Signal::new(vec![1.0], 0.0).is_err());
        assert!(Signal::new(vec![1.0], -5.0).is_err());
        assert!(Signal::new(vec![1.0], f64::INFINITY).is_err());
    }

    #[test]
    fn render_sinusoid_peaks_at_quarter_period() {
        let spec = CommandSpec::sinusoid("s", 1.0, 2.0, Direction::Up, 1.0);
        let sig = render_command(&spec, 500.0, 500).unwrap();
        assert_eq!(sig.len(), 500);
        assert_abs_diff_eq!(sig.samples()[0], 0.0);
        // k = 125 is the quarter period of a 1 Hz tone at 500 Hz
        assert_abs_diff_eq!(sig.samples()[125], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn down_direction_mirrors_up() {
        let up = render_command(
            &CommandSpec::sinusoid("u", 2.0, 1.5, Direction::Up, 1.0),
            500.0,
            500,
        )
        .unwrap();
        let down = render_command(
            &CommandSpec::sinusoid("d", 2.0, 1.5, Direction::Down, 1.0),
            500.0,
            500,
        )
        .unwrap();
        for (u, d) in up.samples().iter().zip(down.samples()) {
            assert_eq!(*u, -*d);
        }
    }

    #[test]
    fn render_rejects_bad_parameters() {
        let spec = CommandSpec::sinusoid("s", 0.0, 1.0, Direction::Up, 1.0);
        assert!(render_command(&spec, 500.0, 500).is_err());
        let spec = CommandSpec::sinusoid("s", 1.0, -1.0, Direction::Up, 1.0);
        assert!(render_command(&spec, 500.0, 500).is_err());
        let spec = CommandSpec::sinusoid("s", 1.0, 1.0, Direction::Up, 1.0);
        assert!(render_command(&spec, 500.0, 0).is_err());
        assert!(render_command(&spec, 0.0, 500).is_err());
    }

    #[test]
    fn sampled_command_passes_through_when_aligned() {
        let trace = Signal::new(vec![0.5, -0.5, 0.25], 100.0).unwrap();
        let spec = CommandSpec::sampled("raw", trace.clone());
        let rendered = render_command(&spec, 100.0, 3).unwrap();
        assert_eq!(rendered, trace);
        assert!(render_command(&spec, 100.0, 4).is_err());
        assert!(render_command(&spec, 200.0, 3).is_err());
    }

    #[test]
    fn total_noise_of_identical_signals_is_zero() {
        let a = Signal::new(vec![1.0, -2.0, 3.0], 10.0).unwrap();
        let noise = total_noise(&a, &a).unwrap();
        assert!(noise.samples().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn total_noise_requires_alignment() {
        let a = Signal::new(vec![1.0, 2.0], 10.0).unwrap();
        let b = Signal::new(vec![1.0, 2.0, 3.0], 10.0).unwrap();
        let c = Signal::new(vec![1.0, 2.0], 20.0).unwrap();
        assert!(matches!(total_noise(&a, &b), Err(Error::Misaligned(_))));
        assert!(matches!(total_noise(&a, &c), Err(Error::Misaligned(_))));
    }

    #[test]
    fn trialset_validate_flags_misaligned_trials() {
        let set = TrialSet {
            label: "s".into(),
            command: CommandSpec::sinusoid("c", 1.0, 1.0, Direction::Up, 1.0),
            trials: vec![
                Signal::new(vec![0.0; 10], 100.0).unwrap(),
                Signal::new(vec![0.0; 11], 100.0).unwrap(),
            ],
        };
        assert!(matches!(set.validate(), Err(Error::Misaligned(_))));
    }

    #[test]
    fn trialset_validate_requires_a_trial() {
        let set = TrialSet {
            label: "s".into(),
            command: CommandSpec::sinusoid("c", 1.0, 1.0, Direction::Up, 1.0),
            trials: vec![],
        };
        assert!(matches!(
            set.validate(),
            Err(Error::InsufficientTrials { .. })
        ));
    }
}
