//! Splits repeated recordings into deterministic and stochastic noise.
//!
//! Each trial is low-pass filtered and the rendered command subtracted,
//! giving that trial's total noise. The per-sample mean of the total noise
//! across trials is the deterministic noise (it survives averaging because
//! it repeats identically); what remains in each trial is its stochastic
//! noise. By construction `total_i = deterministic + stochastic_i` exactly
//! and the stochastic traces average to zero at every sample.

use crate::error::{Error, Result};
use crate::filter::lowpass_filter;
use crate::signal::{render_command, total_noise, Signal, TrialSet, Waveform};

/// Default low-pass cutoff applied to raw trials before subtraction.
pub const DEFAULT_CUTOFF_HZ: f64 = 80.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DecomposeOptions {
    /// Cutoff of the zero-phase low-pass applied to each trial.
    pub cutoff_hz: f64,
    /// Subtract a per-trial least-squares fit of the command's fundamental
    /// instead of the nominal command. Requires a sinusoid command. Useful
    /// when actuator gain or phase error would otherwise leak into the
    /// noise estimate; results are no longer deviations from the nominal.
    pub fit_fundamental: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            cutoff_hz: DEFAULT_CUTOFF_HZ,
            fit_fundamental: false,
        }
    }
}

/// Result of decomposing a trial set.
#[derive(Debug, Clone)]
pub struct NoiseDecomposition {
    /// Per-trial total noise (filtered trial minus reference).
    pub total: Vec<Signal>,
    /// Per-sample mean of the total noise over trials.
    pub deterministic: Signal,
    /// Per-trial residual after removing the deterministic part.
    pub stochastic: Vec<Signal>,
}

impl NoiseDecomposition {
    pub fn n_trials(&self) -> usize {
        self.total.len()
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.deterministic.sample_rate_hz()
    }
}

/// Decomposes with the default nominal-subtraction mode.
pub fn decompose(set: &TrialSet, cutoff_hz: f64) -> Result<NoiseDecomposition> {
    decompose_with(
        set,
        &DecomposeOptions {
            cutoff_hz,
            ..DecomposeOptions::default()
        },
    )
}

pub fn decompose_with(set: &TrialSet, options: &DecomposeOptions) -> Result<NoiseDecomposition> {
    set.validate()?;
    if set.trials.len() < 2 {
        return Err(Error::InsufficientTrials {
            required: 2,
            found: set.trials.len(),
        });
    }
    let sample_rate = set.trials[0].sample_rate_hz();
    let n = set.trials[0].len();
    let command = render_command(&set.command, sample_rate, n)?;

    let fundamental_hz = if options.fit_fundamental {
        match set.command.waveform {
            Waveform::Sinusoid { frequency_hz, .. } => Some(frequency_hz),
            Waveform::Sampled(_) => {
                return Err(Error::InvalidParameter {
                    name: "fit_fundamental",
                    reason: "requires a sinusoid command; this set uses a sampled command".into(),
                })
            }
        }
    } else {
        None
    };

    let total: Vec<Signal> = set
        .trials
        .iter()
        .map(|trial| {
            let filtered = lowpass_filter(trial, options.cutoff_hz)?;
            match fundamental_hz {
                Some(f0) => {
                    let fitted = fit_fundamental(&filtered, f0);
                    total_noise(&filtered, &fitted)
                }
                None => total_noise(&filtered, &command),
            }
        })
        .collect::<Result<_>>()?;

    let t = total.len() as f64;
    let mut mean = vec![0.0; n];
    for trace in &total {
        for (m, v) in mean.iter_mut().zip(trace.samples()) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= t;
    }
    let deterministic = Signal::new(mean, sample_rate)?;

    let stochastic = total
        .iter()
        .map(|trace| total_noise(trace, &deterministic))
        .collect::<Result<_>>()?;

    Ok(NoiseDecomposition {
        total,
        deterministic,
        stochastic,
    })
}

/// Least-squares fit of `a*sin(w t) + b*cos(w t)` at the fundamental,
/// returned as a trace aligned with the input.
fn fit_fundamental(signal: &Signal, frequency_hz: f64) -> Signal {
    let w = 2.0 * std::f64::consts::PI * frequency_hz / signal.sample_rate_hz();
    let (mut ss, mut cc, mut sc, mut ys, mut yc) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (k, &y) in signal.samples().iter().enumerate() {
        let (s, c) = (w * k as f64).sin_cos();
        ss += s * s;
        cc += c * c;
        sc += s * c;
        ys += y * s;
        yc += y * c;
    }
    let det = ss * cc - sc * sc;
    // det > 0 whenever the record spans more than a degenerate sliver of a
    // cycle; guard anyway so pathological inputs fall back to a zero fit.
    let (a, b) = if det.abs() > f64::EPSILON * ss.max(cc).powi(2) {
        ((ys * cc - yc * sc) / det, (yc * ss - ys * sc) / det)
    } else {
        (0.0, 0.0)
    };
    let samples = (0..signal.len())
        .map(|k| {
            let (s, c) = (w * k as f64).sin_cos();
            a * s + b * c
        })
        .collect();
    Signal::new(samples, signal.sample_rate_hz()).expect("fit of finite samples is finite")
}
