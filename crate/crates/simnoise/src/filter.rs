//! Zero-phase Butterworth low-pass filtering.
//!
//! The filter is a 4th-order Butterworth realized as second-order sections
//! and applied forward and backward (squaring the magnitude response and
//! cancelling phase). Edges are handled by odd reflection over three filter
//! lengths with per-section steady-state initial conditions, so a constant
//! trace passes through unchanged.

use crate::error::{Error, Result};
use crate::signal::Signal;

/// Order of the low-pass used throughout the crate.
pub const FILTER_ORDER: usize = 4;

/// One second-order section with normalized `a0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquad {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Biquad {
    fn dc_gain(&self) -> f64 {
        (self.b0 + self.b1 + self.b2) / (1.0 + self.a1 + self.a2)
    }

    /// Steady-state direct-form-II-transposed state for a unit step input.
    fn unit_step_state(&self) -> [f64; 2] {
        let dc = self.dc_gain();
        [dc - self.b0, self.b2 - self.a2 * dc]
    }
}

/// Designs an even-order Butterworth low-pass as second-order sections via
/// the bilinear transform with frequency prewarping.
pub fn butter_lowpass(order: usize, cutoff_hz: f64, sample_rate_hz: f64) -> Result<Vec<Biquad>> {
    if order == 0 || order % 2 != 0 {
        return Err(Error::InvalidParameter {
            name: "order",
            reason: format!("must be a positive even integer, got {order}"),
        });
    }
    if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
        return Err(Error::InvalidParameter {
            name: "sample_rate_hz",
            reason: format!("must be positive and finite, got {sample_rate_hz}"),
        });
    }
    let nyquist = sample_rate_hz / 2.0;
    if !(cutoff_hz.is_finite() && cutoff_hz > 0.0 && cutoff_hz < nyquist) {
        return Err(Error::InvalidParameter {
            name: "cutoff_hz",
            reason: format!("must lie strictly between 0 and the Nyquist rate {nyquist} Hz, got {cutoff_hz}"),
        });
    }

    let wc = (std::f64::consts::PI * cutoff_hz / sample_rate_hz).tan();
    let sections = (0..order / 2)
        .map(|k| {
            // Analog prototype pole pair at wc * exp(i*theta), mapped by the
            // bilinear transform z = (1 + s) / (1 - s).
            let theta = std::f64::consts::PI
                * (0.5 + (2 * k + 1) as f64 / (2 * order) as f64);
            let (s_re, s_im) = (wc * theta.cos(), wc * theta.sin());
            let den = (1.0 - s_re) * (1.0 - s_re) + s_im * s_im;
            let zp_re = (1.0 - (s_re * s_re + s_im * s_im)) / den;
            let zp_im = 2.0 * s_im / den;
            let a1 = -2.0 * zp_re;
            let a2 = zp_re * zp_re + zp_im * zp_im;
            // Numerator zeros sit at z = -1; g makes the section's DC gain 1.
            let g = (1.0 + a1 + a2) / 4.0;
            Biquad {
                b0: g,
                b1: 2.0 * g,
                b2: g,
                a1,
                a2,
            }
        })
        .collect();
    Ok(sections)
}

/// Runs the cascade once over `buf`, each section starting from its unit-step
/// steady state scaled by `x0` (the first sample of the pass's input).
fn sosfilt_in_place(sections: &[Biquad], x0: f64, buf: &mut [f64]) {
    let mut scale = x0;
    for section in sections {
        let zi = section.unit_step_state();
        let (mut z0, mut z1) = (zi[0] * scale, zi[1] * scale);
        for v in buf.iter_mut() {
            let x = *v;
            let y = section.b0 * x + z0;
            z0 = section.b1 * x - section.a1 * y + z1;
            z1 = section.b2 * x - section.a2 * y;
            *v = y;
        }
        scale *= section.dc_gain();
    }
}

/// Forward-backward application of a second-order-section cascade with odd
/// reflection padding of three filter lengths.
pub fn filtfilt(sections: &[Biquad], samples: &[f64]) -> Result<Vec<f64>> {
    if sections.is_empty() {
        return Err(Error::InvalidParameter {
            name: "sections",
            reason: "cascade must contain at least one section".into(),
        });
    }
    let n = samples.len();
    let pad = 3 * (2 * sections.len() + 1);
    if n <= pad {
        return Err(Error::TooFewObservations {
            context: "filtfilt",
            required: pad + 1,
            found: n,
        });
    }

    let first = samples[0];
    let last = samples[n - 1];
    let mut ext = Vec::with_capacity(n + 2 * pad);
    ext.extend((0..pad).map(|i| 2.0 * first - samples[pad - i]));
    ext.extend_from_slice(samples);
    ext.extend((0..pad).map(|i| 2.0 * last - samples[n - 2 - i]));

    sosfilt_in_place(sections, ext[0], &mut ext);
    ext.reverse();
    sosfilt_in_place(sections, ext[0], &mut ext);
    ext.reverse();

    ext.drain(..pad);
    ext.truncate(n);
    Ok(ext)
}

/// Zero-phase 4th-order Butterworth low-pass of a signal.
pub fn lowpass_filter(signal: &Signal, cutoff_hz: f64) -> Result<Signal> {
    let sections = butter_lowpass(FILTER_ORDER, cutoff_hz, signal.sample_rate_hz())?;
    let filtered = filtfilt(&sections, signal.samples())?;
    Signal::new(filtered, signal.sample_rate_hz())
}
