//! Scalar and spectral noise metrics: RMS, SNR, the
//! deterministic-to-stochastic ratio, binned amplitude spectra, and the
//! 1/sqrt(n) averaging curve.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustfft::{num_complex::Complex, FftPlanner};

use crate::decompose::NoiseDecomposition;
use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::stats;

/// Quadratic mean of a signal: sqrt((1/N) * sum(x_i^2)).
pub fn rms(signal: &Signal) -> f64 {
    rms_samples(signal.samples()).expect("signals are nonempty by construction")
}

/// RMS of a raw sample slice.
pub fn rms_samples(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: "rms of an empty sequence is undefined".into(),
        });
    }
    Ok((samples.iter().map(|v| v * v).sum::<f64>() / samples.len() as f64).sqrt())
}

/// RMS over all samples of all signals pooled together:
/// sqrt((1/(T*N)) * sum_i sum_k s_i[k]^2).
pub fn rms_pooled(signals: &[Signal]) -> Result<f64> {
    if signals.is_empty() {
        return Err(Error::InvalidParameter {
            name: "signals",
            reason: "pooled rms of an empty set is undefined".into(),
        });
    }
    let mut sum = 0.0;
    let mut count = 0usize;
    for s in signals {
        sum += s.samples().iter().map(|v| v * v).sum::<f64>();
        count += s.len();
    }
    Ok((sum / count as f64).sqrt())
}

/// Signal-to-noise ratio: (rms(command) / rms(total_noise))^2.
///
/// A zero noise rms yields `f64::INFINITY` (the infinite-SNR flag);
/// zero-over-zero yields NaN. Both are degenerate and worth surfacing to
/// users rather than erroring mid-pipeline.
pub fn snr(command: &Signal, total_noise: &Signal) -> f64 {
    let ratio = rms(command) / rms(total_noise);
    ratio * ratio
}

/// How the stochastic rms in the DSR denominator combines trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StochasticPooling {
    /// One rms over all samples of all trials (the default).
    PooledSamples,
    /// Mean of the per-trial rms values; differs from pooling only when
    /// trial-to-trial variance is nonstationary.
    MeanPerTrialRms,
}

/// Deterministic-to-stochastic ratio: rms(deterministic) / rms_pooled(stochastic).
pub fn dsr(decomposition: &NoiseDecomposition) -> Result<f64> {
    dsr_with(decomposition, StochasticPooling::PooledSamples)
}

pub fn dsr_with(
    decomposition: &NoiseDecomposition,
    pooling: StochasticPooling,
) -> Result<f64> {
    let stochastic_rms = match pooling {
        StochasticPooling::PooledSamples => rms_pooled(&decomposition.stochastic)?,
        StochasticPooling::MeanPerTrialRms => {
            let n = decomposition.stochastic.len();
            decomposition.stochastic.iter().map(rms).sum::<f64>() / n as f64
        }
    };
    if stochastic_rms == 0.0 {
        return Err(Error::Degenerate("pooled stochastic rms"));
    }
    Ok(rms(&decomposition.deterministic) / stochastic_rms)
}

/// One-sided amplitude spectrum aggregated into uniform frequency bins.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumBins {
    pub bin_centers_hz: Vec<f64>,
    pub amplitudes: Vec<f64>,
    pub bin_width_hz: f64,
}

/// Amplitude spectrum of a signal, binned from 0 Hz to `f_max_hz` at
/// `bin_width_hz` spacing.
///
/// Scaling is one-sided 2/N (1/N at DC and Nyquist), so a sinusoid of
/// amplitude A centered on a bin reports A. When the DFT resolution is finer
/// than the bin width, the magnitudes falling in `[center - w/2, center + w/2)`
/// are averaged; bins containing no DFT line report 0. No window is applied,
/// so content between DFT lines leaks into neighboring bins.
pub fn amplitude_spectrum(
    noise: &Signal,
    f_max_hz: f64,
    bin_width_hz: f64,
) -> Result<SpectrumBins> {
    let nyquist = noise.sample_rate_hz() / 2.0;
    if !(f_max_hz.is_finite() && f_max_hz >= 0.0 && f_max_hz <= nyquist) {
        return Err(Error::InvalidParameter {
            name: "f_max_hz",
            reason: format!("must lie in [0, Nyquist = {nyquist} Hz], got {f_max_hz}"),
        });
    }
    if !(bin_width_hz.is_finite() && bin_width_hz > 0.0) {
        return Err(Error::InvalidParameter {
            name: "bin_width_hz",
            reason: format!("must be positive and finite, got {bin_width_hz}"),
        });
    }

    let n = noise.len();
    let spectrum = fft_forward(noise.samples());
    let half = n / 2; // index of the Nyquist line for even n, else (n-1)/2

    let n_bins = (f_max_hz / bin_width_hz + 1e-9).floor() as usize + 1;
    let mut sums = vec![0.0; n_bins];
    let mut counts = vec![0usize; n_bins];
    let df = noise.sample_rate_hz() / n as f64;
    for (k, line) in spectrum.iter().enumerate().take(half + 1) {
        let freq = k as f64 * df;
        let bin = (freq / bin_width_hz).round();
        if bin < 0.0 || bin >= n_bins as f64 {
            continue;
        }
        let one_sided = if k == 0 || (n % 2 == 0 && k == half) {
            1.0
        } else {
            2.0
        };
        let amplitude = one_sided * line.norm() / n as f64;
        let bin = bin as usize;
        sums[bin] += amplitude;
        counts[bin] += 1;
    }
    let amplitudes = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| if c == 0 { 0.0 } else { s / c as f64 })
        .collect();
    let bin_centers_hz = (0..n_bins).map(|j| j as f64 * bin_width_hz).collect();
    Ok(SpectrumBins {
        bin_centers_hz,
        amplitudes,
        bin_width_hz,
    })
}

/// Element-wise [`amplitude_spectrum`] over a set of aligned signals.
pub fn spectrum_set(
    signals: &[Signal],
    f_max_hz: f64,
    bin_width_hz: f64,
) -> Result<Vec<SpectrumBins>> {
    if let Some(first) = signals.first() {
        for (i, s) in signals.iter().enumerate().skip(1) {
            if !s.aligned_with(first) {
                return Err(Error::Misaligned(format!(
                    "signal {i} has {} samples at {} Hz, expected {} at {} Hz",
                    s.len(),
                    s.sample_rate_hz(),
                    first.len(),
                    first.sample_rate_hz()
                )));
            }
        }
    }
    signals
        .iter()
        .map(|s| amplitude_spectrum(s, f_max_hz, bin_width_hz))
        .collect()
}

/// Two-sided power spectrum |X_k|^2 / N^2 for k = 0..N-1. By Parseval's
/// theorem its sum equals rms^2.
pub fn power_spectrum_two_sided(signal: &Signal) -> Vec<f64> {
    let n = signal.len() as f64;
    fft_forward(signal.samples())
        .iter()
        .map(|c| c.norm_sqr() / (n * n))
        .collect()
}

fn fft_forward(samples: &[f64]) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new()
        .plan_fft_forward(samples.len())
        .process(&mut buf);
    buf
}

/// Residual rms versus number of averaged trials, with its correlation
/// against 1/sqrt(n).
#[derive(Debug, Clone, PartialEq)]
pub struct AveragingCurve {
    pub n_values: Vec<usize>,
    pub residual_rms: Vec<f64>,
    /// `None` when every residual is (numerically) zero, i.e. the set has no
    /// stochastic component and the correlation is undefined.
    pub pearson_r: Option<f64>,
}

/// Subset choice for the averaging curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AveragingMode {
    /// The first n trials, deterministic and reproducible (the default).
    PrefixSubsets,
    /// A seeded random subset of size n for each n.
    RandomSubsets { seed: u64 },
}

/// Residuals below this are treated as exact zeros when deciding whether the
/// correlation is defined; they are float dust, not stochastic noise.
const RESIDUAL_FLOOR: f64 = 1e-12;

/// For n = 1..N, averages n total-noise traces, subtracts the full-N
/// deterministic estimate, and records the residual rms. `pearson_r`
/// correlates that curve with 1/sqrt(n).
pub fn averaging_curve(decomposition: &NoiseDecomposition) -> Result<AveragingCurve> {
    averaging_curve_with(decomposition, AveragingMode::PrefixSubsets)
}

pub fn averaging_curve_with(
    decomposition: &NoiseDecomposition,
    mode: AveragingMode,
) -> Result<AveragingCurve> {
    let t = decomposition.total.len();
    if t < 3 {
        return Err(Error::TooFewObservations {
            context: "averaging_curve",
            required: 3,
            found: t,
        });
    }
    let n_samples = decomposition.deterministic.len();

    let order: Vec<usize> = (0..t).collect();
    let mut rng = match mode {
        AveragingMode::PrefixSubsets => None,
        AveragingMode::RandomSubsets { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };

    let mut residual_rms = Vec::with_capacity(t);
    let mut subset = order.clone();
    for n in 1..=t {
        let chosen: &[usize] = match &mut rng {
            None => &order[..n],
            Some(rng) => {
                subset.copy_from_slice(&order);
                let (picked, _) = subset.partial_shuffle(rng, n);
                &*picked
            }
        };
        let mut acc = vec![0.0; n_samples];
        for &i in chosen {
            for (a, v) in acc.iter_mut().zip(decomposition.total[i].samples()) {
                *a += v;
            }
        }
        let inv_n = 1.0 / n as f64;
        let mut sum_sq = 0.0;
        for (a, d) in acc.iter().zip(decomposition.deterministic.samples()) {
            let r = a * inv_n - d;
            sum_sq += r * r;
        }
        residual_rms.push((sum_sq / n_samples as f64).sqrt());
    }

    let pearson_r = if residual_rms.iter().all(|&v| v < RESIDUAL_FLOOR) {
        None
    } else {
        let inv_sqrt_n: Vec<f64> = (1..=t).map(|n| 1.0 / (n as f64).sqrt()).collect();
        match stats::pearson_r(&inv_sqrt_n, &residual_rms) {
            Ok(r) => Some(r),
            Err(Error::ZeroVariance(_)) => None,
            Err(e) => return Err(e),
        }
    };

    Ok(AveragingCurve {
        n_values: (1..=t).collect(),
        residual_rms,
        pearson_r,
    })
}
