//! Quantifies how faithfully a motion simulator reproduces a commanded
//! acceleration profile.
//!
//! The workflow mirrors a repeated-measures bench experiment: a command is
//! replayed many times, each recording is low-pass filtered, and the residual
//! against the command is split into a deterministic part (identical in every
//! repetition) and a stochastic part (what remains per trial). On top of that
//! decomposition the crate computes summary metrics (RMS, SNR, the
//! deterministic-to-stochastic ratio), binned amplitude spectra, and the
//! classical tests used to compare recordings (unpaired t-tests, two-factor
//! ANOVA, Pearson correlation).
//!
//! ```
//! use simnoise::signal::{CommandSpec, Direction};
//! use simnoise::synth::{SynthSpec, generate_trialset};
//! use simnoise::decompose::decompose;
//! use simnoise::metrics;
//!
//! let spec = SynthSpec {
//!     command: CommandSpec::sinusoid("demo", 1.0, 0.3, Direction::Up, 1.0),
//!     deterministic_terms: vec![],
//!     stochastic_sigma: 0.02,
//!     n_trials: 20,
//!     sample_rate_hz: 500.0,
//!     duration_s: 1.0,
//!     seed: 7,
//! };
//! let set = generate_trialset(&spec).unwrap();
//! let decomposition = decompose(&set, 80.0).unwrap();
//! let dsr = metrics::dsr(&decomposition).unwrap();
//! assert!(dsr.is_finite());
//! ```

pub mod decompose;
pub mod error;
pub mod filter;
pub mod metrics;
pub mod signal;
pub mod special;
pub mod stats;
pub mod synth;

pub use decompose::{decompose, decompose_with, DecomposeOptions, NoiseDecomposition};
pub use error::{Error, Result};
pub use signal::{CommandSpec, Direction, Signal, TrialSet, Waveform};
