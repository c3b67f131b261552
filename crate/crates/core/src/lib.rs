//! Sparsity-adaptive denoising of one-bit quantized beamspace channel
//! measurements, plus the simulation harness used to benchmark it.
//!
//! The observation model is a narrowband mmWave uplink: a channel vector
//! seen through additive Gaussian noise and per-antenna one-bit I/Q
//! quantization. In beamspace the channel concentrates its energy in a few
//! bins, so soft thresholding with a well-chosen threshold removes most of
//! the quantization distortion. The threshold (and an output gain) are
//! picked per realization by minimizing a Stein-type risk estimate built on
//! the Bussgang decomposition of the quantizer, which needs nothing beyond
//! the observed vector and the second-order model parameters.
//!
//! ```
//! use sand_core::{compute_params, quantize_1bit, sand, ComplexVec64};
//! use sand_core::{gaussian_channel, add_noise, stream, StreamKind};
//!
//! let mut rng = stream(7, 0, StreamKind::Channel);
//! let h = gaussian_channel::<f64, _>(64, 1.0, &mut rng)?;
//! let y = add_noise(&h, 0.1, &mut rng);
//! let r = quantize_1bit(&y);
//! let params = compute_params(1.0, 0.1)?;
//! let estimate = sand(&r, &params)?;
//! assert_eq!(estimate.antenna.len(), 64);
//! assert!(estimate.tau_star >= 0.0);
//! # Ok::<(), sand_core::Error>(())
//! ```

mod error;
mod fft;
mod scalar;

pub mod beamspace;
pub mod bussgang;
pub mod channel;
pub mod denoise;
pub mod rng;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use beamspace::{sort_magnitudes, ComplexVec, Domain, SortedMagnitudes};
pub use bussgang::{
    compute_params, mc_alpha, mc_cross_moment, mc_cross_moment_imag, BussgangParams,
};
pub use channel::{
    add_noise, gaussian_channel, generate_channel, quantize_1bit, quantize_entry, steering_vector,
    ChannelRealization, PathComponent,
};
pub use denoise::{
    alpha_beaches, beaches, blmmse, gamma_star, ml_1bit, mse, one_beaches, sand, soft_threshold,
    sure_evaluate, DenoiseResult, SureSums,
};
pub use rng::{stream, StreamKind};
pub use sweep::{
    pairwise_sum, run_sweep, run_trial, summarize, write_records_csv, Algorithm, SweepConfig,
    SweepRecord,
};
pub use validate::{run_validation, sure_vs_mse, ValidationCheck, ValidationReport};

pub use num_complex::Complex;

/// Double-precision vector, the default working type.
pub type ComplexVec64 = ComplexVec<f64>;
/// Single-precision vector for memory-bound workloads.
pub type ComplexVec32 = ComplexVec<f32>;
pub type BussgangParams64 = BussgangParams<f64>;
pub type BussgangParams32 = BussgangParams<f32>;
pub type DenoiseResult64 = DenoiseResult<f64>;
pub type DenoiseResult32 = DenoiseResult<f32>;
