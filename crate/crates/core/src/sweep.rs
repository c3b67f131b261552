//! Experiment harness: seeded Monte Carlo sweeps over SNR and algorithms.
//!
//! One trial draws a channel, then reuses it at every SNR point with the
//! same underlying noise draws rescaled to the point's variance, so curves
//! differ only where the algorithms differ. All aggregation is a fixed-order
//! pairwise reduction, which makes the output CSV byte-stable across runs,
//! platforms, and any parallel execution of trials.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bussgang::compute_params;
use crate::channel::{add_noise, generate_channel, quantize_1bit};
use crate::denoise::{alpha_beaches, beaches, blmmse, ml_1bit, mse, one_beaches, sand};
use crate::error::{Error, Result};
use crate::rng::{stream, StreamKind};
use crate::scalar::{count, lit, Scalar};

/// Denoiser selector used by config files and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Sand,
    AlphaBeaches,
    OneBeaches,
    /// Denoises the unquantized observation; a reference point, not a
    /// one-bit method.
    #[serde(rename = "beaches-unquantized", alias = "beaches")]
    BeachesUnquantized,
    Ml,
    Blmmse,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Sand,
        Algorithm::AlphaBeaches,
        Algorithm::OneBeaches,
        Algorithm::BeachesUnquantized,
        Algorithm::Ml,
        Algorithm::Blmmse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sand => "sand",
            Algorithm::AlphaBeaches => "alpha-beaches",
            Algorithm::OneBeaches => "one-beaches",
            Algorithm::BeachesUnquantized => "beaches-unquantized",
            Algorithm::Ml => "ml",
            Algorithm::Blmmse => "blmmse",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sand" => Ok(Algorithm::Sand),
            "alpha-beaches" => Ok(Algorithm::AlphaBeaches),
            "one-beaches" => Ok(Algorithm::OneBeaches),
            "beaches" | "beaches-unquantized" => Ok(Algorithm::BeachesUnquantized),
            "ml" => Ok(Algorithm::Ml),
            "blmmse" => Ok(Algorithm::Blmmse),
            other => Err(Error::UnknownAlgorithm(other.to_string())),
        }
    }
}

/// Declarative description of one sweep. The channel energy is fixed at 1 by
/// the channel model, so SNR in dB maps to a noise variance of 10^(-snr/10).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Antenna count; powers of two take the fast transform path.
    pub antennas: usize,
    /// Propagation paths per realization.
    pub paths: usize,
    /// Operating points in dB of channel energy over noise variance.
    pub snr_db: Vec<f64>,
    /// Monte Carlo trials per operating point.
    pub trials: usize,
    /// Master seed for all derived streams.
    pub seed: u64,
    /// Denoisers to run, in output order.
    pub algorithms: Vec<Algorithm>,
    /// Minimum circular spacing between spatial frequencies, radians.
    #[serde(default)]
    pub min_separation: f64,
    /// Where the summary CSV goes; standard output when absent.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Directory receiving one antenna-domain CSV per trial for replay;
    /// nothing is dumped when absent.
    #[serde(default)]
    pub dump_channels: Option<PathBuf>,
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.antennas == 0 {
            return Err(Error::Config("antennas must be at least 1".into()));
        }
        if self.paths == 0 {
            return Err(Error::Config("paths must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.snr_db.is_empty() {
            return Err(Error::Config("snr_db must list at least one point".into()));
        }
        if self.snr_db.iter().any(|s| !s.is_finite()) {
            return Err(Error::Config("snr_db entries must be finite".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config(
                "algorithms must list at least one entry".into(),
            ));
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return Err(Error::Config(format!("duplicate algorithm {a}")));
            }
        }
        if self.min_separation < 0.0 {
            return Err(Error::Config("min_separation must be nonnegative".into()));
        }
        if self.paths as f64 * self.min_separation > std::f64::consts::TAU {
            return Err(Error::Config(format!(
                "min_separation {} rad is infeasible for {} paths",
                self.min_separation, self.paths
            )));
        }
        Ok(())
    }
}

/// One (algorithm, SNR) cell of the output table.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub algorithm: Algorithm,
    pub snr_db: f64,
    pub trials: usize,
    pub mean_mse: f64,
    pub mse_db: f64,
    pub stderr_mse: f64,
}

/// Beamspace MSE of every configured algorithm at every SNR point for one
/// trial, indexed `[algorithm][snr]` in config order. Pure given the config,
/// so callers may distribute trials across threads and aggregate by index.
pub fn run_trial<T: Scalar>(config: &SweepConfig, trial: u64) -> Result<Vec<Vec<T>>> {
    let mut channel_rng = stream(config.seed, trial, StreamKind::Channel);
    let channel = generate_channel(
        config.antennas,
        config.paths,
        lit::<T>(config.min_separation),
        &mut channel_rng,
    )?;
    let truth_beam = channel.response().dft()?;
    let mut out = vec![vec![T::zero(); config.snr_db.len()]; config.algorithms.len()];
    for (si, &snr_db) in config.snr_db.iter().enumerate() {
        let n0 = lit::<T>(10f64.powf(-snr_db / 10.0));
        // Restarting the noise stream at every SNR point reuses the same
        // draws scaled to the point's variance.
        let mut noise_rng = stream(config.seed, trial, StreamKind::Noise);
        let y = add_noise(channel.response(), n0, &mut noise_rng);
        let r = quantize_1bit(&y);
        let params = compute_params(T::one(), n0)?;
        for (ai, &alg) in config.algorithms.iter().enumerate() {
            let estimate = match alg {
                Algorithm::Sand => sand(&r, &params)?.beam,
                Algorithm::AlphaBeaches => alpha_beaches(&r, &params)?.beam,
                Algorithm::OneBeaches => one_beaches(&r, &params)?.beam,
                Algorithm::BeachesUnquantized => beaches(&y.dft()?, n0)?.beam,
                Algorithm::Ml => ml_1bit(&r)?.beam,
                Algorithm::Blmmse => blmmse(&r, T::one(), n0)?.beam,
            };
            out[ai][si] = mse(&estimate, &truth_beam)?;
        }
    }
    Ok(out)
}

/// Reduces per-trial MSE samples (in trial-index order) to one record.
pub fn summarize<T: Scalar>(algorithm: Algorithm, snr_db: f64, samples: &[T]) -> SweepRecord {
    assert!(!samples.is_empty(), "need at least one sample");
    let n = count::<T>(samples.len());
    let mean = pairwise_sum(samples) / n;
    let stderr = if samples.len() < 2 {
        T::zero()
    } else {
        let centered: Vec<T> = samples.iter().map(|&v| (v - mean) * (v - mean)).collect();
        let var = pairwise_sum(&centered) / (n - T::one());
        (var / n).sqrt()
    };
    let mean_f = mean.to_f64().unwrap_or(f64::NAN);
    SweepRecord {
        algorithm,
        snr_db,
        trials: samples.len(),
        mean_mse: mean_f,
        mse_db: 10.0 * mean_f.log10(),
        stderr_mse: stderr.to_f64().unwrap_or(f64::NAN),
    }
}

/// Runs the whole sweep; records come back grouped by algorithm in config
/// order, each swept over the SNR list. Identical configs produce identical
/// records.
pub fn run_sweep<T: Scalar>(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let mut cells: Vec<Vec<Vec<T>>> =
        vec![vec![Vec::with_capacity(config.trials); config.snr_db.len()]; config.algorithms.len()];
    if let Some(dir) = &config.dump_channels {
        fs::create_dir_all(dir)?;
    }
    for trial in 0..config.trials {
        let per_trial = run_trial::<T>(config, trial as u64)?;
        for (ai, row) in per_trial.into_iter().enumerate() {
            for (si, v) in row.into_iter().enumerate() {
                cells[ai][si].push(v);
            }
        }
        if let Some(dir) = &config.dump_channels {
            // Re-derive the realization; its stream is independent of
            // everything already consumed.
            let mut rng = stream(config.seed, trial as u64, StreamKind::Channel);
            let channel = generate_channel::<T, _>(
                config.antennas,
                config.paths,
                lit::<T>(config.min_separation),
                &mut rng,
            )?;
            channel
                .response()
                .write_csv_path(dir.join(format!("channel_{trial:05}.csv")))?;
        }
    }
    let mut records = Vec::with_capacity(config.algorithms.len() * config.snr_db.len());
    for (ai, &alg) in config.algorithms.iter().enumerate() {
        for (si, &snr_db) in config.snr_db.iter().enumerate() {
            records.push(summarize(alg, snr_db, &cells[ai][si]));
        }
    }
    Ok(records)
}

/// Pairwise reduction: rounding error stays bounded for any sample count and
/// does not depend on how the samples were produced.
pub fn pairwise_sum<T: Scalar>(values: &[T]) -> T {
    match values.len() {
        0 => T::zero(),
        1 => values[0],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Writes records under the fixed header; floats print in full round-trip
/// precision.
pub fn write_records_csv<W: Write>(records: &[SweepRecord], mut writer: W) -> Result<()> {
    writeln!(writer, "algorithm,snr_db,trials,mean_mse,mse_db,stderr_mse")?;
    for r in records {
        writeln!(
            writer,
            "{},{},{},{},{},{}",
            r.algorithm, r.snr_db, r.trials, r.mean_mse, r.mse_db, r.stderr_mse
        )?;
    }
    Ok(())
}
