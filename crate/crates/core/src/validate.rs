//! Self-checks that compare closed-form quantities against Monte Carlo
//! estimates at runtime. Useful as a smoke test on new targets, where a
//! miscompiled math intrinsic or a broken RNG shows up as a failed check
//! long before it would surface as a subtly wrong curve.

use crate::bussgang::{compute_params, mc_alpha, mc_cross_moment};
use crate::channel::{add_noise, gaussian_channel, quantize_1bit};
use crate::denoise::{mse, sand};
use crate::error::Result;
use crate::rng::{stream, StreamKind};

/// One named comparison. `error` is relative to `expected` when that is
/// nonzero, absolute otherwise.
#[derive(Clone, Debug)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub expected: f64,
    pub observed: f64,
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ValidationCheck {
    fn new(name: &'static str, expected: f64, observed: f64, tolerance: f64) -> Self {
        let deviation = (observed - expected).abs();
        let error = if expected == 0.0 {
            deviation
        } else {
            deviation / expected.abs()
        };
        ValidationCheck {
            name,
            expected,
            observed,
            error,
            tolerance,
            pass: error <= tolerance,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Mean risk estimate and mean realized beamspace MSE of the adaptive
/// denoiser over Gaussian channels. `alpha_scale` deliberately corrupts the
/// gain so callers can confirm the agreement is not vacuous; 1.0 is the
/// honest setting.
pub fn sure_vs_mse(
    antennas: usize,
    n0: f64,
    trials: usize,
    seed: u64,
    alpha_scale: f64,
) -> Result<(f64, f64)> {
    assert!(trials > 0, "need at least one trial");
    let mut risk_acc = 0.0;
    let mut mse_acc = 0.0;
    for trial in 0..trials {
        // Offset keeps these draws disjoint from any sweep using the seed.
        let mut rng = stream(seed, 1000 + trial as u64, StreamKind::Validation);
        let h = gaussian_channel::<f64, _>(antennas, 1.0, &mut rng)?;
        let y = add_noise(&h, n0, &mut rng);
        let r = quantize_1bit(&y);
        let mut params = compute_params(1.0, n0)?;
        params.alpha *= alpha_scale;
        let result = sand(&r, &params)?;
        risk_acc += result.sure_min;
        mse_acc += mse(&result.beam, &h.dft()?)?;
    }
    Ok((risk_acc / trials as f64, mse_acc / trials as f64))
}

/// Runs every check with streams derived from `seed`.
pub fn run_validation(seed: u64) -> Result<ValidationReport> {
    let mut checks = Vec::new();

    let params = compute_params(1.0, 1.0)?;

    let mut rng = stream(seed, 0, StreamKind::Validation);
    let observed = mc_cross_moment(1.0, 1.0, 1_000_000, &mut rng);
    checks.push(ValidationCheck::new(
        "cross-moment",
        params.alpha,
        observed,
        1e-2,
    ));

    let mut rng = stream(seed, 1, StreamKind::Validation);
    let observed = mc_alpha(1.0, 1.0, 256, 10_000, &mut rng);
    checks.push(ValidationCheck::new(
        "alpha-gain",
        params.alpha,
        observed,
        1e-2,
    ));

    let mut worst = 0.0f64;
    for i in 0..10 {
        for j in 0..10 {
            let eh = 0.1 + 0.35 * i as f64;
            let n0 = 0.01 + 0.3 * j as f64;
            let p = compute_params(eh, n0)?;
            let identity = 2.0 + eh - 2.0 * p.alpha * eh;
            worst = worst.max((p.q0 - identity).abs());
        }
    }
    checks.push(ValidationCheck::new("q0-identity", 0.0, worst, 1e-12));

    let (risk, realized) = sure_vs_mse(256, 0.1, 2000, seed, 1.0)?;
    checks.push(ValidationCheck::new(
        "risk-unbiasedness",
        realized,
        risk,
        0.05,
    ));

    Ok(ValidationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_classify_relative_and_absolute_error() {
        let c = ValidationCheck::new("rel", 2.0, 2.01, 1e-2);
        assert!(c.pass);
        assert!((c.error - 0.005).abs() < 1e-12);

        let c = ValidationCheck::new("abs", 0.0, 0.5, 0.4);
        assert!(!c.pass);
        assert_eq!(c.error, 0.5);
    }

    #[test]
    fn corrupted_gain_breaks_risk_agreement() {
        let (risk, realized) = sure_vs_mse(64, 0.1, 50, 7, 1.5).unwrap();
        let rel = (risk - realized).abs() / realized;
        assert!(rel > 0.05, "corruption went unnoticed: rel={rel}");
    }
}
