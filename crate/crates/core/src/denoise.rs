//! Soft-threshold denoisers with data-driven operating points.
//!
//! The central routine is a single scan over candidate thresholds (zero plus
//! every sorted magnitude) that keeps running survivor sums, evaluates the
//! estimated risk of each candidate in O(1), and retains the minimizer. One
//! scan kernel serves both the fixed-gain denoisers and the variant that
//! learns the gain jointly with the threshold.

use num_complex::Complex;

use crate::beamspace::{sort_magnitudes, ComplexVec, Domain, SortedMagnitudes};
use crate::bussgang::BussgangParams;
use crate::error::{Error, Result};
use crate::scalar::{count, lit, Scalar};

/// Output of one denoiser run: the estimate in both domains plus the chosen
/// operating point and its estimated risk.
#[derive(Clone, Debug)]
pub struct DenoiseResult<T> {
    pub beam: ComplexVec<T>,
    pub antenna: ComplexVec<T>,
    pub tau_star: T,
    pub gamma_star: T,
    /// Estimated per-bin mean-square error at the chosen operating point;
    /// NaN for estimators that carry no noise model.
    pub sure_min: T,
}

/// Complex soft-thresholding: magnitudes shrink by `tau`, phases survive,
/// anything at or below `tau` collapses to zero.
pub fn soft_threshold<T: Scalar>(v: &ComplexVec<T>, tau: T) -> ComplexVec<T> {
    assert!(tau >= T::zero(), "threshold must be nonnegative");
    let data = v
        .iter()
        .map(|&z| {
            let mag = z.norm();
            if mag <= tau {
                Complex::new(T::zero(), T::zero())
            } else {
                // mag > tau >= 0 here, so the division is safe.
                z * ((mag - tau) / mag)
            }
        })
        .collect();
    ComplexVec::from_parts(data, v.domain())
}

/// Magnitudes below this are clamped before inversion; such bins are zeroed
/// by any positive threshold anyway.
const INV_CLAMP: f64 = 1e-12;

/// Running survivor sums for the risk scan: `cut` magnitudes have been
/// retired from the low end and the sums run over the rest.
#[derive(Clone, Copy, Debug)]
pub struct SureSums<T> {
    sum_sq: T,
    sum_abs: T,
    sum_inv: T,
    cut: usize,
    bins: usize,
}

impl<T: Scalar> SureSums<T> {
    /// Sums over every bin; nothing retired yet.
    pub fn over_all(sorted: &SortedMagnitudes<T>) -> Self {
        Self::from_scratch(sorted, 0)
    }

    /// Direct evaluation with the `cut` smallest magnitudes excluded.
    pub fn from_scratch(sorted: &SortedMagnitudes<T>, cut: usize) -> Self {
        assert!(cut <= sorted.bin_count(), "cut past the last magnitude");
        let survivors = &sorted.magnitudes()[cut..];
        let clamp = lit::<T>(INV_CLAMP);
        Self {
            sum_sq: survivors.iter().map(|&m| m * m).sum(),
            sum_abs: survivors.iter().copied().sum(),
            sum_inv: survivors.iter().map(|&m| m.max(clamp).recip()).sum(),
            cut,
            bins: sorted.bin_count(),
        }
    }

    /// Removes one more magnitude from the low end in O(1). Once every bin
    /// is retired the sums are pinned to exact zeros; leftover rounding
    /// residue would otherwise masquerade as a tiny positive variance and
    /// blow up the learned gain on the empty survivor set.
    pub fn retire(&mut self, mag: T) {
        self.sum_sq -= mag * mag;
        self.sum_abs -= mag;
        self.sum_inv -= mag.max(lit(INV_CLAMP)).recip();
        self.cut += 1;
        if self.cut == self.bins {
            self.sum_sq = T::zero();
            self.sum_abs = T::zero();
            self.sum_inv = T::zero();
        }
    }

    pub fn sum_sq(&self) -> T {
        self.sum_sq
    }

    pub fn sum_abs(&self) -> T {
        self.sum_abs
    }

    pub fn sum_inv(&self) -> T {
        self.sum_inv
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    /// Survivor count as a scalar; may run negative in the scan's trailing
    /// sentinel iterations, whose candidates are always rejected.
    fn survivor_count(&self) -> T {
        count::<T>(self.bins) - count::<T>(self.cut)
    }
}

/// Estimated per-bin risk of soft-thresholding at `tau` followed by scaling
/// with `gamma`, for an observation with linear gain `alpha` and per-bin
/// distortion variance `d0`.
pub fn sure_evaluate<T: Scalar>(sums: &SureSums<T>, tau: T, gamma: T, alpha: T, d0: T) -> T {
    let two = count::<T>(2);
    let b = count::<T>(sums.bins());
    let m = sums.survivor_count();
    let quad = sums.sum_sq() - two * tau * sums.sum_abs() + tau * tau * m;
    let lin = two * (sums.sum_sq() - tau * sums.sum_abs()) - d0 * (two * m - tau * sums.sum_inv());
    gamma * gamma / b * quad + (two - d0) / (alpha * alpha) - gamma / (alpha * b) * lin
}

/// Gain minimizing the risk at fixed `tau`. Zero when the minimizer is
/// negative, and zero by convention when the quadratic coefficient vanishes
/// (empty survivor set, or all survivors exactly at `tau`).
pub fn gamma_star<T: Scalar>(sums: &SureSums<T>, tau: T, alpha: T, d0: T) -> T {
    let two = count::<T>(2);
    let m = sums.survivor_count();
    let quad = sums.sum_sq() - two * tau * sums.sum_abs() + tau * tau * m;
    let lin = two * (sums.sum_sq() - tau * sums.sum_abs()) - d0 * (two * m - tau * sums.sum_inv());
    let den = two * alpha * quad;
    if den > T::zero() {
        (lin / den).max(T::zero())
    } else {
        T::zero()
    }
}

#[derive(Clone, Copy)]
enum GainMode<T> {
    Learned,
    Fixed(T),
}

struct ScanOutcome<T> {
    tau: T,
    gamma: T,
    sure: T,
    cut: usize,
}

/// Scans every candidate threshold (zero plus each sorted magnitude) and
/// keeps the risk minimizer, subject to the universal-threshold cap
/// sqrt(2*d0*ln B); candidates at or above the cap are skipped, not clipped.
///
/// The two infinite sentinels let the bookkeeping run uniformly for
/// k = 0..B+1: candidate k is judged with the sums left by iteration k-1,
/// then the state advances. The trailing iterations poison the sums, but
/// their candidates sit at the sentinels and are rejected by the cap.
fn sure_scan<T: Scalar>(
    sorted: &SortedMagnitudes<T>,
    alpha: T,
    d0: T,
    mode: GainMode<T>,
) -> ScanOutcome<T> {
    let bins = sorted.bin_count();
    let cap = (count::<T>(2) * d0 * count::<T>(bins).ln()).sqrt();
    let mut sums = SureSums::over_all(sorted);
    let mut tau = T::zero();

    let gain = |sums: &SureSums<T>, tau: T| match mode {
        GainMode::Learned => gamma_star(sums, tau, alpha, d0),
        GainMode::Fixed(g) => g,
    };

    // Candidate 0 seeds the running best, so a degenerate cap (d0 = 0, where
    // no candidate can pass) still resolves to the identity threshold.
    let gamma0 = gain(&sums, tau);
    let mut best = ScanOutcome {
        tau,
        gamma: gamma0,
        sure: sure_evaluate(&sums, tau, gamma0, alpha, d0),
        cut: 0,
    };

    for k in 0..=bins + 1 {
        if k > 0 {
            let gamma = gain(&sums, tau);
            let sure = sure_evaluate(&sums, tau, gamma, alpha, d0);
            if sure < best.sure && tau < cap {
                best = ScanOutcome {
                    tau,
                    gamma,
                    sure,
                    cut: k,
                };
            }
        }
        tau = sorted.value(k);
        sums.retire(sorted.value(k));
    }

    // Settle the winner's gain and risk from freshly built sums. Retiring in
    // place accumulates rounding drift that a direct summation over the
    // survivors does not carry, and the reported numbers should not depend
    // on how the minimum was found.
    let fresh = SureSums::from_scratch(sorted, best.cut);
    best.gamma = gain(&fresh, best.tau);
    best.sure = sure_evaluate(&fresh, best.tau, best.gamma, alpha, d0);
    best
}

fn assemble<T: Scalar>(beam: &ComplexVec<T>, outcome: ScanOutcome<T>) -> Result<DenoiseResult<T>> {
    let beam_est = soft_threshold(beam, outcome.tau).scaled(outcome.gamma);
    let antenna_est = beam_est.idft()?;
    Ok(DenoiseResult {
        beam: beam_est,
        antenna: antenna_est,
        tau_star: outcome.tau,
        gamma_star: outcome.gamma,
        sure_min: outcome.sure,
    })
}

/// Soft-threshold denoiser for a beamspace observation corrupted by additive
/// noise of per-bin variance `e0`; the threshold is learned from the data
/// and the gain is fixed at one.
pub fn beaches<T: Scalar>(observed: &ComplexVec<T>, e0: T) -> Result<DenoiseResult<T>> {
    observed.expect_domain(Domain::Beamspace)?;
    assert!(e0 >= T::zero(), "noise variance must be nonnegative");
    let sorted = sort_magnitudes(observed);
    let outcome = sure_scan(&sorted, T::one(), e0, GainMode::Fixed(T::one()));
    assemble(observed, outcome)
}

/// Runs the unquantized denoiser directly on the one-bit observation, using
/// the quantizer's raw per-bin error energy as the noise level.
pub fn one_beaches<T: Scalar>(
    r: &ComplexVec<T>,
    params: &BussgangParams<T>,
) -> Result<DenoiseResult<T>> {
    r.expect_domain(Domain::Antenna)?;
    beaches(&r.dft()?, params.q0)
}

/// Divides the observation by the linearized gain first, then denoises with
/// the matching distortion level, so the estimate comes back on the channel's
/// own scale.
pub fn alpha_beaches<T: Scalar>(
    r: &ComplexVec<T>,
    params: &BussgangParams<T>,
) -> Result<DenoiseResult<T>> {
    r.expect_domain(Domain::Antenna)?;
    assert!(params.alpha > T::zero(), "gain must be positive");
    beaches(
        &r.dft()?.scaled(params.alpha.recip()),
        params.d0_over_alpha2,
    )
}

/// Learns the threshold and the gain jointly by minimizing the estimated
/// risk over both.
pub fn sand<T: Scalar>(r: &ComplexVec<T>, params: &BussgangParams<T>) -> Result<DenoiseResult<T>> {
    r.expect_domain(Domain::Antenna)?;
    assert!(params.alpha > T::zero(), "gain must be positive");
    let beam = r.dft()?;
    let sorted = sort_magnitudes(&beam);
    let outcome = sure_scan(&sorted, params.alpha, params.d0(), GainMode::Learned);
    assemble(&beam, outcome)
}

/// Takes the one-bit observation itself as the estimate.
pub fn ml_1bit<T: Scalar>(r: &ComplexVec<T>) -> Result<DenoiseResult<T>> {
    r.expect_domain(Domain::Antenna)?;
    Ok(DenoiseResult {
        beam: r.dft()?,
        antenna: r.clone(),
        tau_star: T::zero(),
        gamma_star: T::one(),
        sure_min: T::nan(),
    })
}

/// Linear minimum mean-square rescaling of the one-bit observation under the
/// Gaussian channel model: h* = c*r with c = eh/sqrt(pi*(eh+n0)).
pub fn blmmse<T: Scalar>(r: &ComplexVec<T>, eh: T, n0: T) -> Result<DenoiseResult<T>> {
    r.expect_domain(Domain::Antenna)?;
    let params = crate::bussgang::compute_params(eh, n0)?;
    let c = eh / (T::PI() * (eh + n0)).sqrt();
    let beam_obs = r.dft()?;
    let sorted = sort_magnitudes(&beam_obs);
    let sums = SureSums::over_all(&sorted);
    let sure = sure_evaluate(&sums, T::zero(), c, params.alpha, params.d0());
    Ok(DenoiseResult {
        beam: beam_obs.scaled(c),
        antenna: r.scaled(c),
        tau_star: T::zero(),
        gamma_star: c,
        sure_min: sure,
    })
}

/// Mean-square error per bin between two same-domain vectors.
pub fn mse<T: Scalar>(a: &ComplexVec<T>, b: &ComplexVec<T>) -> Result<T> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch {
            expected: a.domain(),
            found: b.domain(),
        });
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let total: T = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    Ok(total / count(a.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bussgang::compute_params;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn beam(data: Vec<Complex<f64>>) -> ComplexVec<f64> {
        ComplexVec::beamspace(data).unwrap()
    }

    #[test]
    fn soft_threshold_zero_is_identity() {
        let v = beam(vec![cx(0.3, -0.4), cx(0.0, 0.0), cx(-7.0, 2.0)]);
        let out = soft_threshold(&v, 0.0);
        for (a, b) in v.iter().zip(out.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn soft_threshold_hand_cases() {
        let v = beam(vec![cx(3.0, 4.0)]);
        let shrunk = soft_threshold(&v, 2.5);
        assert!((shrunk.as_slice()[0] - cx(1.5, 2.0)).norm() < 1e-12);
        let zeroed = soft_threshold(&v, 5.0);
        assert_eq!(zeroed.as_slice()[0], cx(0.0, 0.0));
    }

    #[test]
    fn soft_threshold_preserves_phase_of_survivors() {
        let v = beam(vec![cx(1.0, 2.0), cx(-3.0, 0.5), cx(0.1, -0.9)]);
        let out = soft_threshold(&v, 0.25);
        for (a, b) in v.iter().zip(out.iter()) {
            if b.norm() > 0.0 {
                assert!((a.arg() - b.arg()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn running_sums_match_direct_sums() {
        let v = beam(
            (0..64)
                .map(|i| cx((i as f64 * 0.37).sin(), (i as f64 * 0.73).cos()))
                .collect(),
        );
        let sorted = sort_magnitudes(&v);
        let mut running = SureSums::over_all(&sorted);
        for k in 0..sorted.bin_count() {
            running.retire(sorted.value(k));
            let direct = SureSums::from_scratch(&sorted, k + 1);
            assert!(
                (running.sum_sq() - direct.sum_sq()).abs() <= 1e-9 * direct.sum_sq().abs().max(1.0)
            );
            assert!(
                (running.sum_abs() - direct.sum_abs()).abs()
                    <= 1e-9 * direct.sum_abs().abs().max(1.0)
            );
            assert!(
                (running.sum_inv() - direct.sum_inv()).abs()
                    <= 1e-9 * direct.sum_inv().abs().max(1.0)
            );
            assert_eq!(running.cut(), direct.cut());
        }
    }

    #[test]
    fn sure_hand_value() {
        // Magnitudes 1 and 2: sums are c1 = 5, c2 = 3, c3 = 1.5.
        let v = beam(vec![cx(1.0, 0.0), cx(0.0, 2.0)]);
        let sums = SureSums::over_all(&sort_magnitudes(&v));
        let g = gamma_star(&sums, 0.0, 1.0, 0.5);
        assert!((g - 0.8).abs() < 1e-15);
        let s = sure_evaluate(&sums, 0.0, g, 1.0, 0.5);
        assert!((s - (-0.1)).abs() < 1e-15);
    }

    #[test]
    fn sure_with_zero_gain_is_the_constant_term() {
        let v = beam(vec![cx(0.5, 1.0), cx(-2.0, 0.25), cx(0.0, -3.0)]);
        let sums = SureSums::over_all(&sort_magnitudes(&v));
        for &(alpha, d0) in &[(1.0, 0.5), (0.8, 1.3), (2.0, 0.0)] {
            let s = sure_evaluate(&sums, 0.7, 0.0, alpha, d0);
            assert!((s - (2.0 - d0) / (alpha * alpha)).abs() < 1e-15);
        }
    }

    #[test]
    fn gamma_star_conventions() {
        let v = beam(vec![cx(1.0, 0.0), cx(0.0, 2.0)]);
        let sorted = sort_magnitudes(&v);
        // Empty survivor set.
        let empty = SureSums::from_scratch(&sorted, 2);
        assert_eq!(gamma_star(&empty, 2.0, 1.0, 0.5), 0.0);
        // Noiseless unit-gain case.
        let full = SureSums::over_all(&sorted);
        assert_eq!(gamma_star(&full, 0.0, 1.0, 0.0), 1.0);
    }

    #[test]
    fn beaches_with_zero_noise_is_identity() {
        let v = beam(vec![
            cx(0.1, -0.2),
            cx(3.0, 4.0),
            cx(-1.0, 1.0),
            cx(0.0, 0.5),
        ]);
        let out = beaches(&v, 0.0).unwrap();
        assert_eq!(out.tau_star, 0.0);
        assert_eq!(out.gamma_star, 1.0);
        for (a, b) in v.iter().zip(out.beam.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn fixed_gain_denoiser_with_zero_error_floor_passes_through() {
        let r = ComplexVec::antenna(vec![
            cx(1.0, 1.0),
            cx(-1.0, 1.0),
            cx(1.0, -1.0),
            cx(-1.0, -1.0),
        ])
        .unwrap();
        let params = BussgangParams {
            eh: 2.0,
            n0: 0.0,
            alpha: 1.0,
            q0: 0.0,
            d0_over_alpha2: 0.0,
        };
        let out = one_beaches(&r, &params).unwrap();
        assert_eq!(out.tau_star, 0.0);
        assert_eq!(out.gamma_star, 1.0);
        let expected = r.dft().unwrap();
        for (a, b) in expected.iter().zip(out.beam.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn fixed_gain_denoiser_matches_the_base_method_at_its_error_floor() {
        let r = ComplexVec::antenna(vec![
            cx(0.9, -0.2),
            cx(-1.4, 0.3),
            cx(0.1, 0.1),
            cx(2.0, -1.0),
        ])
        .unwrap();
        let params = compute_params(1.0f64, 0.25).unwrap();
        let a = one_beaches(&r, &params).unwrap();
        let b = beaches(&r.dft().unwrap(), params.q0).unwrap();
        assert_eq!(a.tau_star.to_bits(), b.tau_star.to_bits());
        assert_eq!(a.sure_min.to_bits(), b.sure_min.to_bits());
        for (x, y) in a.beam.iter().zip(b.beam.iter()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn sand_with_zero_distortion_and_unit_gain_is_identity() {
        let r = ComplexVec::antenna(vec![
            cx(1.0, 1.0),
            cx(-1.0, 1.0),
            cx(1.0, -1.0),
            cx(-1.0, -1.0),
        ])
        .unwrap();
        let params = BussgangParams {
            eh: 2.0,
            n0: 0.0,
            alpha: 1.0,
            q0: 0.0,
            d0_over_alpha2: 0.0,
        };
        let out = sand(&r, &params).unwrap();
        assert_eq!(out.tau_star, 0.0);
        assert_eq!(out.gamma_star, 1.0);
        let expected = r.dft().unwrap();
        for (a, b) in expected.iter().zip(out.beam.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn ml_returns_the_observation() {
        let r = ComplexVec::antenna(vec![cx(1.0, -1.0), cx(-1.0, 1.0)]).unwrap();
        let out = ml_1bit(&r).unwrap();
        assert_eq!(out.antenna, r);
        assert_eq!(out.tau_star, 0.0);
        assert_eq!(out.gamma_star, 1.0);
        assert!(out.sure_min.is_nan());
    }

    #[test]
    fn blmmse_scales_by_the_closed_form() {
        let r = ComplexVec::antenna(vec![cx(1.0, 1.0), cx(-1.0, -1.0)]).unwrap();
        let out = blmmse(&r, 1.0, 1.0).unwrap();
        let c = 0.3989422804014327;
        assert!((out.gamma_star - c).abs() < 1e-15);
        assert!((out.antenna.as_slice()[0] - cx(c, c)).norm() < 1e-15);
        // Same closed form as half the gain times the energy.
        let params = compute_params(1.0, 1.0).unwrap();
        assert!((out.gamma_star - params.alpha * params.eh / 2.0).abs() < 1e-12);
    }

    #[test]
    fn blmmse_with_zero_energy_returns_zero() {
        let r = ComplexVec::antenna(vec![cx(1.0, -1.0)]).unwrap();
        let out = blmmse(&r, 0.0, 1.0).unwrap();
        assert_eq!(out.antenna.as_slice()[0], cx(0.0, 0.0));
        assert_eq!(out.gamma_star, 0.0);
    }

    #[test]
    fn alpha_beaches_equals_one_beaches_at_unit_gain() {
        // eh + n0 = 4/pi makes the gain exactly one, which also forces the
        // two error variances to coincide.
        let eh = 1.0;
        let n0 = 4.0 / std::f64::consts::PI - 1.0;
        let params = compute_params(eh, n0).unwrap();
        assert!((params.alpha - 1.0).abs() < 1e-12);
        assert!((params.q0 - params.d0()).abs() < 1e-12);
        let r = ComplexVec::antenna((0..16).map(quantized).collect()).unwrap();
        let a = alpha_beaches(&r, &params).unwrap();
        let b = one_beaches(&r, &params).unwrap();
        assert!((a.tau_star - b.tau_star).abs() < 1e-12);
        for (x, y) in a.beam.iter().zip(b.beam.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    fn quantized(i: usize) -> Complex<f64> {
        let re = if i.is_multiple_of(3) { 1.0 } else { -1.0 };
        let im = if i % 5 < 2 { 1.0 } else { -1.0 };
        cx(re, im)
    }

    #[test]
    fn mse_checks_domains_and_lengths() {
        let a = ComplexVec::antenna(vec![cx(1.0, 0.0)]).unwrap();
        let b = ComplexVec::beamspace(vec![cx(1.0, 0.0)]).unwrap();
        assert!(matches!(mse(&a, &b), Err(Error::DomainMismatch { .. })));
        let c = ComplexVec::antenna(vec![cx(1.0, 0.0), cx(0.0, 0.0)]).unwrap();
        assert!(matches!(mse(&a, &c), Err(Error::LengthMismatch { .. })));
        assert_eq!(mse(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn mse_hand_value() {
        let a = ComplexVec::antenna(vec![cx(1.0, 0.0), cx(0.0, 0.0)]).unwrap();
        let b = ComplexVec::antenna(vec![cx(0.0, 0.0), cx(0.0, 2.0)]).unwrap();
        assert_eq!(mse(&a, &b).unwrap(), 2.5);
    }

    #[test]
    fn support_shrinks_monotonically_in_tau() {
        let v = beam(
            (0..32)
                .map(|i| cx((i as f64 * 1.7).sin() * 2.0, (i as f64 * 0.3).cos()))
                .collect(),
        );
        let mut last_support: Vec<bool> = vec![true; v.len()];
        for step in 0..20 {
            let tau = 0.15 * step as f64;
            let out = soft_threshold(&v, tau);
            let support: Vec<bool> = out.iter().map(|z| z.norm() > 0.0).collect();
            for (now, before) in support.iter().zip(last_support.iter()) {
                assert!(!now || *before, "bin resurrected at tau={tau}");
            }
            last_support = support;
        }
    }
}
