//! Second-order statistics of the one-bit measurement chain.
//!
//! Writing the quantizer output as r = alpha*h + d with d uncorrelated from
//! h linearizes the chain. For a Gaussian channel and Gaussian noise the
//! gain and both error variances have closed forms; the Monte Carlo
//! estimators that back them live here too, so the formulas never go
//! unchecked.

use num_complex::Complex;
use rand::Rng;

use crate::beamspace::ComplexVec;
use crate::channel::{add_noise, gaussian_channel, quantize_1bit, quantize_entry};
use crate::error::{Error, Result};
use crate::scalar::{count, Scalar};

/// Closed-form statistics for channel energy `eh` and noise variance `n0`.
#[derive(Clone, Copy, Debug)]
pub struct BussgangParams<T> {
    pub eh: T,
    pub n0: T,
    /// Effective gain of the linearized quantizer, 2/sqrt(pi*(eh+n0)).
    pub alpha: T,
    /// Per-bin error variance of the raw quantizer output against the true
    /// channel, 2 + eh - 4*eh/sqrt(pi*(eh+n0)).
    pub q0: T,
    /// Distortion variance referred through the gain, 2/alpha^2 - eh.
    pub d0_over_alpha2: T,
}

/// Evaluates the closed forms; fails on a degenerate quantizer input.
pub fn compute_params<T: Scalar>(eh: T, n0: T) -> Result<BussgangParams<T>> {
    if eh < T::zero() || eh.is_nan() {
        return Err(Error::InvalidParameter(
            "channel energy must be nonnegative".into(),
        ));
    }
    if n0 < T::zero() || n0.is_nan() {
        return Err(Error::InvalidParameter(
            "noise variance must be nonnegative".into(),
        ));
    }
    if eh + n0 <= T::zero() {
        return Err(Error::InvalidParameter(
            "channel energy plus noise variance must be positive".into(),
        ));
    }
    let two = count::<T>(2);
    let four = count::<T>(4);
    let root = (T::PI() * (eh + n0)).sqrt();
    let alpha = two / root;
    Ok(BussgangParams {
        eh,
        n0,
        alpha,
        q0: two + eh - four * eh / root,
        d0_over_alpha2: two / (alpha * alpha) - eh,
    })
}

impl<T: Scalar> BussgangParams<T> {
    /// Distortion variance on the unscaled observation, alpha^2 * (d0/alpha^2).
    pub fn d0(&self) -> T {
        self.alpha * self.alpha * self.d0_over_alpha2
    }
}

/// Monte Carlo estimate of the per-sample cross-moment E[Re(conj(h) * r)]
/// with scalar h ~ CN(0, eh), n ~ CN(0, n0), r = quantize(h + n).
pub fn mc_cross_moment<T: Scalar, R: Rng + ?Sized>(eh: T, n0: T, samples: usize, rng: &mut R) -> T {
    assert!(samples >= 1, "need at least one sample");
    let h_std = (eh / count::<T>(2)).sqrt();
    let n_std = (n0 / count::<T>(2)).sqrt();
    let mut acc = T::zero();
    for _ in 0..samples {
        let h = Complex::new(
            T::standard_normal(rng) * h_std,
            T::standard_normal(rng) * h_std,
        );
        let y = h + Complex::new(
            T::standard_normal(rng) * n_std,
            T::standard_normal(rng) * n_std,
        );
        let r = quantize_entry(y);
        acc += h.re * r.re + h.im * r.im;
    }
    acc / count(samples)
}

/// Monte Carlo estimate of the gain as the least-squares fit of r on h over
/// whole vectors: sum Re(h^H r) / sum |h|^2.
pub fn mc_alpha<T: Scalar, R: Rng + ?Sized>(
    eh: T,
    n0: T,
    antennas: usize,
    trials: usize,
    rng: &mut R,
) -> T {
    assert!(eh > T::zero(), "estimator needs channel energy");
    assert!(trials >= 1, "need at least one trial");
    let mut num = T::zero();
    let mut den = T::zero();
    for _ in 0..trials {
        let h = gaussian_channel(antennas, eh, rng).expect("antennas >= 1");
        let r = quantize_1bit(&add_noise(&h, n0, rng));
        for (hz, rz) in h.iter().zip(r.iter()) {
            num += hz.re * rz.re + hz.im * rz.im;
            den += hz.norm_sqr();
        }
    }
    num / den
}

/// Imaginary part of the same vector cross-moment estimator, per sample;
/// converges to zero.
pub fn mc_cross_moment_imag<T: Scalar, R: Rng + ?Sized>(
    eh: T,
    n0: T,
    antennas: usize,
    trials: usize,
    rng: &mut R,
) -> T {
    assert!(trials >= 1, "need at least one trial");
    let mut acc = T::zero();
    for _ in 0..trials {
        let h: ComplexVec<T> = gaussian_channel(antennas, eh, rng).expect("antennas >= 1");
        let r = quantize_1bit(&add_noise(&h, n0, rng));
        for (hz, rz) in h.iter().zip(r.iter()) {
            // Im(conj(h) * r)
            acc += hz.re * rz.im - hz.im * rz.re;
        }
    }
    acc / count(antennas * trials)
}
