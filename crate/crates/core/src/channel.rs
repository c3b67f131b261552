//! Synthetic sparse multipath channels and the measurement chain applied to
//! them: additive complex Gaussian noise and one-bit quantization of both
//! quadratures.

use num_complex::Complex;
use rand::Rng;

use crate::beamspace::{ComplexVec, Domain};
use crate::error::{Error, Result};
use crate::scalar::{count, Scalar};

/// Single propagation path: complex gain and spatial frequency in radians.
#[derive(Clone, Copy, Debug)]
pub struct PathComponent<T> {
    pub gain: Complex<T>,
    pub spatial_freq: T,
}

/// Antenna-domain channel vector together with the paths that produced it.
#[derive(Clone, Debug)]
pub struct ChannelRealization<T> {
    paths: Vec<PathComponent<T>>,
    response: ComplexVec<T>,
}

impl<T: Scalar> ChannelRealization<T> {
    /// Builds the response as the sum of steering vectors weighted by the
    /// path gains.
    pub fn from_paths(antennas: usize, paths: Vec<PathComponent<T>>) -> Result<Self> {
        if antennas == 0 {
            return Err(Error::InvalidParameter(
                "antenna count must be at least 1".into(),
            ));
        }
        if paths.is_empty() {
            return Err(Error::InvalidParameter("at least one path required".into()));
        }
        for p in &paths {
            if !(p.spatial_freq >= T::zero() && p.spatial_freq < T::TAU()) {
                return Err(Error::InvalidParameter(format!(
                    "spatial frequency {} outside [0, 2pi)",
                    p.spatial_freq
                )));
            }
        }
        let mut data = vec![Complex::new(T::zero(), T::zero()); antennas];
        for p in &paths {
            let a = steering_vector(p.spatial_freq, antennas)?;
            for (acc, &s) in data.iter_mut().zip(a.iter()) {
                *acc += p.gain * s;
            }
        }
        Ok(Self {
            paths,
            response: ComplexVec::from_parts(data, Domain::Antenna),
        })
    }

    pub fn paths(&self) -> &[PathComponent<T>] {
        &self.paths
    }

    /// The synthesized antenna-domain vector.
    pub fn response(&self) -> &ComplexVec<T> {
        &self.response
    }

    pub fn antennas(&self) -> usize {
        self.response.len()
    }
}

/// `[e^{j*0*w}, e^{j*1*w}, ..., e^{j*(B-1)*w}]`; every entry has unit
/// magnitude.
pub fn steering_vector<T: Scalar>(spatial_freq: T, antennas: usize) -> Result<ComplexVec<T>> {
    ComplexVec::antenna(
        (0..antennas)
            .map(|b| Complex::from_polar(T::one(), spatial_freq * count(b)))
            .collect(),
    )
}

/// Draws a random realization: i.i.d. complex Gaussian gains with combined
/// unit average energy per antenna, spatial frequencies uniform on [0, 2pi),
/// optionally kept at least `min_separation` radians apart on the circle.
pub fn generate_channel<T: Scalar, R: Rng + ?Sized>(
    antennas: usize,
    paths: usize,
    min_separation: T,
    rng: &mut R,
) -> Result<ChannelRealization<T>> {
    if paths == 0 {
        return Err(Error::InvalidParameter("at least one path required".into()));
    }
    if min_separation < T::zero() {
        return Err(Error::InvalidParameter(
            "minimum separation must be nonnegative".into(),
        ));
    }
    if count::<T>(paths) * min_separation > T::TAU() {
        return Err(Error::InfeasibleSeparation {
            separation: min_separation.to_f64().unwrap_or(f64::NAN),
            paths,
        });
    }
    let freqs = if min_separation > T::zero() && paths > 1 {
        separated_frequencies(paths, min_separation, rng)
    } else {
        (0..paths)
            .map(|_| T::TAU() * T::unit_uniform(rng))
            .collect()
    };
    let component_std = (count::<T>(2) * count::<T>(paths)).recip().sqrt();
    let path_list = freqs
        .into_iter()
        .map(|spatial_freq| PathComponent {
            gain: Complex::new(
                T::standard_normal(rng) * component_std,
                T::standard_normal(rng) * component_std,
            ),
            spatial_freq,
        })
        .collect();
    ChannelRealization::from_paths(antennas, path_list)
}

/// Uniform draw of `n` circle points conditioned on pairwise circular gaps of
/// at least `delta`: shrink the circle by the reserved gaps, drop sorted
/// uniforms on what is left, re-add the gaps, then rotate and shuffle.
fn separated_frequencies<T: Scalar, R: Rng + ?Sized>(n: usize, delta: T, rng: &mut R) -> Vec<T> {
    let tau = T::TAU();
    let slack = tau - count::<T>(n) * delta;
    let mut offsets: Vec<T> = (0..n).map(|_| slack * T::unit_uniform(rng)).collect();
    offsets.sort_by(|a, b| a.total_order(b));
    let rotation = tau * T::unit_uniform(rng);
    let mut freqs: Vec<T> = offsets
        .into_iter()
        .enumerate()
        .map(|(i, u)| (u + count::<T>(i) * delta + rotation) % tau)
        .collect();
    // Fisher-Yates so a path's index carries no information about its
    // circular position.
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        freqs.swap(i, j);
    }
    freqs
}

/// Antenna-domain vector with i.i.d. CN(0, `energy`) entries: the dense
/// many-path limit of the physical model and the regime in which the
/// closed-form quantizer statistics are exact.
pub fn gaussian_channel<T: Scalar, R: Rng + ?Sized>(
    antennas: usize,
    energy: T,
    rng: &mut R,
) -> Result<ComplexVec<T>> {
    assert!(energy >= T::zero(), "energy must be nonnegative");
    let component_std = (energy / count::<T>(2)).sqrt();
    ComplexVec::antenna(
        (0..antennas)
            .map(|_| {
                Complex::new(
                    T::standard_normal(rng) * component_std,
                    T::standard_normal(rng) * component_std,
                )
            })
            .collect(),
    )
}

/// y = h + n with n i.i.d. CN(0, `n0`). A zero variance draws nothing and
/// returns the input bit for bit.
pub fn add_noise<T: Scalar, R: Rng + ?Sized>(
    h: &ComplexVec<T>,
    n0: T,
    rng: &mut R,
) -> ComplexVec<T> {
    assert!(n0 >= T::zero(), "noise variance must be nonnegative");
    if n0 == T::zero() {
        return h.clone();
    }
    let component_std = (n0 / count::<T>(2)).sqrt();
    ComplexVec::from_parts(
        h.iter()
            .map(|&z| {
                z + Complex::new(
                    T::standard_normal(rng) * component_std,
                    T::standard_normal(rng) * component_std,
                )
            })
            .collect(),
        h.domain(),
    )
}

/// One-bit quantization of a single complex sample; each quadrature maps to
/// plus or minus one, with zero counted as positive.
pub fn quantize_entry<T: Scalar>(z: Complex<T>) -> Complex<T> {
    Complex::new(one_bit(z.re), one_bit(z.im))
}

/// Entrywise one-bit quantizer; the output alphabet is exactly {±1 ± j}.
pub fn quantize_1bit<T: Scalar>(y: &ComplexVec<T>) -> ComplexVec<T> {
    ComplexVec::from_parts(y.iter().map(|&z| quantize_entry(z)).collect(), y.domain())
}

fn one_bit<T: Scalar>(x: T) -> T {
    if x >= T::zero() {
        T::one()
    } else {
        -T::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, StreamKind};

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn steering_at_zero_is_all_ones() {
        let a = steering_vector(0.0f64, 6).unwrap();
        for z in a.iter() {
            assert_eq!(*z, cx(1.0, 0.0));
        }
    }

    #[test]
    fn steering_at_pi_alternates() {
        let a = steering_vector(std::f64::consts::PI, 4).unwrap();
        let expected = [1.0, -1.0, 1.0, -1.0];
        for (z, &e) in a.iter().zip(expected.iter()) {
            assert!((z - cx(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn steering_entries_have_unit_magnitude() {
        let a = steering_vector(1.2345f64, 64).unwrap();
        for z in a.iter() {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn on_grid_steering_vector_is_a_dft_impulse() {
        let b = 8;
        let m = 3;
        let omega = std::f64::consts::TAU * m as f64 / b as f64;
        let hat = steering_vector(omega, b).unwrap().dft().unwrap();
        for (k, z) in hat.iter().enumerate() {
            let expected = if k == m { (b as f64).sqrt() } else { 0.0 };
            assert!((z.norm() - expected).abs() < 1e-12, "bin {k}");
        }
    }

    #[test]
    fn single_unit_path_reproduces_steering_vector() {
        let omega = 0.8f64;
        let realization = ChannelRealization::from_paths(
            16,
            vec![PathComponent {
                gain: cx(1.0, 0.0),
                spatial_freq: omega,
            }],
        )
        .unwrap();
        let a = steering_vector(omega, 16).unwrap();
        for (x, y) in realization.response().iter().zip(a.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn generate_channel_is_deterministic_per_seed() {
        let draw = || {
            let mut rng = stream(11, 4, StreamKind::Channel);
            generate_channel::<f64, _>(32, 3, 0.1, &mut rng).unwrap()
        };
        let (a, b) = (draw(), draw());
        for (x, y) in a.response().iter().zip(b.response().iter()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn response_matches_the_path_expansion() {
        let mut rng = stream(19, 2, StreamKind::Channel);
        let ch = generate_channel::<f64, _>(48, 3, 0.0, &mut rng).unwrap();
        for (b, z) in ch.response().iter().enumerate() {
            let mut acc = cx(0.0, 0.0);
            for p in ch.paths() {
                acc += p.gain * Complex::new(0.0, b as f64 * p.spatial_freq).exp();
            }
            assert!((z - acc).norm() < 1e-12, "bin {b}");
        }
    }

    #[test]
    fn infeasible_separation_is_rejected() {
        let mut rng = stream(0, 0, StreamKind::Channel);
        let err = generate_channel::<f64, _>(8, 8, 1.0, &mut rng).unwrap_err();
        assert!(matches!(err, Error::InfeasibleSeparation { paths: 8, .. }));
    }

    #[test]
    fn separation_constraint_is_honored() {
        let delta = 0.5f64;
        for trial in 0..200 {
            let mut rng = stream(3, trial, StreamKind::Channel);
            let ch = generate_channel::<f64, _>(4, 6, delta, &mut rng).unwrap();
            let mut freqs: Vec<f64> = ch.paths().iter().map(|p| p.spatial_freq).collect();
            freqs.sort_by(f64::total_cmp);
            for w in freqs.windows(2) {
                assert!(w[1] - w[0] >= delta * (1.0 - 1e-12));
            }
            let wrap = std::f64::consts::TAU - freqs[freqs.len() - 1] + freqs[0];
            assert!(wrap >= delta * (1.0 - 1e-12));
        }
    }

    #[test]
    fn add_noise_with_zero_variance_is_exact() {
        let h = ComplexVec::antenna(vec![cx(-0.0, 1.5), cx(0.25, -0.75)]).unwrap();
        let mut rng = stream(1, 0, StreamKind::Noise);
        let y = add_noise(&h, 0.0, &mut rng);
        for (a, b) in h.iter().zip(y.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn quantizer_hand_cases() {
        assert_eq!(quantize_entry(cx(1.0, 2.0)), cx(1.0, 1.0));
        assert_eq!(quantize_entry(cx(-0.5, -3.0)), cx(-1.0, -1.0));
        assert_eq!(quantize_entry(cx(0.0, -0.0)), cx(1.0, 1.0));
    }

    #[test]
    fn quantizer_is_idempotent_and_scale_invariant() {
        let y = ComplexVec::antenna(vec![cx(0.3, -0.2), cx(-4.0, 0.0), cx(1e-9, 7.0)]).unwrap();
        let q = quantize_1bit(&y);
        assert_eq!(quantize_1bit(&q), q);
        assert_eq!(quantize_1bit(&y.scaled(123.456)), q);
        assert!((q.energy() - 2.0 * y.len() as f64).abs() < 1e-12);
    }
}
