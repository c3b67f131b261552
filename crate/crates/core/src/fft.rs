//! Unitary DFT kernels.
//!
//! Power-of-two lengths go through an in-place radix-2 transform; every other
//! length falls back to the dense O(B^2) definition. The dense path is slow
//! but straightforward, and the test suite holds the fast path to it.

use num_complex::Complex;

use crate::scalar::{count, Scalar};

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    fn angle_sign<T: Scalar>(self) -> T {
        match self {
            Direction::Forward => -T::one(),
            Direction::Inverse => T::one(),
        }
    }
}

/// Applies the unitary transform, dispatching on length.
pub(crate) fn transform<T: Scalar>(data: &[Complex<T>], dir: Direction) -> Vec<Complex<T>> {
    if data.len().is_power_of_two() {
        let mut buf = data.to_vec();
        radix2(&mut buf, dir);
        buf
    } else {
        dense(data, dir)
    }
}

/// Textbook matrix-product evaluation, exposed for oracle tests.
pub(crate) fn dense<T: Scalar>(input: &[Complex<T>], dir: Direction) -> Vec<Complex<T>> {
    let n = input.len();
    let scale = count::<T>(n).sqrt().recip();
    let step = dir.angle_sign::<T>() * T::TAU() / count(n);
    (0..n)
        .map(|k| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (b, &x) in input.iter().enumerate() {
                // k*b is reduced mod n before forming the angle so the trig
                // argument stays small for every pair.
                let angle = step * count::<T>((k * b) % n);
                acc += x * Complex::from_polar(T::one(), angle);
            }
            acc * scale
        })
        .collect()
}

fn radix2<T: Scalar>(buf: &mut [Complex<T>], dir: Direction) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    if n > 1 {
        bit_reverse_permute(buf);
        let step = dir.angle_sign::<T>() * T::TAU() / count(n);
        // One table for the full length; stage `len` strides through it.
        let twiddle: Vec<Complex<T>> = (0..n / 2)
            .map(|i| Complex::from_polar(T::one(), step * count(i)))
            .collect();
        let mut len = 2;
        while len <= n {
            let stride = n / len;
            for chunk in buf.chunks_mut(len) {
                for i in 0..len / 2 {
                    let w = twiddle[i * stride];
                    let hi = chunk[i + len / 2] * w;
                    let lo = chunk[i];
                    chunk[i] = lo + hi;
                    chunk[i + len / 2] = lo - hi;
                }
            }
            len *= 2;
        }
    }
    let scale = count::<T>(n).sqrt().recip();
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

fn bit_reverse_permute<T>(buf: &mut [Complex<T>]) {
    let n = buf.len();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }
}
