//! Scalar abstraction so every algorithm runs in either `f32` or `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use rand::Rng;
use rand_distr::StandardNormal;

/// Floating-point scalar the whole crate is generic over.
///
/// The supertraits pull in everything the numerics need: arithmetic and
/// transcendentals, casts from integer counts, parsing and printing for the
/// CSV formats, and thread-safety bounds so callers may fan independent
/// trials out across threads. `f32` and `f64` are the intended implementors.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum<Self>
    + FromStr
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Total order over all values, including NaN (IEEE 754 totalOrder).
    fn total_order(&self, other: &Self) -> Ordering;

    /// One draw from N(0, 1).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// One draw from the half-open interval [0, 1).
    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Scalar for f32 {
    fn total_order(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }

    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random()
    }
}

impl Scalar for f64 {
    fn total_order(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }

    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random()
    }
}

/// Element counts as scalars; every supported count is representable.
pub(crate) fn count<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("count fits in scalar type")
}

/// Embeds an `f64` constant into the working precision.
pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("constant fits in scalar type")
}
