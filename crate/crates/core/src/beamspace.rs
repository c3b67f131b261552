//! Domain-tagged complex vectors, the unitary transform between the antenna
//! and beamspace coordinate systems, and the magnitude-sorting step shared by
//! all denoisers.
//!
//! Mixing the two coordinate systems silently is the classic failure mode in
//! this kind of code, so every vector carries its domain and the transforms
//! check it.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fft::{self, Direction};
use crate::scalar::Scalar;

/// Coordinate system a vector is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// One entry per antenna element.
    Antenna,
    /// Unitary DFT of the antenna domain; one entry per angular bin.
    Beamspace,
}

/// Fixed-length complex vector tagged with its [`Domain`].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVec<T> {
    data: Vec<Complex<T>>,
    domain: Domain,
}

impl<T: Scalar> ComplexVec<T> {
    pub fn new(data: Vec<Complex<T>>, domain: Domain) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self { data, domain })
    }

    pub fn antenna(data: Vec<Complex<T>>) -> Result<Self> {
        Self::new(data, Domain::Antenna)
    }

    pub fn beamspace(data: Vec<Complex<T>>) -> Result<Self> {
        Self::new(data, Domain::Beamspace)
    }

    /// Internal constructor for data whose length is already known valid.
    pub(crate) fn from_parts(data: Vec<Complex<T>>, domain: Domain) -> Self {
        debug_assert!(!data.is_empty());
        Self { data, domain }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex<T>> {
        self.data.iter()
    }

    pub(crate) fn expect_domain(&self, expected: Domain) -> Result<()> {
        if self.domain != expected {
            return Err(Error::DomainMismatch {
                expected,
                found: self.domain,
            });
        }
        Ok(())
    }

    /// Unitary DFT into beamspace; entry k is (1/sqrt(B)) sum_n v_n e^{-j2pi kn/B}.
    pub fn dft(&self) -> Result<Self> {
        self.expect_domain(Domain::Antenna)?;
        Ok(Self::from_parts(
            fft::transform(&self.data, Direction::Forward),
            Domain::Beamspace,
        ))
    }

    /// Unitary inverse DFT back to the antenna domain.
    pub fn idft(&self) -> Result<Self> {
        self.expect_domain(Domain::Beamspace)?;
        Ok(Self::from_parts(
            fft::transform(&self.data, Direction::Inverse),
            Domain::Antenna,
        ))
    }

    /// Entrywise scaling by a real factor; keeps the domain tag.
    pub fn scaled(&self, factor: T) -> Self {
        Self::from_parts(self.data.iter().map(|&z| z * factor).collect(), self.domain)
    }

    /// Squared Euclidean norm.
    pub fn energy(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Reads one complex entry per `re,im` line; blank lines are skipped.
    pub fn read_csv<R: Read>(reader: R, domain: Domain) -> Result<Self> {
        let mut data = Vec::new();
        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            let entry = line.trim();
            if entry.is_empty() {
                continue;
            }
            let (re, im) = entry.split_once(',').ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: "expected two comma-separated fields".into(),
            })?;
            data.push(Complex::new(
                parse_field(re, idx + 1)?,
                parse_field(im, idx + 1)?,
            ));
        }
        Self::new(data, domain)
    }

    pub fn read_csv_path(path: impl AsRef<Path>, domain: Domain) -> Result<Self> {
        Self::read_csv(std::fs::File::open(path)?, domain)
    }

    /// Writes `re,im` lines in full round-trip precision.
    pub fn write_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        for z in &self.data {
            writeln!(writer, "{},{}", z.re, z.im)?;
        }
        Ok(())
    }

    pub fn write_csv_path(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_csv(&mut file)?;
        Ok(())
    }
}

fn parse_field<T: Scalar>(field: &str, line: usize) -> Result<T> {
    field.trim().parse::<T>().map_err(|_| Error::Parse {
        line,
        message: format!("bad numeric field {:?}", field.trim()),
    })
}

/// Entry magnitudes in ascending order, padded with two `+inf` sentinels,
/// plus the permutation back to original positions.
///
/// The sentinels let the threshold scan in [`crate::denoise`] run its final
/// two bookkeeping iterations without bounds checks.
#[derive(Clone, Debug)]
pub struct SortedMagnitudes<T> {
    values: Vec<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> SortedMagnitudes<T> {
    /// Number of real (non-sentinel) magnitudes.
    pub fn bin_count(&self) -> usize {
        self.perm.len()
    }

    /// Sorted magnitudes without the sentinels.
    pub fn magnitudes(&self) -> &[T] {
        &self.values[..self.perm.len()]
    }

    /// Sorted magnitudes including the two trailing sentinels.
    pub fn padded(&self) -> &[T] {
        &self.values
    }

    /// Value at sorted position `k`; the last two positions are `+inf`.
    pub fn value(&self, k: usize) -> T {
        self.values[k]
    }

    /// `permutation()[rank]` is the original index of the rank-th smallest.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }
}

/// Sorts entry magnitudes ascending. Ties keep their original order, so the
/// output is fully determined by the input.
pub fn sort_magnitudes<T: Scalar>(v: &ComplexVec<T>) -> SortedMagnitudes<T> {
    let mags: Vec<T> = v.iter().map(|z| z.norm()).collect();
    let mut perm: Vec<usize> = (0..mags.len()).collect();
    perm.sort_by(|&i, &j| mags[i].total_order(&mags[j]));
    let mut values: Vec<T> = perm.iter().map(|&i| mags[i]).collect();
    values.push(T::infinity());
    values.push(T::infinity());
    SortedMagnitudes { values, perm }
}
