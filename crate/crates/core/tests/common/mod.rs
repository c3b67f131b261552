#![allow(dead_code)]

use sand_core::{gaussian_channel, stream, Complex, ComplexVec, Domain, StreamKind};

/// Unit-energy i.i.d. complex Gaussian vector in the requested domain.
pub fn random_vec(seed: u64, trial: u64, n: usize, domain: Domain) -> ComplexVec<f64> {
    let mut rng = stream(seed, trial, StreamKind::Validation);
    let h = gaussian_channel::<f64, _>(n, 1.0, &mut rng).unwrap();
    ComplexVec::new(h.iter().copied().collect(), domain).unwrap()
}

pub fn max_entry_dev(a: &ComplexVec<f64>, b: &ComplexVec<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn inner_product(a: &ComplexVec<f64>, b: &ComplexVec<f64>) -> Complex<f64> {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}
