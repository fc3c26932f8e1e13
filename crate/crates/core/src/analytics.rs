//! Closed-form predictions for the strong-coupling ensemble with uniform
//! level density and `<E^2> = 1`.

use core::f64::consts::PI;

use crate::ensembles::SQRT_3;

/// Fourier transform of the uniform density on `[-sqrt(3), sqrt(3)]`:
/// `sin(sqrt(3) t) / (sqrt(3) t)`.
pub fn f_uniform(t: f64) -> f64 {
    let x = SQRT_3 * t;
    if x.abs() < 1e-4 {
        // 1 - x^2/6 + x^4/120
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        libm::sin(x) / x
    }
}

/// The five distinct energy averages entering the ensemble-averaged purity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralAverages {
    /// `<exp(-it(E1 - E2 + E3 - E4))>`
    pub s1: f64,
    /// `<exp(-it(E1 - E2))>`
    pub s2: f64,
    /// `<exp(-it(2E1 - E2 - E3))>`
    pub s3: f64,
    /// Coinciding indices: always 1.
    pub s4: f64,
    /// `<exp(-2it(E1 - E2))>`
    pub s5: f64,
}

/// Values for an uncorrelated (random) spectrum.
pub fn spectral_averages(t: f64) -> SpectralAverages {
    let f = f_uniform(t);
    let f2 = f_uniform(2.0 * t);
    SpectralAverages {
        s1: f * f * f * f,
        s2: f * f,
        s3: f2 * f * f,
        s4: 1.0,
        s5: f2 * f2,
    }
}

/// Coefficient `a` of the short-time law `I(t) ~ 1 - a <E^2> t^2`.
pub fn short_time_coefficient(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    2.0 * (1.0 - (n + m + 1.0) / (n * m + 2.0))
}

/// Short-time purity for a spectrum with `<E^2> = energy_variance`.
pub fn short_time_purity_with_variance(t: f64, n: usize, m: usize, energy_variance: f64) -> f64 {
    1.0 - short_time_coefficient(n, m) * energy_variance * t * t
}

/// Short-time purity at the normalization `<E^2> = 1`.
pub fn short_time_purity(t: f64, n: usize, m: usize) -> f64 {
    short_time_purity_with_variance(t, n, m, 1.0)
}

/// Depth of the first purity minimum (at `t = pi / sqrt(3)`) for GOE-like
/// spectra, from the circular orthogonal ensemble.
pub fn i_min_coe(n: usize, m: usize) -> f64 {
    let s = (n + m) as f64;
    let big = (n * m) as f64;
    let num = s * big * big + (3.0 * s + 2.0) * big - 2.0 * (s - 1.0);
    let den = big * (big + 1.0) * (big + 3.0);
    num / den
}

/// Long-time purity plateau (random eigenphases).
pub fn i_infinity(n: usize, m: usize) -> f64 {
    let s = (n + m) as f64;
    let big = (n * m) as f64;
    let num =
        s * big * big * big + 3.0 * (4.0 * s + 3.0) * big * big + (35.0 * s + 57.0) * big + 48.0;
    let den = (big + 1.0) * (big + 2.0) * (big + 4.0) * (big + 6.0);
    num / den
}

/// `<E^2>` of the unscaled weak-coupling Hamiltonian: `1/2 + 1/2 + lambda^2 (N - 1)`.
pub fn weak_variance(lambda: f64, total_dim: usize) -> f64 {
    0.5 + 0.5 + lambda * lambda * (total_dim as f64 - 1.0)
}

/// Characteristic times of the unfolded spectrum of dimension `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeScales {
    /// `1 / (2 sqrt(3))`
    pub inverse_spectrum_length: f64,
    /// First filling of the unit circle, `pi / sqrt(3)`.
    pub first_minimum_time: f64,
    /// Recurrence time `2 pi / d = N pi / sqrt(3)`.
    pub heisenberg_time: f64,
    /// `N pi / (2 sqrt(3))`.
    pub partial_revival_time: f64,
    /// `d = 2 sqrt(3) / N`.
    pub mean_spacing: f64,
}

pub fn time_scales(total_dim: usize) -> TimeScales {
    let big = total_dim as f64;
    let heisenberg_time = big * PI / SQRT_3;
    TimeScales {
        inverse_spectrum_length: 1.0 / (2.0 * SQRT_3),
        first_minimum_time: PI / SQRT_3,
        heisenberg_time,
        partial_revival_time: 0.5 * heisenberg_time,
        mean_spacing: 2.0 * SQRT_3 / big,
    }
}
