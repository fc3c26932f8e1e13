//! Spectrum and matrix ensembles.
//!
//! All spectra are unfolded to a uniform mean level density on
//! `[-sqrt(3), sqrt(3)]`, which fixes `<E^2> = 1` and a mean spacing of
//! `2 sqrt(3) / N`.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};
use core::fmt;
use core::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result, RngStream};

pub(crate) const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Spectral statistics of an ensemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    /// Gaussian orthogonal ensemble (chaotic).
    Goe,
    /// Uncorrelated levels (integrable).
    Poisson,
    /// Equidistant levels.
    PicketFence,
}

impl SpectrumKind {
    pub const ALL: [SpectrumKind; 3] = [
        SpectrumKind::Goe,
        SpectrumKind::Poisson,
        SpectrumKind::PicketFence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpectrumKind::Goe => "goe",
            SpectrumKind::Poisson => "poisson",
            SpectrumKind::PicketFence => "picketfence",
        }
    }

    /// Draws an unfolded spectrum of this kind. The picket fence ignores `rng`.
    pub fn sample(self, n: usize, rng: &mut RngStream) -> Result<Spectrum> {
        match self {
            SpectrumKind::Goe => sample_goe_spectrum(n, rng),
            SpectrumKind::Poisson => sample_poisson_spectrum(n, rng),
            SpectrumKind::PicketFence => picket_fence_spectrum(n),
        }
    }
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error returned when parsing an unknown [`SpectrumKind`] name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownKind;

impl fmt::Display for UnknownKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of `goe`, `poisson`, `picketfence`")
    }
}

impl FromStr for SpectrumKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "goe" => Ok(SpectrumKind::Goe),
            "poisson" => Ok(SpectrumKind::Poisson),
            "picketfence" => Ok(SpectrumKind::PicketFence),
            _ => Err(UnknownKind),
        }
    }
}

/// Sorted, unfolded energy levels.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    levels: Vec<f64>,
    kind: SpectrumKind,
}

impl Spectrum {
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn into_levels(self) -> Vec<f64> {
        self.levels
    }
}

/// Real orthogonal `N x N` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalMatrix(DMatrix<f64>);

impl OrthogonalMatrix {
    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Wraps `m` if `m^T m = 1` holds to `tol` per entry.
    pub fn try_from_matrix(m: DMatrix<f64>, tol: f64) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let defect = orthogonality_defect(&m);
        (defect <= tol).then_some(Self(m))
    }

    pub(crate) fn from_matrix_unchecked(m: DMatrix<f64>) -> Self {
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }
}

/// Largest entry of `|m^T m - 1|`.
pub fn orthogonality_defect(m: &DMatrix<f64>) -> f64 {
    let g = m.transpose() * m;
    let mut worst = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).abs());
        }
    }
    worst
}

/// Complex symmetric unitary `N x N` matrix (a COE member).
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricUnitaryMatrix(DMatrix<Complex64>);

impl SymmetricUnitaryMatrix {
    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroDimension("N"))
    } else {
        Ok(())
    }
}

fn normal(rng: &mut RngStream) -> f64 {
    rng.sample(StandardNormal)
}

/// `N x N` GOE matrix: off-diagonal entries N(0, 1), diagonal N(0, 2).
pub fn sample_goe_matrix(n: usize, rng: &mut RngStream) -> Result<DMatrix<f64>> {
    check_dim(n)?;
    let mut h = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = SQRT_2 * normal(rng);
        for j in (i + 1)..n {
            let x = normal(rng);
            h[(i, j)] = x;
            h[(j, i)] = x;
        }
    }
    Ok(h)
}

/// Exact mean eigenvalue distribution of the `N x N` GOE used by
/// [`sample_goe_matrix`], tabulated for unfolding.
///
/// The finite-`N` one-point density for the weight `exp(-y^2/2)` is
///
/// ```text
/// rho(y) = sum_{k<N} phi_k(y)^2
///        + sqrt(N/2) phi_{N-1}(y) * (1/2) int sgn(y - s) phi_N(s) ds
///        + [N odd] phi_{N-1}(y) / int phi_{N-1}
/// ```
///
/// with `phi_k` the orthonormal Hermite functions; our matrices are that
/// ensemble scaled by `sqrt(2)`. Unlike the semicircle it has the correct
/// edge tails and oscillations, so unfolded levels are uniform in the mean
/// at every `N`.
#[derive(Clone, Debug)]
pub struct GoeUnfolder {
    n: usize,
    x0: f64,
    step: f64,
    cdf: Vec<f64>,
}

const GOE_GRID_STEP: f64 = 0.005;
const GOE_GRID_MARGIN: f64 = 10.0;

impl GoeUnfolder {
    pub fn new(n: usize) -> Result<Self> {
        check_dim(n)?;
        let y_max = libm::sqrt(2.0 * n as f64) + GOE_GRID_MARGIN;
        let points = (2.0 * y_max / GOE_GRID_STEP) as usize + 1;
        let h = 2.0 * y_max / (points - 1) as f64;

        let mut sum_sq = Vec::with_capacity(points);
        let mut phi_last = Vec::with_capacity(points);
        let mut phi_top = Vec::with_capacity(points);
        for j in 0..points {
            let y = -y_max + j as f64 * h;
            let (s, a, b) = hermite_functions(n, y);
            sum_sq.push(s);
            phi_last.push(a);
            phi_top.push(b);
        }

        let int_top = cumulative_trapezoid(&phi_top, h);
        let half_total = 0.5 * int_top[points - 1];
        let odd_norm = if n % 2 == 1 {
            let total = *cumulative_trapezoid(&phi_last, h).last().unwrap_or(&0.0);
            Some(total)
        } else {
            None
        };
        let coupling = libm::sqrt(n as f64 / 2.0);
        let density: Vec<f64> = (0..points)
            .map(|j| {
                let mut rho = sum_sq[j] + coupling * phi_last[j] * (int_top[j] - half_total);
                if let Some(total) = odd_norm {
                    rho += phi_last[j] / total;
                }
                rho.max(0.0)
            })
            .collect();

        let mut cdf = cumulative_trapezoid(&density, h);
        let total = cdf[points - 1];
        let mut running = 0.0f64;
        for c in cdf.iter_mut() {
            running = running.max(*c / total);
            *c = running.min(1.0);
        }

        Ok(Self {
            n,
            x0: -SQRT_2 * y_max,
            step: SQRT_2 * h,
            cdf,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Mean fraction of eigenvalues below `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let u = (x - self.x0) / self.step;
        if u <= 0.0 {
            return 0.0;
        }
        let j = u as usize;
        if j + 1 >= self.cdf.len() {
            return 1.0;
        }
        let frac = u - j as f64;
        self.cdf[j] + frac * (self.cdf[j + 1] - self.cdf[j])
    }

    /// Maps a raw eigenvalue onto `[-sqrt(3), sqrt(3)]`.
    pub fn unfold(&self, x: f64) -> f64 {
        SQRT_3 * (2.0 * self.cdf(x) - 1.0)
    }

    /// Draws a GOE matrix and returns its unfolded, sorted spectrum.
    pub fn sample(&self, rng: &mut RngStream) -> Spectrum {
        let h = sample_goe_matrix(self.n, rng).expect("dimension checked at construction");
        let mut levels: Vec<f64> = h
            .symmetric_eigenvalues()
            .iter()
            .map(|&e| self.unfold(e))
            .collect();
        levels.sort_by(f64::total_cmp);
        Spectrum {
            levels,
            kind: SpectrumKind::Goe,
        }
    }
}

/// Returns `(sum_{k<n} phi_k(y)^2, phi_{n-1}(y), phi_n(y))`.
///
/// Runs the three-term recurrence without the Gaussian factor and rescales
/// on overflow, so large `n` does not underflow inside the bulk.
fn hermite_functions(n: usize, y: f64) -> (f64, f64, f64) {
    const BIG: f64 = 1e100;
    const LN_BIG: f64 = 230.258_509_299_404_56;
    let mut log_scale = 0.0;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum = 1.0;
    for k in 1..=n {
        let next =
            libm::sqrt(2.0 / k as f64) * y * cur - libm::sqrt((k - 1) as f64 / k as f64) * prev;
        prev = cur;
        cur = next;
        if k < n {
            sum += cur * cur;
        }
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            sum /= BIG * BIG;
            log_scale += LN_BIG;
        }
    }
    let norm = libm::pow(PI, -0.25);
    let factor = libm::exp(log_scale - 0.5 * y * y) * norm;
    let factor_sq = libm::exp(2.0 * (log_scale - 0.5 * y * y)) * norm * norm;
    (sum * factor_sq, prev * factor, cur * factor)
}

fn cumulative_trapezoid(values: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in values.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// GOE spectrum of size `n`, unfolded through the exact mean level density.
///
/// Builds a [`GoeUnfolder`] on every call; hot loops should keep one around.
pub fn sample_goe_spectrum(n: usize, rng: &mut RngStream) -> Result<Spectrum> {
    Ok(GoeUnfolder::new(n)?.sample(rng))
}

/// `n` independent uniform levels on `[-sqrt(3), sqrt(3)]`, sorted.
pub fn sample_poisson_spectrum(n: usize, rng: &mut RngStream) -> Result<Spectrum> {
    check_dim(n)?;
    let mut levels: Vec<f64> = (0..n)
        .map(|_| SQRT_3 * (2.0 * rng.random::<f64>() - 1.0))
        .collect();
    levels.sort_by(f64::total_cmp);
    Ok(Spectrum {
        levels,
        kind: SpectrumKind::Poisson,
    })
}

/// Equidistant levels `-sqrt(3) + (k + 1/2) d` with `d = 2 sqrt(3) / n`.
///
/// The spacing is exactly the mean spacing of the other ensembles, so the
/// evolution recurs exactly at `t = 2 pi / d`. The sample variance is
/// `1 - 1/n^2`.
pub fn picket_fence_spectrum(n: usize) -> Result<Spectrum> {
    check_dim(n)?;
    let d = 2.0 * SQRT_3 / n as f64;
    let levels = (0..n).map(|k| -SQRT_3 + (k as f64 + 0.5) * d).collect();
    Ok(Spectrum {
        levels,
        kind: SpectrumKind::PicketFence,
    })
}

/// Haar-distributed orthogonal matrix from the QR factorization of a
/// Gaussian matrix, with the columns of `Q` flipped so `R` has a positive
/// diagonal.
pub fn sample_haar_orthogonal(n: usize, rng: &mut RngStream) -> Result<OrthogonalMatrix> {
    check_dim(n)?;
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| normal(rng));
    let qr = g.qr();
    let r_diag: DVector<f64> = qr.r().diagonal();
    let mut q = qr.q();
    for (j, &r) in r_diag.iter().enumerate() {
        if r < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    Ok(OrthogonalMatrix(q))
}

/// Haar-distributed unitary matrix (complex Gaussian QR with phase fix).
pub fn sample_haar_unitary(n: usize, rng: &mut RngStream) -> Result<DMatrix<Complex64>> {
    check_dim(n)?;
    let scale = core::f64::consts::FRAC_1_SQRT_2;
    let g = DMatrix::<Complex64>::from_fn(n, n, |_, _| {
        let re = normal(rng);
        let im = normal(rng);
        Complex64::new(scale * re, scale * im)
    });
    let qr = g.qr();
    let r_diag = qr.r().diagonal();
    let mut q = qr.q();
    for (j, r) in r_diag.iter().enumerate() {
        let modulus = r.norm();
        if modulus > 0.0 {
            let phase = r / modulus;
            for x in q.column_mut(j).iter_mut() {
                *x *= phase;
            }
        }
    }
    Ok(q)
}

/// COE member `S = U^T U` with `U` Haar unitary.
pub fn sample_coe(n: usize, rng: &mut RngStream) -> Result<SymmetricUnitaryMatrix> {
    let u = sample_haar_unitary(n, rng)?;
    let mut s = u.transpose() * &u;
    // Symmetric by construction; remove rounding asymmetry.
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (s[(i, j)] + s[(j, i)]) * 0.5;
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    Ok(SymmetricUnitaryMatrix(s))
}

/// Symmetric coupling matrix with zero diagonal and i.i.d. standard normal
/// off-diagonal entries (upper triangle drawn row by row, then mirrored).
pub fn sample_coupling(n: usize, rng: &mut RngStream) -> Result<DMatrix<f64>> {
    check_dim(n)?;
    let mut v = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let x = normal(rng);
            v[(i, j)] = x;
            v[(j, i)] = x;
        }
    }
    Ok(v)
}
