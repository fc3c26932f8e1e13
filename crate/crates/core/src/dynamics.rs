//! Product states, exact unitary evolution and purity.

use alloc::vec::Vec;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::model::{Dimensions, SpectralDecomposition};
use crate::{Error, Result, RngStream};

const PRODUCT_NORM_TOL: f64 = 1e-12;
const STATE_NORM_TOL: f64 = 1e-10;
const PURITY_NORM_TOL: f64 = 1e-8;

/// Real unentangled state `left (x) right`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    left: Vec<f64>,
    right: Vec<f64>,
}

impl ProductState {
    pub fn new(left: Vec<f64>, right: Vec<f64>) -> Result<Self> {
        for v in [&left, &right] {
            if v.is_empty() {
                return Err(Error::ZeroDimension("factor"));
            }
            let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
            if (norm - 1.0).abs() > PRODUCT_NORM_TOL {
                return Err(Error::NotNormalized { norm });
            }
        }
        Ok(Self { left, right })
    }

    pub fn left(&self) -> &[f64] {
        &self.left
    }

    pub fn right(&self) -> &[f64] {
        &self.right
    }

    pub fn dims(&self) -> Dimensions {
        Dimensions::new(self.left.len(), self.right.len()).expect("factors are non-empty")
    }
}

/// Normalized state on the product space, amplitudes in flat order.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    dims: Dimensions,
}

impl PureState {
    pub fn new(dims: Dimensions, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch {
                expected: dims.total(),
                found: amplitudes.len(),
            });
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, dims })
    }

    pub fn from_real(dims: Dimensions, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            dims,
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> Dimensions {
        self.dims
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }
}

fn norm(a: &[Complex64]) -> f64 {
    libm::sqrt(a.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// Purity `Tr[rho_1^2]`, between `1 / min(n, m)` and `1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct PurityValue(f64);

impl PurityValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<PurityValue> for f64 {
    fn from(p: PurityValue) -> f64 {
        p.0
    }
}

fn random_unit_vector(len: usize, rng: &mut RngStream) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
        let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Independent orthogonally invariant unit vectors for both factors
/// (left drawn first).
pub fn random_product_state(dims: Dimensions, rng: &mut RngStream) -> ProductState {
    let left = random_unit_vector(dims.n(), rng);
    let right = random_unit_vector(dims.m(), rng);
    ProductState { left, right }
}

/// `|i> (x) |mu>`.
pub fn basis_product_state(dims: Dimensions, i: usize, mu: usize) -> Result<ProductState> {
    if i >= dims.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: dims.n(),
        });
    }
    if mu >= dims.m() {
        return Err(Error::IndexOutOfRange {
            index: mu,
            dim: dims.m(),
        });
    }
    let mut left = alloc::vec![0.0; dims.n()];
    let mut right = alloc::vec![0.0; dims.m()];
    left[i] = 1.0;
    right[mu] = 1.0;
    Ok(ProductState { left, right })
}

/// Flat amplitudes `left[i] * right[mu]` at `i * m + mu`.
pub fn tensor(p: &ProductState) -> PureState {
    let amplitudes = p
        .left
        .iter()
        .flat_map(|&a| p.right.iter().map(move |&b| Complex64::new(a * b, 0.0)))
        .collect();
    PureState {
        amplitudes,
        dims: p.dims(),
    }
}

/// Precomputed evolution of one initial state under one Hamiltonian.
///
/// Holds `c = O^T psi0`, so every time point costs one real-by-complex
/// matrix-vector product: `psi(t) = O diag(exp(-i E t)) c`.
#[derive(Clone, Debug)]
pub struct Evolution<'a> {
    decomp: &'a SpectralDecomposition,
    dims: Dimensions,
    coeff_re: Vec<f64>,
    coeff_im: Vec<f64>,
    initial_re: Vec<f64>,
    initial_im: Vec<f64>,
}

impl<'a> Evolution<'a> {
    pub fn new(decomp: &'a SpectralDecomposition, psi0: &PureState) -> Result<Self> {
        if decomp.dim() != psi0.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: decomp.dim(),
                found: psi0.amplitudes.len(),
            });
        }
        let o = decomp.eigenvectors().matrix();
        let re =
            DVector::from_iterator(psi0.amplitudes.len(), psi0.amplitudes.iter().map(|z| z.re));
        let im =
            DVector::from_iterator(psi0.amplitudes.len(), psi0.amplitudes.iter().map(|z| z.im));
        let coeff_re = o.tr_mul(&re).data.into();
        let coeff_im = if im.iter().all(|&x| x == 0.0) {
            alloc::vec![0.0; decomp.dim()]
        } else {
            o.tr_mul(&im).data.into()
        };
        Ok(Self {
            decomp,
            dims: psi0.dims,
            coeff_re,
            coeff_im,
            initial_re: re.data.into(),
            initial_im: im.data.into(),
        })
    }

    /// Writes `psi(t)` into `out` (length `N`), split into real and imaginary parts.
    fn amplitudes_into(&self, t: f64, re_out: &mut DVector<f64>, im_out: &mut DVector<f64>) {
        if t == 0.0 {
            re_out.copy_from_slice(&self.initial_re);
            im_out.copy_from_slice(&self.initial_im);
            return;
        }
        let n = self.decomp.dim();
        let mut w_re = DVector::<f64>::zeros(n);
        let mut w_im = DVector::<f64>::zeros(n);
        for (k, &e) in self.decomp.energies().iter().enumerate() {
            let (s, c) = libm::sincos(e * t);
            // exp(-i E t) * (a + i b)
            let (a, b) = (self.coeff_re[k], self.coeff_im[k]);
            w_re[k] = c * a + s * b;
            w_im[k] = c * b - s * a;
        }
        let o = self.decomp.eigenvectors().matrix();
        re_out.gemv(1.0, o, &w_re, 0.0);
        im_out.gemv(1.0, o, &w_im, 0.0);
    }

    pub fn state_at(&self, t: f64) -> PureState {
        let n = self.decomp.dim();
        let mut re = DVector::zeros(n);
        let mut im = DVector::zeros(n);
        self.amplitudes_into(t, &mut re, &mut im);
        let amplitudes = re
            .iter()
            .zip(im.iter())
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        PureState {
            amplitudes,
            dims: self.dims,
        }
    }

    /// Purity at every time in `times`.
    pub fn purity_curve(&self, times: &[f64]) -> Vec<f64> {
        let n = self.decomp.dim();
        let mut re = DVector::zeros(n);
        let mut im = DVector::zeros(n);
        times
            .iter()
            .map(|&t| {
                self.amplitudes_into(t, &mut re, &mut im);
                purity_of_parts(re.as_slice(), im.as_slice(), self.dims)
            })
            .collect()
    }
}

/// `psi(t) = O diag(exp(-i E t)) O^T psi0`.
pub fn evolve(decomp: &SpectralDecomposition, psi0: &PureState, t: f64) -> Result<PureState> {
    Ok(Evolution::new(decomp, psi0)?.state_at(t))
}

/// Purity of the reduced density matrix of either subsystem.
///
/// The flat amplitudes are read as an `n x m` matrix `C`; the purity is
/// `||C C^dagger||_F^2`, evaluated on the smaller Gram matrix.
pub fn purity(psi: &PureState) -> Result<PurityValue> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > PURITY_NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let re: Vec<f64> = psi.amplitudes.iter().map(|z| z.re).collect();
    let im: Vec<f64> = psi.amplitudes.iter().map(|z| z.im).collect();
    Ok(PurityValue(purity_of_parts(&re, &im, psi.dims)))
}

/// `1 - purity`.
pub fn linear_entropy(psi: &PureState) -> Result<f64> {
    Ok(1.0 - purity(psi)?.value())
}

/// Purity from split real/imaginary flat amplitudes of a nonzero state.
pub(crate) fn purity_of_parts(re: &[f64], im: &[f64], dims: Dimensions) -> f64 {
    let (n, m) = (dims.n(), dims.m());
    // Rows of C are contiguous; columns are strided by m.
    let (rows, len, row_stride, elem_stride) = if n <= m { (n, m, m, 1) } else { (m, n, 1, m) };
    let mut total = 0.0;
    let mut trace = 0.0;
    for a in 0..rows {
        for b in a..rows {
            let mut g_re = 0.0;
            let mut g_im = 0.0;
            for k in 0..len {
                let p = a * row_stride + k * elem_stride;
                let q = b * row_stride + k * elem_stride;
                // C_a,k * conj(C_b,k)
                g_re += re[p] * re[q] + im[p] * im[q];
                g_im += im[p] * re[q] - re[p] * im[q];
            }
            let w = g_re * g_re + g_im * g_im;
            if a == b {
                trace += g_re;
                total += w;
            } else {
                total += 2.0 * w;
            }
        }
    }
    // Tr[rho_1^2] / (Tr rho_1)^2: exact for a trivial factor and immune to
    // rounding in the state norm.
    total / (trace * trace)
}
