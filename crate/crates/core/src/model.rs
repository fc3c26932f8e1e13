//! Total Hamiltonians for the strong- and weak-coupling scenarios.
//!
//! The product basis `|i, mu>` of `H1 (dim n) x H2 (dim m)` is flattened as
//! `i * m + mu`. Every matrix and state vector in this crate uses that order.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::ensembles::{
    sample_coupling, sample_haar_orthogonal, GoeUnfolder, OrthogonalMatrix, SpectrumKind,
};
use crate::{Error, Result, RngStream};

/// Subsystem dimensions `n` (central system) and `m` (environment).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dimensions {
    n: usize,
    m: usize,
}

impl Dimensions {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension("n"));
        }
        if m == 0 {
            return Err(Error::ZeroDimension("m"));
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `N = n * m`.
    pub fn total(&self) -> usize {
        self.n * self.m
    }

    pub fn flat_index(&self, i: usize, mu: usize) -> usize {
        debug_assert!(i < self.n && mu < self.m);
        i * self.m + mu
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn split_index(&self, flat: usize) -> (usize, usize) {
        (flat / self.m, flat % self.m)
    }
}

/// Total Hamiltonian `O E O^T` with spectrum of the given kind.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrongCouplingSpec {
    pub dims: Dimensions,
    pub kind: SpectrumKind,
}

/// `H = diag(e_i + e_mu) + lambda V`, rescaled to `<E^2> = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeakCouplingSpec {
    pub dims: Dimensions,
    /// Spectrum of the central-system Hamiltonian.
    pub kind1: SpectrumKind,
    /// Spectrum of the environment Hamiltonian.
    pub kind2: SpectrumKind,
    pub lambda: f64,
}

impl WeakCouplingSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(Error::InvalidCoupling(self.lambda));
        }
        Ok(())
    }

    /// Factor applied to the full Hamiltonian so that `<E^2> = 1`.
    pub fn energy_scale(&self) -> f64 {
        1.0 / libm::sqrt(crate::analytics::weak_variance(
            self.lambda,
            self.dims.total(),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelSpec {
    Strong(StrongCouplingSpec),
    Weak(WeakCouplingSpec),
}

impl ModelSpec {
    pub fn dims(&self) -> Dimensions {
        match self {
            ModelSpec::Strong(s) => s.dims,
            ModelSpec::Weak(w) => w.dims,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Strong(_) => Ok(()),
            ModelSpec::Weak(w) => w.validate(),
        }
    }
}

impl From<StrongCouplingSpec> for ModelSpec {
    fn from(s: StrongCouplingSpec) -> Self {
        ModelSpec::Strong(s)
    }
}

impl From<WeakCouplingSpec> for ModelSpec {
    fn from(w: WeakCouplingSpec) -> Self {
        ModelSpec::Weak(w)
    }
}

/// Eigenvalues and orthonormal eigenvectors of a total Hamiltonian.
///
/// Column `alpha` of `eigenvectors` belongs to `energies[alpha]`; rows are
/// indexed by the flat product index.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    energies: Vec<f64>,
    eigenvectors: OrthogonalMatrix,
}

impl SpectralDecomposition {
    pub fn new(energies: Vec<f64>, eigenvectors: OrthogonalMatrix) -> Result<Self> {
        if energies.len() != eigenvectors.dim() {
            return Err(Error::DimensionMismatch {
                expected: eigenvectors.dim(),
                found: energies.len(),
            });
        }
        Ok(Self {
            energies,
            eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn eigenvectors(&self) -> &OrthogonalMatrix {
        &self.eigenvectors
    }
}

/// Diagonalizes a real symmetric matrix; eigenpairs sorted by energy.
pub fn diagonalize(h: DMatrix<f64>) -> SpectralDecomposition {
    let n = h.nrows();
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let energies = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    SpectralDecomposition {
        energies,
        eigenvectors: OrthogonalMatrix::from_matrix_unchecked(vectors),
    }
}

/// Reconstructs `O diag(E) O^T`.
pub fn heff_matrix(decomp: &SpectralDecomposition) -> DMatrix<f64> {
    let o = decomp.eigenvectors.matrix();
    let mut scaled = o.clone();
    for (mut col, &e) in scaled.column_iter_mut().zip(&decomp.energies) {
        col *= e;
    }
    let mut h = scaled * o.transpose();
    let n = h.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (h[(i, j)] + h[(j, i)]);
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    h
}

/// Draws realizations of one model, caching the GOE unfolding tables.
///
/// A realization consumes its [`RngStream`] in a fixed order: for strong
/// coupling the spectrum then the Haar matrix; for weak coupling the
/// central-system spectrum, the environment spectrum, then the coupling.
#[derive(Clone, Debug)]
pub struct ModelSampler {
    spec: ModelSpec,
    unfolders: Vec<GoeUnfolder>,
}

impl ModelSampler {
    pub fn new(spec: ModelSpec) -> Result<Self> {
        spec.validate()?;
        let dims = spec.dims();
        let mut sizes: Vec<usize> = Vec::new();
        match spec {
            ModelSpec::Strong(s) if s.kind == SpectrumKind::Goe => sizes.push(dims.total()),
            ModelSpec::Weak(w) => {
                if w.kind1 == SpectrumKind::Goe {
                    sizes.push(dims.n());
                }
                if w.kind2 == SpectrumKind::Goe && !sizes.contains(&dims.m()) {
                    sizes.push(dims.m());
                }
            }
            _ => {}
        }
        let unfolders = sizes
            .into_iter()
            .map(GoeUnfolder::new)
            .collect::<Result<_>>()?;
        Ok(Self { spec, unfolders })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    fn levels(&self, kind: SpectrumKind, n: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
        if kind == SpectrumKind::Goe {
            if let Some(u) = self.unfolders.iter().find(|u| u.dim() == n) {
                return Ok(u.sample(rng).into_levels());
            }
        }
        Ok(kind.sample(n, rng)?.into_levels())
    }

    pub fn sample(&self, rng: &mut RngStream) -> Result<SpectralDecomposition> {
        match self.spec {
            ModelSpec::Strong(s) => {
                let n = s.dims.total();
                let energies = self.levels(s.kind, n, rng)?;
                let eigenvectors = sample_haar_orthogonal(n, rng)?;
                Ok(SpectralDecomposition {
                    energies,
                    eigenvectors,
                })
            }
            ModelSpec::Weak(w) => Ok(diagonalize(self.weak_hamiltonian(&w, rng)?)),
        }
    }

    fn weak_hamiltonian(&self, w: &WeakCouplingSpec, rng: &mut RngStream) -> Result<DMatrix<f64>> {
        let dims = w.dims;
        // Subsystem spectra at variance 1/2 each.
        let half = core::f64::consts::FRAC_1_SQRT_2;
        let e1 = self.levels(w.kind1, dims.n(), rng)?;
        let e2 = self.levels(w.kind2, dims.m(), rng)?;
        let mut h = sample_coupling(dims.total(), rng)?;
        h *= w.lambda;
        for (i, a) in e1.iter().enumerate() {
            for (mu, b) in e2.iter().enumerate() {
                let k = dims.flat_index(i, mu);
                h[(k, k)] = half * (a + b);
            }
        }
        h *= w.energy_scale();
        Ok(h)
    }
}

/// One strong-coupling realization: spectrum of `spec.kind` and an
/// independent Haar orthogonal eigenbasis.
pub fn build_strong(
    spec: StrongCouplingSpec,
    rng: &mut RngStream,
) -> Result<SpectralDecomposition> {
    ModelSampler::new(spec.into())?.sample(rng)
}

/// One weak-coupling realization, diagonalized.
pub fn build_weak(spec: WeakCouplingSpec, rng: &mut RngStream) -> Result<SpectralDecomposition> {
    ModelSampler::new(spec.into())?.sample(rng)
}

/// The weak-coupling Hamiltonian before diagonalization (already rescaled).
pub fn weak_hamiltonian(spec: WeakCouplingSpec, rng: &mut RngStream) -> Result<DMatrix<f64>> {
    ModelSampler::new(spec.into())?.weak_hamiltonian(&spec, rng)
}
