//! Random-matrix model for the decoherence of random product states.
//!
//! A bipartite Hilbert space of dimension `N = n * m` carries a Hamiltonian
//! drawn either from a strong-coupling ensemble `O E O^T` (Haar orthogonal
//! eigenvectors, GOE / Poisson / picket-fence spectrum) or from a weak-coupling
//! ensemble `diag(e_i + e_mu) + lambda V`. Initially unentangled states are
//! evolved exactly through the spectral decomposition and the purity of the
//! reduced density matrix is tracked in time.
//!
//! The crate is `no_std` and only needs `alloc`. Parallel execution, file
//! formats and the command line live in the companion `decoherence` crate,
//! which plugs a thread pool into [`montecarlo::Executor`].

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analytics;
pub mod dynamics;
pub mod ensembles;
mod error;
pub mod model;
pub mod montecarlo;
mod rng;
pub mod summation;

pub use error::{Error, Result};
pub use rng::RngStream;
