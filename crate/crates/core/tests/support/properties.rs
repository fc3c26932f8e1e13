//! Randomized properties of evolution and purity, checked against a dense
//! density-matrix computation. Shared with the acceptance suite.

// Each includer uses a different subset.
#![allow(dead_code)]

use decoherence_core::dynamics::{
    evolve, purity, random_product_state, tensor, Evolution, PureState,
};
use decoherence_core::ensembles::{sample_haar_orthogonal, sample_haar_unitary, SpectrumKind};
use decoherence_core::model::{
    build_strong, Dimensions, SpectralDecomposition, StrongCouplingSpec,
};
use decoherence_core::RngStream;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub const CASES: u32 = 100;

fn kind_strategy() -> impl Strategy<Value = SpectrumKind> {
    prop::sample::select(SpectrumKind::ALL.to_vec())
}

fn setup(n: usize, m: usize, kind: SpectrumKind, seed: u64) -> (SpectralDecomposition, PureState) {
    let dims = Dimensions::new(n, m).unwrap();
    let mut rng = RngStream::new(seed, 0);
    let decomp = build_strong(StrongCouplingSpec { dims, kind }, &mut rng).unwrap();
    let psi0 = tensor(&random_product_state(dims, &mut rng));
    (decomp, psi0)
}

/// Dense `U(t) = O exp(-iEt) O^T` applied to `psi0`.
fn dense_evolve(decomp: &SpectralDecomposition, psi0: &PureState, t: f64) -> DVector<Complex64> {
    let o = decomp
        .eigenvectors()
        .matrix()
        .map(|x| Complex64::new(x, 0.0));
    let phases = DMatrix::from_diagonal(&DVector::from_iterator(
        decomp.dim(),
        decomp
            .energies()
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -e * t)),
    ));
    let u = &o * phases * o.transpose();
    u * DVector::from_column_slice(psi0.amplitudes())
}

/// `tr(rho_r^2)` from the full projector `|psi><psi|`, tracing out the
/// environment (`left = true`) or the central system.
fn dense_purity(psi: &[Complex64], n: usize, m: usize, left: bool) -> f64 {
    let big = n * m;
    let v = DVector::from_column_slice(psi);
    let rho = &v * v.adjoint();
    let norm = (0..big).map(|k| rho[(k, k)].re).sum::<f64>();
    let (d, other) = if left { (n, m) } else { (m, n) };
    let mut red = DMatrix::<Complex64>::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..other {
                let (ia, ib) = if left {
                    (a * m + k, b * m + k)
                } else {
                    (k * m + a, k * m + b)
                };
                s += rho[(ia, ib)];
            }
            red[(a, b)] = s;
        }
    }
    (&red * &red).trace().re / (norm * norm)
}

/// `(A (x) B) psi`.
fn apply_local(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, psi: &PureState) -> PureState {
    let dims = psi.dims();
    let (n, m) = (dims.n(), dims.m());
    let c = DMatrix::from_row_slice(n, m, psi.amplitudes());
    let out = a * c * b.transpose();
    let amps = (0..n)
        .flat_map(|i| (0..m).map(move |mu| (i, mu)))
        .map(|(i, mu)| out[(i, mu)])
        .collect();
    PureState::new(dims, amps).unwrap()
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(Config::with_cases(CASES))
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

pub fn dense_oracle() -> Result<(), String> {
    run(
        (
            1usize..=4,
            1usize..=4,
            kind_strategy(),
            any::<u64>(),
            0.0f64..50.0,
        ),
        |(n, m, kind, seed, t)| {
            let (decomp, psi0) = setup(n, m, kind, seed);
            let fast = evolve(&decomp, &psi0, t).unwrap();
            let dense = dense_evolve(&decomp, &psi0, t);
            for (x, y) in fast.amplitudes().iter().zip(dense.iter()) {
                prop_assert!((x - y).norm() < 1e-12);
            }
            let p = purity(&fast).unwrap().value();
            prop_assert!((p - dense_purity(dense.as_slice(), n, m, true)).abs() < 1e-12);
            Ok(())
        },
    )
}

pub fn bounds() -> Result<(), String> {
    run(
        (
            1usize..=5,
            1usize..=5,
            kind_strategy(),
            any::<u64>(),
            0.0f64..100.0,
        ),
        |(n, m, kind, seed, t)| {
            let (decomp, psi0) = setup(n, m, kind, seed);
            let p = purity(&evolve(&decomp, &psi0, t).unwrap()).unwrap().value();
            let lower = 1.0 / n.min(m) as f64;
            prop_assert!(p >= lower - 1e-12 && p <= 1.0 + 1e-12, "{}", p);
            Ok(())
        },
    )
}

pub fn trace_order() -> Result<(), String> {
    run(
        (1usize..=4, 1usize..=4, any::<u64>(), 0.0f64..20.0),
        |(n, m, seed, t)| {
            let (decomp, psi0) = setup(n, m, SpectrumKind::Goe, seed);
            let dense = dense_evolve(&decomp, &psi0, t);
            let a = dense_purity(dense.as_slice(), n, m, true);
            let b = dense_purity(dense.as_slice(), n, m, false);
            prop_assert!((a - b).abs() < 1e-12);
            prop_assert!(
                (purity(&PureState::new(psi0.dims(), dense.as_slice().to_vec()).unwrap())
                    .unwrap()
                    .value()
                    - b)
                    .abs()
                    < 1e-12
            );
            Ok(())
        },
    )
}

pub fn local_rotation() -> Result<(), String> {
    run(
        (1usize..=4, 1usize..=4, any::<u64>(), 0.0f64..20.0),
        |(n, m, seed, t)| {
            let (decomp, psi0) = setup(n, m, SpectrumKind::Poisson, seed);
            let psi = evolve(&decomp, &psi0, t).unwrap();
            let mut rng = RngStream::new(seed, 1);
            let a = sample_haar_orthogonal(n, &mut rng)
                .unwrap()
                .matrix()
                .map(|x| Complex64::new(x, 0.0));
            let b = sample_haar_unitary(m, &mut rng).unwrap();
            let p0 = purity(&psi).unwrap().value();
            let p1 = purity(&apply_local(&a, &b, &psi)).unwrap().value();
            prop_assert!((p0 - p1).abs() < 1e-12);
            Ok(())
        },
    )
}

pub fn composition() -> Result<(), String> {
    run(
        (
            1usize..=4,
            1usize..=4,
            kind_strategy(),
            any::<u64>(),
            0.0f64..30.0,
            0.0f64..30.0,
        ),
        |(n, m, kind, seed, t1, t2)| {
            let (decomp, psi0) = setup(n, m, kind, seed);
            let two_step = evolve(&decomp, &evolve(&decomp, &psi0, t1).unwrap(), t2).unwrap();
            let one_step = evolve(&decomp, &psi0, t1 + t2).unwrap();
            for (x, y) in two_step.amplitudes().iter().zip(one_step.amplitudes()) {
                prop_assert!((x - y).norm() < 1e-9);
            }
            Ok(())
        },
    )
}

pub fn trivial_factor() -> Result<(), String> {
    run(
        (1usize..=8, kind_strategy(), any::<u64>()),
        |(m, kind, seed)| {
            let (decomp, psi0) = setup(1, m, kind, seed);
            let times: Vec<f64> = (0..20).map(|k| 0.7 * k as f64).collect();
            for p in Evolution::new(&decomp, &psi0).unwrap().purity_curve(&times) {
                prop_assert!((p - 1.0).abs() < 1e-12);
            }
            Ok(())
        },
    )
}

pub fn norm_conservation() -> Result<(), String> {
    run(
        (1usize..=4, 1usize..=4, any::<u64>(), 0.0f64..100.0),
        |(n, m, seed, t)| {
            let (decomp, psi0) = setup(n, m, SpectrumKind::Goe, seed);
            prop_assert!((evolve(&decomp, &psi0, t).unwrap().norm() - 1.0).abs() < 1e-12);
            Ok(())
        },
    )
}

pub type Property = (&'static str, fn() -> Result<(), String>);

pub const ALL: [Property; 7] = [
    ("purity bounds", bounds),
    ("local rotation invariance", local_rotation),
    ("evolve composition", composition),
    ("n = 1 constancy", trivial_factor),
    ("dense purity oracle", dense_oracle),
    ("trace order symmetry", trace_order),
    ("norm conservation", norm_conservation),
];
