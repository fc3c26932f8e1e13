//! Ensemble engine: determinism, trivial limits, initial-state policies.

use std::sync::Mutex;
use std::thread;

use decoherence_core::ensembles::SpectrumKind;
use decoherence_core::model::{Dimensions, StrongCouplingSpec, WeakCouplingSpec};
use decoherence_core::montecarlo::{
    coe_min_purity_estimate, run_experiment, stationary_purity_estimate, uniform_grid, Executor,
    ExperimentConfig, InitialStatePolicy, Sequential,
};

/// Runs jobs on several threads, each taking indices in a scrambled order.
struct Scrambled {
    threads: usize,
}

impl Executor for Scrambled {
    fn map_indexed<T: Send, F: Fn(usize) -> T + Sync + Send>(
        &self,
        count: usize,
        job: F,
    ) -> Vec<T> {
        let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..count).map(|_| None).collect());
        let order: Vec<usize> = (0..count).rev().collect();
        thread::scope(|s| {
            for w in 0..self.threads {
                let (order, slots, job) = (&order, &slots, &job);
                s.spawn(move || {
                    for &i in order.iter().skip(w).step_by(self.threads) {
                        let value = job(i);
                        slots.lock().unwrap()[i] = Some(value);
                    }
                });
            }
        });
        slots
            .into_inner()
            .unwrap()
            .into_iter()
            .map(|v| v.expect("job ran"))
            .collect()
    }
}

fn strong(n: usize, m: usize, kind: SpectrumKind) -> ExperimentConfig {
    let dims = Dimensions::new(n, m).unwrap();
    ExperimentConfig::new(
        StrongCouplingSpec { dims, kind }.into(),
        uniform_grid(20.0, 41),
        200,
        17,
    )
}

#[test]
fn result_is_independent_of_scheduling() {
    let mut config = strong(3, 4, SpectrumKind::Goe);
    config.record_realizations = 3;
    let reference = run_experiment(&config, &Sequential).unwrap();
    for threads in [1, 2, 3, 5] {
        let other = run_experiment(&config, &Scrambled { threads }).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&reference.mean), bits(&other.mean));
        assert_eq!(bits(&reference.std_dev), bits(&other.std_dev));
        assert_eq!(reference.trajectories, other.trajectories);
    }
}

#[test]
fn scalar_estimates_independent_of_scheduling() {
    let a = coe_min_purity_estimate(2, 3, 300, 5, &Sequential).unwrap();
    let b = coe_min_purity_estimate(2, 3, 300, 5, &Scrambled { threads: 4 }).unwrap();
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    let a = stationary_purity_estimate(2, 3, 300, 5, &Sequential).unwrap();
    let b = stationary_purity_estimate(2, 3, 300, 5, &Scrambled { threads: 3 }).unwrap();
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
}

#[test]
fn trivial_central_system_has_unit_mean() {
    for kind in SpectrumKind::ALL {
        let mut config = strong(1, 8, kind);
        config.ensemble_size = 100;
        let stats = run_experiment(&config, &Sequential).unwrap();
        assert_eq!(stats.count, 100);
        for &p in &stats.mean {
            assert!((p - 1.0).abs() < 1e-12);
        }
    }
    let dims = Dimensions::new(1, 8).unwrap();
    let weak = WeakCouplingSpec {
        dims,
        kind1: SpectrumKind::Goe,
        kind2: SpectrumKind::Poisson,
        lambda: 0.2,
    };
    let stats = run_experiment(
        &ExperimentConfig::new(weak.into(), uniform_grid(20.0, 21), 100, 1),
        &Sequential,
    )
    .unwrap();
    assert!(stats.mean.iter().all(|p| (p - 1.0).abs() < 1e-12));
}

#[test]
fn initial_state_policy_does_not_bias_strong_coupling() {
    // With Haar eigenvectors every fixed product state is equivalent.
    let mut basis = strong(3, 3, SpectrumKind::Goe);
    basis.ensemble_size = 1500;
    let mut random = basis.clone();
    random.policy = InitialStatePolicy::RandomProduct;
    random.master_seed = 99;
    let a = run_experiment(&basis, &Sequential).unwrap();
    let b = run_experiment(&random, &Sequential).unwrap();
    for k in 1..a.times.len() {
        let se = (a.std_err(k).powi(2) + b.std_err(k).powi(2)).sqrt();
        assert!(
            (a.mean[k] - b.mean[k]).abs() < 4.0 * se,
            "t={}: {} vs {}",
            a.times[k],
            a.mean[k],
            b.mean[k]
        );
    }
}

#[test]
fn ensemble_size_not_multiple_of_block() {
    let mut config = strong(2, 2, SpectrumKind::Poisson);
    config.ensemble_size = 130;
    let stats = run_experiment(&config, &Sequential).unwrap();
    assert_eq!(stats.count, 130);
    assert_eq!(stats.trajectories.len(), 1);
}

/// Haar-averaged `(1 - I(t)) / t^2` at small `t` from the basis product state.
fn short_time_slope(kind: SpectrumKind, draws: u64) -> (f64, f64) {
    use decoherence_core::dynamics::{basis_product_state, evolve, purity, tensor};
    use decoherence_core::model::ModelSampler;
    use decoherence_core::RngStream;

    let dims = Dimensions::new(4, 4).unwrap();
    let sampler = ModelSampler::new(StrongCouplingSpec { dims, kind }.into()).unwrap();
    let psi0 = tensor(&basis_product_state(dims, 0, 0).unwrap());
    let t = 1e-3;
    let xs: Vec<f64> = (0..draws)
        .map(|r| {
            let d = sampler.sample(&mut RngStream::new(21, r)).unwrap();
            (1.0 - purity(&evolve(&d, &psi0, t).unwrap()).unwrap().value()) / (t * t)
        })
        .collect();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[test]
fn short_time_slope_scales_with_sample_variance() {
    use decoherence_core::analytics::short_time_coefficient;
    let a = short_time_coefficient(4, 4);
    // Picket fence: fixed centred spectrum, sample variance 16/15 (1 - 1/256).
    let (slope, se) = short_time_slope(SpectrumKind::PicketFence, 20_000);
    let expected = a * 16.0 / 15.0 * (1.0 - 1.0 / 256.0);
    assert!(
        (slope - expected).abs() < 3.0 * se,
        "{slope} +- {se} vs {expected}"
    );
    // Independent levels: expected sample variance equals <E^2> = 1.
    let (slope, se) = short_time_slope(SpectrumKind::Poisson, 20_000);
    assert!((slope - a).abs() < 3.0 * se, "{slope} +- {se} vs {a}");
}
