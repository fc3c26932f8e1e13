//! Seeded ensemble averaging of purity curves.
//!
//! Realization `r` of an experiment draws everything (Hamiltonian, then the
//! initial state if random) from `RngStream::new(master_seed, r)`.
//! Realizations are grouped into fixed blocks of [`BLOCK_SIZE`]; an
//! [`Executor`] may evaluate blocks in any order and on any number of
//! threads, and the block results are merged by [`pairwise_merge`] in block
//! order. Output is therefore bit-identical for any executor.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use nalgebra::DVector;
use rand::Rng;

use crate::dynamics::{
    basis_product_state, purity_of_parts, random_product_state, tensor, Evolution,
};
use crate::ensembles::{sample_coe, sample_haar_orthogonal};
use crate::model::{Dimensions, ModelSampler, ModelSpec};
use crate::summation::{pairwise_merge, MomentAccumulator};
use crate::{Error, Result, RngStream};

/// Realizations per work unit.
pub const BLOCK_SIZE: usize = 64;

/// Runs independent, index-addressed jobs and returns results in index order.
pub trait Executor {
    fn map_indexed<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every job on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_indexed<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(job).collect()
    }
}

/// How each realization's initial state is prepared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InitialStatePolicy {
    /// The product basis state `|0> (x) |0>`.
    BasisProduct,
    /// Independent random real unit vectors in both factors.
    RandomProduct,
}

impl InitialStatePolicy {
    pub fn name(self) -> &'static str {
        match self {
            InitialStatePolicy::BasisProduct => "basis",
            InitialStatePolicy::RandomProduct => "random",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "basis" => Some(InitialStatePolicy::BasisProduct),
            "random" => Some(InitialStatePolicy::RandomProduct),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    /// Strictly increasing, non-negative times.
    pub time_grid: Vec<f64>,
    pub ensemble_size: usize,
    pub master_seed: u64,
    pub policy: InitialStatePolicy,
    /// Number of leading realizations whose full curves are kept.
    pub record_realizations: usize,
}

impl ExperimentConfig {
    pub fn new(
        model: ModelSpec,
        time_grid: Vec<f64>,
        ensemble_size: usize,
        master_seed: u64,
    ) -> Self {
        Self {
            model,
            time_grid,
            ensemble_size,
            master_seed,
            policy: InitialStatePolicy::BasisProduct,
            record_realizations: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if self.ensemble_size == 0 {
            return Err(Error::InvalidConfig("ensemble size must be at least 1"));
        }
        if self.time_grid.is_empty() {
            return Err(Error::InvalidConfig("time grid is empty"));
        }
        if self.time_grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::InvalidConfig(
                "times must be finite and non-negative",
            ));
        }
        if self.time_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig(
                "time grid must be strictly increasing",
            ));
        }
        if self.record_realizations > self.ensemble_size {
            return Err(Error::InvalidConfig(
                "cannot record more realizations than the ensemble size",
            ));
        }
        Ok(())
    }
}

/// Ensemble statistics of purity on the time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveStats {
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    /// Sample standard deviation (denominator `M - 1`; zero when `M = 1`).
    pub std_dev: Vec<f64>,
    pub count: u64,
    /// Curves of realizations `0..record_realizations`, in order.
    pub trajectories: Vec<Vec<f64>>,
}

impl CurveStats {
    /// Standard error of the mean at grid point `k`.
    pub fn std_err(&self, k: usize) -> f64 {
        self.std_dev[k] / libm::sqrt(self.count as f64)
    }
}

/// Draws realization `r` and returns its purity curve.
pub fn realization_curve(
    sampler: &ModelSampler,
    config: &ExperimentConfig,
    r: u64,
) -> Result<Vec<f64>> {
    let mut rng = RngStream::new(config.master_seed, r);
    let decomp = sampler.sample(&mut rng)?;
    let dims = sampler.spec().dims();
    let p0 = match config.policy {
        InitialStatePolicy::BasisProduct => basis_product_state(dims, 0, 0)?,
        InitialStatePolicy::RandomProduct => random_product_state(dims, &mut rng),
    };
    let evolution = Evolution::new(&decomp, &tensor(&p0))?;
    Ok(evolution.purity_curve(&config.time_grid))
}

struct BlockResult {
    moments: MomentAccumulator,
    kept: Vec<Vec<f64>>,
}

/// Ensemble mean and spread of purity for `config`.
pub fn run_experiment<E: Executor>(config: &ExperimentConfig, executor: &E) -> Result<CurveStats> {
    config.validate()?;
    let sampler = ModelSampler::new(config.model)?;
    let m = config.ensemble_size;
    let points = config.time_grid.len();
    let blocks = m.div_ceil(BLOCK_SIZE);

    let results = executor.map_indexed(blocks, |b| -> Result<BlockResult> {
        let start = b * BLOCK_SIZE;
        let end = (start + BLOCK_SIZE).min(m);
        let mut moments = MomentAccumulator::new(points);
        let mut kept = Vec::new();
        for r in start..end {
            let curve = realization_curve(&sampler, config, r as u64)?;
            moments.push(&curve);
            if r < config.record_realizations {
                kept.push(curve);
            }
        }
        Ok(BlockResult { moments, kept })
    });

    let mut accs = Vec::with_capacity(blocks);
    let mut trajectories = Vec::with_capacity(config.record_realizations);
    for res in results {
        let BlockResult { moments, kept } = res?;
        accs.push(moments);
        trajectories.extend(kept);
    }
    let total = pairwise_merge(accs).expect("at least one block");
    Ok(CurveStats {
        times: config.time_grid.clone(),
        mean: (0..points).map(|k| total.mean(k)).collect(),
        std_dev: (0..points).map(|k| total.std_dev(k)).collect(),
        count: total.count(),
        trajectories,
    })
}

/// Mean and spread of a scalar Monte-Carlo estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_dev: f64,
    pub samples: u64,
}

impl Estimate {
    pub fn std_err(&self) -> f64 {
        self.std_dev / libm::sqrt(self.samples as f64)
    }
}

fn estimate_scalar<E, F>(samples: usize, executor: &E, draw: F) -> Result<Estimate>
where
    E: Executor,
    F: Fn(u64) -> Result<f64> + Sync + Send,
{
    if samples == 0 {
        return Err(Error::InvalidConfig("sample count must be at least 1"));
    }
    let blocks = samples.div_ceil(BLOCK_SIZE);
    let results = executor.map_indexed(blocks, |b| -> Result<MomentAccumulator> {
        let mut acc = MomentAccumulator::new(1);
        for r in (b * BLOCK_SIZE)..((b + 1) * BLOCK_SIZE).min(samples) {
            acc.push(&[draw(r as u64)?]);
        }
        Ok(acc)
    });
    let accs = results.into_iter().collect::<Result<Vec<_>>>()?;
    let total = pairwise_merge(accs).expect("at least one block");
    Ok(Estimate {
        mean: total.mean(0),
        std_dev: total.std_dev(0),
        samples: total.count(),
    })
}

/// Average purity of `S |0,0>` over COE matrices `S`.
pub fn coe_min_purity_estimate<E: Executor>(
    n: usize,
    m: usize,
    samples: usize,
    master_seed: u64,
    executor: &E,
) -> Result<Estimate> {
    let dims = Dimensions::new(n, m)?;
    let big = dims.total();
    estimate_scalar(samples, executor, |r| {
        let mut rng = RngStream::new(master_seed, r);
        let s = sample_coe(big, &mut rng)?;
        let col = s.matrix().column(0);
        let re: Vec<f64> = col.iter().map(|z| z.re).collect();
        let im: Vec<f64> = col.iter().map(|z| z.im).collect();
        Ok(purity_of_parts(&re, &im, dims))
    })
}

pub fn coe_min_purity_mc(n: usize, m: usize, samples: usize, master_seed: u64) -> Result<f64> {
    Ok(coe_min_purity_estimate(n, m, samples, master_seed, &Sequential)?.mean)
}

/// Average purity of `O diag(exp(i theta)) O^T |0,0>` with `O` Haar and
/// independent uniform phases `theta`.
pub fn stationary_purity_estimate<E: Executor>(
    n: usize,
    m: usize,
    samples: usize,
    master_seed: u64,
    executor: &E,
) -> Result<Estimate> {
    let dims = Dimensions::new(n, m)?;
    let big = dims.total();
    estimate_scalar(samples, executor, |r| {
        let mut rng = RngStream::new(master_seed, r);
        let o = sample_haar_orthogonal(big, &mut rng)?;
        let o = o.matrix();
        let mut w_re = DVector::zeros(big);
        let mut w_im = DVector::zeros(big);
        for k in 0..big {
            let theta = TAU * rng.random::<f64>();
            let (s, c) = libm::sincos(theta);
            // O^T |0,0> is the first row of O.
            let a = o[(0, k)];
            w_re[k] = c * a;
            w_im[k] = s * a;
        }
        let re = o * w_re;
        let im = o * w_im;
        Ok(purity_of_parts(re.as_slice(), im.as_slice(), dims))
    })
}

pub fn stationary_purity_mc(n: usize, m: usize, samples: usize, master_seed: u64) -> Result<f64> {
    Ok(stationary_purity_estimate(n, m, samples, master_seed, &Sequential)?.mean)
}

/// `points` equally spaced times on `[0, t_max]`.
pub fn uniform_grid(t_max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![0.0],
        _ => (0..points)
            .map(|k| t_max * k as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// Sorted union of `grid` and `extra`, dropping points closer than `1e-12`
/// to an existing one (extra points win).
pub fn merge_times(grid: &[f64], extra: &[f64]) -> Vec<f64> {
    let mut all: Vec<(f64, bool)> = grid
        .iter()
        .map(|&t| (t, false))
        .chain(extra.iter().map(|&t| (t, true)))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut out: Vec<(f64, bool)> = Vec::with_capacity(all.len());
    for (t, is_extra) in all {
        match out.last_mut() {
            Some(last) if (t - last.0).abs() < 1e-12 => {
                if is_extra && !last.1 {
                    *last = (t, true);
                }
            }
            _ => out.push((t, is_extra)),
        }
    }
    out.into_iter().map(|(t, _)| t).collect()
}
