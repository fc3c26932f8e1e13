//! Parallel runner, TOML configuration, CSV output and CLI for
//! [`decoherence_core`].
//!
//! A run turns a [`RunConfig`] into `purity.csv`, `analytics.csv` and a
//! `manifest.txt` in an output directory. Results are independent of the
//! number of worker threads.

pub mod cli;
pub mod config;
mod error;
pub mod executor;
pub mod output;
pub mod preset;

use std::path::{Path, PathBuf};
use std::time::Instant;

pub use config::RunConfig;
pub use decoherence_core;
pub use error::{AppError, Result};
pub use executor::Parallel;

use decoherence_core::montecarlo::run_experiment;
use output::{
    analytics_csv, purity_csv, write_files, Manifest, ANALYTICS_CSV, MANIFEST, PURITY_CSV,
};

/// Runs `config` and writes its outputs into `dir`.
///
/// The config is validated before anything is written, so a bad config
/// leaves no files behind.
pub fn execute(config: &RunConfig, dir: &Path, executor: &Parallel) -> Result<Vec<PathBuf>> {
    let experiment = config.experiment()?;
    let started = Instant::now();
    let stats = run_experiment(&experiment, executor)?;
    let purity = purity_csv(&stats);
    let analytics = analytics_csv(&stats.times, config.dims()?);
    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION").to_owned(),
        seed: config.seed,
        workers: executor.workers(),
        duration_seconds: started.elapsed().as_secs_f64(),
        files: vec![PURITY_CSV.to_owned(), ANALYTICS_CSV.to_owned()],
        config: config.clone(),
    };
    write_files(
        dir,
        &[
            (PURITY_CSV, purity),
            (ANALYTICS_CSV, analytics),
            (MANIFEST, manifest.to_text()),
        ],
    )
}
