//! Named experiment bundles for the five standard figures.

use core::f64::consts::PI;

use crate::config::{Coupling, Kind, Policy, RunConfig, DEFAULT_ENSEMBLE, DEFAULT_POINTS};
use crate::error::{AppError, Result};

pub const NAMES: [&str; 5] = ["fig1", "fig2", "fig3", "fig4", "fig5"];

/// Weak-coupling horizons; long enough that the final third is plateau.
pub const WEAK_TMAX_SMALL: f64 = 300.0;
pub const WEAK_TMAX_LARGE: f64 = 500.0;

const DENSE_TMAX: f64 = 0.5;
const DENSE_POINTS: usize = 101;

/// Overrides accepted by every preset.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides {
    pub ensemble: Option<usize>,
    pub seed: Option<u64>,
    pub tmax: Option<f64>,
    pub points: Option<usize>,
}

fn strong(kind: Kind) -> RunConfig {
    let n = 4;
    RunConfig {
        model: Coupling::Strong,
        kind: Some(kind),
        kind1: None,
        kind2: None,
        n,
        m: n,
        lambda: None,
        tmax: 1.2 * (n * n) as f64 * PI / 3f64.sqrt(),
        points: DEFAULT_POINTS,
        ensemble: DEFAULT_ENSEMBLE,
        seed: 1,
        policy: Policy::Basis,
        record: 0,
        dense_tmax: None,
        dense_points: None,
        key_times: true,
    }
}

fn weak(n: usize, lambda: f64, tmax: f64, kind1: Kind, kind2: Kind) -> RunConfig {
    RunConfig {
        model: Coupling::Weak,
        kind: None,
        kind1: Some(kind1),
        kind2: Some(kind2),
        n,
        m: n,
        lambda: Some(lambda),
        tmax,
        points: DEFAULT_POINTS,
        ensemble: DEFAULT_ENSEMBLE,
        seed: 1,
        policy: Policy::Random,
        record: 0,
        dense_tmax: None,
        dense_points: None,
        key_times: true,
    }
}

fn with_band(mut c: RunConfig) -> RunConfig {
    c.record = 1;
    c.dense_tmax = Some(DENSE_TMAX);
    c.dense_points = Some(DENSE_POINTS);
    c
}

const WEAK_PAIRS: [(&str, Kind, Kind); 3] = [
    ("goe-goe", Kind::Goe, Kind::Goe),
    ("goe-poisson", Kind::Goe, Kind::Poisson),
    ("poisson-poisson", Kind::Poisson, Kind::Poisson),
];

/// Labelled runs making up preset `name`.
pub fn preset(name: &str, overrides: Overrides) -> Result<Vec<(String, RunConfig)>> {
    let runs: Vec<(String, RunConfig)> = match name {
        "fig1" => [
            ("goe", Kind::Goe),
            ("poisson", Kind::Poisson),
            ("picketfence", Kind::PicketFence),
        ]
        .into_iter()
        .map(|(l, k)| (l.to_owned(), strong(k)))
        .collect(),
        "fig2" => vec![("goe".to_owned(), with_band(strong(Kind::Goe)))],
        "fig3" => WEAK_PAIRS
            .iter()
            .map(|&(l, a, b)| (l.to_owned(), weak(4, 0.03, WEAK_TMAX_SMALL, a, b)))
            .collect(),
        "fig4" => vec![(
            "goe-goe".to_owned(),
            with_band(weak(4, 0.03, WEAK_TMAX_SMALL, Kind::Goe, Kind::Goe)),
        )],
        "fig5" => WEAK_PAIRS
            .iter()
            .map(|&(l, a, b)| (l.to_owned(), weak(10, 0.01, WEAK_TMAX_LARGE, a, b)))
            .collect(),
        other => return Err(AppError::UnknownPreset(other.to_owned())),
    };
    Ok(runs
        .into_iter()
        .map(|(label, mut c)| {
            if let Some(e) = overrides.ensemble {
                c.ensemble = e;
                c.record = c.record.min(e);
            }
            if let Some(s) = overrides.seed {
                c.seed = s;
            }
            if let Some(t) = overrides.tmax {
                c.tmax = t;
            }
            if let Some(p) = overrides.points {
                c.points = p;
            }
            (label, c)
        })
        .collect())
}
