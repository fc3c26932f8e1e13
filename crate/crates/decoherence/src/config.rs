//! Experiment description as flat TOML.
//!
//! ```toml
//! model = "weak"        # or "strong"
//! kind1 = "goe"         # strong coupling uses `kind`
//! kind2 = "poisson"
//! n = 4
//! m = 4
//! lambda = 0.03
//! tmax = 300.0
//! points = 400
//! ensemble = 20000
//! seed = 1
//! policy = "random"     # or "basis"
//! ```
//!
//! Optional keys: `record` (trajectories kept, default 1), `dense_tmax` and
//! `dense_points` (extra uniform grid on `[0, dense_tmax]`), `key_times`
//! (merge the characteristic times into the grid, default true).

use decoherence_core::analytics::time_scales;
use decoherence_core::ensembles::SpectrumKind;
use decoherence_core::model::{Dimensions, ModelSpec, StrongCouplingSpec, WeakCouplingSpec};
use decoherence_core::montecarlo::{
    merge_times, uniform_grid, ExperimentConfig, InitialStatePolicy,
};
use serde::{Deserialize, Serialize};

use crate::error::{AppError, Result};

pub const DEFAULT_POINTS: usize = 400;
pub const DEFAULT_ENSEMBLE: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coupling {
    Strong,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Goe,
    Poisson,
    PicketFence,
}

impl From<Kind> for SpectrumKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Goe => SpectrumKind::Goe,
            Kind::Poisson => SpectrumKind::Poisson,
            Kind::PicketFence => SpectrumKind::PicketFence,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    #[default]
    Basis,
    Random,
}

impl From<Policy> for InitialStatePolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Basis => InitialStatePolicy::BasisProduct,
            Policy::Random => InitialStatePolicy::RandomProduct,
        }
    }
}

fn default_points() -> usize {
    DEFAULT_POINTS
}

fn default_ensemble() -> usize {
    DEFAULT_ENSEMBLE
}

fn default_record() -> usize {
    1
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Coupling,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind1: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind2: Option<Kind>,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub tmax: f64,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "default_ensemble")]
    pub ensemble: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub policy: Policy,
    #[serde(default = "default_record")]
    pub record: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense_tmax: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense_points: Option<usize>,
    #[serde(default = "default_true")]
    pub key_times: bool,
}

impl RunConfig {
    /// Parses config text; `origin` names the source in diagnostics.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| AppError::Parse {
            path: origin.to_owned(),
            message: e.to_string(),
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config always serializes")
    }

    pub fn dims(&self) -> Result<Dimensions> {
        Ok(Dimensions::new(self.n, self.m)?)
    }

    pub fn model_spec(&self) -> Result<ModelSpec> {
        let dims = self.dims()?;
        let need = |k: Option<Kind>, key: &str| {
            k.map(SpectrumKind::from).ok_or_else(|| {
                AppError::Config(format!(
                    "`{key}` is required for {} coupling",
                    self.model_name()
                ))
            })
        };
        let spec = match self.model {
            Coupling::Strong => {
                self.reject(&[
                    ("kind1", self.kind1.is_some()),
                    ("kind2", self.kind2.is_some()),
                    ("lambda", self.lambda.is_some()),
                ])?;
                StrongCouplingSpec {
                    dims,
                    kind: need(self.kind, "kind")?,
                }
                .into()
            }
            Coupling::Weak => {
                self.reject(&[("kind", self.kind.is_some())])?;
                let lambda = self.lambda.ok_or_else(|| {
                    AppError::Config("`lambda` is required for weak coupling".into())
                })?;
                WeakCouplingSpec {
                    dims,
                    kind1: need(self.kind1, "kind1")?,
                    kind2: need(self.kind2, "kind2")?,
                    lambda,
                }
                .into()
            }
        };
        Ok(spec)
    }

    fn model_name(&self) -> &'static str {
        match self.model {
            Coupling::Strong => "strong",
            Coupling::Weak => "weak",
        }
    }

    fn reject(&self, present: &[(&str, bool)]) -> Result<()> {
        match present.iter().find(|(_, p)| *p) {
            Some((key, _)) => Err(AppError::Config(format!(
                "`{key}` does not apply to {} coupling",
                self.model_name()
            ))),
            None => Ok(()),
        }
    }

    /// Uniform grid, plus the optional dense prefix and characteristic times.
    pub fn time_grid(&self) -> Result<Vec<f64>> {
        if !self.tmax.is_finite() || self.tmax < 0.0 {
            return Err(AppError::Config(format!(
                "`tmax` must be finite and non-negative, got {}",
                self.tmax
            )));
        }
        if self.points == 0 {
            return Err(AppError::Config("`points` must be at least 1".into()));
        }
        let mut grid = uniform_grid(self.tmax, self.points);
        match (self.dense_tmax, self.dense_points) {
            (None, None) => {}
            (Some(dt), Some(dp)) if dt.is_finite() && dt >= 0.0 && dp > 0 => {
                grid = merge_times(&grid, &uniform_grid(dt.min(self.tmax), dp));
            }
            (Some(_), Some(_)) => {
                return Err(AppError::Config(
                    "`dense_tmax` must be finite and non-negative, `dense_points` positive".into(),
                ))
            }
            _ => {
                return Err(AppError::Config(
                    "`dense_tmax` and `dense_points` must be given together".into(),
                ))
            }
        }
        if self.key_times {
            let ts = time_scales(self.dims()?.total());
            let keys: Vec<f64> = [
                ts.first_minimum_time,
                ts.partial_revival_time,
                ts.heisenberg_time,
            ]
            .into_iter()
            .filter(|&t| t <= self.tmax)
            .collect();
            grid = merge_times(&grid, &keys);
        }
        Ok(grid)
    }

    /// Validated engine configuration.
    pub fn experiment(&self) -> Result<ExperimentConfig> {
        let model = self.model_spec()?;
        if self.seed > i64::MAX as u64 {
            return Err(AppError::Config(format!(
                "`seed` must be at most {}",
                i64::MAX
            )));
        }
        let mut config = ExperimentConfig::new(model, self.time_grid()?, self.ensemble, self.seed);
        config.policy = self.policy.into();
        config.record_realizations = self.record;
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WEAK: &str = r#"
model = "weak"
kind1 = "goe"
kind2 = "poisson"
n = 4
m = 4
lambda = 0.03
tmax = 100.0
seed = 7
policy = "random"
"#;

    #[test]
    fn parses_with_defaults() {
        let c = RunConfig::parse(WEAK, "weak.toml").unwrap();
        assert_eq!(c.points, DEFAULT_POINTS);
        assert_eq!(c.ensemble, DEFAULT_ENSEMBLE);
        assert_eq!(c.record, 1);
        assert!(c.key_times);
        let e = c.experiment().unwrap();
        assert_eq!(e.policy, InitialStatePolicy::RandomProduct);
        assert_eq!(e.master_seed, 7);
        assert!(
            matches!(e.model, ModelSpec::Weak(w) if w.lambda == 0.03 && w.kind2 == SpectrumKind::Poisson)
        );
    }

    #[test]
    fn echo_round_trips() {
        let c = RunConfig::parse(WEAK, "weak.toml").unwrap();
        assert_eq!(RunConfig::parse(&c.to_toml(), "echo").unwrap(), c);
        let mut d = c.clone();
        d.dense_tmax = Some(0.5);
        d.dense_points = Some(51);
        d.lambda = Some(0.1 + 0.2);
        assert_eq!(RunConfig::parse(&d.to_toml(), "echo").unwrap(), d);
    }

    #[test]
    fn unknown_key_reports_position() {
        let err = RunConfig::parse(
            "model = \"strong\"\nkind = \"goe\"\nn = 4\nm = 4\ntmax = 1.0\nbogus = 3\n",
            "x.toml",
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let msg = err.to_string();
        assert!(
            msg.contains("x.toml") && msg.contains("bogus") && msg.contains("line 6"),
            "{msg}"
        );
    }

    #[test]
    fn bad_kind_is_a_parse_error() {
        let err = RunConfig::parse(
            "model = \"strong\"\nkind = \"gue\"\nn = 4\nm = 4\ntmax = 1.0\n",
            "x",
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn zero_dimension_exits_3() {
        let c = RunConfig::parse(
            "model = \"strong\"\nkind = \"goe\"\nn = 0\nm = 4\ntmax = 1.0\n",
            "x",
        )
        .unwrap();
        assert_eq!(c.experiment().unwrap_err().exit_code(), 3);
    }

    #[test]
    fn semantic_errors_exit_2() {
        let base = RunConfig::parse(WEAK, "w").unwrap();
        let mut missing = base.clone();
        missing.lambda = None;
        let mut wrong_key = base.clone();
        wrong_key.kind = Some(Kind::Goe);
        let mut negative = base.clone();
        negative.lambda = Some(-1.0);
        let mut zero_m = base.clone();
        zero_m.ensemble = 0;
        let mut seed = base.clone();
        seed.seed = u64::MAX;
        let mut half_dense = base.clone();
        half_dense.dense_points = Some(10);
        for c in [missing, wrong_key, negative, zero_m, seed, half_dense] {
            assert_eq!(c.experiment().unwrap_err().exit_code(), 2, "{c:?}");
        }
    }

    #[test]
    fn grid_contains_key_times_and_dense_prefix() {
        let mut c = RunConfig::parse(
            "model = \"strong\"\nkind = \"picketfence\"\nn = 4\nm = 4\ntmax = 40.0\n",
            "x",
        )
        .unwrap();
        c.dense_tmax = Some(0.5);
        c.dense_points = Some(51);
        let grid = c.time_grid().unwrap();
        let ts = time_scales(16);
        for t in [
            ts.first_minimum_time,
            ts.partial_revival_time,
            ts.heisenberg_time,
            0.01,
            0.49,
        ] {
            assert!(grid.iter().any(|&g| (g - t).abs() < 1e-12), "{t}");
        }
        assert!(grid.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(grid[0], 0.0);
        assert_eq!(*grid.last().unwrap(), 40.0);
    }
}
