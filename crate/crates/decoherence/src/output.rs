//! CSV tables and the run manifest.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use decoherence_core::analytics::{
    f_uniform, i_infinity, i_min_coe, short_time_coefficient, short_time_purity, spectral_averages,
};
use decoherence_core::model::Dimensions;
use decoherence_core::montecarlo::CurveStats;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{AppError, Result};

pub const PURITY_CSV: &str = "purity.csv";
pub const ANALYTICS_CSV: &str = "analytics.csv";
pub const CLOSED_FORMS_CSV: &str = "closed_forms.csv";
pub const MANIFEST: &str = "manifest.txt";

/// 17 significant digits.
fn num(out: &mut String, x: f64) {
    write!(out, "{x:.16e}").unwrap();
}

fn row(out: &mut String, values: &[f64]) {
    for (k, &v) in values.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        num(out, v);
    }
}

/// `t,mean,std,count` plus one `traj_<k>` column per kept realization.
pub fn purity_csv(stats: &CurveStats) -> String {
    let mut out = String::from("t,mean,std,count");
    for k in 0..stats.trajectories.len() {
        write!(out, ",traj_{k}").unwrap();
    }
    out.push('\n');
    for (k, &t) in stats.times.iter().enumerate() {
        row(&mut out, &[t, stats.mean[k], stats.std_dev[k]]);
        write!(out, ",{}", stats.count).unwrap();
        for traj in &stats.trajectories {
            out.push(',');
            num(&mut out, traj[k]);
        }
        out.push('\n');
    }
    out
}

/// Closed-form curves on `times`; the last two columns are constant.
pub fn analytics_csv(times: &[f64], dims: Dimensions) -> String {
    let (n, m) = (dims.n(), dims.m());
    let (imin, iinf) = (i_min_coe(n, m), i_infinity(n, m));
    let mut out = String::from("t,f,s1,s2,s3,s4,s5,short_time,i_min_coe,i_infinity\n");
    for &t in times {
        let s = spectral_averages(t);
        row(
            &mut out,
            &[
                t,
                f_uniform(t),
                s.s1,
                s.s2,
                s.s3,
                s.s4,
                s.s5,
                short_time_purity(t, n, m),
                imin,
                iinf,
            ],
        );
        out.push('\n');
    }
    out
}

/// One row per `(n, m)` in the Cartesian product of the lists.
pub fn closed_forms_csv(ns: &[usize], ms: &[usize]) -> Result<String> {
    let mut out = String::from("n,m,N,short_coeff,i_min_coe,i_infinity\n");
    for &n in ns {
        for &m in ms {
            let dims = Dimensions::new(n, m)?;
            write!(out, "{n},{m},{},", dims.total()).unwrap();
            row(
                &mut out,
                &[
                    short_time_coefficient(n, m),
                    i_min_coe(n, m),
                    i_infinity(n, m),
                ],
            );
            out.push('\n');
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub version: String,
    pub seed: u64,
    pub workers: usize,
    pub duration_seconds: f64,
    pub files: Vec<String>,
    pub config: RunConfig,
}

impl Manifest {
    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("manifest always serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| AppError::Parse {
            path: MANIFEST.to_owned(),
            message: e.to_string(),
        })
    }
}

/// Writes `(name, contents)` pairs into `dir`, creating it if needed.
pub fn write_files(dir: &Path, files: &[(&str, String)]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    files
        .iter()
        .map(|(name, contents)| {
            let path = dir.join(name);
            fs::write(&path, contents).map_err(|e| AppError::io(&path, e))?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn purity_layout() {
        let stats = CurveStats {
            times: vec![0.0, 0.5],
            mean: vec![1.0, 0.75],
            std_dev: vec![0.0, 0.125],
            count: 3,
            trajectories: vec![vec![1.0, 0.7]],
        };
        let csv = purity_csv(&stats);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,mean,std,count,traj_0");
        assert_eq!(
            lines[1],
            "0.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0,3,1.0000000000000000e0"
        );
        let back: f64 = lines[2].split(',').nth(4).unwrap().parse().unwrap();
        assert_eq!(back, 0.7);
    }

    #[test]
    fn full_precision_round_trips() {
        let mut s = String::new();
        for x in [
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI * 1e-7,
            0.474_070_847_523_219_8,
        ] {
            s.clear();
            num(&mut s, x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn analytics_columns() {
        let csv = analytics_csv(&[0.0, 1.0], Dimensions::new(4, 4).unwrap());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        let first: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(first.len(), 10);
        assert_eq!(&first[..8], &[0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        assert!((first[8] - 0.474_071).abs() < 1e-6 && (first[9] - 0.483_422).abs() < 1e-6);
    }

    #[test]
    fn closed_form_rows() {
        let csv = closed_forms_csv(&[1, 4, 10], &[4, 10]).unwrap();
        let rows: Vec<Vec<&str>> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').collect())
            .collect();
        assert_eq!(rows.len(), 6);
        for r in &rows[..2] {
            assert_eq!(r[4].parse::<f64>().unwrap(), 1.0);
            assert_eq!(r[5].parse::<f64>().unwrap(), 1.0);
        }
        assert_eq!(&rows[2][..3], &["4", "4", "16"]);
        assert!((rows[2][4].parse::<f64>().unwrap() - 0.474_071).abs() < 1e-6);
        assert!((rows[5][4].parse::<f64>().unwrap() - 0.198_176).abs() < 1e-6);
        assert!((rows[5][5].parse::<f64>().unwrap() - 0.198_696).abs() < 1e-6);
        assert_eq!(closed_forms_csv(&[0], &[3]).unwrap_err().exit_code(), 3);
    }
}
