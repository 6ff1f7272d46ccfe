use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::born::PotentialKind;
use crate::dispersive::DispersiveGrid;
use crate::error::{Error, Result};
use crate::numerics::{dyadic, log_space};
use crate::oscillatory::QuadratureSpec;
use crate::params::{Exponent, ModelParams, DEFAULT_C_BALL, DEFAULT_DELTA};
use crate::sweep::{read_embedded_config, Experiment};

/// Settings as given by flags or a config file; `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartialConfig {
    pub subcommand: Option<String>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub alpha: Option<f64>,
    pub p: Option<Exponent>,
    pub delta: Option<f64>,
    pub c_ball: Option<f64>,
    #[serde(rename = "L_min")]
    pub l_min: Option<f64>,
    #[serde(rename = "L_max")]
    pub l_max: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_count: Option<usize>,
    pub sigma: Option<f64>,
    pub sigmas: Option<Vec<f64>>,
    pub potential: Option<PotentialKind>,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub threads: Option<usize>,
    pub tol_slope: Option<f64>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
}

macro_rules! overlay {
    ($hi:expr, $lo:expr, $($field:ident),*) => {
        PartialConfig { $($field: $hi.$field.or($lo.$field),)* }
    };
}

impl PartialConfig {
    /// Fields of `self`, falling back to `lower` where absent.
    pub fn over(self, lower: PartialConfig) -> PartialConfig {
        overlay!(
            self, lower, subcommand, n, m, alpha, p, delta, c_ball, l_min, l_max, t_min, t_max, t_count, sigma,
            sigmas, potential, out, summary, threads, tol_slope, abs_tol, rel_tol
        )
    }

    /// Reads a JSON configuration, or the configuration embedded in a CSV
    /// or summary file previously written by this tool.
    pub fn load(path: &Path) -> Result<Self> {
        let value = read_embedded_config(path)?;
        serde_json::from_value(value).map_err(|e| Error::Validation(format!("bad config {}: {e}", path.display())))
    }
}

/// The experiments runnable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcommand {
    FreeDispersive,
    SigmaProbe,
    BornGrowth,
    Holder,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::FreeDispersive => "free-dispersive",
            Subcommand::SigmaProbe => "sigma-probe",
            Subcommand::BornGrowth => "born-growth",
            Subcommand::Holder => "holder",
        }
    }

    fn default_tolerance(self, n: usize, m: usize) -> f64 {
        match self {
            Subcommand::FreeDispersive if n >= 9 => 0.25,
            Subcommand::FreeDispersive => 0.15,
            Subcommand::SigmaProbe => 0.25,
            Subcommand::BornGrowth if m >= 2 => 0.25,
            Subcommand::BornGrowth => 0.2,
            Subcommand::Holder => 0.05,
        }
    }
}

/// A fully resolved run. Serialized into every output file; the thread
/// count is left out of the CSV header because it cannot change results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub p: Exponent,
    pub delta: f64,
    pub c_ball: f64,
    #[serde(rename = "L_min")]
    pub l_min: f64,
    #[serde(rename = "L_max")]
    pub l_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub t_count: usize,
    pub sigma: f64,
    pub sigmas: Vec<f64>,
    pub potential: PotentialKind,
    pub out: PathBuf,
    pub summary: PathBuf,
    #[serde(skip_serializing)]
    pub threads: usize,
    pub tol_slope: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl RunConfig {
    /// Fills defaults and validates. `subcommand` wins over any name in the file.
    pub fn resolve(subcommand: Subcommand, given: PartialConfig) -> Result<Self> {
        if let Some(name) = &given.subcommand {
            if name != subcommand.name() {
                return Err(Error::Validation(format!(
                    "config was written by `{name}`, not `{}`",
                    subcommand.name()
                )));
            }
        }
        let n = match (subcommand, given.n) {
            (_, Some(n)) => n,
            (Subcommand::Holder, None) => 5,
            (_, None) => return Err(Error::Validation("missing --n".into())),
        };
        let m = given.m.unwrap_or(1);
        let spec = QuadratureSpec::default();
        let (l_min, l_max) = match subcommand {
            Subcommand::FreeDispersive | Subcommand::SigmaProbe => (0.25, 4.0),
            _ => (64.0, 1024.0),
        };
        let config = RunConfig {
            subcommand,
            n,
            m,
            alpha: given.alpha.unwrap_or(0.0),
            p: given.p.unwrap_or(Exponent::Infinity),
            delta: given.delta.unwrap_or(DEFAULT_DELTA),
            c_ball: given.c_ball.unwrap_or(DEFAULT_C_BALL),
            l_min: given.l_min.unwrap_or(l_min),
            l_max: given.l_max.unwrap_or(l_max),
            t_min: given.t_min.unwrap_or(1e-2),
            t_max: given.t_max.unwrap_or(1e2),
            t_count: given.t_count.unwrap_or(17),
            sigma: given.sigma.unwrap_or(0.0),
            sigmas: given.sigmas.unwrap_or_else(|| vec![0.0, 2.0, 4.0, 8.0, 16.0]),
            potential: given.potential.unwrap_or(PotentialKind::Rough),
            out: given.out.unwrap_or_else(|| PathBuf::from(format!("{}.csv", subcommand.name()))),
            summary: given.summary.unwrap_or_else(|| PathBuf::from(format!("{}.json", subcommand.name()))),
            threads: given.threads.unwrap_or_else(default_threads),
            tol_slope: given.tol_slope.unwrap_or_else(|| subcommand.default_tolerance(n, m)),
            abs_tol: given.abs_tol.unwrap_or(spec.abs_tol),
            rel_tol: given.rel_tol.unwrap_or(spec.rel_tol),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.n, self.m, self.alpha, self.p, self.delta, self.c_ball)
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec::with_tolerances(self.abs_tol, self.rel_tol)
    }

    fn validate(&self) -> Result<()> {
        let params = self.params()?;
        if self.threads == 0 {
            return Err(Error::Validation("--threads must be >= 1".into()));
        }
        if !(self.tol_slope > 0.0) {
            return Err(Error::Validation("--tol-slope must be > 0".into()));
        }
        if !(self.l_min > 0.0 && self.l_min <= self.l_max) {
            return Err(Error::Validation(format!("need 0 < L_min <= L_max, got {} and {}", self.l_min, self.l_max)));
        }
        if !(self.t_min > 0.0 && self.t_min < self.t_max && self.t_count >= 4) {
            return Err(Error::Validation("need 0 < t_min < t_max and t_count >= 4".into()));
        }
        self.quadrature().validate()?;
        match self.subcommand {
            Subcommand::BornGrowth => params.validate_counterexample(),
            Subcommand::Holder if self.alpha >= 1.0 => {
                Err(Error::Unsupported(format!("alpha = {} >= 1 is outside the Hölder range", self.alpha)))
            }
            _ => Ok(()),
        }
    }

    /// Dyadic scales `2^k` with `L_min ≤ 2^k ≤ L_max`.
    pub fn l_grid(&self) -> Vec<f64> {
        dyadic(self.l_min.log2().ceil() as i32, self.l_max.log2().floor() as i32)
    }

    pub fn dispersive_grid(&self) -> DispersiveGrid {
        let grid = DispersiveGrid::standard().with_times(log_space(self.t_min, self.t_max, self.t_count));
        let (lo, hi) = (self.l_min.log2(), self.l_max.log2());
        let count = (hi - lo).round() as usize + 1;
        let l_exponents = if count <= 1 { vec![lo] } else { (0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect() };
        DispersiveGrid { l_exponents, ..grid }
    }

    pub fn experiment(&self) -> Result<Experiment> {
        let params = self.params()?;
        Ok(match self.subcommand {
            Subcommand::FreeDispersive => {
                Experiment::DispersiveSweep { params, sigma: self.sigma, grid: self.dispersive_grid() }
            }
            Subcommand::SigmaProbe => Experiment::SigmaGrowthProbe {
                params,
                sigmas: self.sigmas.clone(),
                grid: self.dispersive_grid(),
            },
            Subcommand::BornGrowth => {
                Experiment::GrowthExperiment { params, l_grid: self.l_grid(), potential: self.potential }
            }
            Subcommand::Holder => Experiment::HolderScaling { params, l_grid: self.l_grid() },
        })
    }

    /// The configuration as embedded in the CSV header.
    pub fn csv_header_value(&self) -> Result<serde_json::Value> {
        Ok(serde_json::to_value(self)?)
    }

    /// The configuration as recorded in the summary, thread count included.
    pub fn summary_value(&self) -> Result<serde_json::Value> {
        let mut value = serde_json::to_value(self)?;
        value["threads"] = self.threads.into();
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_is_flags_then_file_then_defaults() {
        let flags = PartialConfig { n: Some(7), ..Default::default() };
        let file = PartialConfig { n: Some(5), m: Some(2), ..Default::default() };
        let config = RunConfig::resolve(Subcommand::FreeDispersive, flags.over(file)).unwrap();
        assert_eq!((config.n, config.m, config.delta), (7, 2, DEFAULT_DELTA));
    }

    #[test]
    fn missing_dimension_is_rejected() {
        let r = RunConfig::resolve(Subcommand::FreeDispersive, PartialConfig::default());
        assert!(matches!(r, Err(Error::Validation(_))));
    }

    #[test]
    fn l_grid_is_dyadic() {
        let given = PartialConfig { n: Some(5), ..Default::default() };
        let config = RunConfig::resolve(Subcommand::BornGrowth, given).unwrap();
        assert_eq!(config.l_grid(), vec![64.0, 128.0, 256.0, 512.0, 1024.0]);
    }

    #[test]
    fn header_round_trips_without_threads() {
        let given = PartialConfig { n: Some(5), threads: Some(3), ..Default::default() };
        let config = RunConfig::resolve(Subcommand::Holder, given).unwrap();
        let value = config.csv_header_value().unwrap();
        assert!(value.get("threads").is_none());
        let back: PartialConfig = serde_json::from_value(value).unwrap();
        let again = RunConfig::resolve(Subcommand::Holder, back.over(PartialConfig { threads: Some(3), ..Default::default() }));
        assert_eq!(again.unwrap(), config);
    }
}
