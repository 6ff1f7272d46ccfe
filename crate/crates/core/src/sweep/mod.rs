//! Experiment orchestration: the parallel executor, log-log fits and the
//! registered experiments that produce persisted rows.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::born::{self, PotentialKind};
use crate::dispersive::{self, DispersiveGrid};
use crate::error::{Error, Result};
use crate::oscillatory::QuadratureSpec;
use crate::params::ModelParams;

mod output;

pub use output::{read_embedded_config, to_csv_string, write_csv, write_summary, Summary, CSV_HEADER};

/// Deterministic parallel map: results come back in input order and every
/// item is evaluated by the same code path whatever the pool size.
pub struct Executor {
    pool: rayon::ThreadPool,
    threads: usize,
}

impl std::fmt::Debug for Executor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Executor").field("threads", &self.threads).finish()
    }
}

impl Executor {
    pub fn new(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(Error::Validation("thread count must be >= 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Validation(format!("cannot build thread pool: {e}")))?;
        Ok(Executor { pool, threads })
    }

    pub fn sequential() -> Self {
        Self::new(1).expect("a single-thread pool always builds")
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.pool.install(|| items.par_iter().map(&f).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub target: Option<f64>,
    pub point_count: usize,
    /// Largest absolute residual of `log y` about the fitted line.
    pub max_residual: f64,
}

impl GrowthFit {
    pub fn with_target(mut self, target: f64) -> Self {
        self.target = Some(target);
        self
    }

    pub fn within(&self, tolerance: f64) -> bool {
        self.target.is_none_or(|t| (self.slope - t).abs() <= tolerance)
    }
}

/// Ordinary least squares on `(log x, log y)`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<GrowthFit> {
    if points.len() < 4 {
        return Err(Error::Fit(format!("need at least 4 points for a fit, got {}", points.len())));
    }
    if let Some(&(x, y)) = points.iter().find(|&&(x, y)| !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(Error::Validation(format!("log-log fit needs positive finite values, got ({x}, {y})")));
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = logs.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let max_residual = logs.iter().map(|p| (p.1 - intercept - slope * p.0).abs()).fold(0.0, f64::max);
    // a constant series is fitted exactly by slope 0
    let r_squared = if syy <= f64::EPSILON * my.abs().max(1.0) { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    Ok(GrowthFit { slope, intercept, r_squared, target: None, point_count: points.len(), max_residual })
}

/// One persisted grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub experiment_id: String,
    pub params: ModelParams,
    pub big_l: f64,
    pub t: f64,
    pub sigma: f64,
    pub r: f64,
    pub value: Complex64,
    pub err_estimate: f64,
    pub flags: Vec<String>,
}

impl SweepRow {
    pub fn is_clean(&self) -> bool {
        self.flags.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub experiment_id: String,
    pub rows: Vec<SweepRow>,
    pub fit: Option<GrowthFit>,
    pub excluded_count: usize,
    pub failed_count: usize,
}

/// Registered experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Experiment {
    DispersiveSweep { params: ModelParams, sigma: f64, grid: DispersiveGrid },
    SigmaGrowthProbe { params: ModelParams, sigmas: Vec<f64>, grid: DispersiveGrid },
    GrowthExperiment { params: ModelParams, l_grid: Vec<f64>, potential: PotentialKind },
    HolderScaling { params: ModelParams, l_grid: Vec<f64> },
}

impl Experiment {
    pub fn id(&self) -> &'static str {
        match self {
            Experiment::DispersiveSweep { .. } => "free-dispersive",
            Experiment::SigmaGrowthProbe { .. } => "sigma-probe",
            Experiment::GrowthExperiment { .. } => "born-growth",
            Experiment::HolderScaling { .. } => "holder",
        }
    }

    fn grid_size(&self) -> usize {
        match self {
            Experiment::DispersiveSweep { grid, .. } => grid.len(),
            Experiment::SigmaGrowthProbe { sigmas, grid, .. } => sigmas.len() * grid.len(),
            Experiment::GrowthExperiment { l_grid, .. } | Experiment::HolderScaling { l_grid, .. } => l_grid.len(),
        }
    }
}

fn check_failures(result: &SweepResult) -> Result<()> {
    if result.failed_count * 2 > result.rows.len() {
        return Err(Error::Validation(format!(
            "sweep {} failed: {} of {} points did not evaluate",
            result.experiment_id,
            result.failed_count,
            result.rows.len()
        )));
    }
    Ok(())
}

/// Evaluates every grid point of the experiment. Failed points are kept
/// as flagged rows; more than half failing marks the sweep as failed.
pub fn run_sweep(experiment: &Experiment, executor: &Executor, spec: &QuadratureSpec) -> Result<SweepResult> {
    if experiment.grid_size() == 0 {
        return Err(Error::Validation(format!("experiment {} has an empty grid", experiment.id())));
    }
    let id = experiment.id().to_string();
    let result = match experiment {
        Experiment::DispersiveSweep { params, sigma, grid } => {
            let sweep = dispersive::dispersive_sweep(params, *sigma, grid, executor, spec)?;
            sweep.into_result(&id, params, *sigma)
        }
        Experiment::SigmaGrowthProbe { params, sigmas, grid } => {
            let probe = dispersive::sigma_growth_probe(params, sigmas, grid, executor, spec)?;
            probe.into_result(&id, params)
        }
        Experiment::GrowthExperiment { params, l_grid, potential } => {
            let growth = born::growth_experiment(params, l_grid, *potential, executor, spec)?;
            growth.into_result(&id, params)
        }
        Experiment::HolderScaling { params, l_grid } => {
            let scaling = born::holder_scaling(params, l_grid, executor)?;
            scaling.into_result(&id, params)
        }
    };
    check_failures(&result)?;
    Ok(result)
}
