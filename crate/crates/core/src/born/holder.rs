//! Sampled Hölder norms on `[0, 2]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::sweep::{fit_loglog, Executor, GrowthFit, SweepResult, SweepRow};

use super::potential::PotentialKind;

/// Uniform sample grid `{i h}` on `[0, extent]` for a function oscillating
/// at frequency about `scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderGrid {
    pub extent: f64,
    pub step: f64,
    pub scale: f64,
}

impl HolderGrid {
    /// Dyadic step `2^{−⌈log₂(10L)⌉} ≤ (10L)^{−1}` on `[0, 2]`.
    pub fn for_scale(scale: f64) -> Self {
        let step = 2f64.powi(-((10.0 * scale.max(0.1)).log2().ceil() as i32));
        HolderGrid { extent: 2.0, step, scale }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.extent > 0.0 && self.step > 0.0 && self.step <= self.extent) {
            return Err(Error::Validation(format!("bad Hölder grid {self:?}")));
        }
        if self.step * 10.0 * self.scale > 1.0 {
            return Err(Error::Resolution(format!(
                "grid step {} is coarser than (10 L)^-1 for L = {}",
                self.step, self.scale
            )));
        }
        Ok(())
    }
}

/// `sup|f| + sup |f(x) − f(y)| / |x − y|^α`, the second supremum over grid
/// pairs at the dyadic separations `h, 2h, 4h, …`. For `α = 0` only the sup
/// norm is returned.
pub fn holder_norm(f: &dyn Fn(f64) -> f64, alpha: f64, grid: &HolderGrid) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Unsupported(format!("Hölder exponent alpha = {alpha} must lie in [0, 1)")));
    }
    grid.validate()?;
    let count = (grid.extent / grid.step).round() as usize;
    let samples: Vec<f64> = (0..=count).map(|i| f(i as f64 * grid.step)).collect();
    let sup = samples.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if alpha == 0.0 {
        return Ok(sup);
    }
    let mut semi = 0.0f64;
    let mut sep = 1usize;
    while sep <= count {
        let scale = (sep as f64 * grid.step).powf(alpha);
        let worst = samples.windows(sep + 1).map(|w| (w[sep] - w[0]).abs()).fold(0.0, f64::max);
        semi = semi.max(worst / scale);
        sep *= 2;
    }
    Ok(sup + semi)
}

/// `‖V‖_{C^α}` of the potential `kind` at scale `L`.
pub fn potential_holder_norm(params: &ModelParams, kind: PotentialKind, big_l: f64) -> Result<f64> {
    let f = kind.sampler(params, big_l)?;
    holder_norm(&*f, params.alpha, &HolderGrid::for_scale(big_l))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolderScaling {
    pub points: Vec<(f64, f64)>,
    pub fit: GrowthFit,
}

impl HolderScaling {
    pub fn into_result(self, id: &str, params: &ModelParams) -> SweepResult {
        let rows = self
            .points
            .iter()
            .map(|&(big_l, norm)| SweepRow {
                experiment_id: id.to_string(),
                params: *params,
                big_l,
                t: big_l.powi(1 - 2 * params.m as i32),
                sigma: 0.0,
                r: 0.0,
                value: norm.into(),
                err_estimate: 0.0,
                flags: Vec::new(),
            })
            .collect();
        SweepResult { experiment_id: id.to_string(), rows, fit: Some(self.fit), excluded_count: 0, failed_count: 0 }
    }
}

/// Fits `log ‖V_L‖_{C^α}` against `log L`; the predicted slope is `α`.
pub fn holder_scaling(params: &ModelParams, l_grid: &[f64], executor: &Executor) -> Result<HolderScaling> {
    params.validate()?;
    if l_grid.is_empty() {
        return Err(Error::Validation("L grid is empty".into()));
    }
    let norms = executor.map(l_grid, |&big_l| potential_holder_norm(params, PotentialKind::Rough, big_l));
    let points = l_grid.iter().zip(norms).map(|(&l, n)| n.map(|n| (l, n))).collect::<Result<Vec<_>>>()?;
    let fit = fit_loglog(&points)?.with_target(params.alpha);
    Ok(HolderScaling { points, fit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_on_the_line() {
        // cos(Lx): the 1/2-seminorm grows like L^{1/2}
        let mut pts = Vec::new();
        for k in 6..=10 {
            let big_l = 2f64.powi(k);
            let f = move |x: f64| (big_l * (x - 1.0)).cos();
            pts.push((big_l, holder_norm(&f, 0.5, &HolderGrid::for_scale(big_l)).unwrap()));
        }
        let fit = fit_loglog(&pts).unwrap();
        assert!((fit.slope - 0.5).abs() <= 0.05, "slope {}", fit.slope);
    }

    #[test]
    fn zero_exponent_is_the_sup() {
        let f = |x: f64| -3.0 * x * (2.0 - x);
        let v = holder_norm(&f, 0.0, &HolderGrid::for_scale(16.0)).unwrap();
        assert!((v - 3.0).abs() < 1e-12);
    }

    #[test]
    fn lipschitz_functions_have_bounded_seminorm() {
        let f = |x: f64| x;
        let v = holder_norm(&f, 0.5, &HolderGrid::for_scale(100.0)).unwrap();
        // sup |x − y| / |x − y|^{1/2} over [0, 2] is sqrt(2) at most
        assert!(v <= 2.0 + 2f64.sqrt() + 1e-12);
    }

    #[test]
    fn errors() {
        let f = |x: f64| x;
        assert!(matches!(holder_norm(&f, 1.0, &HolderGrid::for_scale(1.0)), Err(Error::Unsupported(_))));
        let coarse = HolderGrid { extent: 2.0, step: 0.01, scale: 100.0 };
        assert!(matches!(holder_norm(&f, 0.5, &coarse), Err(Error::Resolution(_))));
    }
}
