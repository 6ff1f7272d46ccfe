//! Frequency-localized free propagator kernels.
//!
//! The kernel of `H_0^{(n(m−1)+iσ)/(2m)} e^{itH_0} χ(H_0^{1/(2m)}/L)` for
//! `H_0 = (−Δ)^m` is, by Stone's formula and the splitting identity,
//!
//! ```text
//! (1/(πi)) ∫_0^∞ e^{itλ^{2m}} λ^{n(m−1)+1+iσ} [R_0^+ − R_0^−](λ²)(r) χ(λ/L) dλ.
//! ```
//!
//! For `m = 1`, `σ = 0` and `χ ≡ 1` this is the Schrödinger propagator
//! `(−4πit)^{−n/2} e^{−ir²/(4t)}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cutoff::CutoffSpec;
use crate::error::{Error, Result};
use crate::kernels::{dimension_table, jump_series_limit, KernelValue};
use crate::numerics::log_space;
use crate::oscillatory::{integrate, PhaseAmplitudeIntegral, QuadratureSpec};
use crate::params::ModelParams;
use crate::sweep::{fit_loglog, Executor, GrowthFit, SweepResult, SweepRow};

/// A point is low-confidence when its error estimate exceeds this fraction
/// of its magnitude.
pub const CONFIDENCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersiveQuery {
    pub params: ModelParams,
    pub t: f64,
    pub sigma: f64,
    pub big_l: f64,
    pub r: f64,
    pub cutoff: CutoffSpec,
}

impl DispersiveQuery {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(Error::Domain(format!("time t = {} must be > 0", self.t)));
        }
        if !(self.big_l > 0.0 && self.big_l.is_finite()) {
            return Err(Error::Domain(format!("scale L = {} must be > 0", self.big_l)));
        }
        if !(self.r >= 0.0 && self.r.is_finite()) {
            return Err(Error::Domain(format!("distance r = {} must be >= 0", self.r)));
        }
        if self.cutoff.support.0 <= 0.0 {
            return Err(Error::InvalidParams("frequency cutoff must vanish near 0".into()));
        }
        Ok(())
    }
}

/// `(4πt)^{−n/2}`, the magnitude of the free Schrödinger propagator.
pub fn schrodinger_propagator_magnitude(n: usize, t: f64) -> f64 {
    (4.0 * PI * t).powf(-(n as f64) / 2.0)
}

pub fn free_dispersive_kernel(q: &DispersiveQuery, spec: &QuadratureSpec) -> Result<KernelValue> {
    q.validate()?;
    let table = dimension_table(q.params.n)?;
    let (n, m) = (q.params.n, q.params.m);
    let power = (n * (m - 1) + 1) as i32;
    let (a, b) = (q.cutoff.support.0 * q.big_l, q.cutoff.support.1 * q.big_l);
    let cutoff = q.cutoff;
    let (big_l, r) = (q.big_l, q.r);
    let stone = Complex64::new(0.0, -1.0 / PI);

    // r = 0 bound of the integrand gives the natural magnitude
    let nm = (n * m) as f64;
    let d0 = table.jump_coefficients()[0];
    let scale = d0 * (b.powf(nm) - a.powf(nm)) / (nm * PI);
    let spec = QuadratureSpec { abs_tol: spec.abs_tol * scale, ..*spec };

    let weight = move |x: f64| x.powi(power) * cutoff.value(x / big_l);
    let split = if r > 0.0 { (jump_series_limit(n) / r).clamp(a, b) } else { b };

    let mut total = KernelValue::zero();
    if split > a {
        // i λ^{n−2} Σ d_k (λr)^{2k}, free of cancellation near the diagonal
        let low = move |x: f64| {
            stone * Complex64::new(0.0, weight(x) * x.powi(n as i32 - 2) * table.jump_series(x * r))
        };
        let it = PhaseAmplitudeIntegral::new(q.t, m, 0.0, q.sigma, (a, split), &low);
        total = total + integrate(&it, &spec)?;
    }
    if split < b {
        let outgoing = move |x: f64| stone * table.envelope(x, r) * weight(x);
        let incoming = move |x: f64| -stone * table.envelope(-x, r) * weight(x);
        let plus = PhaseAmplitudeIntegral::new(q.t, m, r, q.sigma, (split, b), &outgoing);
        let minus = PhaseAmplitudeIntegral::new(q.t, m, -r, q.sigma, (split, b), &incoming);
        total = total + integrate(&plus, &spec)? + integrate(&minus, &spec)?;
    }
    Ok(total)
}

/// Grid of a dispersive sweep, scaled to the free-evolution length
/// `t^{1/(2m)}`: at time `t` the frequency scales are `L = 2^j t^{−1/(2m)}`
/// and the distances `r = ρ t^{1/(2m)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersiveGrid {
    pub t: Vec<f64>,
    pub l_exponents: Vec<f64>,
    pub r_scaled: Vec<f64>,
    pub cutoff: CutoffSpec,
}

impl DispersiveGrid {
    /// 17 times over `[10^{−2}, 10^2]`, 5 dyadic `L`, and `{0}` with 25
    /// log-spaced distances over `[10^{−2}, 10^2]`; dyadic cutoff.
    pub fn standard() -> Self {
        let mut r_scaled = vec![0.0];
        r_scaled.extend(log_space(1e-2, 1e2, 25));
        DispersiveGrid {
            t: log_space(1e-2, 1e2, 17),
            l_exponents: (-2..=2).map(f64::from).collect(),
            r_scaled,
            cutoff: CutoffSpec::dyadic_chi(),
        }
    }

    /// Twice the density in `L` and `r`.
    pub fn refined(&self) -> Self {
        fn densify(v: &[f64], geometric: bool) -> Vec<f64> {
            let mut out = Vec::with_capacity(2 * v.len());
            for w in v.windows(2) {
                out.push(w[0]);
                let mid = if geometric && w[0] > 0.0 { (w[0] * w[1]).sqrt() } else { 0.5 * (w[0] + w[1]) };
                if !(geometric && w[0] == 0.0) {
                    out.push(mid);
                }
            }
            out.extend(v.last());
            out
        }
        DispersiveGrid {
            t: self.t.clone(),
            l_exponents: densify(&self.l_exponents, false),
            r_scaled: densify(&self.r_scaled, true),
            cutoff: self.cutoff,
        }
    }

    pub fn with_times(mut self, t: Vec<f64>) -> Self {
        self.t = t;
        self
    }

    pub fn len(&self) -> usize {
        self.t.len() * self.l_exponents.len() * self.r_scaled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Validation("dispersive grid is empty".into()));
        }
        if self.t.iter().any(|&t| !(t > 0.0)) || self.r_scaled.iter().any(|&r| !(r >= 0.0)) {
            return Err(Error::Validation("grid times must be > 0 and distances >= 0".into()));
        }
        Ok(())
    }

    fn queries(&self, params: &ModelParams, sigma: f64) -> Vec<DispersiveQuery> {
        let k = 1.0 / (2 * params.m) as f64;
        let mut out = Vec::with_capacity(self.len());
        for &t in &self.t {
            for &j in &self.l_exponents {
                for &rho in &self.r_scaled {
                    out.push(DispersiveQuery {
                        params: *params,
                        t,
                        sigma,
                        big_l: 2f64.powf(j) * t.powf(-k),
                        r: rho * t.powf(k),
                        cutoff: self.cutoff,
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersivePoint {
    pub query: DispersiveQuery,
    pub value: std::result::Result<KernelValue, Error>,
}

impl DispersivePoint {
    pub fn low_confidence(&self) -> bool {
        match &self.value {
            Ok(v) => !(v.err_estimate <= CONFIDENCE * v.value.norm()),
            Err(_) => true,
        }
    }

    fn row(&self, id: &str) -> SweepRow {
        let q = &self.query;
        let (value, err_estimate, flags) = match &self.value {
            Ok(v) if self.low_confidence() => (v.value, v.err_estimate, vec!["low_confidence".to_string()]),
            Ok(v) => (v.value, v.err_estimate, Vec::new()),
            Err(e) => (Complex64::new(f64::NAN, f64::NAN), f64::NAN, vec![format!("failed: {e}")]),
        };
        SweepRow {
            experiment_id: id.to_string(),
            params: q.params,
            big_l: q.big_l,
            t: q.t,
            sigma: q.sigma,
            r: q.r,
            value,
            err_estimate,
            flags,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersiveSweep {
    pub points: Vec<DispersivePoint>,
    /// `(t, S(t))` with `S` the sup of `|kernel|` over the clean `(L, r)` points.
    pub sup: Vec<(f64, f64)>,
    pub fit: GrowthFit,
    pub excluded: usize,
}

impl DispersiveSweep {
    pub fn into_result(self, id: &str, _params: &ModelParams, _sigma: f64) -> SweepResult {
        let failed_count = self.points.iter().filter(|p| p.value.is_err()).count();
        SweepResult {
            experiment_id: id.to_string(),
            rows: self.points.iter().map(|p| p.row(id)).collect(),
            fit: Some(self.fit),
            excluded_count: self.excluded,
            failed_count,
        }
    }
}

fn evaluate(
    params: &ModelParams,
    sigma: f64,
    grid: &DispersiveGrid,
    executor: &Executor,
    spec: &QuadratureSpec,
) -> Result<Vec<DispersivePoint>> {
    params.validate()?;
    grid.validate()?;
    let queries = grid.queries(params, sigma);
    Ok(executor.map(&queries, |q| DispersivePoint { query: *q, value: free_dispersive_kernel(q, spec) }))
}

/// `sup` over the clean points of each time slice; times with no clean point are dropped.
fn sup_by_time(points: &[DispersivePoint], times: &[f64]) -> Vec<(f64, f64)> {
    times
        .iter()
        .filter_map(|&t| {
            points
                .iter()
                .filter(|p| p.query.t == t && !p.low_confidence())
                .filter_map(|p| p.value.as_ref().ok().map(|v| v.value.norm()))
                .reduce(f64::max)
                .map(|s| (t, s))
        })
        .collect()
}

/// Fits `log S(t)` against `log t`; the predicted slope is `−n/2`.
pub fn dispersive_sweep(
    params: &ModelParams,
    sigma: f64,
    grid: &DispersiveGrid,
    executor: &Executor,
    spec: &QuadratureSpec,
) -> Result<DispersiveSweep> {
    let points = evaluate(params, sigma, grid, executor, spec)?;
    let excluded = points.iter().filter(|p| p.low_confidence()).count();
    let sup = sup_by_time(&points, &grid.t);
    let fit = fit_loglog(&sup)?.with_target(-(params.n as f64) / 2.0);
    Ok(DispersiveSweep { points, sup, fit, excluded })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaProbe {
    pub sigmas: Vec<f64>,
    /// `G(σ) = sup t^{n/2} |kernel|`.
    pub g: Vec<f64>,
    pub fit: GrowthFit,
    pub points: Vec<DispersivePoint>,
    pub excluded: usize,
}

impl SigmaProbe {
    /// Running maximum of `G` over `σ' ≤ σ`.
    pub fn envelope(&self) -> Vec<f64> {
        self.g
            .iter()
            .scan(0.0f64, |acc, &g| {
                *acc = acc.max(g);
                Some(*acc)
            })
            .collect()
    }

    /// Whether the fitted `⟨σ⟩` exponent respects the upper bound `(n+2)/2 + slack`.
    pub fn respects_bound(&self, n: usize, slack: f64) -> bool {
        self.fit.slope <= (n as f64 + 2.0) / 2.0 + slack
    }

    pub fn into_result(self, id: &str, _params: &ModelParams) -> SweepResult {
        let failed_count = self.points.iter().filter(|p| p.value.is_err()).count();
        SweepResult {
            experiment_id: id.to_string(),
            rows: self.points.iter().map(|p| p.row(id)).collect(),
            fit: Some(self.fit),
            excluded_count: self.excluded,
            failed_count,
        }
    }
}

/// Fits `log G(σ)` against `log ⟨σ⟩`; the paper's bound is `(n+2)/2`.
pub fn sigma_growth_probe(
    params: &ModelParams,
    sigmas: &[f64],
    grid: &DispersiveGrid,
    executor: &Executor,
    spec: &QuadratureSpec,
) -> Result<SigmaProbe> {
    if sigmas.is_empty() {
        return Err(Error::Validation("sigma grid is empty".into()));
    }
    if let Some(s) = sigmas.iter().find(|&&s| !(0.0..=16.0).contains(&s)) {
        return Err(Error::Validation(format!("sigma = {s} outside [0, 16]")));
    }
    let half_n = params.n as f64 / 2.0;
    let mut points = Vec::new();
    let mut g = Vec::with_capacity(sigmas.len());
    for &sigma in sigmas {
        let slice = evaluate(params, sigma, grid, executor, spec)?;
        let value = sup_by_time(&slice, &grid.t).iter().map(|&(t, s)| t.powf(half_n) * s).fold(0.0, f64::max);
        g.push(value);
        points.extend(slice);
    }
    let excluded = points.iter().filter(|p| p.low_confidence()).count();
    let pairs: Vec<(f64, f64)> = sigmas.iter().zip(&g).map(|(&s, &g)| ((1.0 + s * s).sqrt(), g)).collect();
    let fit = fit_loglog(&pairs)?.with_target(half_n + 1.0);
    Ok(SigmaProbe { sigmas: sigmas.to_vec(), g, fit, points, excluded })
}
