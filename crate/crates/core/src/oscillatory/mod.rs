//! Oscillatory quadrature for `∫ A(λ) λ^{iσ} e^{i(tλ^{2m} + Rλ)} dλ`.
//!
//! Panels on which the phase derivative stays away from zero are handled
//! by Levin collocation on Chebyshev–Lobatto nodes; panels touching the
//! critical point, or carrying too little phase for Levin to be well posed,
//! fall back to Gauss–Kronrod. An adaptive driver bisects the worst panel
//! until the summed error estimate meets the tolerance.
//!
//! The linear coefficient `R` carries its sign: the stationary case of the
//! resolvent integrals is `R < 0`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::KernelValue;
use crate::numerics::CompensatedSum;

mod oracle;
mod rules;

pub use oracle::integrate_oracle;

use rules::{gauss_kronrod, levin, ChebyshevGrid};

/// Largest admissible log-phase twist.
pub const MAX_SIGMA: f64 = 16.0;

/// Panels whose total phase excursion is below this use Gauss–Kronrod.
const LEVIN_MIN_PHASE: f64 = 2.0;

/// Ratio `min|Φ'| / max|Φ'|` below which a panel counts as stationary.
const STATIONARY_RATIO: f64 = 1e-3;

/// Descriptor of `∫_a^b A(λ) λ^{iσ} e^{i(tλ^{2m} + Rλ)} dλ`.
#[derive(Clone, Copy)]
pub struct PhaseAmplitudeIntegral<'a> {
    pub t: f64,
    pub m: usize,
    pub r: f64,
    pub sigma: f64,
    pub support: (f64, f64),
    pub amplitude: &'a dyn Fn(f64) -> Complex64,
}

impl fmt::Debug for PhaseAmplitudeIntegral<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhaseAmplitudeIntegral")
            .field("t", &self.t)
            .field("m", &self.m)
            .field("r", &self.r)
            .field("sigma", &self.sigma)
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

impl<'a> PhaseAmplitudeIntegral<'a> {
    pub fn new(t: f64, m: usize, r: f64, sigma: f64, support: (f64, f64), amplitude: &'a dyn Fn(f64) -> Complex64) -> Self {
        PhaseAmplitudeIntegral { t, m, r, sigma, support, amplitude }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.support;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!("support [{a}, {b}] must be a finite interval with a < b")));
        }
        if self.m == 0 {
            return Err(Error::InvalidParams("phase order m must be >= 1".into()));
        }
        if !(self.t.is_finite() && self.r.is_finite() && self.sigma.is_finite()) {
            return Err(Error::Domain("phase coefficients must be finite".into()));
        }
        if self.sigma.abs() > MAX_SIGMA {
            return Err(Error::Unsupported(format!("|sigma| = {} exceeds {MAX_SIGMA}", self.sigma.abs())));
        }
        if self.sigma != 0.0 && a <= 0.0 {
            return Err(Error::Domain(format!("the twist lambda^(i sigma) needs a > 0, got a = {a}")));
        }
        Ok(())
    }

    pub fn phase(&self, lambda: f64) -> f64 {
        self.t * lambda.powi(2 * self.m as i32) + self.r * lambda
    }

    pub fn phase_derivative(&self, lambda: f64) -> f64 {
        let k = 2 * self.m as i32;
        k as f64 * self.t * lambda.powi(k - 1) + self.r
    }

    pub fn phase_second_derivative(&self, lambda: f64) -> f64 {
        let k = 2 * self.m as i32;
        (k * (k - 1)) as f64 * self.t * lambda.powi(k - 2)
    }

    /// The unique real zero of `Φ'` (which is monotone), if any.
    pub fn critical_point(&self) -> Option<f64> {
        if self.t == 0.0 {
            return None;
        }
        let x = -self.r / (2.0 * self.m as f64 * self.t);
        let root = x.abs().powf(1.0 / (2 * self.m - 1) as f64);
        Some(if x < 0.0 { -root } else { root })
    }

    /// `A(λ) λ^{iσ}`.
    pub fn twisted_amplitude(&self, lambda: f64) -> Complex64 {
        let a = (self.amplitude)(lambda);
        if self.sigma == 0.0 {
            a
        } else {
            a * Complex64::from_polar(1.0, self.sigma * lambda.ln())
        }
    }

    /// Breakpoints splitting the support into pieces where `Φ` is monotone.
    fn monotone_pieces(&self) -> Vec<f64> {
        let (a, b) = self.support;
        let mut points = vec![a];
        if let Some(c) = self.critical_point() {
            if c > a && c < b {
                points.push(c);
            }
        }
        points.push(b);
        points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuadratureSpec {
    pub collocation_order: usize,
    pub max_panels: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { collocation_order: 32, max_panels: 4096, abs_tol: 1e-12, rel_tol: 1e-9 }
    }
}

impl QuadratureSpec {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureSpec { abs_tol, rel_tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.collocation_order < 4 {
            return Err(Error::InvalidParams("collocation order must be >= 4".into()));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParams("quadrature tolerances must be > 0".into()));
        }
        if self.max_panels == 0 {
            return Err(Error::InvalidParams("max_panels must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

struct Engine<'i, 'a> {
    integral: &'i PhaseAmplitudeIntegral<'a>,
    fine: ChebyshevGrid,
    coarse: ChebyshevGrid,
}

impl<'i, 'a> Engine<'i, 'a> {
    fn new(integral: &'i PhaseAmplitudeIntegral<'a>, spec: &QuadratureSpec) -> Self {
        let n = spec.collocation_order;
        Engine {
            integral,
            fine: ChebyshevGrid::new(n),
            coarse: ChebyshevGrid::new((3 * n / 4).max(3)),
        }
    }

    fn gk(&self, a: f64, b: f64) -> Panel {
        let it = self.integral;
        let f = |x: f64| it.twisted_amplitude(x) * Complex64::from_polar(1.0, it.phase(x));
        let (value, err) = gauss_kronrod(&f, a, b);
        Panel { a, b, value, err }
    }

    fn panel(&self, a: f64, b: f64) -> Panel {
        let it = self.integral;
        // Φ' is monotone, so its extremes on the panel sit at the ends
        let (da, db) = (it.phase_derivative(a), it.phase_derivative(b));
        let max = da.abs().max(db.abs());
        let min = if da.signum() != db.signum() || da == 0.0 || db == 0.0 { 0.0 } else { da.abs().min(db.abs()) };
        if min < STATIONARY_RATIO * max || max * (b - a) < LEVIN_MIN_PHASE {
            return self.gk(a, b);
        }
        let f = |x: f64| it.twisted_amplitude(x);
        let phase = |x: f64| it.phase(x);
        let dphase = |x: f64| it.phase_derivative(x);
        match (
            levin(&self.fine, &f, &phase, &dphase, a, b),
            levin(&self.coarse, &f, &phase, &dphase, a, b),
        ) {
            (Some(fine), Some(coarse)) => Panel { a, b, value: fine, err: (fine - coarse).norm() },
            _ => self.gk(a, b),
        }
    }

    fn split(&self, p: &Panel) -> (Panel, Panel) {
        let mid = 0.5 * (p.a + p.b);
        (self.panel(p.a, mid), self.panel(mid, p.b))
    }
}

fn summarize(panels: &[Panel]) -> (Complex64, f64) {
    let mut sum = CompensatedSum::new();
    let mut err = 0.0;
    for p in panels {
        sum.add(p.value);
        err += p.err;
    }
    (sum.total(), err)
}

fn initial_panels(engine: &Engine, per_piece: usize) -> Vec<Panel> {
    let pieces = engine.integral.monotone_pieces();
    let mut panels = Vec::new();
    for w in pieces.windows(2) {
        let (a, b) = (w[0], w[1]);
        let h = (b - a) / per_piece as f64;
        for k in 0..per_piece {
            let lo = a + h * k as f64;
            let hi = if k + 1 == per_piece { b } else { a + h * (k + 1) as f64 };
            panels.push(engine.panel(lo, hi));
        }
    }
    panels
}

/// Adaptive evaluation; the error estimate is the sum of per-panel
/// estimates (`|L_N − L_{3N/4}|` for Levin panels, `|K21 − G10|` otherwise).
pub fn integrate(integral: &PhaseAmplitudeIntegral, spec: &QuadratureSpec) -> Result<KernelValue> {
    integral.validate()?;
    spec.validate()?;
    let engine = Engine::new(integral, spec);
    let mut panels = initial_panels(&engine, 1);
    loop {
        let (value, err) = summarize(&panels);
        if !value.is_finite() {
            return Err(Error::Domain("integrand is not finite on the support".into()));
        }
        if err <= spec.abs_tol.max(spec.rel_tol * value.norm()) {
            return Ok(KernelValue { value, err_estimate: err });
        }
        if panels.len() >= spec.max_panels {
            return Err(Error::NonConvergence { estimate: value, error: err, panels: panels.len() });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let (left, right) = engine.split(&panels[worst]);
        panels[worst] = left;
        panels.insert(worst + 1, right);
    }
}

/// Non-adaptive evaluation on `count` equal panels per monotone piece.
pub fn integrate_on_panels(integral: &PhaseAmplitudeIntegral, count: usize, spec: &QuadratureSpec) -> Result<KernelValue> {
    integral.validate()?;
    spec.validate()?;
    if count == 0 {
        return Err(Error::InvalidParams("panel count must be >= 1".into()));
    }
    let engine = Engine::new(integral, spec);
    let panels = initial_panels(&engine, count);
    let (value, err_estimate) = summarize(&panels);
    Ok(KernelValue { value, err_estimate })
}

/// Critical-point data of `Φ(λ) = tλ^{2m} − λR`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StationaryPointData {
    pub lambda0: f64,
    pub phase_at_crit: f64,
    pub second_deriv: f64,
    pub cm: f64,
}

/// `c_m = (1/m)^{2m/(2m−1)} (1 − 2m)`.
pub fn cm(m: usize) -> f64 {
    let m = m as f64;
    (1.0 / m).powf(2.0 * m / (2.0 * m - 1.0)) * (1.0 - 2.0 * m)
}

pub fn stationary_point(t: f64, m: usize, r: f64) -> Result<StationaryPointData> {
    if !(t > 0.0 && t.is_finite()) || !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("stationary point needs t > 0 and R > 0, got t = {t}, R = {r}")));
    }
    if m == 0 {
        return Err(Error::InvalidParams("phase order m must be >= 1".into()));
    }
    let k = 2 * m as i32;
    let lambda0 = (r / (k as f64 * t)).powf(1.0 / (k - 1) as f64);
    Ok(StationaryPointData {
        lambda0,
        phase_at_crit: t * lambda0.powi(k) - r * lambda0,
        second_deriv: (k * (k - 1)) as f64 * t * lambda0.powi(k - 2),
        cm: cm(m),
    })
}

/// Value of `L(λ^{2m} − λR)` at its critical point, in the closed form
/// `c_m L (R/2)^{2m/(2m−1)}`.
pub fn rescaled_critical_phase(m: usize, r: f64, big_l: f64) -> f64 {
    let k = 2.0 * m as f64;
    cm(m) * big_l * (r / 2.0).powf(k / (k - 1.0))
}

/// `sqrt(2π/|Φ''|) A(λ₀) λ₀^{iσ} e^{iΦ(λ₀) + iπ/4 sgn Φ''}` at the interior
/// critical point. The error estimate is 0: the term is asymptotic.
pub fn stationary_leading_term(integral: &PhaseAmplitudeIntegral) -> Result<KernelValue> {
    integral.validate()?;
    let (a, b) = integral.support;
    let lambda0 = match integral.critical_point() {
        Some(c) if c > a && c < b => c,
        Some(c) => return Err(Error::Nonstationary { lambda0: c, a, b }),
        None => return Err(Error::Nonstationary { lambda0: f64::NAN, a, b }),
    };
    let second = integral.phase_second_derivative(lambda0);
    if second == 0.0 {
        return Err(Error::Nonstationary { lambda0, a, b });
    }
    let phase = integral.phase(lambda0) + PI / 4.0 * second.signum();
    let value = integral.twisted_amplitude(lambda0) * Complex64::from_polar((2.0 * PI / second.abs()).sqrt(), phase);
    Ok(KernelValue::exact(value))
}
