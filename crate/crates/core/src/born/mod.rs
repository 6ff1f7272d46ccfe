//! First Born-series term against concentrated test functions.
//!
//! With `t = L^{−(2m−1)}` and `μ = λ/L`, the kernel of the first Born term
//! splits as `K_L = K^+_L − K^−_L` with
//!
//! ```text
//! K^±_L(x, y) = ∫ V(z) ∫ e^{i(Lμ^{2m} ± LμR)} L(Lμ)^{2m−1+n(m−1)(2/p−1)}
//!                 ψ(μ^{2m}/E_m) B^±(Lμ, r) B^±(Lμ, s) dμ dz,
//! ```
//!
//! `r = |x − z|`, `s = |z − y|`, `R = r + s`, and `B^±` the poly-harmonic
//! resolvent kernel with `e^{±iλr}` factored out. `ψ` is dilated by
//! `E_m = m^{−2m/(2m−1)}` so that the critical point `μ₀ = (R/2m)^{1/(2m−1)}`
//! of the `−` branch sits on its plateau when `R ≈ 2`.

mod holder;
mod potential;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cutoff::CutoffSpec;
use crate::error::{Error, Result};
use crate::kernels::{KernelValue, Resolvent, Sign};
use crate::numerics::{gauss_legendre, sphere_area, CompensatedSum};
use crate::oscillatory::{cm, integrate, stationary_leading_term, PhaseAmplitudeIntegral, QuadratureSpec};
use crate::params::ModelParams;
use crate::sweep::{fit_loglog, Executor, GrowthFit, SweepResult, SweepRow};

pub use holder::{holder_norm, holder_scaling, potential_holder_norm, HolderGrid, HolderScaling};
pub use potential::{
    potential_value, BumpPotential, HalfPotential, PotentialKind, RadialProfile, RoughPotential, SumProfile,
    ZeroPotential,
};

/// Flatness deviations above this flag the functional.
pub const FLATNESS_BUDGET: f64 = 0.05;

/// Smallest admissible frequency scale.
pub const MIN_SCALE: f64 = 16.0;

const RADIAL_ORDER: usize = 16;
const MIN_RADIAL_PANELS: usize = 6;
const ANGULAR_POINTS: usize = 32;
const CHEB: usize = 3;

/// `E_m = (1/m)^{2m/(2m−1)}`, the value of `μ₀^{2m}` at `R = 2`.
pub fn window_dilation(m: usize) -> f64 {
    let m = m as f64;
    (1.0 / m).powf(2.0 * m / (2.0 * m - 1.0))
}

/// `t = L^{−(2m−1)}`.
pub fn regime_time(m: usize, big_l: f64) -> f64 {
    big_l.powi(1 - 2 * m as i32)
}

/// Time-and-normalization factor `L^{nm − n/2 + n/p − 2mn/p}` in front of
/// the pairing (`p` the pairing exponent, `1` for `p = ∞`).
pub fn functional_prefactor(params: &ModelParams, big_l: f64) -> f64 {
    let (n, m, p) = (params.n as f64, params.m as f64, params.p.pairing());
    big_l.powf(n * m - n / 2.0 + n / p - 2.0 * m * n / p)
}

/// `c_m L [(R/2)^{2m/(2m−1)} − |z|^{2m/(2m−1)}]`: the phase left in the
/// `K^−` forecast integrand after the coherent half of `V_L` is applied.
pub fn coherence_phase(params: &ModelParams, big_l: f64, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
    let k = 2.0 * params.m as f64 / (2.0 * params.m as f64 - 1.0);
    let rho = norm(z);
    let big_r = distance(x, z) + distance(z, y);
    cm(params.m) * big_l * ((big_r / 2.0).powf(k) - rho.powf(k))
}

/// Bound on [`coherence_phase`] for `|x|, |y| ≤ 1/(CL)` and `z` in the
/// annulus: `2m|c_m| / ((2m−1)C)`, times `ξ^{1/(2m−1)}` for the
/// mean-value point `ξ ≤ 1 + δ + 1/(CL)`.
pub fn coherence_bound(params: &ModelParams, big_l: f64) -> f64 {
    let m = params.m as f64;
    let xi = 1.0 + params.delta + params.concentration_radius(big_l);
    2.0 * m * cm(params.m).abs() / ((2.0 * m - 1.0) * params.c_ball) * xi.powf(1.0 / (2.0 * m - 1.0))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// `f_{L,p}(x) = (CL)^{n/p} f(CLx)` with `f` the `L^p`-normalized indicator
/// of the unit ball (`L¹` for `p = ∞`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentratedTestFunction {
    pub params: ModelParams,
    pub big_l: f64,
}

impl ConcentratedTestFunction {
    pub fn new(params: &ModelParams, big_l: f64) -> Self {
        ConcentratedTestFunction { params: *params, big_l }
    }

    pub fn radius(&self) -> f64 {
        self.params.concentration_radius(self.big_l)
    }

    fn ball_volume(&self) -> f64 {
        sphere_area(self.params.n - 1) / self.params.n as f64
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        if norm(x) > self.radius() {
            return 0.0;
        }
        let p = self.params.p.pairing();
        (self.params.c_ball * self.big_l).powf(self.params.n as f64 / p) * self.ball_volume().powf(-1.0 / p)
    }

    /// `‖f_{L,p}‖_1 = (CL)^{n/p − n} |B|^{1 − 1/p}`.
    pub fn l1_norm(&self) -> f64 {
        let (n, p) = (self.params.n as f64, self.params.p.pairing());
        (self.params.c_ball * self.big_l).powf(n / p - n) * self.ball_volume().powf(1.0 - 1.0 / p)
    }
}

/// `KernelValue`s of the `μ`-integral on the Chebyshev box around one radius.
type BoxSamples = [[KernelValue; CHEB]; CHEB];

/// Points `x`, `y` in the coordinates `(e₁, e₂)` of a plane containing both.
#[derive(Debug, Clone, Copy)]
struct PlanarPair {
    x: (f64, f64),
    y: (f64, f64),
}

impl PlanarPair {
    fn new(x: &[f64], y: &[f64]) -> Self {
        let (nx, ny) = (norm(x), norm(y));
        if nx == 0.0 {
            return PlanarPair { x: (0.0, 0.0), y: (ny, 0.0) };
        }
        let y1 = x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>() / nx;
        let y2 = (ny * ny - y1 * y1).max(0.0).sqrt();
        PlanarPair { x: (nx, 0.0), y: (y1, y2) }
    }

    fn extent(&self) -> f64 {
        self.x.0.hypot(self.x.1).max(self.y.0.hypot(self.y.1))
    }
}

/// Evaluator of the Born kernels at one `(L, t)`.
#[derive(Debug, Clone)]
pub struct BornEngine {
    params: ModelParams,
    resolvent: Resolvent,
    big_l: f64,
    t: f64,
    window: CutoffSpec,
    power: f64,
    support: (f64, f64),
    spec: QuadratureSpec,
}

impl BornEngine {
    pub fn new(params: &ModelParams, big_l: f64, t: f64, spec: &QuadratureSpec) -> Result<Self> {
        params.validate()?;
        spec.validate()?;
        if !(big_l > 0.0 && big_l.is_finite()) {
            return Err(Error::Domain(format!("scale L = {big_l} must be > 0")));
        }
        if !(t.is_finite() && t != 0.0) {
            return Err(Error::Domain(format!("time t = {t} must be finite and nonzero")));
        }
        let (n, m) = (params.n as f64, params.m);
        let e = window_dilation(m);
        let window = CutoffSpec::psi().dilate(e);
        let k = 1.0 / (2 * m) as f64;
        let support = (window.support.0.powf(k), window.support.1.powf(k));
        let power = (2 * m - 1) as f64 + n * (m as f64 - 1.0) * (2.0 / params.p.pairing() - 1.0);
        Ok(BornEngine {
            params: *params,
            resolvent: Resolvent::from_params(params)?,
            big_l,
            t,
            window,
            power,
            support,
            spec: *spec,
        })
    }

    /// The engine at the counterexample time `t = L^{−(2m−1)}`.
    pub fn at_regime(params: &ModelParams, big_l: f64, spec: &QuadratureSpec) -> Result<Self> {
        Self::new(params, big_l, regime_time(params.m, big_l), spec)
    }

    pub fn big_l(&self) -> f64 {
        self.big_l
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Support of the rescaled spectral variable `μ`.
    pub fn mu_support(&self) -> (f64, f64) {
        self.support
    }

    fn amplitude(&self, sign: Sign, r: f64, s: f64) -> impl Fn(f64) -> Complex64 + '_ {
        let m2 = 2 * self.params.m as i32;
        move |mu: f64| {
            let w = self.window.value(mu.powi(m2));
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let lambda = self.big_l * mu;
            let b = self.resolvent.factored(sign, lambda, r) * self.resolvent.factored(sign, lambda, s);
            b * (self.big_l * lambda.powf(self.power) * w)
        }
    }

    fn descriptor<'a>(&self, sign: Sign, r: f64, s: f64, amp: &'a dyn Fn(f64) -> Complex64) -> PhaseAmplitudeIntegral<'a> {
        let t_mu = self.t * self.big_l.powi(2 * self.params.m as i32);
        PhaseAmplitudeIntegral::new(t_mu, self.params.m, sign.factor() * self.big_l * (r + s), 0.0, self.support, amp)
    }

    /// The `μ`-integral of `K^±` for one pair of distances `(r, s)`.
    pub fn inner(&self, sign: Sign, r: f64, s: f64) -> Result<KernelValue> {
        if !(r > 0.0 && s > 0.0) {
            return Err(Error::Domain(format!("distances r = {r}, s = {s} must be > 0")));
        }
        let amp = self.amplitude(sign, r, s);
        let it = self.descriptor(sign, r, s, &amp);
        // tolerances relative to the size of the integrand
        let (a, b) = self.support;
        let nominal = amp(0.5 * (a + b)).norm() * (b - a);
        let spec = QuadratureSpec { abs_tol: self.spec.abs_tol * nominal.max(f64::MIN_POSITIVE), ..self.spec };
        integrate(&it, &spec)
    }

    /// Leading stationary-phase term of the `−` branch `μ`-integral.
    pub fn inner_forecast(&self, r: f64, s: f64) -> Result<Complex64> {
        let amp = self.amplitude(Sign::Minus, r, s);
        let it = self.descriptor(Sign::Minus, r, s, &amp);
        Ok(stationary_leading_term(&it)?.value)
    }

    /// Composite Gauss rule in `|z|` over the support of `v`: at least six
    /// panels, two wavelengths of the combined `V` and kernel phase per panel.
    pub fn radial_rule(&self, v: &dyn RadialProfile) -> Vec<(f64, f64)> {
        let (a, b) = v.support();
        let kernel_frequency = 2.0 * self.big_l * self.support.1;
        let wavelengths = (v.max_frequency() + kernel_frequency) * (b - a) / (2.0 * PI);
        let panels = MIN_RADIAL_PANELS.max((wavelengths / 2.0).ceil() as usize);
        let h = (b - a) / panels as f64;
        let rule = gauss_legendre(RADIAL_ORDER);
        let mut nodes = Vec::with_capacity(panels * RADIAL_ORDER);
        for k in 0..panels {
            let c = a + h * (k as f64 + 0.5);
            nodes.extend(rule.iter().map(|&(x, w)| (c + 0.5 * h * x, 0.5 * h * w)));
        }
        nodes
    }

    fn check_support(&self, v: &dyn RadialProfile) -> Result<()> {
        let (a, b) = v.support();
        if !(a > 0.0 && a < b && b.is_finite()) {
            return Err(Error::Domain(format!("potential support [{a}, {b}] must be an annulus")));
        }
        Ok(())
    }

    /// `K^±(0, 0) = ∫ |S^{n−1}| ρ^{n−1} V(ρ) I^±(ρ, ρ) dρ`.
    pub fn kernel_at_origin(&self, sign: Sign, v: &dyn RadialProfile) -> Result<KernelValue> {
        self.check_support(v)?;
        let surface = sphere_area(self.params.n - 1);
        let mut sum = CompensatedSum::new();
        let mut err = 0.0;
        for (rho, w) in self.radial_rule(v) {
            let potential = v.value(rho);
            if potential == Complex64::new(0.0, 0.0) {
                continue;
            }
            let weight = potential * (w * surface * rho.powi(self.params.n as i32 - 1));
            let inner = self.inner(sign, rho, rho)?;
            sum.add(inner.value * weight);
            err += inner.err_estimate * weight.norm();
        }
        Ok(KernelValue { value: sum.total(), err_estimate: err })
    }

    /// Stationary-phase forecast of `K^−(0, 0)`.
    pub fn forecast_at_origin(&self, v: &dyn RadialProfile) -> Result<Complex64> {
        self.check_support(v)?;
        let surface = sphere_area(self.params.n - 1);
        let mut sum = CompensatedSum::new();
        for (rho, w) in self.radial_rule(v) {
            let potential = v.value(rho);
            if potential == Complex64::new(0.0, 0.0) {
                continue;
            }
            sum.add(self.inner_forecast(rho, rho)? * potential * (w * surface * rho.powi(self.params.n as i32 - 1)));
        }
        Ok(sum.total())
    }

    fn check_ball(&self, x: &[f64], y: &[f64]) -> Result<()> {
        let n = self.params.n;
        if x.len() != n || y.len() != n {
            return Err(Error::Domain(format!("points must have {n} coordinates")));
        }
        let radius = self.params.concentration_radius(self.big_l) * (1.0 + 1e-12);
        if norm(x) > radius || norm(y) > radius {
            return Err(Error::Domain(format!("x and y must lie in the ball of radius 1/(CL) = {radius:e}")));
        }
        Ok(())
    }

    fn box_samples(&self, sign: Sign, rho: f64, half_width: f64) -> Result<BoxSamples> {
        let nodes = chebyshev_nodes();
        let mut out = [[KernelValue::zero(); CHEB]; CHEB];
        for (i, &a) in nodes.iter().enumerate() {
            for (j, &b) in nodes.iter().enumerate() {
                out[i][j] = self.inner(sign, rho + half_width * a, rho + half_width * b)?;
            }
        }
        Ok(out)
    }

    /// `∫_{S^{n−1}} I(|x − ρu|, |y − ρu|) du` by interpolating `I` on the box.
    fn angular(&self, samples: &BoxSamples, rho: f64, half_width: f64, pair: &PlanarPair) -> (Complex64, f64) {
        let n = self.params.n;
        let complement = sphere_area(n - 3);
        let beta_rule = gauss_legendre(ANGULAR_POINTS);
        let (x2, y2) = (pair.x.0.powi(2) + pair.x.1.powi(2), pair.y.0.powi(2) + pair.y.1.powi(2));
        let mut sum = CompensatedSum::new();
        let mut err = 0.0;
        for &(node, gw) in beta_rule {
            let beta = PI / 4.0 * (node + 1.0);
            let weight = complement * beta.sin() * beta.cos().powi(n as i32 - 3) * gw * PI / 4.0;
            for k in 0..ANGULAR_POINTS {
                let theta = 2.0 * PI * k as f64 / ANGULAR_POINTS as f64;
                let (u1, u2) = (beta.sin() * theta.cos(), beta.sin() * theta.sin());
                let r = (rho * rho + x2 - 2.0 * rho * (pair.x.0 * u1 + pair.x.1 * u2)).sqrt();
                let s = (rho * rho + y2 - 2.0 * rho * (pair.y.0 * u1 + pair.y.1 * u2)).sqrt();
                let lr = lagrange((r - rho) / half_width);
                let ls = lagrange((s - rho) / half_width);
                let mut value = Complex64::new(0.0, 0.0);
                let mut e = 0.0;
                for i in 0..CHEB {
                    for j in 0..CHEB {
                        let c = lr[i] * ls[j];
                        value += samples[i][j].value * c;
                        e += samples[i][j].err_estimate * c.abs();
                    }
                }
                let w = weight * 2.0 * PI / ANGULAR_POINTS as f64;
                sum.add(value * w);
                err += e * w;
            }
        }
        (sum.total(), err)
    }

    /// `K^±(x, y)` for `|x|, |y| ≤ 1/(CL)`. The origin uses the radial
    /// reduction; other points the reduction to `|z|` and the two
    /// coordinates of `z` on a plane through `x` and `y`.
    pub fn kernel(&self, sign: Sign, x: &[f64], y: &[f64], v: &dyn RadialProfile) -> Result<KernelValue> {
        self.check_ball(x, y)?;
        self.check_support(v)?;
        let pair = PlanarPair::new(x, y);
        let half_width = pair.extent();
        if half_width == 0.0 {
            return self.kernel_at_origin(sign, v);
        }
        let mut sum = CompensatedSum::new();
        let mut err = 0.0;
        for (rho, w) in self.radial_rule(v) {
            let potential = v.value(rho);
            if potential == Complex64::new(0.0, 0.0) {
                continue;
            }
            let samples = self.box_samples(sign, rho, half_width)?;
            let (value, e) = self.angular(&samples, rho, half_width, &pair);
            let weight = potential * (w * rho.powi(self.params.n as i32 - 1));
            sum.add(value * weight);
            err += e * weight.norm();
        }
        Ok(KernelValue { value: sum.total(), err_estimate: err })
    }

    /// `K = K^+ − K^−` at several points sharing the box half-width `ε`,
    /// which amortizes the box samples.
    fn difference_kernel_at(&self, points: &[(Vec<f64>, Vec<f64>)], half_width: f64, v: &dyn RadialProfile) -> Result<Vec<Complex64>> {
        let pairs: Vec<PlanarPair> = points.iter().map(|(x, y)| PlanarPair::new(x, y)).collect();
        let mut sums: Vec<CompensatedSum> = vec![CompensatedSum::new(); points.len()];
        for (rho, w) in self.radial_rule(v) {
            let potential = v.value(rho);
            if potential == Complex64::new(0.0, 0.0) {
                continue;
            }
            let plus = self.box_samples(Sign::Plus, rho, half_width)?;
            let minus = self.box_samples(Sign::Minus, rho, half_width)?;
            let mut diff = [[KernelValue::zero(); CHEB]; CHEB];
            for i in 0..CHEB {
                for j in 0..CHEB {
                    diff[i][j] = plus[i][j] - minus[i][j];
                }
            }
            let weight = potential * (w * rho.powi(self.params.n as i32 - 1));
            for (sum, pair) in sums.iter_mut().zip(&pairs) {
                sum.add(self.angular(&diff, rho, half_width, pair).0 * weight);
            }
        }
        Ok(sums.iter().map(CompensatedSum::total).collect())
    }
}

fn chebyshev_nodes() -> [f64; CHEB] {
    std::array::from_fn(|j| ((2 * j + 1) as f64 * PI / (2 * CHEB) as f64).cos())
}

fn lagrange(x: f64) -> [f64; CHEB] {
    let nodes = chebyshev_nodes();
    std::array::from_fn(|j| {
        (0..CHEB).filter(|&k| k != j).map(|k| (x - nodes[k]) / (nodes[j] - nodes[k])).product()
    })
}

/// `K^±_{L,t}(x, y)` for a radial potential.
pub fn born_kernel(
    params: &ModelParams,
    sign: Sign,
    big_l: f64,
    t: f64,
    x: &[f64],
    y: &[f64],
    v: &dyn RadialProfile,
    spec: &QuadratureSpec,
) -> Result<KernelValue> {
    BornEngine::new(params, big_l, t, spec)?.kernel(sign, x, y, v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BornFunctionalResult {
    /// `a_{1,L}(V)` (or `a_{1,p,L}(V)`), from the kernel at `x = y = 0`.
    pub value: Complex64,
    pub err_estimate: f64,
    #[serde(rename = "L")]
    pub big_l: f64,
    pub t: f64,
    /// The same functional with `K^−` replaced by its stationary-phase forecast and `K^+` by 0.
    pub sp_prediction: Complex64,
    /// Largest `|K(x, y) − K(0, 0)| / |K(0, 0)|` over three boundary pairs.
    pub flatness_deviation: f64,
    pub kernel_plus: KernelValue,
    pub kernel_minus: KernelValue,
}

impl BornFunctionalResult {
    pub fn flagged(&self) -> bool {
        !(self.flatness_deviation <= FLATNESS_BUDGET)
    }
}

/// `(x, y)` pairs on the boundary of the concentration ball.
fn boundary_pairs(n: usize, eps: f64) -> Vec<(Vec<f64>, Vec<f64>)> {
    let axis = |k: usize, s: f64| {
        let mut v = vec![0.0; n];
        v[k] = s * eps;
        v
    };
    vec![(axis(0, 1.0), axis(0, 1.0)), (axis(0, 1.0), axis(0, -1.0)), (axis(0, 1.0), axis(1, 1.0))]
}

/// Pairing without the flatness re-evaluation.
pub fn born_functional_at_origin(
    params: &ModelParams,
    big_l: f64,
    v: &dyn RadialProfile,
    spec: &QuadratureSpec,
) -> Result<BornFunctionalResult> {
    if !(big_l >= MIN_SCALE) {
        return Err(Error::Domain(format!("L = {big_l} must be >= {MIN_SCALE}")));
    }
    let engine = BornEngine::at_regime(params, big_l, spec)?;
    let plus = engine.kernel_at_origin(Sign::Plus, v)?;
    let minus = engine.kernel_at_origin(Sign::Minus, v)?;
    let forecast = engine.forecast_at_origin(v)?;
    let f = ConcentratedTestFunction::new(params, big_l);
    let scale = functional_prefactor(params, big_l) * f.l1_norm().powi(2);
    let k = plus - minus;
    Ok(BornFunctionalResult {
        value: k.value * scale,
        err_estimate: k.err_estimate * scale,
        big_l,
        t: engine.t(),
        sp_prediction: -forecast * scale,
        flatness_deviation: 0.0,
        kernel_plus: plus,
        kernel_minus: minus,
    })
}

/// `a_{1,L}(V) ≈ L^{nm−n/2+n/p−2mn/p} K_L(0, 0) ‖f_{L,p}‖_1²`, with the
/// flatness of `K_L` on the concentration ball measured at three boundary pairs.
pub fn born_functional(
    params: &ModelParams,
    big_l: f64,
    v: &dyn RadialProfile,
    spec: &QuadratureSpec,
) -> Result<BornFunctionalResult> {
    let mut result = born_functional_at_origin(params, big_l, v, spec)?;
    let engine = BornEngine::at_regime(params, big_l, spec)?;
    let eps = params.concentration_radius(big_l);
    let centre = result.kernel_plus.value - result.kernel_minus.value;
    let values = engine.difference_kernel_at(&boundary_pairs(params.n, eps), eps, v)?;
    result.flatness_deviation = values.iter().map(|k| (k - centre).norm() / centre.norm()).fold(0.0, f64::max);
    if !result.flatness_deviation.is_finite() {
        result.flatness_deviation = f64::INFINITY;
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthPoint {
    pub big_l: f64,
    pub functional: std::result::Result<BornFunctionalResult, Error>,
    pub holder: std::result::Result<f64, Error>,
}

impl GrowthPoint {
    /// `|a_{1,L}(V)| / ‖V‖_{C^α}` when both are available and unflagged.
    pub fn ratio(&self) -> Option<f64> {
        match (&self.functional, &self.holder) {
            (Ok(f), Ok(h)) if !f.flagged() => Some(f.value.norm() / h),
            _ => None,
        }
    }

    fn row(&self, id: &str, params: &ModelParams) -> SweepRow {
        let (value, err_estimate, mut flags) = match &self.functional {
            Ok(f) => (f.value, f.err_estimate, Vec::new()),
            Err(e) => (Complex64::new(f64::NAN, f64::NAN), f64::NAN, vec![format!("failed: {e}")]),
        };
        if let Ok(f) = &self.functional {
            if f.flagged() {
                flags.push(format!("flatness={:e}", f.flatness_deviation));
            }
        }
        if let Err(e) = &self.holder {
            flags.push(format!("holder failed: {e}"));
        }
        SweepRow {
            experiment_id: id.to_string(),
            params: *params,
            big_l: self.big_l,
            t: regime_time(params.m, self.big_l),
            sigma: 0.0,
            r: 0.0,
            value,
            err_estimate,
            flags,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthExperiment {
    pub points: Vec<GrowthPoint>,
    pub fit: GrowthFit,
    pub excluded: usize,
}

impl GrowthExperiment {
    pub fn into_result(self, id: &str, params: &ModelParams) -> SweepResult {
        let failed_count = self.points.iter().filter(|p| p.functional.is_err() || p.holder.is_err()).count();
        SweepResult {
            experiment_id: id.to_string(),
            rows: self.points.iter().map(|p| p.row(id, params)).collect(),
            fit: Some(self.fit),
            excluded_count: self.excluded,
            failed_count,
        }
    }
}

/// Evaluates `|a_{1,L}(V)| / ‖V‖_{C^α}` over a dyadic `L` grid and fits its
/// growth exponent; the target is the threshold `n/p + (1−n)/2 − 2m − α`.
/// Flagged and failed points are excluded from the fit.
pub fn growth_experiment(
    params: &ModelParams,
    l_grid: &[f64],
    potential: PotentialKind,
    executor: &Executor,
    spec: &QuadratureSpec,
) -> Result<GrowthExperiment> {
    params.validate_counterexample()?;
    if l_grid.len() < 5 {
        return Err(Error::Validation(format!("L grid needs at least 5 points, got {}", l_grid.len())));
    }
    if let Some(l) = l_grid.iter().find(|&&l| !(l >= MIN_SCALE && l.log2().fract() == 0.0)) {
        return Err(Error::Validation(format!("L = {l} is not a dyadic scale >= {MIN_SCALE}")));
    }
    let points = executor.map(l_grid, |&big_l| {
        let functional = potential.build(params, big_l).and_then(|v| born_functional(params, big_l, &*v, spec));
        let holder = potential_holder_norm(params, potential, big_l);
        GrowthPoint { big_l, functional, holder }
    });
    let clean: Vec<(f64, f64)> = points.iter().filter_map(|p| p.ratio().map(|r| (p.big_l, r))).collect();
    let excluded = points.len() - clean.len();
    let fit = fit_loglog(&clean)
        .map_err(|e| Error::Fit(format!("{e}; {excluded} of {} points flagged or failed", points.len())))?
        .with_target(params.target_slope());
    Ok(GrowthExperiment { points, fit, excluded })
}
