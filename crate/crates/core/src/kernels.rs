//! Free resolvent kernels in odd dimensions.
//!
//! The Schrödinger kernel of `(−Δ − ζ²)^{−1}` is generated from the
//! three-dimensional base `e^{iζr}/(4πr)` by the dimension-raising
//! recurrence `K_{n+2} = −(2πr)^{−1} ∂_r K_n`. Writing
//! `K_n(ζ, r) = e^{iζr} r^{2−n} Q_n(ζr)`, the recurrence acts on the
//! polynomial `Q_n(s) = π^{−(n−1)/2} Σ_k q_k (−i s)^k` by
//!
//! ```text
//! q'_k = ((n − 2 − k) q_k + q_{k−1}) / 2,
//! ```
//!
//! so the `q_k` are exact rationals. The poly-harmonic kernel is then a
//! roots-of-unity combination of Schrödinger kernels.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Largest odd dimension with a precomputed coefficient table.
pub const MAX_DIMENSION: usize = 41;

/// Below this value of `λr` the resolvent jump in dimension `n` is summed
/// from its power series; above it the closed-form difference is used.
/// The closed form loses about `(λr)^{2−n}` to cancellation while the series
/// loses about `e^{λr}`, so the crossover grows with `n`.
pub fn jump_series_limit(n: usize) -> f64 {
    3.0 + 0.4 * n as f64
}

const JUMP_TERMS: usize = 48;

/// Limiting sign selecting the boundary value `R_0^±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Validation(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub lambda: f64,
    pub sign: Sign,
}

impl SpectralPoint {
    pub fn new(lambda: f64, sign: Sign) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Domain(format!("spectral parameter lambda = {lambda} must be > 0")));
        }
        Ok(SpectralPoint { lambda, sign })
    }
}

/// A complex kernel value with an absolute error bound (zero for closed forms).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub value: Complex64,
    pub err_estimate: f64,
}

impl KernelValue {
    pub fn exact(value: Complex64) -> Self {
        KernelValue { value, err_estimate: 0.0 }
    }

    pub fn zero() -> Self {
        Self::exact(Complex64::new(0.0, 0.0))
    }

    pub fn relative_error(&self) -> f64 {
        let norm = self.value.norm();
        if norm == 0.0 {
            if self.err_estimate == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            self.err_estimate / norm
        }
    }
}

impl std::ops::Add for KernelValue {
    type Output = KernelValue;
    fn add(self, rhs: KernelValue) -> KernelValue {
        KernelValue {
            value: self.value + rhs.value,
            err_estimate: self.err_estimate + rhs.err_estimate,
        }
    }
}

impl std::ops::Sub for KernelValue {
    type Output = KernelValue;
    fn sub(self, rhs: KernelValue) -> KernelValue {
        KernelValue {
            value: self.value - rhs.value,
            err_estimate: self.err_estimate + rhs.err_estimate,
        }
    }
}

impl std::ops::Mul<Complex64> for KernelValue {
    type Output = KernelValue;
    fn mul(self, rhs: Complex64) -> KernelValue {
        KernelValue {
            value: self.value * rhs,
            err_estimate: self.err_estimate * rhs.norm(),
        }
    }
}

/// Exact recurrence data for one odd dimension.
#[derive(Debug, Clone)]
pub struct DimensionTable {
    pub n: usize,
    /// Rational `q_k`; the closed form carries an extra `π^{−(n−1)/2}`.
    pub exact: Vec<Ratio<i128>>,
    /// `q_k (−i)^k π^{−(n−1)/2}` in floating point.
    closed: Vec<Complex64>,
    /// Series of the jump: `K_n(λ,r) − K_n(−λ,r) = i λ^{n−2} Σ_k d_k (λr)^{2k}`.
    jump: Vec<f64>,
}

impl DimensionTable {
    pub fn pi_power(&self) -> i32 {
        ((self.n - 1) / 2) as i32
    }

    /// Coefficient of `(ζr)^k` in `Q_n`.
    pub fn closed_coefficients(&self) -> &[Complex64] {
        &self.closed
    }

    pub fn jump_coefficients(&self) -> &[f64] {
        &self.jump
    }

    /// `r^{2−n} Q_n(ζr)`: the kernel with its phase `e^{iζr}` removed.
    pub fn envelope(&self, zeta: f64, r: f64) -> Complex64 {
        self.q(Complex64::new(zeta * r, 0.0)) * r.powi(2 - self.n as i32)
    }

    /// Power series part of the jump: `Σ_k d_k (λr)^{2k}` (so the jump is
    /// `i λ^{n−2}` times this).
    pub fn jump_series(&self, s: f64) -> f64 {
        let s2 = s * s;
        self.jump.iter().rev().fold(0.0, |acc, &d| acc * s2 + d)
    }

    fn q(&self, w: Complex64) -> Complex64 {
        self.closed.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
    }

    /// `e^{iζr} r^{2−n} Q_n(ζr)`.
    fn kernel(&self, zeta: Complex64, r: f64) -> Complex64 {
        let power = r.powi(2 - self.n as i32);
        if zeta == Complex64::new(0.0, 0.0) {
            return self.closed[0] * power;
        }
        let w = zeta * r;
        (Complex64::i() * w).exp() * self.q(w) * power
    }

    /// `K_n(ζ, r) e^{−iζ₀ r}` for a reference frequency `ζ₀` (real).
    fn kernel_shifted(&self, zeta: Complex64, shift: f64, r: f64) -> Complex64 {
        let power = r.powi(2 - self.n as i32);
        let w = zeta * r;
        let phase = Complex64::i() * (zeta - shift) * r;
        let e = if phase == Complex64::new(0.0, 0.0) { Complex64::new(1.0, 0.0) } else { phase.exp() };
        e * self.q(w) * power
    }

    fn jump(&self, lambda: f64, r: f64) -> Complex64 {
        let s = lambda * r;
        if s < jump_series_limit(self.n) {
            Complex64::new(0.0, lambda.powi(self.n as i32 - 2) * self.jump_series(s))
        } else {
            let zp = Complex64::new(lambda, 0.0);
            self.kernel(zp, r) - self.kernel(-zp, r)
        }
    }
}

fn build_tables() -> Vec<DimensionTable> {
    let count = (MAX_DIMENSION - 3) / 2 + 1;
    let mut tables = Vec::with_capacity(count);

    // n = 3: Q_3 = 1/(4π), jump = (i/2π) sin(λr)/r
    let mut exact = vec![Ratio::new(1i128, 4)];
    let mut jump: Vec<f64> = {
        let len = JUMP_TERMS + count;
        let mut d = Vec::with_capacity(len);
        let mut term = 1.0 / (2.0 * PI);
        for k in 0..len {
            d.push(term);
            term *= -1.0 / (((2 * k + 2) * (2 * k + 3)) as f64);
        }
        d
    };

    for idx in 0..count {
        let n = 3 + 2 * idx;
        let pi_scale = PI.powi(-(((n - 1) / 2) as i32));
        let mut closed = Vec::with_capacity(exact.len());
        let mut phase = Complex64::new(1.0, 0.0);
        for q in &exact {
            let value = *q.numer() as f64 / *q.denom() as f64;
            closed.push(phase * value * pi_scale);
            phase *= -Complex64::i();
        }
        tables.push(DimensionTable {
            n,
            exact: exact.clone(),
            closed,
            jump: jump.iter().take(JUMP_TERMS).copied().collect(),
        });

        // raise to n + 2
        let nm2 = n as i128 - 2;
        let mut next = Vec::with_capacity(exact.len() + 1);
        for k in 0..=exact.len() {
            let current = if k < exact.len() { exact[k] * (nm2 - k as i128) } else { Ratio::from_integer(0) };
            let prev = if k > 0 { exact[k - 1] } else { Ratio::from_integer(0) };
            next.push((current + prev) / 2);
        }
        exact = next;
        jump = (0..jump.len() - 1).map(|k| -((k + 1) as f64) / PI * jump[k + 1]).collect();
    }
    tables
}

static TABLES: OnceLock<Vec<DimensionTable>> = OnceLock::new();

/// Coefficient table for odd `n`, built on first use and shared afterwards.
pub fn dimension_table(n: usize) -> Result<&'static DimensionTable> {
    if n < 3 || n % 2 == 0 || n > MAX_DIMENSION {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(&TABLES.get_or_init(build_tables)[(n - 3) / 2])
}

fn check_distance(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("distance r = {r} must be > 0")));
    }
    Ok(())
}

/// Kernel of `(−Δ − ζ²)^{−1}` at distance `r`; `R_0^±(λ²)` is `ζ = ±λ`.
pub fn schrodinger_kernel(n: usize, zeta: Complex64, r: f64) -> Result<KernelValue> {
    let table = dimension_table(n)?;
    check_distance(r)?;
    if zeta.im < 0.0 {
        return Err(Error::Branch(zeta.im));
    }
    Ok(KernelValue::exact(table.kernel(zeta, r)))
}

/// `[R_0^+ − R_0^−](λ²)` at distance `r ≥ 0`. Finite at `r = 0`, where
/// the singular parts of the two boundary values cancel.
pub fn resolvent_jump(n: usize, lambda: f64, r: f64) -> Result<Complex64> {
    let table = dimension_table(n)?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("distance r = {r} must be >= 0")));
    }
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("lambda = {lambda} must be >= 0")));
    }
    Ok(table.jump(lambda, r))
}

/// Poly-harmonic free resolvent `((−Δ)^m − λ^{2m})^{−1}` for odd `n`, via
/// the splitting over the `m`-th roots of unity.
#[derive(Debug, Clone)]
pub struct Resolvent {
    n: usize,
    m: usize,
    table: &'static DimensionTable,
    /// `(ω_ℓ, e^{iπℓ/m})` for `ℓ = 1..m`.
    branches: Vec<(Complex64, Complex64)>,
}

impl Resolvent {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        let table = dimension_table(n)?;
        if m == 0 {
            return Err(Error::InvalidParams("operator order m must be >= 1".into()));
        }
        let branches = (1..m)
            .map(|l| {
                let omega = Complex64::from_polar(1.0, 2.0 * PI * l as f64 / m as f64);
                let root = Complex64::from_polar(1.0, PI * l as f64 / m as f64);
                (omega, root)
            })
            .collect();
        Ok(Resolvent { n, m, table, branches })
    }

    pub fn from_params(params: &ModelParams) -> Result<Self> {
        Self::new(params.n, params.m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &'static DimensionTable {
        self.table
    }

    /// Branch point `ζ_ℓ`: `±λ` for `ℓ = 0`, `λ e^{iπℓ/m}` otherwise.
    pub fn branch_point(&self, sign: Sign, lambda: f64, l: usize) -> Complex64 {
        if l == 0 {
            Complex64::new(sign.factor() * lambda, 0.0)
        } else {
            self.branches[l - 1].1 * lambda
        }
    }

    pub fn root_of_unity(&self, l: usize) -> Complex64 {
        if l == 0 { Complex64::new(1.0, 0.0) } else { self.branches[l - 1].0 }
    }

    fn prefactor(&self, lambda: f64) -> f64 {
        1.0 / (self.m as f64 * lambda.powi(2 * self.m as i32 - 2))
    }

    /// Single term `ω_ℓ K_n(ζ_ℓ, r) / (m λ^{2m−2})` of the splitting sum.
    pub fn branch_term(&self, sign: Sign, lambda: f64, l: usize, r: f64) -> Complex64 {
        let zeta = self.branch_point(sign, lambda, l);
        self.root_of_unity(l) * self.table.kernel(zeta, r) * self.prefactor(lambda)
    }

    /// `𝓡_0^±(λ^{2m})(r)`.
    pub fn kernel(&self, sign: Sign, lambda: f64, r: f64) -> Complex64 {
        (0..self.m).map(|l| self.branch_term(sign, lambda, l, r)).sum()
    }

    /// `e^{∓iλr} 𝓡_0^±(λ^{2m})(r)`: the kernel with its outgoing or incoming
    /// oscillation removed, a smooth amplitude in `λ`.
    pub fn factored(&self, sign: Sign, lambda: f64, r: f64) -> Complex64 {
        let shift = sign.factor() * lambda;
        let mut sum = self.table.kernel_shifted(Complex64::new(shift, 0.0), shift, r);
        for &(omega, root) in &self.branches {
            sum += omega * self.table.kernel_shifted(root * lambda, shift, r);
        }
        sum * self.prefactor(lambda)
    }

    /// `[𝓡_0^+ − 𝓡_0^−](λ^{2m})(r)`, finite down to `r = 0`.
    pub fn jump(&self, lambda: f64, r: f64) -> Complex64 {
        self.table.jump(lambda, r) * self.prefactor(lambda)
    }
}

const FIRST: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
const SECOND: [f64; 5] = [-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];

/// `f'' + (n−1)/r f'` by eighth-order centered differences with step `h`.
fn radial_laplacian<F: Fn(f64) -> Complex64>(f: &F, n: usize, r: f64, h: f64) -> Complex64 {
    let mut d1 = Complex64::new(0.0, 0.0);
    let mut d2 = f(r) * SECOND[0];
    for k in 1..=4 {
        let (plus, minus) = (f(r + k as f64 * h), f(r - k as f64 * h));
        d1 += (plus - minus) * FIRST[k - 1];
        d2 += (plus + minus) * SECOND[k];
    }
    d2 / (h * h) + d1 * ((n - 1) as f64 / (r * h))
}

/// Relative residual `|((−Δ)^m − λ^{2m}) u| / |λ^{2m} u|` of the radial
/// profile `u = 𝓡_0^±(λ^{2m})(·)` at `r`, with `Δ` applied by finite
/// differences. Requires `r` well away from `0`.
pub fn radial_residual(resolvent: &Resolvent, sign: Sign, lambda: f64, r: f64) -> f64 {
    // balances the eighth-order truncation against rounding amplified by
    // the 2m-fold differencing
    let scale = 0.5 * f64::EPSILON.powf(1.0 / (8 + 2 * resolvent.m) as f64);
    let h = scale * r.min(1.0 / lambda);
    fn apply(res: &Resolvent, sign: Sign, lambda: f64, r: f64, h: f64, depth: usize) -> Complex64 {
        if depth == 0 {
            res.kernel(sign, lambda, r)
        } else {
            let inner = |x: f64| apply(res, sign, lambda, x, h, depth - 1);
            radial_laplacian(&inner, res.n, r, h)
        }
    }
    let u = resolvent.kernel(sign, lambda, r);
    let lap = apply(resolvent, sign, lambda, r, h, resolvent.m);
    let sign_m = if resolvent.m % 2 == 0 { 1.0 } else { -1.0 };
    let target = u * lambda.powi(2 * resolvent.m as i32);
    (lap * sign_m - target).norm() / target.norm()
}

/// `𝓡_0^±(λ^{2m})(r)` for the parameters' `(n, m)`.
pub fn poly_resolvent_kernel(params: &ModelParams, sp: SpectralPoint, r: f64) -> Result<KernelValue> {
    let resolvent = Resolvent::from_params(params)?;
    check_distance(r)?;
    Ok(KernelValue::exact(resolvent.kernel(sp.sign, sp.lambda, r)))
}

/// The symbol `ω^±(s) = 𝓡_0^±(1)(s) e^{∓is}`, i.e. the exact kernel with
/// its phase and the power `λ^{n−2m}` factored out (λ = 1).
pub fn symbol_omega(params: &ModelParams, sign: Sign, s: f64) -> Result<Complex64> {
    let resolvent = Resolvent::from_params(params)?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("symbol argument s = {s} must be > 0")));
    }
    Ok(resolvent.factored(sign, 1.0, s))
}

/// Leading constant `c_±` in `ω^±(s) = c_± s^{(1−n)/2} + O(s^{−(1+n)/2})`.
pub fn symbol_leading_constant(params: &ModelParams, sign: Sign) -> Result<Complex64> {
    let table = dimension_table(params.n)?;
    let top = table.exact.len() - 1;
    let q = table.exact[top];
    let value = *q.numer() as f64 / *q.denom() as f64 * PI.powi(-table.pi_power());
    let phase = (Complex64::new(0.0, -sign.factor())).powu(top as u32);
    Ok(phase * value / params.m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn base_case_three_dimensions() {
        let k = schrodinger_kernel(3, Complex64::new(1.0, 0.0), 1.0).unwrap();
        let expected = Complex64::new(0.0, 1.0).exp() / (4.0 * PI);
        assert!(close(k.value, expected, 1e-15));
        assert_eq!(k.err_estimate, 0.0);
    }

    #[test]
    fn five_dimensional_closed_forms() {
        let k0 = schrodinger_kernel(5, Complex64::new(0.0, 0.0), 1.0).unwrap();
        // Γ(n/2 − 1)/(4π^{n/2}) with n = 5
        let gamma_three_halves = PI.sqrt() / 2.0;
        let classical = gamma_three_halves / (4.0 * PI.powf(2.5));
        assert!((k0.value.re - 1.0 / (8.0 * PI * PI)).abs() < 1e-17);
        assert!((k0.value.re - classical).abs() < 1e-17);

        for &(lambda, r) in &[(1.0, 1.0), (2.5, 0.3), (0.7, 4.0)] {
            let k = schrodinger_kernel(5, Complex64::new(lambda, 0.0), r).unwrap();
            let s = lambda * r;
            let expected = Complex64::new(0.0, s).exp() * Complex64::new(1.0, -s) / (8.0 * PI * PI * r.powi(3));
            assert!(close(k.value, expected, 1e-14));
        }
    }

    #[test]
    fn rational_coefficients_follow_recurrence() {
        let t5 = dimension_table(5).unwrap();
        assert_eq!(t5.exact, vec![Ratio::new(1, 8), Ratio::new(1, 8)]);
        let t7 = dimension_table(7).unwrap();
        // (3 q_0)/2, (2 q_1 + q_0)/2, q_1/2 with q = (1/8, 1/8)
        assert_eq!(t7.exact, vec![Ratio::new(3, 16), Ratio::new(3, 16), Ratio::new(1, 16)]);
    }

    #[test]
    fn error_paths() {
        assert_eq!(schrodinger_kernel(4, Complex64::new(1.0, 0.0), 1.0), Err(Error::UnsupportedDimension(4)));
        assert!(matches!(schrodinger_kernel(5, Complex64::new(1.0, 0.0), 0.0), Err(Error::Domain(_))));
        assert!(matches!(schrodinger_kernel(5, Complex64::new(1.0, -0.1), 1.0), Err(Error::Branch(_))));
        assert!(SpectralPoint::new(0.0, Sign::Plus).is_err());
        let params = ModelParams::with_dimension(5, 1).unwrap();
        assert!(symbol_omega(&params, Sign::Plus, -1.0).is_err());
    }

    #[test]
    fn jump_series_matches_closed_form_near_switch() {
        for n in (3..=MAX_DIMENSION).step_by(2) {
            let table = dimension_table(n).unwrap();
            let switch = jump_series_limit(n);
            for &s in &[switch - 0.5, switch, switch + 0.5] {
                let one = Complex64::new(s, 0.0);
                let closed = table.kernel(one, 1.0) - table.kernel(-one, 1.0);
                let s2 = s * s;
                let series = table.jump.iter().rev().fold(0.0, |acc, &d| acc * s2 + d);
                let series = Complex64::new(0.0, s.powi(n as i32 - 2) * series);
                assert!(
                    (closed - series).norm() <= 5e-11 * series.norm(),
                    "n={n} s={s}: closed {closed} series {series}"
                );
            }
        }
    }

    #[test]
    fn jump_on_diagonal_is_spectral_density() {
        // iπ|S^{n−1}|λ^{n−2}/(2π)^n with |S^4| = 8π²/3
        let j = resolvent_jump(5, 2.0, 0.0).unwrap();
        let expected = PI * (8.0 * PI * PI / 3.0) * 8.0 / (2.0 * PI).powi(5);
        assert!((j.im - expected).abs() < 1e-15 && j.re == 0.0);
    }

    #[test]
    fn m_equal_one_reduces_to_schrodinger() {
        let params = ModelParams::with_dimension(7, 1).unwrap();
        for &sign in &[Sign::Plus, Sign::Minus] {
            let sp = SpectralPoint::new(1.7, sign).unwrap();
            let a = poly_resolvent_kernel(&params, sp, 0.9).unwrap().value;
            let b = schrodinger_kernel(7, Complex64::new(sign.factor() * 1.7, 0.0), 0.9).unwrap().value;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn second_order_roots_and_branches() {
        let res = Resolvent::new(9, 2).unwrap();
        assert!(close(res.root_of_unity(0), Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(res.root_of_unity(1), Complex64::new(-1.0, 0.0), 1e-15));
        assert!(close(res.branch_point(Sign::Minus, 3.0, 0), Complex64::new(-3.0, 0.0), 1e-15));
        assert!(close(res.branch_point(Sign::Plus, 3.0, 1), Complex64::new(0.0, 3.0), 1e-15));
    }

    #[test]
    fn factored_kernel_matches_definition() {
        let res = Resolvent::new(9, 2).unwrap();
        for &sign in &[Sign::Plus, Sign::Minus] {
            let (lambda, r) = (2.0, 1.3);
            let direct = res.kernel(sign, lambda, r) * Complex64::new(0.0, -sign.factor() * lambda * r).exp();
            assert!(close(res.factored(sign, lambda, r), direct, 1e-13));
        }
    }

    #[test]
    fn symbol_of_three_dimensional_kernel() {
        let params = ModelParams { n: 3, ..ModelParams::with_dimension(5, 1).unwrap() };
        for &s in &[0.1, 1.0, 37.0] {
            let w = symbol_omega(&params, Sign::Plus, s).unwrap();
            assert!(close(w, Complex64::new(1.0 / (4.0 * PI * s), 0.0), 1e-14));
        }
        let c = symbol_leading_constant(&params, Sign::Plus).unwrap();
        assert!(close(c, Complex64::new(1.0 / (4.0 * PI), 0.0), 1e-15));
    }
}
