//! Brute-force reference quadrature, independent of the Levin engine.
//!
//! Each monotone piece of the phase is cut where `Φ` crosses a multiple of
//! `π/2` (the zeros of `cos Φ` and `sin Φ`), the sub-arcs are further
//! limited in length and in `σ log λ` excursion, and every arc gets a
//! 30-point Gauss–Legendre rule.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::PhaseAmplitudeIntegral;
use crate::error::{Error, Result};
use crate::kernels::KernelValue;
use crate::numerics::{gauss_integrate, gauss_legendre, CompensatedSum};

const MAX_ARCS: f64 = 1e6;
const LENGTH_DIVISIONS: f64 = 64.0;

/// `λ` in `[lo, hi]` with `Φ(λ) = level`, for `Φ` monotone on the bracket.
fn bisect<F: Fn(f64) -> f64>(phase: &F, mut lo: f64, mut hi: f64, level: f64) -> f64 {
    let increasing = phase(hi) >= phase(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (phase(mid) < level) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn integrate_oracle(integral: &PhaseAmplitudeIntegral) -> Result<KernelValue> {
    integral.validate()?;
    let (a, b) = integral.support;
    let phase = |x: f64| integral.phase(x);
    let f = |x: f64| integral.twisted_amplitude(x) * Complex64::from_polar(1.0, integral.phase(x));

    let pieces = integral.monotone_pieces();
    let mut cuts = Vec::new();
    let mut arcs = 0.0;
    for w in pieces.windows(2) {
        let (lo, hi) = (phase(w[0]), phase(w[1]));
        arcs += (hi - lo).abs() / FRAC_PI_2 + 1.0;
    }
    if arcs > MAX_ARCS {
        return Err(Error::Refused(format!("phase sweeps {arcs:.3e} quarter turns (limit {MAX_ARCS:e})")));
    }
    for w in pieces.windows(2) {
        let (u, v) = (w[0], w[1]);
        cuts.push(u);
        let (pu, pv) = (phase(u), phase(v));
        let (lo, hi) = (pu.min(pv), pu.max(pv));
        let first = (lo / FRAC_PI_2).floor() as i64 + 1;
        let last = (hi / FRAC_PI_2).ceil() as i64 - 1;
        let mut levels: Vec<f64> = (first..=last).map(|k| k as f64 * FRAC_PI_2).collect();
        if pv < pu {
            levels.reverse();
        }
        let mut left = u;
        for level in levels {
            let x = bisect(&phase, left, v, level);
            if x > left && x < v {
                cuts.push(x);
                left = x;
            }
        }
    }
    cuts.push(b);

    let fine = gauss_legendre(30);
    let coarse = gauss_legendre(20);
    let max_len = (b - a) / LENGTH_DIVISIONS;
    let mut sum = CompensatedSum::new();
    let mut err = 0.0;
    for w in cuts.windows(2) {
        let (u, v) = (w[0], w[1]);
        let mut pieces = ((v - u) / max_len).ceil().max(1.0);
        if integral.sigma != 0.0 {
            pieces = pieces.max((integral.sigma.abs() * (v / u).ln() / FRAC_PI_2).ceil());
        }
        let count = pieces as usize;
        let h = (v - u) / count as f64;
        for k in 0..count {
            let lo = u + h * k as f64;
            let hi = if k + 1 == count { v } else { u + h * (k + 1) as f64 };
            let high = gauss_integrate(fine, lo, hi, f);
            let low = gauss_integrate(coarse, lo, hi, f);
            sum.add(high);
            err += (high - low).norm();
        }
    }
    Ok(KernelValue { value: sum.total(), err_estimate: err })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_phase_matches_closed_form() {
        let w = 500.0;
        let amp = |_: f64| Complex64::new(1.0, 0.0);
        let it = PhaseAmplitudeIntegral::new(0.0, 1, w, 0.0, (0.0, 1.0), &amp);
        let v = integrate_oracle(&it).unwrap();
        let exact = (Complex64::new(0.0, w).exp() - 1.0) / Complex64::new(0.0, w);
        assert!((v.value - exact).norm() <= 1e-12 * exact.norm());
    }

    #[test]
    fn odd_amplitude_on_symmetric_interval_vanishes() {
        let amp = |x: f64| Complex64::new(x * (1.0 + x * x), 0.0);
        let it = PhaseAmplitudeIntegral::new(0.0, 1, 0.0, 0.0, (-1.0, 1.0), &amp);
        assert!(integrate_oracle(&it).unwrap().value.norm() < 1e-12);
        // an even quadratic phase keeps the integrand odd
        let it = PhaseAmplitudeIntegral::new(40.0, 1, 0.0, 0.0, (-1.0, 1.0), &amp);
        assert!(integrate_oracle(&it).unwrap().value.norm() < 1e-12);
    }

    #[test]
    fn refuses_pathological_phase() {
        let amp = |_: f64| Complex64::new(1.0, 0.0);
        let it = PhaseAmplitudeIntegral::new(0.0, 1, 1e9, 0.0, (0.0, 1.0), &amp);
        assert!(matches!(integrate_oracle(&it), Err(Error::Refused(_))));
    }
}
