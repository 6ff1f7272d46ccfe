//! Small numerical helpers shared across modules.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

/// Neumaier-compensated running sum of complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

fn neumaier(sum: &mut f64, carry: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *carry += (*sum - t) + x;
    } else {
        *carry += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        neumaier(&mut self.sum.re, &mut self.carry.re, x.re);
        neumaier(&mut self.sum.im, &mut self.carry.im, x.im);
    }

    pub fn total(&self) -> Complex64 {
        self.sum + self.carry
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Compensated sum of a real sequence.
pub fn sum_real<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let (mut sum, mut carry) = (0.0, 0.0);
    for x in iter {
        neumaier(&mut sum, &mut carry, x);
    }
    sum + carry
}

/// `n` points spaced evenly in `log` between `lo` and `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
        }
    }
}

/// `2^k` for `k` in `lo..=hi`.
pub fn dyadic(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|k| 2f64.powi(k)).collect()
}

/// Surface area of the unit sphere `S^{d}` in `R^{d+1}`.
pub fn sphere_area(d: usize) -> f64 {
    // |S^0| = 2, |S^1| = 2π, |S^{d}| = 2π/(d−1) |S^{d−2}|
    let mut area = if d % 2 == 0 { 2.0 } else { 2.0 * std::f64::consts::PI };
    let mut k = if d % 2 == 0 { 0 } else { 1 };
    while k < d {
        k += 2;
        area *= 2.0 * std::f64::consts::PI / (k - 1) as f64;
    }
    area
}

/// Gauss–Legendre `(node, weight)` pairs on `[−1, 1]`, cached per degree.
pub fn gauss_legendre(deg: usize) -> &'static [(f64, f64)] {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static [(f64, f64)]>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().expect("gauss rule cache poisoned");
    cache.entry(deg).or_insert_with(|| {
        let rule = gauss_quad::GaussLegendre::new(deg.max(2)).expect("degree >= 2");
        Box::leak(rule.into_node_weight_pairs().into_boxed_slice())
    })
}

/// `∫_a^b f` by a fixed Gauss–Legendre rule.
pub fn gauss_integrate<F: FnMut(f64) -> Complex64>(rule: &[(f64, f64)], a: f64, b: f64, mut f: F) -> Complex64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    rule.iter().map(|&(x, w)| f(c + h * x) * w).sum::<Complex64>() * h
}
