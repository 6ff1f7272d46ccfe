//! Radial potentials fed to the Born kernel.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cutoff::CutoffSpec;
use crate::error::{Error, Result};
use crate::oscillatory::cm;
use crate::params::ModelParams;

/// A radial function `V(|z|)` with compact annular support.
pub trait RadialProfile: Sync {
    fn value(&self, rho: f64) -> Complex64;

    /// Interval of `|z|` outside which the profile vanishes.
    fn support(&self) -> (f64, f64);

    /// Upper bound for `|d(arg V)/dρ|` on the support; sizes the radial rule.
    fn max_frequency(&self) -> f64;
}

/// `k = 2m/(2m−1)`, the power of `|z|` in the tuned phase.
pub(crate) fn phase_power(m: usize) -> f64 {
    let m = m as f64;
    2.0 * m / (2.0 * m - 1.0)
}

fn tuned_frequency(params: &ModelParams, big_l: f64) -> f64 {
    let k = phase_power(params.m);
    cm(params.m).abs() * big_l * k * (1.0 + params.delta).powf(k - 1.0)
}

/// `V_L(z) = cos(c_m L|z|^{2m/(2m−1)}) ρ_δ(|z|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoughPotential {
    pub params: ModelParams,
    pub big_l: f64,
    pub rho: CutoffSpec,
}

impl RoughPotential {
    pub fn new(params: &ModelParams, big_l: f64) -> Result<Self> {
        params.validate()?;
        if !(big_l > 0.0 && big_l.is_finite()) {
            return Err(Error::Domain(format!("scale L = {big_l} must be > 0")));
        }
        Ok(RoughPotential { params: *params, big_l, rho: CutoffSpec::rho_delta(params.delta)? })
    }

    pub fn radial(&self, rho: f64) -> f64 {
        let w = self.rho.value(rho);
        if w == 0.0 {
            return 0.0;
        }
        (cm(self.params.m) * self.big_l * rho.powf(phase_power(self.params.m))).cos() * w
    }
}

impl RadialProfile for RoughPotential {
    fn value(&self, rho: f64) -> Complex64 {
        Complex64::new(self.radial(rho), 0.0)
    }

    fn support(&self) -> (f64, f64) {
        self.rho.support
    }

    fn max_frequency(&self) -> f64 {
        tuned_frequency(&self.params, self.big_l)
    }
}

/// `V_L(z)` at a point of `R^n`.
pub fn potential_value(v: &RoughPotential, z: &[f64]) -> f64 {
    v.radial(z.iter().map(|c| c * c).sum::<f64>().sqrt())
}

/// The annular cutoff `ρ_δ` itself: the same support, no oscillation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpPotential {
    pub rho: CutoffSpec,
}

impl BumpPotential {
    pub fn new(delta: f64) -> Result<Self> {
        Ok(BumpPotential { rho: CutoffSpec::rho_delta(delta)? })
    }
}

impl RadialProfile for BumpPotential {
    fn value(&self, rho: f64) -> Complex64 {
        Complex64::new(self.rho.value(rho), 0.0)
    }

    fn support(&self) -> (f64, f64) {
        self.rho.support
    }

    fn max_frequency(&self) -> f64 {
        0.0
    }
}

/// One exponential half of `V_L`: `e^{∓ic_m L|z|^k} ρ_δ / 2`.
///
/// The coherent half (`−`) cancels the phase of the stationary `K^−`
/// integrand; the other half doubles it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPotential {
    pub rough: RoughPotential,
    pub coherent: bool,
}

impl HalfPotential {
    pub fn coherent(rough: RoughPotential) -> Self {
        HalfPotential { rough, coherent: true }
    }

    pub fn incoherent(rough: RoughPotential) -> Self {
        HalfPotential { rough, coherent: false }
    }
}

impl RadialProfile for HalfPotential {
    fn value(&self, rho: f64) -> Complex64 {
        let v = &self.rough;
        let w = v.rho.value(rho);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let phase = cm(v.params.m) * v.big_l * rho.powf(phase_power(v.params.m));
        let sign = if self.coherent { -1.0 } else { 1.0 };
        Complex64::from_polar(0.5 * w, sign * phase)
    }

    fn support(&self) -> (f64, f64) {
        self.rough.support()
    }

    fn max_frequency(&self) -> f64 {
        self.rough.max_frequency()
    }
}

/// Pointwise sum of two profiles.
pub struct SumProfile<'a>(pub &'a dyn RadialProfile, pub &'a dyn RadialProfile);

impl RadialProfile for SumProfile<'_> {
    fn value(&self, rho: f64) -> Complex64 {
        self.0.value(rho) + self.1.value(rho)
    }

    fn support(&self) -> (f64, f64) {
        let (a, b) = (self.0.support(), self.1.support());
        (a.0.min(b.0), a.1.max(b.1))
    }

    fn max_frequency(&self) -> f64 {
        self.0.max_frequency().max(self.1.max_frequency())
    }
}

/// `V ≡ 0`, carried on the default annulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPotential {
    pub support: (f64, f64),
}

impl RadialProfile for ZeroPotential {
    fn value(&self, _rho: f64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn support(&self) -> (f64, f64) {
        self.support
    }

    fn max_frequency(&self) -> f64 {
        0.0
    }
}

/// Potentials selectable in the growth experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    /// The tuned `V_L`.
    Rough,
    /// `ρ_δ` alone, independent of `L`.
    Bump,
}

impl PotentialKind {
    pub fn build(self, params: &ModelParams, big_l: f64) -> Result<Box<dyn RadialProfile>> {
        Ok(match self {
            PotentialKind::Rough => Box::new(RoughPotential::new(params, big_l)?),
            PotentialKind::Bump => Box::new(BumpPotential::new(params.delta)?),
        })
    }

    /// Real sampler of the profile on `[0, 2]`, for the Hölder estimator.
    pub fn sampler(self, params: &ModelParams, big_l: f64) -> Result<Box<dyn Fn(f64) -> f64 + Sync>> {
        Ok(match self {
            PotentialKind::Rough => {
                let v = RoughPotential::new(params, big_l)?;
                Box::new(move |x| v.radial(x))
            }
            PotentialKind::Bump => {
                let v = BumpPotential::new(params.delta)?;
                Box::new(move |x| v.rho.value(x))
            }
        })
    }
}

impl std::str::FromStr for PotentialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rough" => Ok(PotentialKind::Rough),
            "bump" => Ok(PotentialKind::Bump),
            other => Err(Error::Validation(format!("unknown potential {other:?} (rough | bump)"))),
        }
    }
}
