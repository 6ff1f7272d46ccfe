//! Model parameters shared by every experiment.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Lebesgue exponent of the experiment.
///
/// `Infinity` is the `L^∞` wave-operator case, which pairs the kernel
/// against `L¹`-normalized test functions. `Finite(p)` with `p ∈ [1, 2]` is
/// the `L^p → L^{p'}` dispersive exponent; `Finite(1)` and `Infinity`
/// describe the same experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Infinity,
    Finite(f64),
}

impl Exponent {
    /// Exponent of the normalization of the concentrated test function.
    pub fn pairing(self) -> f64 {
        match self {
            Exponent::Infinity => 1.0,
            Exponent::Finite(p) => p,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => f.write_str("inf"),
            Exponent::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "INF" | "∞" => Ok(Exponent::Infinity),
            other => other
                .parse::<f64>()
                .map(Exponent::Finite)
                .map_err(|_| Error::Validation(format!("cannot parse exponent p = {other:?}"))),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(p) => Ok(Exponent::Finite(p)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// The tuple `(n, m, α, p, δ, C)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub p: Exponent,
    pub delta: f64,
    pub c_ball: f64,
}

pub const DEFAULT_DELTA: f64 = 0.1;
pub const DEFAULT_C_BALL: f64 = 64.0;

impl ModelParams {
    /// Validated constructor. Only the structural constraints are checked
    /// here; see [`ModelParams::validate_counterexample`] for the growth regime.
    pub fn new(n: usize, m: usize, alpha: f64, p: Exponent, delta: f64, c_ball: f64) -> Result<Self> {
        let params = ModelParams { n, m, alpha, p, delta, c_ball };
        params.validate()?;
        Ok(params)
    }

    /// `(n, m)` with `α = 0`, `p = ∞` and the default `δ`, `C`.
    pub fn with_dimension(n: usize, m: usize) -> Result<Self> {
        Self::new(n, m, 0.0, Exponent::Infinity, DEFAULT_DELTA, DEFAULT_C_BALL)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 || self.n % 2 == 0 {
            return Err(Error::UnsupportedDimension(self.n));
        }
        if self.m == 0 {
            return Err(Error::InvalidParams("operator order m must be >= 1".into()));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParams(format!("alpha = {} must be finite and >= 0", self.alpha)));
        }
        if let Exponent::Finite(p) = self.p {
            if !(1.0..=2.0).contains(&p) {
                return Err(Error::InvalidParams(format!("p = {p} must lie in [1, 2] or be inf")));
            }
        }
        if !(self.delta > 0.0 && self.delta <= 0.25) {
            return Err(Error::InvalidParams(format!("delta = {} must lie in (0, 1/4]", self.delta)));
        }
        if !(self.c_ball >= 16.0 && self.c_ball.is_finite()) {
            return Err(Error::InvalidParams(format!("c_ball = {} must be >= 16", self.c_ball)));
        }
        Ok(())
    }

    /// Growth exponent of `|a_{1,L}|` before dividing by the Hölder norm:
    /// `(n+1)/2 − 2m` for `p = ∞`, `n/p + (1−n)/2 − 2m` for finite `p`.
    pub fn threshold(&self) -> f64 {
        let n = self.n as f64;
        let m = self.m as f64;
        match self.p {
            Exponent::Infinity => (n + 1.0) / 2.0 - 2.0 * m,
            Exponent::Finite(p) => n / p + (1.0 - n) / 2.0 - 2.0 * m,
        }
    }

    /// Predicted log-log slope of `|a_{1,L}(V_L)| / ‖V_L‖_{C^α}`.
    pub fn target_slope(&self) -> f64 {
        self.threshold() - self.alpha
    }

    /// Checks the hypotheses under which the first Born term is predicted
    /// to grow: `n > 4m − 1`, a positive threshold, and `α` strictly below it.
    pub fn validate_counterexample(&self) -> Result<()> {
        self.validate()?;
        if self.n + 1 <= 4 * self.m {
            return Err(Error::InvalidParams(format!(
                "n = {} must exceed 4m - 1 = {}",
                self.n,
                4 * self.m - 1
            )));
        }
        let threshold = self.threshold();
        if threshold <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "p = {} gives a non-positive growth threshold {threshold}",
                self.p
            )));
        }
        if self.alpha >= threshold {
            return Err(Error::AboveThreshold { alpha: self.alpha, threshold });
        }
        Ok(())
    }

    /// Radius `1/(C L)` of the ball carrying the test function.
    pub fn concentration_radius(&self, big_l: f64) -> f64 {
        1.0 / (self.c_ball * big_l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_match_formulae() {
        let p = ModelParams::with_dimension(5, 1).unwrap();
        assert_eq!(p.threshold(), 1.0);
        let p = ModelParams::with_dimension(9, 2).unwrap();
        assert_eq!(p.threshold(), 1.0);
        let p = ModelParams::new(7, 1, 0.5, Exponent::Infinity, 0.1, 64.0).unwrap();
        assert_eq!(p.target_slope(), 1.5);
        let p = ModelParams::new(5, 1, 0.0, Exponent::Finite(1.1), 0.1, 64.0).unwrap();
        assert!((p.threshold() - (5.0 / 1.1 - 4.0)).abs() < 1e-14);
        // p = 1 and p = inf describe the same pairing
        let p1 = ModelParams::new(7, 1, 0.0, Exponent::Finite(1.0), 0.1, 64.0).unwrap();
        let pinf = ModelParams::new(7, 1, 0.0, Exponent::Infinity, 0.1, 64.0).unwrap();
        assert_eq!(p1.threshold(), pinf.threshold());
    }

    #[test]
    fn rejects_bad_structure() {
        assert_eq!(ModelParams::with_dimension(4, 1), Err(Error::UnsupportedDimension(4)));
        assert!(ModelParams::with_dimension(5, 0).is_err());
        assert!(ModelParams::new(5, 1, 0.0, Exponent::Finite(2.5), 0.1, 64.0).is_err());
        assert!(ModelParams::new(5, 1, 0.0, Exponent::Infinity, 0.3, 64.0).is_err());
        assert!(ModelParams::new(5, 1, 0.0, Exponent::Infinity, 0.1, 8.0).is_err());
    }

    #[test]
    fn counterexample_range_has_distinct_diagnostic() {
        let p = ModelParams::new(5, 1, 2.0, Exponent::Infinity, 0.1, 64.0).unwrap();
        assert!(matches!(p.validate_counterexample(), Err(Error::AboveThreshold { .. })));
        // n = 7 is not above 4m - 1 for m = 2
        let p = ModelParams::with_dimension(7, 2).unwrap();
        assert!(matches!(p.validate_counterexample(), Err(Error::InvalidParams(_))));
        // p = 2 makes the threshold negative
        let p = ModelParams::new(5, 1, 0.0, Exponent::Finite(2.0), 0.1, 64.0).unwrap();
        assert!(matches!(p.validate_counterexample(), Err(Error::InvalidParams(_))));
        assert!(ModelParams::with_dimension(9, 2).unwrap().validate_counterexample().is_ok());
    }

    #[test]
    fn exponent_parses_and_serializes() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("1.1".parse::<Exponent>().unwrap(), Exponent::Finite(1.1));
        assert!("x".parse::<Exponent>().is_err());
        let json = serde_json::to_string(&Exponent::Infinity).unwrap();
        assert_eq!(json, "\"inf\"");
        let back: Exponent = serde_json::from_str("1.5").unwrap();
        assert_eq!(back, Exponent::Finite(1.5));
    }
}
