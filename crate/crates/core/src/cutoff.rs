//! Smooth plateau bumps.
//!
//! Every cutoff is `1` on a closed plateau, `0` off an open support and
//! glued by the standard smooth step `1 / (1 + exp(1/x − 1/(1−x)))` on the
//! two transition zones.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutoffKind {
    /// Spectral window `ψ` of the Born kernel.
    Psi,
    /// `φ(μ) = μ^k ψ(μ^{2m})`.
    Phi,
    /// Annular profile of the potential.
    RhoDelta,
    /// Frequency window of the free dispersive kernel.
    Chi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffSpec {
    pub support: (f64, f64),
    pub plateau: (f64, f64),
    pub kind: CutoffKind,
}

/// Smooth step on `[0, 1]`: `0` at and below `0`, `1` at and above `1`.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        1.0 / (1.0 + (1.0 / x - 1.0 / (1.0 - x)).exp())
    }
}

impl CutoffSpec {
    pub fn new(support: (f64, f64), plateau: (f64, f64), kind: CutoffKind) -> Result<Self> {
        let ok = support.0 < plateau.0 && plateau.0 <= plateau.1 && plateau.1 < support.1;
        if !ok || !support.0.is_finite() || !support.1.is_finite() {
            return Err(Error::InvalidParams(format!(
                "cutoff plateau {plateau:?} must lie strictly inside support {support:?}"
            )));
        }
        Ok(CutoffSpec { support, plateau, kind })
    }

    /// `ψ`: support `[1/2, 2]`, plateau `[3/4, 3/2]`.
    pub fn psi() -> Self {
        CutoffSpec { support: (0.5, 2.0), plateau: (0.75, 1.5), kind: CutoffKind::Psi }
    }

    /// Dyadic frequency window with the same shape as `ψ`.
    pub fn dyadic_chi() -> Self {
        CutoffSpec { kind: CutoffKind::Chi, ..Self::psi() }
    }

    /// Window spanning `2w` octaves of plateau: support `[2^{−w−1}, 2^{w+1}]`.
    pub fn wide_chi(octaves: u32) -> Self {
        let w = octaves as i32;
        CutoffSpec {
            support: (2f64.powi(-w - 1), 2f64.powi(w + 1)),
            plateau: (2f64.powi(-w), 2f64.powi(w)),
            kind: CutoffKind::Chi,
        }
    }

    /// `ρ_δ`: support `(1−δ, 1+δ)`, plateau `[1−δ/2, 1+δ/2]`.
    pub fn rho_delta(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParams(format!("delta = {delta} must lie in (0, 1)")));
        }
        Self::new((1.0 - delta, 1.0 + delta), (1.0 - delta / 2.0, 1.0 + delta / 2.0), CutoffKind::RhoDelta)
    }

    /// The same bump composed with `x ↦ x / factor`.
    pub fn dilate(&self, factor: f64) -> Self {
        CutoffSpec {
            support: (self.support.0 * factor, self.support.1 * factor),
            plateau: (self.plateau.0 * factor, self.plateau.1 * factor),
            kind: self.kind,
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        let (a, b) = self.support;
        let (c, d) = self.plateau;
        if x <= a || x >= b {
            0.0
        } else if x < c {
            smooth_step((x - a) / (c - a))
        } else if x <= d {
            1.0
        } else {
            smooth_step((b - x) / (b - d))
        }
    }

    /// Narrower of the two transition zones; sets the amplitude scale for quadrature sizing.
    pub fn transition_width(&self) -> f64 {
        (self.plateau.0 - self.support.0).min(self.support.1 - self.plateau.1)
    }
}
