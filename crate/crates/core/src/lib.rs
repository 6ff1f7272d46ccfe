//! Resolvent kernels, oscillatory quadrature and first-Born-term growth
//! experiments for poly-harmonic operators `(−Δ)^m + V` in odd dimensions.

pub mod born;
pub mod cli;
pub mod cutoff;
pub mod dispersive;
pub mod error;
pub mod kernels;
pub mod numerics;
pub mod oscillatory;
pub mod params;
pub mod sweep;

pub use error::{Error, Result};
pub use kernels::{KernelValue, Sign, SpectralPoint};
pub use params::{Exponent, ModelParams};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/oscillatory.md")]
    mod oscillatory {}
    #[doc = include_str!("../../../book/src/dispersive.md")]
    mod dispersive {}
    #[doc = include_str!("../../../book/src/born.md")]
    mod born {}
    #[doc = include_str!("../../../book/src/holder.md")]
    mod holder {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    mod sweeps {}
}
