//! Numerics for the exponential kernel
//!
//! `E_g(λ, w) = exp(-(1/π) ∫ g(u) / (conj(u - w)(u - λ)) da(u))`
//!
//! of a compactly supported density `0 <= g <= 1`, with `E(w, w) = 0` when
//! `(1/π) ∫ g |u - w|^-2 da` diverges.
//!
//! The core is generic over the scalar type ([`scalar::Real`], implemented for
//! `f32` and `f64`); the aliases below fix it to `f64` (and `f32` with an `F32`
//! suffix).
//!
//! ```
//! use expkernel::{eval_e, Density, Point};
//!
//! let g = Density::unit_disc();
//! let e = eval_e(&g, Point::new(0.5, 0.0), Point::new(0.0, 0.0), 1e-8).unwrap();
//! assert!((e.value - Point::new(0.25, 0.0)).norm() < 1e-7);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod analysis;
pub mod cauchy;
pub mod density;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod kernel;
pub mod quadrature;
pub mod rng;
pub mod scalar;
pub mod shift;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{eval_e, eval_e_disc, eval_e_signed_discs, eval_e_unit_disc, DiagonalCase};
pub use scalar::{Cx, Real};

pub type Point = Cx<f64>;
pub type Density = density::DensitySpec<f64>;
pub type Region = density::Region<f64>;
pub type Grid = density::Grid<f64>;
pub type KernelValue = kernel::KernelValue<f64>;
pub type QuadratureResult = quadrature::QuadratureResult<f64>;
pub type DiagonalMass = quadrature::DiagonalMass<f64>;
pub type MobiusDiscParams = kernel::MobiusDiscParams<f64>;
pub type CoeffVector = shift::CoeffVector<f64>;
pub type ShiftResolvent = shift::ShiftResolvent<f64>;
pub type RadialSchedule = analysis::RadialSchedule<f64>;
pub type FitResult = analysis::FitResult<f64>;
pub type H0Context = cauchy::H0Context<f64>;

pub type PointF32 = Cx<f32>;
pub type DensityF32 = density::DensitySpec<f32>;
pub type KernelValueF32 = kernel::KernelValue<f32>;
