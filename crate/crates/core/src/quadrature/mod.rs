//! Singular planar integrals of densities: the log-kernel `f_w(λ)`, the
//! diagonal mass, and Cauchy transforms.

pub mod adaptive;
pub mod planar;

use crate::density::DensitySpec;
use crate::error::{Error, Result};
use crate::scalar::{is_finite_point, Cx, Real};

pub use planar::{Kernel, Planar};

/// Default cap on the diagonal mass before it is declared divergent.
pub const DEFAULT_DIVERGENCE_THRESHOLD: f64 = 40.0;
/// Octave cap for the diagonal accumulation.
pub const MAX_OCTAVES: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: Cx<T>,
    pub error_estimate: T,
    pub cells: usize,
    pub evaluations: usize,
}

/// Outcome of `(1/π)∫ g(u)|u - w|^-2 da(u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagonalMass<T> {
    Finite { value: T, error_estimate: T },
    /// Accumulation passed the threshold; `partial_sum` is where it stopped.
    Divergent { partial_sum: T },
}

impl<T: Real> DiagonalMass<T> {
    pub fn is_divergent(&self) -> bool {
        matches!(self, DiagonalMass::Divergent { .. })
    }

    pub fn finite_value(&self) -> Option<T> {
        match *self {
            DiagonalMass::Finite { value, .. } => Some(value),
            DiagonalMass::Divergent { .. } => None,
        }
    }
}

pub(crate) fn check_tol<T: Real>(tol: T) -> Result<()> {
    if tol > T::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol.as_f64()))
    }
}

pub(crate) fn check_point<T: Real>(name: &str, z: Cx<T>) -> Result<()> {
    if is_finite_point(z) {
        Ok(())
    } else {
        Err(Error::InvalidPoint(format!("{name} = {z} is not finite")))
    }
}

fn finish<T: Real>(p: Planar<T>, scale: Cx<T>, tol: T) -> Result<QuadratureResult<T>> {
    let k = scale.norm();
    let value = p.value * scale;
    let error_estimate = p.error * k;
    if !p.converged || !(error_estimate <= tol * T::lit(2.0)) || !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::TolNotReached {
            value_re: value.re.as_f64(),
            value_im: value.im.as_f64(),
            error_estimate: error_estimate.as_f64(),
        });
    }
    Ok(QuadratureResult { value, error_estimate, cells: p.cells, evaluations: p.evaluations })
}

/// `f_w(λ) = -(1/π) ∫ g(u) / (conj(u - w)(u - λ)) da(u)`.
///
/// `λ = w` is accepted only when `g` vanishes near `w`; use
/// [`integrate_diagonal`] otherwise.
pub fn integrate_bi_singular<T: Real>(g: &DensitySpec<T>, w: Cx<T>, lambda: Cx<T>, tol: T) -> Result<QuadratureResult<T>> {
    check_tol(tol)?;
    check_point("w", w)?;
    check_point("lambda", lambda)?;
    let vanish = g.vanishing_radius(w);
    if lambda == w && vanish <= T::zero() {
        return Err(Error::InvalidPoint("lambda = w inside the support; use the diagonal integral".into()));
    }
    let pieces = g.pieces();
    let p = planar::integrate(&pieces, &Kernel::BiSingular { w, lambda }, tol * T::PI(), vanish);
    finish(p, Cx::new(-T::FRAC_1_PI(), T::zero()), tol)
}

/// `(1/π) ∫ m(u) g(u) / (conj(u - w)(u - λ)) da(u)` for a bounded multiplier `m`.
pub fn bi_singular_weighted<T, F>(g: &DensitySpec<T>, w: Cx<T>, lambda: Cx<T>, m: &F, tol: T) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(Cx<T>) -> Cx<T> + Sync,
{
    check_tol(tol)?;
    check_point("w", w)?;
    check_point("lambda", lambda)?;
    let vanish = g.vanishing_radius(w);
    if lambda == w && vanish <= T::zero() {
        return Err(Error::InvalidPoint("lambda = w inside the support".into()));
    }
    let pieces = g.pieces();
    let p = planar::integrate_weighted(&pieces, &Kernel::BiSingular { w, lambda }, m, tol * T::PI(), vanish);
    finish(p, Cx::new(T::FRAC_1_PI(), T::zero()), tol)
}

/// Cauchy transform `(1/π) ∫ f(u) / (u - λ) da(u)`; coefficients of `f` may be any bounded reals.
pub fn cauchy_transform<T: Real>(f: &DensitySpec<T>, lambda: Cx<T>, tol: T) -> Result<QuadratureResult<T>> {
    check_tol(tol)?;
    check_point("lambda", lambda)?;
    let p = planar::integrate(&f.pieces(), &Kernel::Cauchy { lambda }, tol * T::PI(), T::zero());
    finish(p, Cx::new(T::FRAC_1_PI(), T::zero()), tol)
}

/// Cauchy transform of `m·f` for a bounded pointwise multiplier `m`.
pub fn cauchy_transform_weighted<T, F>(f: &DensitySpec<T>, lambda: Cx<T>, m: &F, tol: T) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(Cx<T>) -> Cx<T> + Sync,
{
    check_tol(tol)?;
    check_point("lambda", lambda)?;
    let p = planar::integrate_weighted(&f.pieces(), &Kernel::Cauchy { lambda }, m, tol * T::PI(), T::zero());
    finish(p, Cx::new(T::FRAC_1_PI(), T::zero()), tol)
}

/// `(1/π) ∫ g(u) / conj(u - w) da(u)`.
pub fn conj_cauchy_transform<T: Real>(g: &DensitySpec<T>, w: Cx<T>, tol: T) -> Result<QuadratureResult<T>> {
    check_tol(tol)?;
    check_point("w", w)?;
    let p = planar::integrate(&g.pieces(), &Kernel::ConjCauchy { w }, tol * T::PI(), T::zero());
    finish(p, Cx::new(T::FRAC_1_PI(), T::zero()), tol)
}

/// `(1/π) ∫_{r_min <= |u-w| <= r_max} g(u) |u - w|^-2 da(u)`, `r_min > 0` unless `g` vanishes near `w`.
pub fn inverse_square_mass<T: Real>(g: &DensitySpec<T>, w: Cx<T>, r_min: T, r_max: T, tol: T) -> Result<QuadratureResult<T>> {
    check_tol(tol)?;
    check_point("w", w)?;
    let vanish = g.vanishing_radius(w);
    if !(r_min > T::zero()) && vanish <= T::zero() {
        return Err(Error::InvalidArgument("inner radius must be positive when g does not vanish at w".into()));
    }
    let kernel = Kernel::InverseSquare { w, r_min, r_max };
    let p = planar::integrate(&g.pieces(), &kernel, tol * T::PI(), vanish);
    finish(p, Cx::new(T::FRAC_1_PI(), T::zero()), tol)
}

/// `∫_{D(center, radius)} g da`.
pub fn disc_mass<T: Real>(g: &DensitySpec<T>, center: Cx<T>, radius: T, tol: T) -> Result<QuadratureResult<T>> {
    check_tol(tol)?;
    check_point("center", center)?;
    let p = planar::integrate(&g.pieces(), &Kernel::DiscArea { center, radius }, tol, T::zero());
    finish(p, Cx::new(T::one(), T::zero()), tol)
}

/// `(1/π) ∫ g(u) |u - w|^-2 da(u)`, accumulated over octaves
/// `R·2^-(k+1) <= |u - w| <= R·2^-k` from the farthest point of the support
/// inwards, stopping as divergent once the partial sum exceeds `divergence_threshold`.
pub fn integrate_diagonal<T: Real>(g: &DensitySpec<T>, w: Cx<T>, tol: T, divergence_threshold: T) -> Result<DiagonalMass<T>> {
    check_tol(tol)?;
    check_point("w", w)?;
    if !(divergence_threshold > T::zero()) {
        return Err(Error::InvalidArgument("divergence threshold must be positive".into()));
    }
    let pieces = g.pieces();
    let vanish = g.vanishing_radius(w);
    let outer = pieces
        .iter()
        .map(|(s, _)| s.max_distance(w))
        .fold(T::zero(), T::max);
    if pieces.is_empty() || outer <= vanish {
        return Ok(DiagonalMass::Finite { value: T::zero(), error_estimate: T::zero() });
    }
    let half = T::lit(0.5);
    let mut partial = Vec::new();
    let mut errors = Vec::new();
    let mut r_hi = outer;
    let mut quiet = 0usize;
    for k in 0..MAX_OCTAVES {
        let r_lo = r_hi * half;
        let octave_tol = tol * half.powi((k as i32 + 1).min(24));
        let kernel = Kernel::InverseSquare { w, r_min: r_lo.max(vanish), r_max: r_hi };
        let p = planar::integrate(&pieces, &kernel, octave_tol * T::PI(), vanish);
        let mass = p.value.re * T::FRAC_1_PI();
        partial.push(mass);
        errors.push(p.error * T::FRAC_1_PI());
        let sum = crate::sum::pairwise_sum(&partial);
        if sum > divergence_threshold {
            return Ok(DiagonalMass::Divergent { partial_sum: sum });
        }
        if r_lo <= vanish {
            let err = crate::sum::pairwise_sum(&errors);
            return Ok(DiagonalMass::Finite { value: sum.max(T::zero()), error_estimate: err });
        }
        // geometric decay test for densities that thin out towards w
        quiet = if mass.abs() <= tol / T::lit(16.0) { quiet + 1 } else { 0 };
        if quiet >= 3 {
            let err = crate::sum::pairwise_sum(&errors) + mass.abs() * T::lit(4.0);
            if err <= tol * T::lit(2.0) {
                return Ok(DiagonalMass::Finite { value: sum.max(T::zero()), error_estimate: err });
            }
        }
        r_hi = r_lo;
    }
    let sum = crate::sum::pairwise_sum(&partial);
    Err(Error::TolNotReached {
        value_re: sum.as_f64(),
        value_im: 0.0,
        error_estimate: f64::INFINITY,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Region;
    use approx::assert_relative_eq;

    type C = Cx<f64>;
    type D = DensitySpec<f64>;

    #[test]
    fn log_kernel_unit_disc_interior() {
        let r = integrate_bi_singular(&D::unit_disc(), C::new(0.0, 0.0), C::new(0.5, 0.0), 1e-10).unwrap();
        assert!((r.value.exp() - C::new(0.25, 0.0)).norm() < 1e-9);
        assert!(r.error_estimate <= 1e-10 * 2.0);
    }

    #[test]
    fn log_kernel_on_diagonal_outside() {
        let r = integrate_bi_singular(&D::unit_disc(), C::new(2.0, 0.0), C::new(2.0, 0.0), 1e-10).unwrap();
        assert_relative_eq!(r.value.re, 0.75f64.ln(), max_relative = 1e-9);
        assert!(r.value.im.abs() < 1e-12);
    }

    #[test]
    fn log_kernel_zero_density() {
        let r = integrate_bi_singular(&D::zero(), C::new(0.0, 0.0), C::new(0.5, 0.0), 1e-10).unwrap();
        assert_eq!(r.value, C::new(0.0, 0.0));
    }

    #[test]
    fn diagonal_inside_support_is_rejected() {
        let e = integrate_bi_singular(&D::unit_disc(), C::new(0.2, 0.0), C::new(0.2, 0.0), 1e-8);
        assert!(matches!(e, Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn diagonal_examples() {
        let g = D::unit_disc();
        match integrate_diagonal(&g, C::new(2.0, 0.0), 1e-10, 40.0).unwrap() {
            DiagonalMass::Finite { value, .. } => assert_relative_eq!(value, (4.0f64 / 3.0).ln(), max_relative = 1e-9),
            other => panic!("{other:?}"),
        }
        assert!(integrate_diagonal(&g, C::new(0.0, 0.0), 1e-10, 40.0).unwrap().is_divergent());
        let ann = D::zero().with_term(Region::annulus(C::new(0.0, 0.0), 0.5, 1.0), 1.0);
        match integrate_diagonal(&ann, C::new(0.0, 0.0), 1e-10, 40.0).unwrap() {
            DiagonalMass::Finite { value, .. } => assert_relative_eq!(value, 2.0 * 2f64.ln(), max_relative = 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_boundary_point_diverges() {
        assert!(integrate_diagonal(&D::unit_disc(), C::new(1.0, 0.0), 1e-8, 40.0).unwrap().is_divergent());
    }

    #[test]
    fn cauchy_transform_examples() {
        let g = D::unit_disc();
        let r = cauchy_transform(&g, C::new(0.0, 0.0), 1e-10).unwrap();
        assert!(r.value.norm() < 1e-10);
        let r = cauchy_transform(&g, C::new(2.0, 0.0), 1e-10).unwrap();
        assert!((r.value - C::new(-0.5, 0.0)).norm() < 1e-10);
        let r = cauchy_transform(&g, C::new(0.5, 0.0), 1e-10).unwrap();
        assert!((r.value - C::new(-0.5, 0.0)).norm() < 1e-10);
        let lam = C::new(0.3, -0.4);
        let r = cauchy_transform(&g, lam, 1e-10).unwrap();
        assert!((r.value + lam.conj()).norm() < 1e-10);
    }

    #[test]
    fn zero_tolerance_is_rejected() {
        assert!(integrate_bi_singular(&D::unit_disc(), C::new(0.0, 0.0), C::new(0.5, 0.0), 0.0).is_err());
    }
}
