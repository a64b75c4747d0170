//! Numerical evaluation of `E_g(λ, w)`.

use serde::{Deserialize, Serialize};

use crate::density::DensitySpec;
use crate::error::{Error, Result};
use crate::quadrature::{
    check_point, check_tol, integrate_bi_singular, integrate_diagonal, inverse_square_mass, DiagonalMass,
    DEFAULT_DIVERGENCE_THRESHOLD,
};
use crate::scalar::{Cx, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalCase {
    OffDiagonal,
    DiagonalFinite,
    DiagonalDivergent,
}

impl std::fmt::Display for DiagonalCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DiagonalCase::OffDiagonal => "off diagonal",
            DiagonalCase::DiagonalFinite => "diagonal finite",
            DiagonalCase::DiagonalDivergent => "diagonal divergent",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue<T> {
    pub value: Cx<T>,
    pub diagonal_case: DiagonalCase,
    pub error_estimate: T,
}

fn exp_error<T: Real>(value: Cx<T>, err: T) -> T {
    value.norm() * err.exp_m1()
}

fn tol_not_reached_through_exp(e: Error) -> Error {
    match e {
        Error::TolNotReached { value_re, value_im, error_estimate } => {
            let v = num_complex::Complex64::new(value_re, value_im).exp();
            Error::TolNotReached {
                value_re: v.re,
                value_im: v.im,
                error_estimate: v.norm() * error_estimate.exp_m1(),
            }
        }
        other => other,
    }
}

/// `E_g(λ, w)`: `exp f_w(λ)` off the diagonal; on it, `0` when the diagonal
/// mass diverges and `exp(-I)` when it is finite.
pub fn eval_e<T: Real>(g: &DensitySpec<T>, lambda: Cx<T>, w: Cx<T>, tol: T) -> Result<KernelValue<T>> {
    eval_e_with_threshold(g, lambda, w, tol, T::lit(DEFAULT_DIVERGENCE_THRESHOLD))
}

pub fn eval_e_with_threshold<T: Real>(
    g: &DensitySpec<T>,
    lambda: Cx<T>,
    w: Cx<T>,
    tol: T,
    divergence_threshold: T,
) -> Result<KernelValue<T>> {
    check_tol(tol)?;
    check_point("lambda", lambda)?;
    check_point("w", w)?;
    if lambda == w {
        return match integrate_diagonal(g, w, tol, divergence_threshold).map_err(tol_not_reached_through_exp)? {
            DiagonalMass::Divergent { .. } => Ok(KernelValue {
                value: Cx::new(T::zero(), T::zero()),
                diagonal_case: DiagonalCase::DiagonalDivergent,
                error_estimate: T::zero(),
            }),
            DiagonalMass::Finite { value, error_estimate } => {
                let e = Cx::new((-value).exp(), T::zero());
                Ok(KernelValue {
                    value: e,
                    diagonal_case: DiagonalCase::DiagonalFinite,
                    error_estimate: exp_error(e, error_estimate),
                })
            }
        };
    }
    let f = integrate_bi_singular(g, w, lambda, tol).map_err(tol_not_reached_through_exp)?;
    let e = f.value.exp();
    Ok(KernelValue {
        value: e,
        diagonal_case: DiagonalCase::OffDiagonal,
        error_estimate: exp_error(e, f.error_estimate),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrelimBound<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

/// `|E(λ, w)| <= 2 exp(-(1/2π) ∫_{|u-w| >= |λ-w|} g |u-w|^-2 da)`.
pub fn prelim_bound_check<T: Real>(g: &DensitySpec<T>, lambda: Cx<T>, w: Cx<T>, tol: T) -> Result<PrelimBound<T>> {
    if lambda == w {
        return Err(Error::InvalidPoint("lambda and w must differ".into()));
    }
    let e = eval_e(g, lambda, w, tol)?;
    let r = (lambda - w).norm();
    let mass = inverse_square_mass(g, w, r, T::infinity(), tol)?;
    let half = T::lit(0.5);
    let rhs = T::lit(2.0) * (-half * mass.value.re).exp();
    let rhs_err = rhs * (half * mass.error_estimate).exp_m1();
    let lhs = e.value.norm();
    let holds = lhs <= rhs + e.error_estimate + rhs_err + tol;
    Ok(PrelimBound { lhs, rhs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Region;
    use crate::kernel::eval_e_unit_disc;

    type C = Cx<f64>;

    #[test]
    fn spec_examples() {
        let g = DensitySpec::<f64>::unit_disc();
        let cases = [
            (C::new(0.5, 0.0), C::new(0.0, 0.0), C::new(0.25, 0.0)),
            (C::new(2.0, 0.0), C::new(3.0, 0.0), C::new(5.0 / 6.0, 0.0)),
            (C::new(0.5, 0.0), C::new(2.0, 0.0), C::new(0.75, 0.0)),
        ];
        for (lambda, w, want) in cases {
            let v = eval_e(&g, lambda, w, 1e-8).unwrap();
            assert_eq!(v.diagonal_case, DiagonalCase::OffDiagonal);
            assert!((v.value - want).norm() < 1e-7, "{lambda} {w}: {}", v.value);
            assert!((v.value - want).norm() <= 3.0 * v.error_estimate + 1e-12);
        }
        let v = eval_e(&g, C::new(0.3, 0.0), C::new(0.3, 0.0), 1e-6).unwrap();
        assert_eq!(v.diagonal_case, DiagonalCase::DiagonalDivergent);
        assert_eq!(v.value, C::new(0.0, 0.0));
        let v = eval_e(&g, C::new(2.0, 0.0), C::new(2.0, 0.0), 1e-8).unwrap();
        assert_eq!(v.diagonal_case, DiagonalCase::DiagonalFinite);
        assert!((v.value.re - 0.75).abs() < 1e-7);
    }

    #[test]
    fn zero_density_is_one() {
        let g = DensitySpec::<f64>::zero();
        let v = eval_e(&g, C::new(0.1, 0.2), C::new(-0.3, 0.0), 1e-8).unwrap();
        assert_eq!(v.value, C::new(1.0, 0.0));
        let v = eval_e(&g, C::new(0.1, 0.2), C::new(0.1, 0.2), 1e-8).unwrap();
        assert_eq!(v.diagonal_case, DiagonalCase::DiagonalFinite);
        assert_eq!(v.value, C::new(1.0, 0.0));
    }

    #[test]
    fn hole_factorisation() {
        let g = DensitySpec::<f64>::unit_disc().with_term(Region::disk(C::new(0.5, 0.0), 0.2), -1.0);
        let (lambda, w) = (C::new(2.0, 0.0), C::new(3.0, 0.0));
        let v = eval_e(&g, lambda, w, 1e-8).unwrap();
        let want = crate::kernel::eval_e_signed_discs(&g, lambda, w).unwrap();
        assert!((v.value - want).norm() < 1e-6);
        let v = eval_e(&g, C::new(-0.2, 0.3), C::new(0.5, 0.05), 1e-8).unwrap();
        let want = crate::kernel::eval_e_signed_discs(&g, C::new(-0.2, 0.3), C::new(0.5, 0.05)).unwrap();
        assert!((v.value - want).norm() < 1e-6);
    }

    #[test]
    fn scaled_disc_by_quadrature() {
        let g = DensitySpec::<f64>::disc(C::new(0.0, 0.0), 2.0, 1.0);
        let v = eval_e(&g, C::new(1.0, 0.0), C::new(0.0, 0.0), 1e-8).unwrap();
        assert!((v.value - C::new(0.25, 0.0)).norm() < 1e-7);
        let g = DensitySpec::<f64>::unit_disc();
        let v = eval_e(&g, C::new(4.0, 0.0), C::new(6.0, 0.0), 1e-8).unwrap();
        assert!((v.value - eval_e_unit_disc(C::new(4.0, 0.0), C::new(6.0, 0.0)).unwrap()).norm() < 1e-7);
    }

    #[test]
    fn prelim_bound() {
        let g = DensitySpec::<f64>::unit_disc();
        for k in 1..=10 {
            let r = 0.5f64.powi(k);
            let b = prelim_bound_check(&g, C::new(r, 0.0), C::new(0.0, 0.0), 1e-9).unwrap();
            assert!(b.holds, "k = {k}");
            assert!((b.lhs - r * r).abs() < 1e-7);
            assert!((b.rhs - 2.0 * r).abs() < 1e-7);
        }
        let b = prelim_bound_check(&DensitySpec::<f64>::zero(), C::new(0.5, 0.0), C::new(0.0, 0.0), 1e-9).unwrap();
        assert_eq!((b.lhs, b.rhs, b.holds), (1.0, 2.0, true));
    }
}
