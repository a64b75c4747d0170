//! Truncated Hardy-space model of the unilateral shift.
//!
//! Elements of `H²` are Taylor coefficient vectors at `0`. The local resolvent
//! at `λ` is `(z - λ)/(1 - conj(λ) z)` for `|λ| < 1` and the constant
//! `-1/conj(λ)` for `|λ| >= 1`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{eval_e_unit_disc, MobiusDiscParams};
use crate::quadrature::{check_point, check_tol};
use crate::scalar::{Cx, Real};

/// Truncation used when none is given.
pub const DEFAULT_TRUNCATION: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffVector<T> {
    pub coeffs: Vec<Cx<T>>,
}

impl<T: Real> CoeffVector<T> {
    pub fn new(coeffs: Vec<Cx<T>>) -> Self {
        Self { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm_sqr(&self) -> T {
        let terms: Vec<T> = self.coeffs.iter().map(|c| c.norm_sqr()).collect();
        crate::sum::pairwise_sum(&terms)
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Value of the truncated series at `z`.
    pub fn eval(&self, z: Cx<T>) -> Cx<T> {
        self.coeffs.iter().rev().fold(Cx::zero(), |acc, &c| acc * z + c)
    }
}

/// `Σ a_n conj(b_n)`, zero-padding the shorter vector.
pub fn h2_inner<T: Real>(a: &CoeffVector<T>, b: &CoeffVector<T>) -> Cx<T> {
    let terms: Vec<Cx<T>> = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| *x * y.conj()).collect();
    crate::sum::pairwise_sum(&terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Inside,
    Outside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftResolvent<T> {
    pub lambda: Cx<T>,
    pub regime: Regime,
    pub vector: CoeffVector<T>,
}

impl<T: Real> ShiftResolvent<T> {
    /// `sqrt(Σ_{n >= N} |c_n|²)` of the coefficients dropped by truncation.
    pub fn tail_norm(&self) -> T {
        match self.regime {
            Regime::Outside => T::zero(),
            Regime::Inside => {
                let rho2 = self.lambda.norm_sqr();
                let n = self.vector.truncation() as i32;
                ((T::one() - rho2) * rho2.powi(n - 1)).sqrt()
            }
        }
    }

    /// Norm of the untruncated resolvent: `1` inside the disc, `1/|λ|` outside.
    pub fn exact_norm(&self) -> T {
        match self.regime {
            Regime::Inside => T::one(),
            Regime::Outside => T::one() / self.lambda.norm(),
        }
    }
}

pub fn resolvent_coeffs<T: Real>(lambda: Cx<T>, n: usize) -> Result<ShiftResolvent<T>> {
    check_point("lambda", lambda)?;
    if n < 2 {
        return Err(Error::InvalidArgument("truncation must be at least 2".into()));
    }
    let mut coeffs = vec![Cx::zero(); n];
    let regime = if lambda.norm_sqr() < T::one() {
        coeffs[0] = -lambda;
        let lc = lambda.conj();
        let mut c = Cx::new(T::one() - lambda.norm_sqr(), T::zero());
        for slot in coeffs.iter_mut().skip(1) {
            *slot = c;
            c *= lc;
        }
        Regime::Inside
    } else {
        coeffs[0] = -lambda.conj().inv();
        Regime::Outside
    };
    Ok(ShiftResolvent { lambda, regime, vector: CoeffVector::new(coeffs) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftCheck<T> {
    pub shift_value: Cx<T>,
    pub closed_form: Cx<T>,
    pub residual: T,
    pub tail: T,
}

/// Compares `1 - ⟨R_w, R_λ⟩` with the unit-disc closed form `E_D(λ, w)`.
pub fn check_shift_identity<T: Real>(lambda: Cx<T>, w: Cx<T>, n: usize, tol: T) -> Result<ShiftCheck<T>> {
    check_tol(tol)?;
    let rl = resolvent_coeffs(lambda, n)?;
    let rw = resolvent_coeffs(w, n)?;
    let tail = rl.tail_norm() * rw.tail_norm();
    if tail > tol {
        return Err(Error::TailTooLarge { tail: tail.as_f64(), tol: tol.as_f64() });
    }
    let shift_value = Cx::new(T::one(), T::zero()) - h2_inner(&rw.vector, &rl.vector);
    let closed_form = eval_e_unit_disc(lambda, w)?;
    Ok(ShiftCheck { shift_value, closed_form, residual: (shift_value - closed_form).norm(), tail })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusCheck<T> {
    /// `exp` of the quadrature of the log-kernel over `D_{λ,α}`.
    pub quadrature: Cx<T>,
    /// `1 - ⟨R_{s_α}, R_1⟩` with `s_α = (1+α)/(α-1)`.
    pub shift_value: Cx<T>,
    /// `2/(1 + |α|)`.
    pub closed_form: T,
    pub residual: T,
}

/// The disc `D_{λ,α}` is the image of the unit disc under `z ↦ (λ - c_α) z + c_α`,
/// which sends `1 ↦ λ` and `s_α ↦ w`.
pub fn check_mobius_transfer<T: Real>(alpha: T, lambda: Cx<T>, w: Cx<T>, tol: T) -> Result<MobiusCheck<T>> {
    check_tol(tol)?;
    if !(alpha < T::one()) {
        return Err(Error::InvalidArgument("alpha must be below 1".into()));
    }
    if lambda == w {
        return Err(Error::InvalidPoint("lambda and w must differ".into()));
    }
    let quadrature = MobiusDiscParams::alpha(alpha, lambda, w).log_kernel(tol)?.exp();
    let s = (T::one() + alpha) / (alpha - T::one());
    let r_s = resolvent_coeffs(Cx::new(s, T::zero()), 2)?;
    let r_1 = resolvent_coeffs(Cx::new(T::one(), T::zero()), 2)?;
    let shift_value = Cx::new(T::one(), T::zero()) - h2_inner(&r_s.vector, &r_1.vector);
    let closed_form = T::lit(2.0) / (T::one() + alpha.abs());
    Ok(MobiusCheck { quadrature, shift_value, closed_form, residual: (quadrature - shift_value).norm() })
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Cx<f64>;

    #[test]
    fn coefficients() {
        let r = resolvent_coeffs(C::new(0.0, 0.0), 4).unwrap();
        assert_eq!(r.vector.coeffs, vec![C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)]);
        let r = resolvent_coeffs(C::new(2.0, 0.0), 3).unwrap();
        assert_eq!(r.regime, Regime::Outside);
        assert_eq!(r.vector.coeffs, vec![C::new(-0.5, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)]);
        let r = resolvent_coeffs(C::new(0.5, 0.0), 3).unwrap();
        assert_eq!(r.vector.coeffs, vec![C::new(-0.5, 0.0), C::new(0.75, 0.0), C::new(0.375, 0.0)]);
        assert_eq!(resolvent_coeffs(C::new(1.0, 0.0), 2).unwrap().regime, Regime::Outside);
        assert!(resolvent_coeffs(C::new(0.5, 0.0), 1).is_err());
    }

    #[test]
    fn series_matches_function() {
        let lambda = C::new(0.3, -0.4);
        let r = resolvent_coeffs(lambda, 128).unwrap();
        let z = C::new(0.2, 0.5);
        let want = (z - lambda) / (C::new(1.0, 0.0) - lambda.conj() * z);
        assert!((r.vector.eval(z) - want).norm() < 1e-14);
    }

    #[test]
    fn inner_products() {
        let r0 = resolvent_coeffs(C::new(0.0, 0.0), 64).unwrap();
        let rh = resolvent_coeffs(C::new(0.5, 0.0), 64).unwrap();
        assert_eq!(h2_inner(&r0.vector, &r0.vector), C::new(1.0, 0.0));
        assert_eq!(h2_inner(&r0.vector, &rh.vector), C::new(0.75, 0.0));
        let rm = resolvent_coeffs(C::new(-0.5, 0.0), 64).unwrap();
        let r1 = resolvent_coeffs(C::new(1.0, 0.0), 64).unwrap();
        assert_eq!(C::new(1.0, 0.0) - h2_inner(&rm.vector, &r1.vector), C::new(1.5, 0.0));
    }

    #[test]
    fn identity() {
        let c = check_shift_identity(C::new(0.5, 0.0), C::new(0.0, 0.0), 64, 1e-12).unwrap();
        assert!(c.residual < 1e-12);
        let c = check_shift_identity(C::new(2.0, 0.0), C::new(3.0, 0.0), 64, 1e-12).unwrap();
        assert!(c.residual < 1e-15);
        let c = check_shift_identity(C::new(0.3, 0.0), C::new(0.3, 0.0), 64, 1e-12).unwrap();
        assert!(c.residual < 1e-12);
        let c = check_shift_identity(C::new(0.3, 0.6), C::new(1.5, -0.2), 8, 1e-12).unwrap();
        assert!(c.residual < 1e-14);
        let c = check_shift_identity(C::new(1.5, -0.2), C::new(0.3, 0.6), 8, 1e-12).unwrap();
        assert!(c.residual < 1e-14);
        assert!(matches!(
            check_shift_identity(C::new(0.9, 0.0), C::new(0.9, 0.0), 8, 1e-12),
            Err(Error::TailTooLarge { .. })
        ));
    }

    #[test]
    fn norms() {
        let r = resolvent_coeffs(C::new(0.6, 0.0), 256).unwrap();
        assert!((r.vector.norm() - 1.0).abs() < 1e-12);
        let r = resolvent_coeffs(C::new(0.0, 2.5), 4).unwrap();
        assert!((r.vector.norm() - 0.4).abs() < 1e-15);
        assert_eq!(r.exact_norm(), 0.4);
    }

    #[test]
    fn mobius() {
        let (lambda, w) = (C::new(0.2, 0.1), C::new(-0.4, 0.3));
        let m = check_mobius_transfer(-1.0 / 3.0, lambda, w, 1e-9).unwrap();
        assert!((m.shift_value - C::new(1.5, 0.0)).norm() < 1e-15);
        assert!(m.residual < 1e-7);
        let m = check_mobius_transfer(0.0, lambda, w, 1e-9).unwrap();
        assert!((m.quadrature - C::new(2.0, 0.0)).norm() < 1e-7);
        let m = check_mobius_transfer(0.5, lambda, w, 1e-9).unwrap();
        assert!((m.quadrature.re - m.closed_form).abs() < 1e-7);
        let m = check_mobius_transfer(1.0 - 1e-6, lambda, w, 1e-9).unwrap();
        assert!((m.quadrature - C::new(1.0, 0.0)).norm() < 1e-5);
        assert!(check_mobius_transfer(1.0, lambda, w, 1e-9).is_err());
    }
}
