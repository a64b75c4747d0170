//! The discs `D_{λ,α}` and `Δ_{λ,β}` on which the real and imaginary parts of
//! the log-kernel integrate in closed form, and the tail masses built from them.

use crate::density::DensitySpec;
use crate::error::{Error, Result};
use crate::quadrature::{check_point, integrate_bi_singular};
use crate::scalar::{Cx, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscFamily<T> {
    /// `D_{λ,α}`: centre `(w + λ + α(λ - w))/2`, radius `|(λ - w)(1 - α)|/2`.
    Alpha(T),
    /// `Δ_{λ,β}`, `β ≠ 0`: centre `λ + i(λ - w)β/2`, radius `|β(λ - w)/2|`.
    Beta(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusDiscParams<T> {
    pub family: DiscFamily<T>,
    pub lambda: Cx<T>,
    pub w: Cx<T>,
}

impl<T: Real> MobiusDiscParams<T> {
    pub fn alpha(alpha: T, lambda: Cx<T>, w: Cx<T>) -> Self {
        Self { family: DiscFamily::Alpha(alpha), lambda, w }
    }

    pub fn beta(beta: T, lambda: Cx<T>, w: Cx<T>) -> Result<Self> {
        if beta == T::zero() {
            return Err(Error::InvalidArgument("beta must be non-zero".into()));
        }
        Ok(Self { family: DiscFamily::Beta(beta), lambda, w })
    }

    pub fn center(&self) -> Cx<T> {
        let half = T::lit(0.5);
        let d = self.lambda - self.w;
        match self.family {
            DiscFamily::Alpha(a) => (self.w + self.lambda + d * a) * half,
            DiscFamily::Beta(b) => self.lambda + Cx::<T>::i() * d * (b * half),
        }
    }

    pub fn radius(&self) -> T {
        let half = T::lit(0.5);
        let d = (self.lambda - self.w).norm();
        match self.family {
            DiscFamily::Alpha(a) => (d * (T::one() - a)).abs() * half,
            DiscFamily::Beta(b) => (b * d).abs() * half,
        }
    }

    /// Indicator of the disc, or `g ≡ 0` when the disc is empty.
    pub fn density(&self) -> DensitySpec<T> {
        let r = self.radius();
        if r > T::zero() {
            DensitySpec::disc(self.center(), r, T::one())
        } else {
            DensitySpec::zero()
        }
    }

    /// `f_w(λ)` for the disc indicator, by quadrature.
    pub fn log_kernel(&self, tol: T) -> Result<Cx<T>> {
        check_point("lambda", self.lambda)?;
        check_point("w", self.w)?;
        if self.lambda == self.w {
            return Err(Error::InvalidPoint("lambda and w must differ".into()));
        }
        if self.radius() <= T::zero() {
            return Ok(Cx::new(T::zero(), T::zero()));
        }
        Ok(integrate_bi_singular(&self.density(), self.w, self.lambda, tol)?.value)
    }
}

/// `-(1/π) ∫_{D_{λ,α}} Re[(u-w)/(u-λ)] |u-w|^-2 da = ln(2/(1+|α|))`, for any `λ ≠ w`.
pub fn disc_real_integral<T: Real>(alpha: T) -> T {
    (T::lit(2.0) / (T::one() + alpha.abs())).ln()
}

/// `-(1/π) ∫_{Δ_{λ,β}} Im[(u-w)/(u-λ)] |u-w|^-2 da = arctan(β/2)`, `β ≠ 0`.
pub fn disc_imag_integral<T: Real>(beta: T) -> Result<T> {
    if beta == T::zero() {
        return Err(Error::InvalidArgument("beta must be non-zero".into()));
    }
    Ok((beta * T::lit(0.5)).atan())
}

fn check_tail_n<T: Real>(n: T) -> Result<()> {
    if n > T::one() && n.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("tail parameter N must exceed 1".into()))
    }
}

/// `(1/π) ∫_{|Re T| > N} |Re T| |u-w|^-2 da` with `T = (u-w)/(u-λ)` and `g ≡ 1`:
/// `ln((2N+2)/(2N+1)) + ln((2N-1)/(2N-2))`.
pub fn tail_bound_real<T: Real>(n: T) -> Result<T> {
    check_tail_n(n)?;
    let one = T::one();
    let two = T::lit(2.0);
    Ok(((two * n + two) / (two * n + one)).ln() + ((two * n - one) / (two * n - two)).ln())
}

/// `(1/π) ∫_{|Im T| > N} |Im T| |u-w|^-2 da` with `g ≡ 1`: `2·arctan(1/(2N))`.
pub fn tail_bound_imag<T: Real>(n: T) -> Result<T> {
    check_tail_n(n)?;
    Ok(T::lit(2.0) * (T::one() / (T::lit(2.0) * n)).atan())
}

/// Quadrature of the real tail: the two discs `D_{λ,N/(N+1)}` (where `Re T < -N`)
/// and `D_{λ,N/(N-1)}` (where `Re T > N`), each sign-resolved.
pub fn tail_real_quadrature<T: Real>(n: T, lambda: Cx<T>, w: Cx<T>, tol: T) -> Result<T> {
    check_tail_n(n)?;
    let one = T::one();
    let below = MobiusDiscParams::alpha(n / (n + one), lambda, w).log_kernel(tol)?;
    let above = MobiusDiscParams::alpha(n / (n - one), lambda, w).log_kernel(tol)?;
    Ok(below.re - above.re)
}

/// Quadrature of the imaginary tail over `Δ_{λ,1/N}` (`Im T < -N`) and `Δ_{λ,-1/N}` (`Im T > N`).
pub fn tail_imag_quadrature<T: Real>(n: T, lambda: Cx<T>, w: Cx<T>, tol: T) -> Result<T> {
    check_tail_n(n)?;
    let b = T::one() / n;
    let below = MobiusDiscParams::beta(b, lambda, w)?.log_kernel(tol)?;
    let above = MobiusDiscParams::beta(-b, lambda, w)?.log_kernel(tol)?;
    Ok(below.im - above.im)
}
