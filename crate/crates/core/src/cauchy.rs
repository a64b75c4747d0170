//! Cauchy-transform algebra: product and power identities, the binomial
//! identity for `h₀ = g/conj(u)`, and the representation
//! `E(λ,w) = 1 - (1/π) ∫ E(u,w) g(u) / (conj(u-w)(u-λ)) da(u)`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::analysis::{estimate_density, RadialSchedule};
use crate::density::DensitySpec;
use crate::error::{Error, Result};
use crate::kernel::eval_e;
use crate::quadrature::{
    bi_singular_weighted, cauchy_transform, cauchy_transform_weighted, check_point, check_tol, conj_cauchy_transform,
    integrate_bi_singular, integrate_diagonal, DEFAULT_DIVERGENCE_THRESHOLD,
};
use crate::scalar::{Cx, Real};

/// Ratio of outer to inner tolerance in nested transforms.
pub const INNER_TOL_RATIO: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformSample<T> {
    pub point: Cx<T>,
    pub value: Cx<T>,
    pub error_estimate: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResidual<T> {
    pub point: Cx<T>,
    pub lhs: Cx<T>,
    pub rhs: Cx<T>,
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck<T> {
    /// Largest residual over the points.
    pub residual: T,
    /// Sum of propagated quadrature error estimates at the worst point.
    pub error_budget: T,
    pub points: Vec<PointResidual<T>>,
}

impl<T: Real> IdentityCheck<T> {
    fn from_points(points: Vec<(PointResidual<T>, T)>) -> Self {
        let mut residual = T::zero();
        let mut error_budget = T::zero();
        for (p, b) in &points {
            residual = residual.max(p.residual);
            error_budget = error_budget.max(*b);
        }
        Self { residual, error_budget, points: points.into_iter().map(|p| p.0).collect() }
    }
}

/// Memo of an inner transform evaluated at outer quadrature nodes.
struct NodeMemo<T: Real> {
    values: Mutex<HashMap<(u64, u64), Cx<T>>>,
    max_error: Mutex<T>,
    failure: Mutex<Option<Error>>,
}

impl<T: Real> NodeMemo<T> {
    fn new() -> Self {
        Self { values: Mutex::new(HashMap::new()), max_error: Mutex::new(T::zero()), failure: Mutex::new(None) }
    }

    fn get(&self, u: Cx<T>, eval: impl FnOnce(Cx<T>) -> Result<(Cx<T>, T)>) -> Cx<T> {
        let key = (u.re.as_f64().to_bits(), u.im.as_f64().to_bits());
        if let Some(v) = self.values.lock().unwrap().get(&key) {
            return *v;
        }
        let (value, err) = match eval(u) {
            Ok(v) => v,
            Err(Error::TolNotReached { value_re, value_im, error_estimate }) => {
                (Cx::new(T::lit(value_re), T::lit(value_im)), T::lit(error_estimate))
            }
            Err(e) => {
                self.failure.lock().unwrap().get_or_insert(e);
                (Cx::zero(), T::zero())
            }
        };
        {
            let mut m = self.max_error.lock().unwrap();
            *m = m.max(err);
        }
        self.values.lock().unwrap().insert(key, value);
        value
    }

    fn max_error(&self) -> T {
        *self.max_error.lock().unwrap()
    }

    fn check(&self) -> Result<()> {
        match self.failure.lock().unwrap().take() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

/// Upper bound for `sup |f|` from the term coefficients and grid values.
fn amplitude<T: Real>(f: &DensitySpec<T>) -> T {
    let mut a = f.terms.iter().fold(T::zero(), |acc, t| acc + t.coeff.abs());
    if let Some(grid) = &f.grid {
        let m = grid.values.iter().flatten().fold(T::zero(), |acc, v| acc.max(v.abs()));
        a += m;
    }
    a
}

/// `sup_λ (1/π) ∫ |f(u)| / |u - λ| da <= 2 R sup|f|`, the gain applied to inner errors.
fn transform_gain<T: Real>(f: &DensitySpec<T>) -> T {
    T::lit(2.0) * f.support_radius * amplitude(f)
}

/// Bound on `(1/π) ∫ |f(u)| / (|u - w||u - λ|) da` over the support disc.
fn bi_singular_gain<T: Real>(f: &DensitySpec<T>, w: Cx<T>, lambda: Cx<T>) -> T {
    let d = (lambda - w).norm();
    let reach = f.support_radius + (f.support_center - w).norm().max((f.support_center - lambda).norm());
    let two = T::lit(2.0);
    amplitude(f) * two * (T::one() + (two * reach / d).ln().max(T::zero()))
}

fn inner_tol<T: Real>(tol: T) -> T {
    tol / T::lit(INNER_TOL_RATIO)
}

pub fn cauchy_sample<T: Real>(f: &DensitySpec<T>, lambda: Cx<T>, tol: T) -> Result<TransformSample<T>> {
    let r = cauchy_transform(f, lambda, tol)?;
    Ok(TransformSample { point: lambda, value: r.value, error_estimate: r.error_estimate })
}

/// Residual of `ĥ k̂ = (ĥ k)^ + (h k̂)^` at each point.
pub fn check_product_identity<T: Real>(h: &DensitySpec<T>, k: &DensitySpec<T>, points: &[Cx<T>], tol: T) -> Result<IdentityCheck<T>> {
    check_tol(tol)?;
    let itol = inner_tol(tol);
    let h_memo = NodeMemo::new();
    let k_memo = NodeMemo::new();
    let mut out = Vec::with_capacity(points.len());
    for &lambda in points {
        check_point("lambda", lambda)?;
        let hh = cauchy_transform(h, lambda, tol)?;
        let kk = cauchy_transform(k, lambda, tol)?;
        let h_hat = |u: Cx<T>| h_memo.get(u, |u| cauchy_transform(h, u, itol).map(|r| (r.value, r.error_estimate)));
        let k_hat = |u: Cx<T>| k_memo.get(u, |u| cauchy_transform(k, u, itol).map(|r| (r.value, r.error_estimate)));
        let hk = cauchy_transform_weighted(k, lambda, &h_hat, tol)?;
        let kh = cauchy_transform_weighted(h, lambda, &k_hat, tol)?;
        h_memo.check()?;
        k_memo.check()?;
        let lhs = hh.value * kk.value;
        let rhs = hk.value + kh.value;
        let budget = hh.error_estimate * kk.value.norm()
            + kk.error_estimate * hh.value.norm()
            + hk.error_estimate
            + kh.error_estimate
            + h_memo.max_error() * transform_gain(k)
            + k_memo.max_error() * transform_gain(h);
        out.push((PointResidual { point: lambda, lhs, rhs, residual: (lhs - rhs).norm() }, budget));
    }
    Ok(IdentityCheck::from_points(out))
}

/// Largest order accepted by [`check_power_identity`].
pub const MAX_POWER: u32 = 4;

/// Residual of `ĥ^N = N (ĥ^{N-1} h)^` at each point.
pub fn check_power_identity<T: Real>(h: &DensitySpec<T>, n: u32, points: &[Cx<T>], tol: T) -> Result<IdentityCheck<T>> {
    check_tol(tol)?;
    if n == 0 || n > MAX_POWER {
        return Err(Error::InvalidArgument(format!("power must lie in 1..={MAX_POWER}")));
    }
    let itol = inner_tol(tol);
    let memo = NodeMemo::new();
    let nn = T::from_u32(n).unwrap();
    let mut out = Vec::with_capacity(points.len());
    for &lambda in points {
        check_point("lambda", lambda)?;
        let hh = cauchy_transform(h, lambda, tol)?;
        let lhs = hh.value.powu(n);
        let (rhs, budget) = if n == 1 {
            (hh.value, T::zero())
        } else {
            let m = |u: Cx<T>| {
                memo.get(u, |u| cauchy_transform(h, u, itol).map(|r| (r.value, r.error_estimate)))
                    .powu(n - 1)
            };
            let r = cauchy_transform_weighted(h, lambda, &m, tol)?;
            memo.check()?;
            let budget = nn * hh.value.norm().powi(n as i32 - 1) * hh.error_estimate
                + nn * r.error_estimate
                + nn * (nn - T::one()) * memo.max_error() * transform_gain(h);
            (r.value * nn, budget)
        };
        out.push((PointResidual { point: lambda, lhs, rhs, residual: (lhs - rhs).norm() }, budget));
    }
    Ok(IdentityCheck::from_points(out))
}

/// `g` with the base point `w`, and `C = -(1/π) ∫ g(u)/conj(u - w) da(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct H0Context<T> {
    pub g: DensitySpec<T>,
    pub w: Cx<T>,
    pub c: Cx<T>,
    pub c_error: T,
}

impl<T: Real> H0Context<T> {
    pub fn new(g: DensitySpec<T>, w: Cx<T>, tol: T) -> Result<Self> {
        let r = conj_cauchy_transform(&g, w, tol)?;
        Ok(Self { g, w, c: -r.value, c_error: r.error_estimate })
    }

    /// Recomputes `C`; returns the discrepancy with the stored value.
    pub fn recheck_c(&self, tol: T) -> Result<T> {
        Ok((-conj_cauchy_transform(&self.g, self.w, tol)?.value - self.c).norm())
    }

    /// `ĥ₀(λ) = (1/π) ∫ g(u) / (conj(u - w)(u - λ)) da(u)`, with `λ` measured from `w`.
    pub fn h0_hat(&self, lambda: Cx<T>, tol: T) -> Result<(Cx<T>, T)> {
        let r = integrate_bi_singular(&self.g, self.w, self.w + lambda, tol)?;
        Ok((-r.value, r.error_estimate))
    }
}

/// Largest order accepted by [`check_h0_binomial`].
pub const MAX_BINOMIAL_POWER: u32 = 3;

/// Residual of `ĥ₀^N(λ) = C^N/λ^N + (N/λ^N)(1/π) ∫ u^N ĥ₀(u)^{N-1} h₀(u)/(u - λ) da(u)`,
/// coordinates relative to `w`.
pub fn check_h0_binomial<T: Real>(ctx: &H0Context<T>, n: u32, lambda: Cx<T>, tol: T) -> Result<PointResidual<T>> {
    check_tol(tol)?;
    check_point("lambda", lambda)?;
    if lambda.is_zero() {
        return Err(Error::InvalidPoint("lambda must be non-zero".into()));
    }
    if n == 0 || n > MAX_BINOMIAL_POWER {
        return Err(Error::InvalidArgument(format!("power must lie in 1..={MAX_BINOMIAL_POWER}")));
    }
    let itol = inner_tol(tol);
    let (h0, _) = ctx.h0_hat(lambda, tol)?;
    let lhs = h0.powu(n);
    let memo = NodeMemo::new();
    let w = ctx.w;
    let m = |u: Cx<T>| {
        let z = u - w;
        if z.is_zero() {
            return Cx::zero();
        }
        let inner = if n == 1 { Cx::one() } else { memo.get(z, |z| ctx.h0_hat(z, itol)).powu(n - 1) };
        z.powu(n) * inner
    };
    let integral = bi_singular_weighted(&ctx.g, w, w + lambda, &m, tol)?;
    memo.check()?;
    let ln = lambda.powu(n);
    let nn = T::from_u32(n).unwrap();
    let rhs = ctx.c.powu(n) / ln + integral.value * nn / ln;
    Ok(PointResidual { point: lambda, lhs, rhs, residual: (lhs - rhs).norm() })
}

/// The hypotheses under which the representation is known to hold at `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `g` vanishes on a neighbourhood of `w`.
    OutsideSupport,
    /// `(1/π) ∫ g |u - w|^-2 da < ∞`.
    FiniteDiagonal,
    /// `w` has positive Lebesgue density.
    DensityPoint,
    /// No hypothesis checked; the residual is informational only.
    Diagnostic,
}

/// Smallest density accepted as positive when verifying [`Regime::DensityPoint`].
pub const MIN_DENSITY: f64 = 0.05;

fn verify_regime<T: Real>(g: &DensitySpec<T>, w: Cx<T>, regime: Regime, tol: T) -> Result<()> {
    let ok = match regime {
        Regime::Diagnostic => true,
        Regime::OutsideSupport => g.outside_essential_support(w),
        Regime::FiniteDiagonal => {
            !integrate_diagonal(g, w, tol, T::lit(DEFAULT_DIVERGENCE_THRESHOLD))?.is_divergent()
        }
        Regime::DensityPoint => match estimate_density(g, w, &RadialSchedule::for_density(g), tol) {
            Ok(d) => d.gamma > T::lit(MIN_DENSITY),
            Err(Error::NonConvergent(_)) => false,
            Err(e) => return Err(e),
        },
    };
    if ok {
        Ok(())
    } else {
        Err(Error::RegimeUnverified(format!("{regime:?} does not hold at w = {w}")))
    }
}

/// Residual of `E(λ,w) - 1 + (1/π) ∫ E(u,w) g(u) / (conj(u-w)(u-λ)) da(u)` at each point.
pub fn check_representation<T: Real>(
    g: &DensitySpec<T>,
    w: Cx<T>,
    regime: Regime,
    points: &[Cx<T>],
    tol: T,
) -> Result<IdentityCheck<T>> {
    check_tol(tol)?;
    check_point("w", w)?;
    verify_regime(g, w, regime, tol)?;
    let itol = inner_tol(tol);
    let memo = NodeMemo::new();
    let e_at = |u: Cx<T>| memo.get(u, |u| eval_e(g, u, w, itol).map(|k| (k.value, k.error_estimate)));
    let mut out = Vec::with_capacity(points.len());
    for &lambda in points {
        check_point("lambda", lambda)?;
        let e = eval_e(g, lambda, w, tol)?;
        let integral = bi_singular_weighted(g, w, lambda, &e_at, tol)?;
        memo.check()?;
        let one = Cx::new(T::one(), T::zero());
        let rhs = one - integral.value;
        let gain = bi_singular_gain(g, w, lambda);
        let budget = e.error_estimate + integral.error_estimate + memo.max_error() * gain;
        out.push((PointResidual { point: lambda, lhs: e.value, rhs, residual: (e.value - rhs).norm() }, budget));
    }
    Ok(IdentityCheck::from_points(out))
}

/// Centred-difference `∂̄ F` of `F = f̂` at `λ` with spacing `h`; `-f(λ)` when `f` is smooth near `λ`.
pub fn dbar_stencil<T: Real>(f: &DensitySpec<T>, lambda: Cx<T>, h: T, tol: T) -> Result<Cx<T>> {
    check_tol(tol)?;
    check_point("lambda", lambda)?;
    if !(h > T::zero()) {
        return Err(Error::InvalidArgument("stencil spacing must be positive".into()));
    }
    let at = |z: Cx<T>| cauchy_transform(f, z, tol).map(|r| r.value);
    let dx = (at(lambda + Cx::new(h, T::zero()))? - at(lambda - Cx::new(h, T::zero()))?) / (h + h);
    let dy = (at(lambda + Cx::new(T::zero(), h))? - at(lambda - Cx::new(T::zero(), h))?) / (h + h);
    Ok((dx + Cx::<T>::i() * dy) * T::lit(0.5))
}
