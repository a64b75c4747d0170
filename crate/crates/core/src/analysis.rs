//! Estimators near a point `w`: Lebesgue density of `g`, the local Lipschitz
//! exponent of `E(·, w)`, and the logarithmic lower bound on annular masses.

use serde::{Deserialize, Serialize};

use crate::density::DensitySpec;
use crate::error::{Error, Result};
use crate::kernel::eval_e;
use crate::quadrature::{check_point, check_tol, disc_mass, integrate_diagonal, inverse_square_mass, DEFAULT_DIVERGENCE_THRESHOLD};
use crate::scalar::{cis, Cx, Real};

/// Spread allowed among the last three density ratios.
pub const DENSITY_WINDOW: f64 = 0.05;
pub const DEFAULT_DIRECTIONS: usize = 8;

/// Radii `r_k = r0·ratio^k`, `k = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialSchedule<T> {
    pub r0: T,
    pub ratio: T,
    pub count: usize,
}

impl<T: Real> RadialSchedule<T> {
    pub fn new(r0: T, ratio: T, count: usize) -> Result<Self> {
        let s = Self { r0, ratio, count };
        s.check()?;
        Ok(s)
    }

    /// `r0 = R/8`, ratio `1/2`, eight radii.
    pub fn for_density(g: &DensitySpec<T>) -> Self {
        Self { r0: g.support_radius / T::lit(8.0), ratio: T::lit(0.5), count: 8 }
    }

    fn check(&self) -> Result<()> {
        if !(self.r0 > T::zero()) || !self.r0.is_finite() {
            return Err(Error::InvalidArgument("r0 must be positive".into()));
        }
        if !(self.ratio > T::zero() && self.ratio < T::one()) {
            return Err(Error::InvalidArgument("ratio must lie in (0, 1)".into()));
        }
        if self.count < 3 {
            return Err(Error::InvalidArgument("schedule needs at least three radii".into()));
        }
        Ok(())
    }

    pub fn radii(&self) -> Vec<T> {
        (0..self.count).map(|k| self.r0 * self.ratio.powi(k as i32)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult<T> {
    pub slope: T,
    pub intercept: T,
    pub rms: T,
}

/// Least-squares line through `(x, y)`.
pub fn fit_line<T: Real>(x: &[T], y: &[T]) -> Result<FitResult<T>> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidArgument("fit needs two or more paired samples".into()));
    }
    let n = T::from_usize(x.len()).unwrap();
    let mx = crate::sum::pairwise_sum(x) / n;
    let my = crate::sum::pairwise_sum(y) / n;
    let sxy: Vec<T> = x.iter().zip(y).map(|(&a, &b)| (a - mx) * (b - my)).collect();
    let sxx: Vec<T> = x.iter().map(|&a| (a - mx) * (a - mx)).collect();
    let sxx = crate::sum::pairwise_sum(&sxx);
    if sxx <= T::zero() {
        return Err(Error::InvalidArgument("abscissae are all equal".into()));
    }
    let slope = crate::sum::pairwise_sum(&sxy) / sxx;
    let intercept = my - slope * mx;
    let res: Vec<T> = x.iter().zip(y).map(|(&a, &b)| (b - intercept - slope * a).powi(2)).collect();
    let rms = (crate::sum::pairwise_sum(&res) / n).sqrt();
    if !slope.is_finite() || !intercept.is_finite() {
        return Err(Error::NonConvergent("fit produced non-finite coefficients".into()));
    }
    Ok(FitResult { slope, intercept, rms })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate<T> {
    pub gamma: T,
    /// `(r_k, (1/πr_k²) ∫_{D(w, r_k)} g)`.
    pub ratios: Vec<(T, T)>,
}

/// Mean of the last three ratios `(1/πr²) ∫_{D(w,r)} g da` along the schedule.
pub fn estimate_density<T: Real>(g: &DensitySpec<T>, w: Cx<T>, schedule: &RadialSchedule<T>, tol: T) -> Result<DensityEstimate<T>> {
    check_tol(tol)?;
    check_point("w", w)?;
    schedule.check()?;
    let mut ratios = Vec::with_capacity(schedule.count);
    for r in schedule.radii() {
        let area = T::PI() * r * r;
        let m = disc_mass(g, w, r, tol / T::lit(10.0) * area)?;
        ratios.push((r, m.value.re / area));
    }
    let last: Vec<T> = ratios[ratios.len() - 3..].iter().map(|p| p.1).collect();
    let hi = last.iter().copied().fold(T::neg_infinity(), T::max);
    let lo = last.iter().copied().fold(T::infinity(), T::min);
    if hi - lo > T::lit(DENSITY_WINDOW) {
        return Err(Error::NonConvergent(format!("density ratios spread {:e} exceeds {DENSITY_WINDOW}", (hi - lo).as_f64())));
    }
    let gamma = crate::sum::pairwise_sum(&last) / T::lit(3.0);
    Ok(DensityEstimate { gamma: gamma.max(T::zero()).min(T::one()), ratios })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzEstimate<T> {
    pub fit: FitResult<T>,
    /// `(r_k, max_j |E(w + r_k e^{iθ_j}, w)|)`.
    pub samples: Vec<(T, T)>,
}

/// Slope of `log max_θ |E(w + r e^{iθ}, w)|` against `log r`.
///
/// Requires `E(w, w) = 0`, i.e. a divergent diagonal mass at `w`.
pub fn estimate_lipschitz_exponent<T: Real>(
    g: &DensitySpec<T>,
    w: Cx<T>,
    schedule: &RadialSchedule<T>,
    directions: usize,
    tol: T,
) -> Result<LipschitzEstimate<T>> {
    check_tol(tol)?;
    check_point("w", w)?;
    schedule.check()?;
    if directions == 0 {
        return Err(Error::InvalidArgument("need at least one direction".into()));
    }
    let diag = integrate_diagonal(g, w, tol, T::lit(DEFAULT_DIVERGENCE_THRESHOLD))?;
    if !diag.is_divergent() {
        return Err(Error::PreconditionFailed("diagonal mass is finite at w, so E(w, w) != 0".into()));
    }
    let step = T::TAU() / T::from_usize(directions).unwrap();
    let mut samples = Vec::with_capacity(schedule.count);
    for r in schedule.radii() {
        let mut peak = T::zero();
        for j in 0..directions {
            let lambda = w + cis(step * T::from_usize(j).unwrap()) * r;
            let e = eval_e(g, lambda, w, tol * r * r)?;
            peak = peak.max(e.value.norm());
        }
        samples.push((r, peak));
    }
    if samples.iter().any(|s| !(s.1 > T::zero())) {
        return Err(Error::NonConvergent("kernel vanished to machine zero on the schedule".into()));
    }
    let xs: Vec<T> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<T> = samples.iter().map(|s| s.1.ln()).collect();
    Ok(LipschitzEstimate { fit: fit_line(&xs, &ys)?, samples })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusRow<T> {
    pub t: T,
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusReport<T> {
    /// Constant fitted so the bound is tight at the largest `t`.
    pub k: T,
    pub rows: Vec<AnnulusRow<T>>,
}

/// `(1/2π) ∫_{t <= |u-w| <= R} g |u-w|^-2 da >= K - (γ-ε) ln t`, with `K` fitted
/// at the largest `t` and held fixed for the rest.
pub fn check_annulus_bound<T: Real>(
    g: &DensitySpec<T>,
    w: Cx<T>,
    r_outer: T,
    t_values: &[T],
    gamma: T,
    epsilon: T,
    tol: T,
) -> Result<AnnulusReport<T>> {
    check_tol(tol)?;
    check_point("w", w)?;
    if t_values.is_empty() || t_values.iter().any(|&t| !(t > T::zero() && t < r_outer)) {
        return Err(Error::InvalidArgument("t values must lie in (0, R)".into()));
    }
    let half = T::lit(0.5);
    let exponent = gamma - epsilon;
    let mut masses = Vec::with_capacity(t_values.len());
    for &t in t_values {
        let m = inverse_square_mass(g, w, t, r_outer, tol)?;
        masses.push((t, m.value.re * half, m.error_estimate * half));
    }
    let &(t_max, lhs_max, _) = masses
        .iter()
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .unwrap();
    let k = lhs_max + exponent * t_max.ln();
    let rows = masses
        .into_iter()
        .map(|(t, lhs, err)| {
            let rhs = k - exponent * t.ln();
            AnnulusRow { t, lhs, rhs, holds: lhs >= rhs - err - tol }
        })
        .collect();
    Ok(AnnulusReport { k, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Cx<f64>;
    type D = DensitySpec<f64>;

    #[test]
    fn line_fit() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        let f: FitResult<f64> = fit_line(&x, &y).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-15 && (f.intercept - 1.0).abs() < 1e-15 && f.rms < 1e-15);
        assert!(fit_line(&[1.0, 1.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn schedule() {
        let s = RadialSchedule::for_density(&D::unit_disc());
        let r = s.radii();
        assert_eq!(r.len(), 8);
        assert_eq!(r[0], 0.125);
        assert_eq!(r[7], 0.125 / 128.0);
        assert!(RadialSchedule::new(1.0, 1.0, 4).is_err());
        assert!(RadialSchedule::new(1.0, 0.5, 2).is_err());
    }

    #[test]
    fn densities() {
        let s = RadialSchedule::for_density(&D::unit_disc());
        let z = C::new(0.0, 0.0);
        let g = estimate_density(&D::unit_disc(), z, &s, 1e-6).unwrap().gamma;
        assert!((g - 1.0).abs() < 1e-6);
        let g = estimate_density(&D::unit_disc(), C::new(1.0, 0.0), &s, 1e-6).unwrap().gamma;
        assert!((g - 0.5).abs() < 0.02, "{g}");
        let g = estimate_density(&D::disc(z, 1.0, 0.3), z, &s, 1e-6).unwrap().gamma;
        assert!((g - 0.3).abs() < 1e-6);
    }

    #[test]
    fn non_convergent_density() {
        // a ring of radius comparable to the tail of the schedule
        let g = D::zero().with_term(crate::density::Region::annulus(C::new(0.0, 0.0), 0.003, 0.5), 1.0);
        let g = D { support_center: C::new(0.0, 0.0), support_radius: 1.0, ..g };
        let s = RadialSchedule::for_density(&g);
        assert!(matches!(estimate_density(&g, C::new(0.0, 0.0), &s, 1e-6), Err(Error::NonConvergent(_))));
    }

    #[test]
    fn lipschitz() {
        let g = D::unit_disc();
        let s = RadialSchedule::for_density(&g);
        let f = estimate_lipschitz_exponent(&g, C::new(0.0, 0.0), &s, 8, 1e-6).unwrap().fit;
        assert!((f.slope - 2.0).abs() < 0.05, "{f:?}");
        let h = D::disc(C::new(0.0, 0.0), 1.0, 0.5);
        let f = estimate_lipschitz_exponent(&h, C::new(0.0, 0.0), &s, 8, 1e-6).unwrap().fit;
        assert!((f.slope - 1.0).abs() < 0.05, "{f:?}");
        assert!(matches!(
            estimate_lipschitz_exponent(&g, C::new(2.0, 0.0), &s, 8, 1e-6),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn annulus() {
        let ts: Vec<f64> = (1..=8).map(|k| 0.5f64.powi(k)).collect();
        let rep = check_annulus_bound(&D::unit_disc(), C::new(0.0, 0.0), 1.0, &ts, 1.0, 0.1, 1e-8).unwrap();
        for row in &rep.rows {
            assert!((row.lhs + row.t.ln()).abs() < 1e-7);
            assert!(row.holds);
        }
        let rep = check_annulus_bound(&D::disc(C::new(0.0, 0.0), 1.0, 0.3), C::new(0.0, 0.0), 1.0, &ts, 0.3, 0.1, 1e-8).unwrap();
        for row in &rep.rows {
            assert!((row.lhs + 0.3 * row.t.ln()).abs() < 1e-7);
            assert!(row.holds);
        }
        let rep = check_annulus_bound(&D::unit_disc(), C::new(0.0, 0.0), 1.0, &[0.999999], 1.0, 0.1, 1e-8).unwrap();
        assert!(rep.rows[0].lhs < 1e-5);
    }
}
