//! Polar-chart integration of singular kernels against signed sums of convex
//! indicators.
//!
//! Each piece is integrated in polar coordinates about a singular point `s`.
//! The area element `r dr dθ` cancels one reciprocal distance, so the radial
//! integrand is bounded, and for constant weights it has an elementary
//! antiderivative. The remaining angular integral is piecewise smooth between
//! tangent directions, corners and the direction of the second singular point,
//! and is handled by adaptive Gauss–Kronrod. Weighted integrands (a bounded
//! multiplier `m(u)`) add an adaptive radial pass; when both `w` and `λ` are
//! singular the plane is cut along their perpendicular bisector and each half
//! uses the chart of the nearer point.

use std::cell::Cell;

use num_traits::Zero;
use rayon::prelude::*;

use super::adaptive::{self, Adaptive};
use crate::geometry::{angular_panels, clip_interval, ray, Convex, HalfPlane};
use crate::scalar::{angle_0_2pi, Cx, Real};
use crate::sum::pairwise_sum;

pub(crate) const MAX_ANGULAR_INTERVALS: usize = 4000;
pub(crate) const MAX_RADIAL_INTERVALS: usize = 200;

/// Kernels `K(u)` integrated as `∫ m(u) g(u) K(u) da(u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel<T> {
    /// `1 / (conj(u - w) (u - λ))`.
    BiSingular { w: Cx<T>, lambda: Cx<T> },
    /// `1 / (u - λ)`.
    Cauchy { lambda: Cx<T> },
    /// `1 / conj(u - w)`.
    ConjCauchy { w: Cx<T> },
    /// `|u - w|^-2` restricted to `r_min <= |u - w| <= r_max`.
    InverseSquare { w: Cx<T>, r_min: T, r_max: T },
    /// `1` on the disc `|u - center| <= radius`.
    DiscArea { center: Cx<T>, radius: T },
}

#[derive(Debug, Clone, Copy)]
enum Radial<T> {
    /// `e / (r e - d)`, `d = λ - s`.
    Toward { d: Cx<T> },
    /// `conj(e) / conj(r e - d)`, `d = w - s`.
    TowardConj { d: Cx<T> },
    Cauchy,
    ConjCauchy,
    InverseSquare,
    Area,
}

#[derive(Debug, Clone, Copy)]
struct Chart<T> {
    center: Cx<T>,
    clip: Option<HalfPlane<T>>,
    radial: Radial<T>,
    r_min: T,
    r_max: T,
    /// Direction (about `center`) of the other singular point, if any.
    aim: Option<Cx<T>>,
}

/// Raw result of a planar integral (no normalisation applied).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Planar<T> {
    pub value: Cx<T>,
    pub error: T,
    pub cells: usize,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: Real> Radial<T> {
    #[inline]
    fn density(&self, e: Cx<T>, r: T) -> Cx<T> {
        match *self {
            Radial::Toward { d } => e / (e * r - d),
            Radial::TowardConj { d } => (e / (e * r - d)).conj(),
            Radial::Cauchy => e.conj(),
            Radial::ConjCauchy => e,
            Radial::InverseSquare => Cx::new(r.recip(), T::zero()),
            Radial::Area => Cx::new(r, T::zero()),
        }
    }

    #[inline]
    fn exact(&self, e: Cx<T>, a: T, b: T) -> Cx<T> {
        match *self {
            Radial::Toward { d } => ((e * b - d) / (e * a - d)).ln(),
            Radial::TowardConj { d } => ((e * b - d) / (e * a - d)).ln().conj(),
            Radial::Cauchy => e.conj() * (b - a),
            Radial::ConjCauchy => e * (b - a),
            Radial::InverseSquare => Cx::new((b / a).ln(), T::zero()),
            Radial::Area => Cx::new((b * b - a * a) * T::lit(0.5), T::zero()),
        }
    }
}

fn charts<T: Real>(kernel: &Kernel<T>, weighted: bool, vanish_w: T) -> Vec<Chart<T>> {
    let inf = T::infinity();
    match *kernel {
        Kernel::BiSingular { w, lambda } => {
            let d = lambda - w;
            if d.is_zero() {
                return vec![Chart {
                    center: w,
                    clip: None,
                    radial: Radial::Toward { d },
                    r_min: vanish_w,
                    r_max: inf,
                    aim: None,
                }];
            }
            if !weighted {
                return vec![Chart { center: w, clip: None, radial: Radial::Toward { d }, r_min: T::zero(), r_max: inf, aim: Some(d) }];
            }
            vec![
                Chart {
                    center: w,
                    clip: Some(HalfPlane::closer_to(w, lambda)),
                    radial: Radial::Toward { d },
                    r_min: T::zero(),
                    r_max: inf,
                    aim: Some(d),
                },
                Chart {
                    center: lambda,
                    clip: Some(HalfPlane::closer_to(lambda, w)),
                    radial: Radial::TowardConj { d: -d },
                    r_min: T::zero(),
                    r_max: inf,
                    aim: Some(-d),
                },
            ]
        }
        Kernel::Cauchy { lambda } => vec![Chart { center: lambda, clip: None, radial: Radial::Cauchy, r_min: T::zero(), r_max: inf, aim: None }],
        Kernel::ConjCauchy { w } => vec![Chart { center: w, clip: None, radial: Radial::ConjCauchy, r_min: T::zero(), r_max: inf, aim: None }],
        Kernel::InverseSquare { w, r_min, r_max } => vec![Chart {
            center: w,
            clip: None,
            radial: Radial::InverseSquare,
            r_min: r_min.max(vanish_w),
            r_max,
            aim: None,
        }],
        Kernel::DiscArea { center, radius } => vec![Chart { center, clip: None, radial: Radial::Area, r_min: T::zero(), r_max: radius, aim: None }],
    }
}

fn panels_for<T: Real>(shape: &Convex<T>, chart: &Chart<T>) -> Vec<T> {
    let mut angles = Vec::new();
    shape.breakpoints(chart.center, &mut angles);
    if let Some(clip) = &chart.clip {
        shape.clip_crossings(clip, chart.center, &mut angles);
    }
    if chart.r_min > T::zero() && chart.r_min.is_finite() {
        shape.radius_crossings(chart.center, chart.r_min, &mut angles);
    }
    if chart.r_max.is_finite() {
        shape.radius_crossings(chart.center, chart.r_max, &mut angles);
    }
    if let Some(aim) = chart.aim {
        if !aim.is_zero() {
            angles.push(angle_0_2pi(aim));
        }
    }
    angular_panels(angles)
}

#[inline]
fn radial_interval<T: Real>(shape: &Convex<T>, chart: &Chart<T>, e: Cx<T>) -> Option<(T, T)> {
    let (a, b) = shape.ray_interval(chart.center, e)?;
    let (a, b) = match &chart.clip {
        Some(clip) => clip_interval(clip, chart.center, e, (a, b))?,
        None => (a, b),
    };
    let (a, b) = (a.max(chart.r_min), b.min(chart.r_max));
    (b > a).then_some((a, b))
}

/// Whether a piece can contribute at all inside the chart's radial window.
fn reaches<T: Real>(shape: &Convex<T>, chart: &Chart<T>) -> bool {
    shape.distance(chart.center) < chart.r_max && shape.max_distance(chart.center) > chart.r_min
}

fn piece_exact<T: Real>(shape: &Convex<T>, chart: &Chart<T>, tol: T) -> Adaptive<T, Cx<T>> {
    let panels = panels_for(shape, chart);
    adaptive::integrate(
        |theta: T| {
            let e = ray(theta);
            match radial_interval(shape, chart, e) {
                Some((a, b)) => chart.radial.exact(e, a, b),
                None => Cx::zero(),
            }
        },
        &panels,
        tol,
        MAX_ANGULAR_INTERVALS,
    )
}

fn piece_weighted<T, F>(shape: &Convex<T>, chart: &Chart<T>, m: &F, tol: T) -> Adaptive<T, Cx<T>>
where
    T: Real,
    F: Fn(Cx<T>) -> Cx<T> + Sync,
{
    let panels = panels_for(shape, chart);
    let inner_tol = tol / (T::lit(4.0) * T::TAU());
    let worst_inner = Cell::new(T::zero());
    let inner_evals = Cell::new(0usize);
    let inner_cells = Cell::new(0usize);
    let all_inner_converged = Cell::new(true);
    let mut outer = adaptive::integrate(
        |theta: T| {
            let e = ray(theta);
            match radial_interval(shape, chart, e) {
                Some((a, b)) => {
                    let inner = adaptive::integrate(
                        |r: T| m(chart.center + e * r) * chart.radial.density(e, r),
                        &[a, b],
                        inner_tol,
                        MAX_RADIAL_INTERVALS,
                    );
                    worst_inner.set(worst_inner.get().max(inner.error));
                    inner_evals.set(inner_evals.get() + inner.evaluations);
                    inner_cells.set(inner_cells.get() + inner.intervals);
                    if !inner.converged {
                        all_inner_converged.set(false);
                    }
                    inner.value
                }
                None => Cx::zero(),
            }
        },
        &panels,
        tol,
        MAX_ANGULAR_INTERVALS,
    );
    outer.error += worst_inner.get() * T::TAU();
    outer.evaluations += inner_evals.get();
    outer.intervals += inner_cells.get();
    outer.converged = outer.converged && all_inner_converged.get() && outer.error <= tol * T::lit(2.0);
    outer
}

/// `∫ g(u) K(u) da(u)` over the signed convex pieces of `g`.
///
/// `tol` is an absolute target for the whole integral; `vanish_w` is a radius
/// about the kernel's `w` on which `g` is known to vanish (zero if unknown).
pub fn integrate<T: Real>(pieces: &[(Convex<T>, T)], kernel: &Kernel<T>, tol: T, vanish_w: T) -> Planar<T> {
    run(pieces, kernel, tol, vanish_w, None::<&fn(Cx<T>) -> Cx<T>>)
}

/// `∫ m(u) g(u) K(u) da(u)` for a bounded multiplier `m`.
pub fn integrate_weighted<T, F>(pieces: &[(Convex<T>, T)], kernel: &Kernel<T>, m: &F, tol: T, vanish_w: T) -> Planar<T>
where
    T: Real,
    F: Fn(Cx<T>) -> Cx<T> + Sync,
{
    run(pieces, kernel, tol, vanish_w, Some(m))
}

fn run<T, F>(pieces: &[(Convex<T>, T)], kernel: &Kernel<T>, tol: T, vanish_w: T, m: Option<&F>) -> Planar<T>
where
    T: Real,
    F: Fn(Cx<T>) -> Cx<T> + Sync,
{
    let charts = charts(kernel, m.is_some(), vanish_w);
    let jobs: Vec<(usize, usize)> = (0..pieces.len())
        .flat_map(|p| (0..charts.len()).map(move |c| (p, c)))
        .filter(|&(p, c)| reaches(&pieces[p].0, &charts[c]))
        .collect();
    let n = T::lit(jobs.len().max(1) as f64);
    let results: Vec<(Cx<T>, T, usize, usize, bool)> = jobs
        .par_iter()
        .map(|&(p, c)| {
            let (shape, coeff) = &pieces[p];
            let chart = &charts[c];
            let piece_tol = tol / (n * coeff.abs());
            let r = match m {
                Some(m) => piece_weighted(shape, chart, m, piece_tol),
                None => piece_exact(shape, chart, piece_tol),
            };
            (r.value * *coeff, r.error * coeff.abs(), r.intervals, r.evaluations, r.converged)
        })
        .collect();
    let values: Vec<Cx<T>> = results.iter().map(|r| r.0).collect();
    let errors: Vec<T> = results.iter().map(|r| r.1).collect();
    let error = pairwise_sum(&errors);
    Planar {
        value: pairwise_sum(&values),
        error,
        cells: results.iter().map(|r| r.2).sum::<usize>().max(1),
        evaluations: results.iter().map(|r| r.3).sum(),
        converged: results.iter().all(|r| r.4) && error <= tol * T::lit(2.0),
    }
}
