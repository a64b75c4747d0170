//! Convex primitives seen from a point.
//!
//! Every density is a signed sum of disks and axis-aligned rectangles, so a ray
//! leaving any point meets each primitive in at most one interval. The planar
//! integrators work in polar coordinates about a singular point and only ever
//! ask two questions of a primitive: where does the ray in direction `θ` enter
//! and leave it, and at which angles does that interval stop being smooth.

use crate::scalar::{angle_0_2pi, cis, cx, dot, Cx, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Convex<T> {
    Disk { center: Cx<T>, radius: T },
    Rect { min: Cx<T>, max: Cx<T> },
}

/// Closed half-plane `{u : (u - point)·normal <= 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane<T> {
    pub point: Cx<T>,
    pub normal: Cx<T>,
}

impl<T: Real> HalfPlane<T> {
    /// Points at least as close to `near` as to `far`.
    pub fn closer_to(near: Cx<T>, far: Cx<T>) -> Self {
        let two = T::lit(2.0);
        Self {
            point: (near + far) / two,
            normal: far - near,
        }
    }

    pub fn contains(&self, u: Cx<T>) -> bool {
        dot(u - self.point, self.normal) <= T::zero()
    }
}

impl<T: Real> Convex<T> {
    pub fn contains(&self, u: Cx<T>) -> bool {
        match *self {
            Convex::Disk { center, radius } => (u - center).norm_sqr() <= radius * radius,
            Convex::Rect { min, max } => {
                u.re >= min.re && u.re <= max.re && u.im >= min.im && u.im <= max.im
            }
        }
    }

    /// Euclidean distance from `u` to the set, zero inside.
    pub fn distance(&self, u: Cx<T>) -> T {
        match *self {
            Convex::Disk { center, radius } => ((u - center).norm() - radius).max(T::zero()),
            Convex::Rect { min, max } => {
                let dx = (min.re - u.re).max(u.re - max.re).max(T::zero());
                let dy = (min.im - u.im).max(u.im - max.im).max(T::zero());
                dx.hypot(dy)
            }
        }
    }

    /// Largest distance from `u` to a point of the set.
    pub fn max_distance(&self, u: Cx<T>) -> T {
        match *self {
            Convex::Disk { center, radius } => (u - center).norm() + radius,
            Convex::Rect { min, max } => {
                let dx = (u.re - min.re).abs().max((u.re - max.re).abs());
                let dy = (u.im - min.im).abs().max((u.im - max.im).abs());
                dx.hypot(dy)
            }
        }
    }

    /// Distance from `u` to the boundary curve.
    pub fn boundary_distance(&self, u: Cx<T>) -> T {
        match *self {
            Convex::Disk { center, radius } => ((u - center).norm() - radius).abs(),
            Convex::Rect { min, max } => {
                if self.contains(u) {
                    (u.re - min.re)
                        .min(max.re - u.re)
                        .min(u.im - min.im)
                        .min(max.im - u.im)
                } else {
                    self.distance(u)
                }
            }
        }
    }

    pub fn area(&self) -> T {
        match *self {
            Convex::Disk { radius, .. } => T::PI() * radius * radius,
            Convex::Rect { min, max } => (max.re - min.re) * (max.im - min.im),
        }
    }

    /// Parameter interval `[a, b]`, `0 <= a < b`, of the ray `s + t·e`, `t >= 0`,
    /// inside the set. `e` must be a unit vector.
    pub fn ray_interval(&self, s: Cx<T>, e: Cx<T>) -> Option<(T, T)> {
        let zero = T::zero();
        let (a, b) = match *self {
            Convex::Disk { center, radius } => {
                let d = s - center;
                let half_b = dot(d, e);
                let c = d.norm_sqr() - radius * radius;
                let disc = half_b * half_b - c;
                if disc <= zero {
                    return None;
                }
                let sq = disc.sqrt();
                // stable roots of t^2 + 2·half_b·t + c
                let q = if half_b >= zero { -(half_b + sq) } else { -half_b + sq };
                let (t1, t2) = if q == zero {
                    (zero, zero)
                } else {
                    let r1 = q;
                    let r2 = c / q;
                    if r1 < r2 {
                        (r1, r2)
                    } else {
                        (r2, r1)
                    }
                };
                (t1.max(zero), t2)
            }
            Convex::Rect { min, max } => {
                let mut lo = zero;
                let mut hi = T::infinity();
                for (origin, dir, lo_edge, hi_edge) in [
                    (s.re, e.re, min.re, max.re),
                    (s.im, e.im, min.im, max.im),
                ] {
                    if dir == zero {
                        if origin < lo_edge || origin > hi_edge {
                            return None;
                        }
                    } else {
                        let t1 = (lo_edge - origin) / dir;
                        let t2 = (hi_edge - origin) / dir;
                        let (t1, t2) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
                        lo = lo.max(t1);
                        hi = hi.min(t2);
                    }
                }
                (lo, hi)
            }
        };
        (b > a).then_some((a, b))
    }

    /// Angles (about `s`, not normalised) where the entry or exit parameter of
    /// [`Convex::ray_interval`] is not smooth.
    pub fn breakpoints(&self, s: Cx<T>, out: &mut Vec<T>) {
        match *self {
            Convex::Disk { center, radius } => {
                let d = center - s;
                let dist = d.norm();
                let theta_c = angle_0_2pi(d);
                if dist > radius {
                    let half = (radius / dist).asin();
                    out.push(theta_c + half);
                    out.push(theta_c - half);
                } else if dist > radius * (T::one() - T::lit(1e-9)) {
                    // centre of the polar system sits on the circle
                    let half = T::FRAC_PI_2();
                    out.push(theta_c + half);
                    out.push(theta_c - half);
                }
            }
            Convex::Rect { min, max } => {
                for corner in [min, cx(max.re, min.im), max, cx(min.re, max.im)] {
                    if corner != s {
                        out.push(angle_0_2pi(corner - s));
                    }
                }
            }
        }
    }

    /// Angles about `s` at which the circle `|u - s| = rho` crosses the boundary.
    pub fn radius_crossings(&self, s: Cx<T>, rho: T, out: &mut Vec<T>) {
        if rho <= T::zero() {
            return;
        }
        match *self {
            Convex::Disk { center, radius } => {
                let d = center - s;
                let dist = d.norm();
                if dist == T::zero() {
                    return;
                }
                let cosine = (rho * rho + dist * dist - radius * radius) / (T::lit(2.0) * rho * dist);
                if cosine.abs() <= T::one() {
                    let theta_c = angle_0_2pi(d);
                    let half = cosine.acos();
                    out.push(theta_c + half);
                    out.push(theta_c - half);
                }
            }
            Convex::Rect { min, max } => {
                let corners = [min, cx(max.re, min.im), max, cx(min.re, max.im)];
                for k in 0..4 {
                    segment_circle(corners[k], corners[(k + 1) % 4], s, rho, out);
                }
            }
        }
    }

    /// Angles about `s` at which the boundary line of `clip` crosses the boundary.
    pub fn clip_crossings(&self, clip: &HalfPlane<T>, s: Cx<T>, out: &mut Vec<T>) {
        let dir = cx(-clip.normal.im, clip.normal.re);
        let dir = dir / dir.norm();
        match *self {
            Convex::Disk { center, radius } => {
                // points p + t·dir on the circle
                let d = clip.point - center;
                let half_b = dot(d, dir);
                let c = d.norm_sqr() - radius * radius;
                let disc = half_b * half_b - c;
                if disc >= T::zero() {
                    let sq = disc.sqrt();
                    for t in [-half_b - sq, -half_b + sq] {
                        let p = clip.point + dir * t;
                        if p != s {
                            out.push(angle_0_2pi(p - s));
                        }
                    }
                }
            }
            Convex::Rect { min, max } => {
                let corners = [min, cx(max.re, min.im), max, cx(min.re, max.im)];
                for k in 0..4 {
                    let (p0, p1) = (corners[k], corners[(k + 1) % 4]);
                    let f0 = dot(p0 - clip.point, clip.normal);
                    let f1 = dot(p1 - clip.point, clip.normal);
                    if (f0 <= T::zero()) != (f1 <= T::zero()) {
                        let t = f0 / (f0 - f1);
                        let p = p0 + (p1 - p0) * t;
                        if p != s {
                            out.push(angle_0_2pi(p - s));
                        }
                    }
                }
            }
        }
    }
}

fn segment_circle<T: Real>(p0: Cx<T>, p1: Cx<T>, s: Cx<T>, rho: T, out: &mut Vec<T>) {
    let d = p1 - p0;
    let f = p0 - s;
    let a = d.norm_sqr();
    if a == T::zero() {
        return;
    }
    let half_b = dot(f, d);
    let c = f.norm_sqr() - rho * rho;
    let disc = half_b * half_b - a * c;
    if disc < T::zero() {
        return;
    }
    let sq = disc.sqrt();
    for t in [(-half_b - sq) / a, (-half_b + sq) / a] {
        if t >= T::zero() && t <= T::one() {
            out.push(angle_0_2pi(p0 + d * t - s));
        }
    }
}

/// Interval of the ray `s + t·e` inside a half-plane, intersected with `[a, b]`.
pub(crate) fn clip_interval<T: Real>(
    clip: &HalfPlane<T>,
    s: Cx<T>,
    e: Cx<T>,
    (a, b): (T, T),
) -> Option<(T, T)> {
    // (s - p)·n + t (e·n) <= 0
    let f0 = dot(s - clip.point, clip.normal);
    let slope = dot(e, clip.normal);
    let zero = T::zero();
    let (lo, hi) = if slope == zero {
        if f0 > zero {
            return None;
        }
        (a, b)
    } else if slope > zero {
        (a, b.min(-f0 / slope))
    } else {
        (a.max(-f0 / slope), b)
    };
    (hi > lo).then_some((lo, hi))
}

/// Sorted, de-duplicated panel endpoints covering one full turn.
pub(crate) fn angular_panels<T: Real>(mut angles: Vec<T>) -> Vec<T> {
    let tau = T::TAU();
    for a in angles.iter_mut() {
        *a %= tau;
        if *a < T::zero() {
            *a += tau;
        }
    }
    angles.retain(|a| a.is_finite());
    angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    let eps = T::lit(1e-13);
    angles.dedup_by(|b, a| (*b - *a).abs() <= eps);
    if angles.is_empty() {
        angles.push(T::zero());
    }
    if angles.len() > 1 && (angles[0] + tau - angles[angles.len() - 1]) <= eps {
        angles.pop();
    }
    // at least four panels so the first estimate already sees the whole turn
    let base = angles[0];
    let mut extra: Vec<T> = (1..4)
        .map(|k| base + tau * T::lit(k as f64) / T::lit(4.0))
        .filter(|x| {
            angles
                .iter()
                .all(|a| (*a - *x).abs() > tau / T::lit(64.0))
        })
        .collect();
    angles.append(&mut extra);
    angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    angles.push(base + tau);
    angles
}

#[inline]
pub(crate) fn ray<T: Real>(theta: T) -> Cx<T> {
    cis(theta)
}
