use serde::{Deserialize, Serialize};

use crate::geometry::Convex;
use crate::scalar::{cx, is_finite_point, Cx, Real};

/// Bounded carrier of a characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Region<T> {
    Disk {
        center: Cx<T>,
        radius: T,
    },
    Annulus {
        center: Cx<T>,
        r_inner: T,
        r_outer: T,
    },
    Rectangle {
        corner_min: Cx<T>,
        corner_max: Cx<T>,
    },
}

impl<T: Real> Region<T> {
    pub fn disk(center: Cx<T>, radius: T) -> Self {
        Region::Disk { center, radius }
    }

    pub fn annulus(center: Cx<T>, r_inner: T, r_outer: T) -> Self {
        Region::Annulus { center, r_inner, r_outer }
    }

    pub fn rectangle(corner_min: Cx<T>, corner_max: Cx<T>) -> Self {
        Region::Rectangle { corner_min, corner_max }
    }

    /// Closed indicator.
    pub fn contains(&self, u: Cx<T>) -> bool {
        match *self {
            Region::Disk { center, radius } => (u - center).norm_sqr() <= radius * radius,
            Region::Annulus { center, r_inner, r_outer } => {
                let d2 = (u - center).norm_sqr();
                d2 <= r_outer * r_outer && d2 >= r_inner * r_inner
            }
            Region::Rectangle { corner_min, corner_max } => {
                u.re >= corner_min.re
                    && u.re <= corner_max.re
                    && u.im >= corner_min.im
                    && u.im <= corner_max.im
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            Region::Disk { center, radius } => is_finite_point(center) && radius.is_finite(),
            Region::Annulus { center, r_inner, r_outer } => {
                is_finite_point(center) && r_inner.is_finite() && r_outer.is_finite()
            }
            Region::Rectangle { corner_min, corner_max } => {
                is_finite_point(corner_min) && is_finite_point(corner_max)
            }
        }
    }

    /// Zero-area or malformed.
    pub fn is_degenerate(&self) -> bool {
        let zero = T::zero();
        match *self {
            Region::Disk { radius, .. } => !(radius > zero),
            Region::Annulus { r_inner, r_outer, .. } => !(r_inner >= zero && r_outer > r_inner),
            Region::Rectangle { corner_min, corner_max } => {
                !(corner_max.re > corner_min.re && corner_max.im > corner_min.im)
            }
        }
    }

    pub fn within_disc(&self, center: Cx<T>, radius: T) -> bool {
        match *self {
            Region::Disk { center: c, radius: r } | Region::Annulus { center: c, r_outer: r, .. } => {
                (c - center).norm() + r <= radius
            }
            Region::Rectangle { corner_min, corner_max } => [
                corner_min,
                corner_max,
                cx(corner_min.re, corner_max.im),
                cx(corner_max.re, corner_min.im),
            ]
            .iter()
            .all(|&p| (p - center).norm() <= radius),
        }
    }

    /// Signed convex decomposition of the indicator.
    pub fn convex_parts(&self) -> Vec<(Convex<T>, T)> {
        match *self {
            Region::Disk { center, radius } => vec![(Convex::Disk { center, radius }, T::one())],
            Region::Annulus { center, r_inner, r_outer } => {
                let mut parts = vec![(Convex::Disk { center, radius: r_outer }, T::one())];
                if r_inner > T::zero() {
                    parts.push((Convex::Disk { center, radius: r_inner }, -T::one()));
                }
                parts
            }
            Region::Rectangle { corner_min, corner_max } => {
                vec![(Convex::Rect { min: corner_min, max: corner_max }, T::one())]
            }
        }
    }

    /// Distance from `u` to the nearest boundary curve of the region.
    pub fn boundary_distance(&self, u: Cx<T>) -> T {
        self.convex_parts()
            .iter()
            .map(|(c, _)| c.boundary_distance(u))
            .fold(T::infinity(), T::min)
    }

    /// Image under `u ↦ scale·u + shift`, `scale > 0`.
    pub fn affine(&self, scale: T, shift: Cx<T>) -> Self {
        let map = |p: Cx<T>| p * scale + shift;
        match *self {
            Region::Disk { center, radius } => Region::Disk { center: map(center), radius: radius * scale },
            Region::Annulus { center, r_inner, r_outer } => Region::Annulus {
                center: map(center),
                r_inner: r_inner * scale,
                r_outer: r_outer * scale,
            },
            Region::Rectangle { corner_min, corner_max } => Region::Rectangle {
                corner_min: map(corner_min),
                corner_max: map(corner_max),
            },
        }
    }

    /// Points just inside and just outside the boundary at parameter `t ∈ [0,1)`.
    pub(crate) fn boundary_band_point(&self, t: T, offset: T) -> Cx<T> {
        let two_pi = T::TAU();
        match *self {
            Region::Disk { center, radius } => {
                let e = crate::scalar::cis(two_pi * t);
                center + e * (radius + offset)
            }
            Region::Annulus { center, r_inner, r_outer } => {
                // even ticks on the outer circle, odd on the inner
                let e = crate::scalar::cis(two_pi * t);
                let r = if (t * T::lit(1024.0)).floor() % T::lit(2.0) == T::zero() {
                    r_outer
                } else {
                    r_inner
                };
                center + e * (r + offset)
            }
            Region::Rectangle { corner_min, corner_max } => {
                let w = corner_max.re - corner_min.re;
                let h = corner_max.im - corner_min.im;
                let s = t * T::lit(2.0) * (w + h);
                if s < w {
                    cx(corner_min.re + s, corner_min.im - offset)
                } else if s < w + h {
                    cx(corner_max.re + offset, corner_min.im + (s - w))
                } else if s < w + h + w {
                    cx(corner_max.re - (s - w - h), corner_max.im + offset)
                } else {
                    cx(corner_min.re - offset, corner_max.im - (s - w - h - w))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term<T> {
    pub shape: Region<T>,
    pub coeff: T,
}

/// Piecewise-constant sampled density on square cells.
///
/// Cell `(i, j)` covers `[x0 + j·h, x0 + (j+1)·h) × [y0 + i·h, y0 + (i+1)·h)`
/// where `(x0, y0)` is `origin` and `h` is `spacing`; `values[i][j]` is its value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid<T> {
    pub origin: Cx<T>,
    pub spacing: T,
    pub values: Vec<Vec<T>>,
}

impl<T: Real> Grid<T> {
    pub fn rows(&self) -> usize {
        self.values.len()
    }

    pub fn cols(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn value_at(&self, u: Cx<T>) -> T {
        let x = ((u.re - self.origin.re) / self.spacing).floor();
        let y = ((u.im - self.origin.im) / self.spacing).floor();
        if x < T::zero() || y < T::zero() {
            return T::zero();
        }
        let (Some(j), Some(i)) = (x.to_usize(), y.to_usize()) else {
            return T::zero();
        };
        self.values
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or_else(T::zero)
    }

    pub fn cell(&self, i: usize, j: usize) -> (Cx<T>, Cx<T>) {
        let h = self.spacing;
        let lo = self.origin + cx(T::lit(j as f64) * h, T::lit(i as f64) * h);
        (lo, lo + cx(h, h))
    }

    /// Horizontal runs of equal non-zero cells as rectangles with their value.
    pub fn runs(&self) -> Vec<(Convex<T>, T)> {
        let mut out = Vec::new();
        for (i, row) in self.values.iter().enumerate() {
            let mut j = 0;
            while j < row.len() {
                let v = row[j];
                let start = j;
                while j < row.len() && row[j] == v {
                    j += 1;
                }
                if v != T::zero() {
                    let (lo, _) = self.cell(i, start);
                    let (_, hi) = self.cell(i, j - 1);
                    out.push((Convex::Rect { min: lo, max: hi }, v));
                }
            }
        }
        out
    }
}
