use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::region::{Grid, Region, Term};
use crate::error::{Error, Result};
use crate::geometry::Convex;
use crate::rng::Mcg64;
use crate::scalar::{cx, is_finite_point, Cx, Real};

/// Stratified validation grid resolution (per axis).
pub const VALIDATION_GRID: usize = 256;
/// Random samples drawn in the band around each region boundary.
pub const BOUNDARY_SAMPLES: usize = 64;
const VALIDATION_SEED: u64 = 0x5eed;

/// A compactly supported density `g = Σ coeff_i·1_{region_i} + grid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensitySpec<T> {
    pub support_center: Cx<T>,
    pub support_radius: T,
    #[serde(default)]
    pub terms: Vec<Term<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid<T>>,
}

/// First failure found by [`DensitySpec::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    OutOfRange { re: f64, im: f64, value: f64 },
    OutsideSupport { term: usize },
    GridOutsideSupport { row: usize, col: usize },
    Degenerate { term: usize },
    GridValue { row: usize, col: usize, value: f64 },
    GridShape,
    BadSupport,
    NonFinite,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { re, im, value } => {
                write!(f, "g({re}{im:+}i) = {value} is outside [0, 1]")
            }
            Violation::OutsideSupport { term } => write!(f, "term {term} extends past the support disc"),
            Violation::GridOutsideSupport { row, col } => {
                write!(f, "grid cell ({row}, {col}) extends past the support disc")
            }
            Violation::Degenerate { term } => write!(f, "term {term} has a degenerate region"),
            Violation::GridValue { row, col, value } => {
                write!(f, "grid cell ({row}, {col}) has value {value} outside [0, 1]")
            }
            Violation::GridShape => write!(f, "grid rows have unequal length or spacing is not positive"),
            Violation::BadSupport => write!(f, "support radius must be positive and finite"),
            Violation::NonFinite => write!(f, "non-finite coordinate or coefficient"),
        }
    }
}

impl<T: Real> DensitySpec<T> {
    /// `g ≡ 0`.
    pub fn zero() -> Self {
        Self {
            support_center: Cx::new(T::zero(), T::zero()),
            support_radius: T::one(),
            terms: Vec::new(),
            grid: None,
        }
    }

    pub fn new(support_center: Cx<T>, support_radius: T, terms: Vec<Term<T>>) -> Self {
        Self { support_center, support_radius, terms, grid: None }
    }

    /// `coeff·1_disc` with the disc as its own support.
    pub fn disc(center: Cx<T>, radius: T, coeff: T) -> Self {
        Self::new(center, radius, vec![Term { shape: Region::disk(center, radius), coeff }])
    }

    /// Indicator of the open unit disc.
    pub fn unit_disc() -> Self {
        Self::disc(Cx::new(T::zero(), T::zero()), T::one(), T::one())
    }

    pub fn with_term(mut self, shape: Region<T>, coeff: T) -> Self {
        self.terms.push(Term { shape, coeff });
        self
    }

    pub fn with_grid(mut self, grid: Grid<T>) -> Self {
        self.grid = Some(grid);
        self
    }

    /// Pointwise value; exactly zero outside the support disc.
    pub fn eval(&self, u: Cx<T>) -> T {
        if (u - self.support_center).norm() > self.support_radius {
            return T::zero();
        }
        let mut g = T::zero();
        for t in &self.terms {
            if t.shape.contains(u) {
                g += t.coeff;
            }
        }
        if let Some(grid) = &self.grid {
            g += grid.value_at(u);
        }
        g
    }

    /// Structural checks plus sampled `0 <= g <= 1`.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        self.validate_structure()?;
        let slack = T::lit(1e-12);
        let check = |u: Cx<T>| -> std::result::Result<(), Violation> {
            let v = self.eval(u);
            if v < -slack || v > T::one() + slack {
                Err(Violation::OutOfRange { re: u.re.as_f64(), im: u.im.as_f64(), value: v.as_f64() })
            } else {
                Ok(())
            }
        };
        let n = VALIDATION_GRID;
        let r = self.support_radius;
        let step = T::lit(2.0) * r / T::lit(n as f64);
        let half = T::lit(0.5);
        for i in 0..n {
            for j in 0..n {
                let u = self.support_center
                    + cx(
                        -r + step * (T::lit(j as f64) + half),
                        -r + step * (T::lit(i as f64) + half),
                    );
                if (u - self.support_center).norm() <= r {
                    check(u)?;
                }
            }
        }
        let mut rng = Mcg64::new(VALIDATION_SEED);
        let band = r * T::lit(1e-6);
        for term in &self.terms {
            for _ in 0..BOUNDARY_SAMPLES {
                let t = T::lit(rng.next_f64());
                let side = T::lit(rng.uniform(-1.0, 1.0));
                check(term.shape.boundary_band_point(t, band * side))?;
            }
        }
        Ok(())
    }

    /// Geometry and finiteness only; coefficients may be any bounded reals.
    pub fn validate_structure(&self) -> std::result::Result<(), Violation> {
        if !is_finite_point(self.support_center) {
            return Err(Violation::NonFinite);
        }
        if !(self.support_radius > T::zero() && self.support_radius.is_finite()) {
            return Err(Violation::BadSupport);
        }
        for (k, t) in self.terms.iter().enumerate() {
            if !t.shape.is_finite() || !t.coeff.is_finite() {
                return Err(Violation::NonFinite);
            }
            if t.shape.is_degenerate() {
                return Err(Violation::Degenerate { term: k });
            }
            if !t.shape.within_disc(self.support_center, self.support_radius) {
                return Err(Violation::OutsideSupport { term: k });
            }
        }
        if let Some(grid) = &self.grid {
            if !(grid.spacing > T::zero() && grid.spacing.is_finite()) || !is_finite_point(grid.origin) {
                return Err(Violation::GridShape);
            }
            let cols = grid.cols();
            for (i, row) in grid.values.iter().enumerate() {
                if row.len() != cols {
                    return Err(Violation::GridShape);
                }
                for (j, &v) in row.iter().enumerate() {
                    if !(v >= T::zero() && v <= T::one()) {
                        return Err(Violation::GridValue { row: i, col: j, value: v.as_f64() });
                    }
                    if v != T::zero() {
                        let (lo, hi) = grid.cell(i, j);
                        let cell = Region::rectangle(lo, hi);
                        if !cell.within_disc(self.support_center, self.support_radius) {
                            return Err(Violation::GridOutsideSupport { row: i, col: j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validated(self) -> Result<Self> {
        self.validate().map_err(Error::InvalidDensity)?;
        Ok(self)
    }

    /// Signed convex pieces whose weighted indicators sum to `g`.
    pub fn pieces(&self) -> Vec<(Convex<T>, T)> {
        let mut out = Vec::new();
        for t in &self.terms {
            if t.coeff == T::zero() {
                continue;
            }
            for (shape, sign) in t.shape.convex_parts() {
                out.push((shape, sign * t.coeff));
            }
        }
        if let Some(grid) = &self.grid {
            out.extend(grid.runs());
        }
        out
    }

    /// Radius `δ >= 0` such that `g` vanishes identically on the open disc `D(w, δ)`.
    /// Zero when no such neighbourhood can be certified.
    pub fn vanishing_radius(&self, w: Cx<T>) -> T {
        let outside = (w - self.support_center).norm() - self.support_radius;
        if outside > T::zero() {
            return outside;
        }
        if self.eval(w) != T::zero() {
            return T::zero();
        }
        let mut delta = T::infinity();
        for t in &self.terms {
            if t.coeff != T::zero() {
                delta = delta.min(t.shape.boundary_distance(w));
            }
        }
        if let Some(grid) = &self.grid {
            for (rect, _) in grid.runs() {
                delta = delta.min(rect.distance(w));
            }
        }
        delta
    }

    /// Whether `w` lies outside the essential support (taken as the union of the
    /// regions where the pointwise representative is non-zero).
    pub fn outside_essential_support(&self, w: Cx<T>) -> bool {
        self.vanishing_radius(w) > T::zero()
    }

    /// `c·g`.
    pub fn scaled(&self, c: T) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= c;
        }
        if let Some(grid) = &mut out.grid {
            for row in &mut grid.values {
                for v in row {
                    *v *= c;
                }
            }
        }
        out
    }

    /// `g ∘ σ⁻¹` for `σ(u) = scale·u + shift`.
    pub fn affine(&self, scale: T, shift: Cx<T>) -> Self {
        Self {
            support_center: self.support_center * scale + shift,
            support_radius: self.support_radius * scale,
            terms: self
                .terms
                .iter()
                .map(|t| Term { shape: t.shape.affine(scale, shift), coeff: t.coeff })
                .collect(),
            grid: self.grid.as_ref().map(|g| Grid {
                origin: g.origin * scale + shift,
                spacing: g.spacing * scale,
                values: g.values.clone(),
            }),
        }
    }

    /// `g₁ + g₂` on a disc enclosing both supports. At most one operand may carry a grid.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.grid.is_some() && other.grid.is_some() {
            return Err(Error::InvalidArgument("cannot add two sampled grids".into()));
        }
        let d = (other.support_center - self.support_center).norm();
        let (center, radius) = if d + other.support_radius <= self.support_radius {
            (self.support_center, self.support_radius)
        } else if d + self.support_radius <= other.support_radius {
            (other.support_center, other.support_radius)
        } else {
            let radius = (d + self.support_radius + other.support_radius) * T::lit(0.5);
            let dir = if d > T::zero() {
                (other.support_center - self.support_center) / d
            } else {
                Cx::new(T::one(), T::zero())
            };
            (self.support_center + dir * (radius - self.support_radius), radius)
        };
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().copied());
        Ok(Self {
            support_center: center,
            // absorb rounding in the enclosing-disc construction
            support_radius: radius * (T::one() + T::lit(1e-12)),
            terms,
            grid: self.grid.clone().or_else(|| other.grid.clone()),
        })
    }
}

impl<T: Real + Serialize + DeserializeOwned> DensitySpec<T> {
    /// Strict parse followed by full validation.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        spec.validated()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("density serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = DensitySpec<f64>;
    type C = Cx<f64>;

    #[test]
    fn unit_disc_values() {
        let g = D::unit_disc();
        assert_eq!(g.eval(C::new(0.0, 0.0)), 1.0);
        assert_eq!(g.eval(C::new(2.0, 0.0)), 0.0);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn hole_evaluates_to_zero() {
        let g = D::unit_disc().with_term(Region::disk(C::new(0.3, 0.0), 0.1), -1.0);
        assert_eq!(g.eval(C::new(0.3, 0.0)), 0.0);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn doubled_disc_is_rejected_with_value_two() {
        let g = D::unit_disc().with_term(Region::disk(C::new(0.0, 0.0), 1.0), 1.0);
        match g.validate() {
            Err(Violation::OutOfRange { value, .. }) => assert_eq!(value, 2.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_disc_is_rejected() {
        let g = D::disc(C::new(0.0, 0.0), 1.0, -1.0);
        match g.validate() {
            Err(Violation::OutOfRange { value, .. }) => assert_eq!(value, -1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_regions_are_rejected() {
        let g = D::zero().with_term(Region::annulus(C::new(0.0, 0.0), 0.5, 0.5), 1.0);
        assert_eq!(g.validate(), Err(Violation::Degenerate { term: 0 }));
        let g = D::zero().with_term(Region::rectangle(C::new(0.0, 0.0), C::new(0.0, 0.5)), 1.0);
        assert_eq!(g.validate(), Err(Violation::Degenerate { term: 0 }));
    }

    #[test]
    fn term_outside_support_is_rejected() {
        let g = D::zero().with_term(Region::disk(C::new(0.5, 0.0), 0.6), 1.0);
        assert_eq!(g.validate(), Err(Violation::OutsideSupport { term: 0 }));
    }

    #[test]
    fn grid_lookup_is_nearest_cell() {
        let grid = Grid { origin: C::new(-0.5, -0.5), spacing: 0.5, values: vec![vec![0.2, 0.4], vec![0.6, 0.8]] };
        let g = D::zero().with_grid(grid);
        assert!(g.validate().is_ok());
        assert_eq!(g.eval(C::new(-0.4, -0.4)), 0.2);
        assert_eq!(g.eval(C::new(0.1, -0.4)), 0.4);
        assert_eq!(g.eval(C::new(-0.1, 0.1)), 0.6);
        assert_eq!(g.eval(C::new(0.4, 0.4)), 0.8);
        assert_eq!(g.eval(C::new(0.6, 0.4)), 0.0);
    }

    #[test]
    fn grid_value_out_of_range() {
        let grid = Grid { origin: C::new(-0.5, -0.5), spacing: 0.5, values: vec![vec![1.5]] };
        assert!(matches!(D::zero().with_grid(grid).validate(), Err(Violation::GridValue { .. })));
    }

    #[test]
    fn vanishing_radius_in_hole_and_outside() {
        let g = D::unit_disc().with_term(Region::disk(C::new(0.3, 0.0), 0.1), -1.0);
        assert!((g.vanishing_radius(C::new(0.3, 0.0)) - 0.1).abs() < 1e-15);
        assert!((g.vanishing_radius(C::new(2.0, 0.0)) - 1.0).abs() < 1e-15);
        assert_eq!(g.vanishing_radius(C::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn json_round_trip_and_strictness() {
        let text = r#"{"support_center":[0,0],"support_radius":1,
            "terms":[{"shape":{"kind":"disk","center":[0,0],"radius":1},"coeff":1}]}"#;
        let g = D::from_json(text).unwrap();
        assert_eq!(g, D::unit_disc());
        assert_eq!(D::from_json(&g.to_json()).unwrap(), g);
        let bad = r#"{"support_center":[0,0],"support_radius":1,"terms":[],"colour":3}"#;
        assert!(matches!(D::from_json(bad), Err(Error::Config(_))));
        let bad_shape = r#"{"support_center":[0,0],"support_radius":1,
            "terms":[{"shape":{"kind":"disk","center":[0,0],"radius":1,"extra":0},"coeff":1}]}"#;
        assert!(matches!(D::from_json(bad_shape), Err(Error::Config(_))));
        let invalid = r#"{"support_center":[0,0],"support_radius":1,
            "terms":[{"shape":{"kind":"disk","center":[0,0],"radius":1},"coeff":2}]}"#;
        assert!(matches!(D::from_json(invalid), Err(Error::InvalidDensity(_))));
    }

    #[test]
    fn grid_config_parses() {
        let text = r#"{"support_center":[0,0],"support_radius":1,"terms":[],
            "grid":{"origin":[-0.5,-0.5],"spacing":0.5,"values":[[0.1,0.2],[0.3,0.4]]}}"#;
        let g = D::from_json(text).unwrap();
        assert_eq!(g.eval(C::new(0.25, 0.25)), 0.4);
    }

    #[test]
    fn affine_moves_support_and_terms() {
        let g = D::unit_disc().affine(2.0, C::new(1.0, 1.0));
        assert_eq!(g.eval(C::new(2.9, 1.0)), 1.0);
        assert_eq!(g.eval(C::new(3.1, 1.0)), 0.0);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn sum_encloses_both_supports() {
        let a = D::disc(C::new(-2.0, 0.0), 1.0, 1.0);
        let b = D::disc(C::new(2.0, 0.0), 0.5, 0.5);
        let s = a.sum(&b).unwrap();
        assert!(s.validate().is_ok());
        assert_eq!(s.eval(C::new(-2.0, 0.0)), 1.0);
        assert_eq!(s.eval(C::new(2.0, 0.0)), 0.5);
    }
}
