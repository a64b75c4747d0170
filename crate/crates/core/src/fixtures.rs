//! Deterministic random fixtures: densities and point pairs.

use crate::density::{swiss_cheese, DensitySpec, Grid, Region};
use crate::rng::Mcg64;
use crate::scalar::{Cx, Real};

fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

fn point<T: Real>(x: f64, y: f64) -> Cx<T> {
    Cx::new(lit(x), lit(y))
}

/// Uniform point in the annulus `r_lo <= |z| <= r_hi`.
pub fn annulus_point<T: Real>(rng: &mut Mcg64, r_lo: f64, r_hi: f64) -> Cx<T> {
    let r = (rng.uniform(r_lo * r_lo, r_hi * r_hi)).sqrt();
    let th = rng.uniform(0.0, std::f64::consts::TAU);
    point(r * th.cos(), r * th.sin())
}

pub fn box_point<T: Real>(rng: &mut Mcg64, half_width: f64) -> Cx<T> {
    point(rng.uniform(-half_width, half_width), rng.uniform(-half_width, half_width))
}

/// One of several density families, all supported in `D(0, 1)`, with
/// coefficients scaled into `(0, 1]`.
pub fn random_density<T: Real>(rng: &mut Mcg64) -> DensitySpec<T> {
    let origin = point(0.0, 0.0);
    let amp = rng.uniform(0.2, 1.0);
    match rng.next_u64() % 6 {
        0 => {
            let c = annulus_point::<T>(rng, 0.0, 0.4);
            let r = rng.uniform(0.2, 1.0 - c.norm().as_f64());
            DensitySpec::new(origin, T::one(), vec![]).with_term(Region::disk(c, lit(r)), lit(amp))
        }
        1 => {
            let inner = rng.uniform(0.05, 0.5);
            let outer = rng.uniform(inner + 0.1, 1.0);
            DensitySpec::new(origin, T::one(), vec![]).with_term(Region::annulus(origin, lit(inner), lit(outer)), lit(amp))
        }
        2 => {
            let a = point::<T>(rng.uniform(-0.7, 0.0), rng.uniform(-0.7, 0.0));
            let b = point::<T>(rng.uniform(0.05, 0.7), rng.uniform(0.05, 0.7));
            DensitySpec::new(origin, T::one(), vec![]).with_term(Region::rectangle(a, b), lit(amp))
        }
        3 => {
            let seed = rng.next_u64();
            let holes = 1 + (rng.next_u64() % 3) as usize;
            swiss_cheese::<T>(seed, holes, 0.3).unwrap_or_else(|_| DensitySpec::unit_disc())
        }
        4 => {
            let c1 = point::<T>(-0.45, rng.uniform(-0.3, 0.3));
            let c2 = point::<T>(0.45, rng.uniform(-0.3, 0.3));
            let b = rng.uniform(0.1, 1.0);
            DensitySpec::new(origin, T::one(), vec![])
                .with_term(Region::disk(c1, lit(0.4)), lit(amp))
                .with_term(Region::disk(c2, lit(0.4)), lit(b))
        }
        _ => {
            let n = 4;
            let values = (0..n).map(|_| (0..n).map(|_| lit(rng.next_f64())).collect()).collect();
            DensitySpec::new(origin, T::one(), vec![]).with_grid(Grid {
                origin: point(-0.7, -0.7),
                spacing: lit(0.35),
                values,
            })
        }
    }
}

/// A pair `(λ, w)` in `[-h, h]²` at least `min_gap` apart.
pub fn random_pair<T: Real>(rng: &mut Mcg64, half_width: f64, min_gap: f64) -> (Cx<T>, Cx<T>) {
    loop {
        let a: Cx<T> = box_point(rng, half_width);
        let b: Cx<T> = box_point(rng, half_width);
        if (a - b).norm().as_f64() >= min_gap {
            return (a, b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn densities_validate() {
        let mut rng = Mcg64::new(7);
        for _ in 0..60 {
            let g = random_density::<f64>(&mut rng);
            g.validate().unwrap();
        }
    }
}
