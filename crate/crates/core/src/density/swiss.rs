//! Swiss-cheese densities: the closed unit disc minus open holes with pairwise
//! disjoint closures.

use super::region::Region;
use super::spec::DensitySpec;
use crate::error::{Error, Result};
use crate::rng::Mcg64;
use crate::scalar::{Cx, Real};

/// Placement attempts per hole before giving up.
pub const MAX_ATTEMPTS: usize = 1000;

/// Unit disc minus `hole_count` holes whose radii sum to at most `radius_budget`.
///
/// Radii are drawn as positive weights scaled to the budget; centres are drawn
/// uniformly so that each closed hole sits strictly inside the open unit disc
/// and keeps a positive gap to every earlier hole. The same arguments always
/// give the same spec.
pub fn swiss_cheese<T: Real>(seed: u64, hole_count: usize, radius_budget: f64) -> Result<DensitySpec<T>> {
    if hole_count == 0 {
        return Err(Error::InvalidArgument("hole_count must be at least 1".into()));
    }
    if !(radius_budget > 0.0 && radius_budget < 1.0) {
        return Err(Error::InvalidArgument("radius_budget must lie in (0, 1)".into()));
    }
    let mut rng = Mcg64::new(seed);
    let weights: Vec<f64> = (0..hole_count).map(|_| rng.uniform(0.5, 1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut radii: Vec<f64> = weights.iter().map(|w| radius_budget * w / total).collect();
    // rounding must never push the sum over budget
    while radii.iter().sum::<f64>() > radius_budget {
        for r in &mut radii {
            *r *= 1.0 - 1e-12;
        }
    }
    // place the largest holes first
    let mut order: Vec<usize> = (0..hole_count).collect();
    order.sort_by(|&a, &b| radii[b].partial_cmp(&radii[a]).expect("finite radii"));

    let mut placed: Vec<(f64, f64, f64)> = Vec::with_capacity(hole_count);
    let mut attempts = 0;
    for &k in &order {
        let r = radii[k];
        let gap = 1e-3 * r;
        let reach = 1.0 - r - gap;
        if reach <= 0.0 {
            return Err(Error::PlacementFailed { attempts });
        }
        let mut ok = false;
        for _ in 0..MAX_ATTEMPTS {
            attempts += 1;
            let rho = reach * rng.next_f64().sqrt();
            let theta = std::f64::consts::TAU * rng.next_f64();
            let (x, y) = (rho * theta.cos(), rho * theta.sin());
            let clear = placed
                .iter()
                .all(|&(px, py, pr)| ((x - px).powi(2) + (y - py).powi(2)).sqrt() > r + pr + gap);
            if clear {
                placed.push((x, y, r));
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::PlacementFailed { attempts });
        }
    }

    let mut spec = DensitySpec::<T>::unit_disc();
    for (x, y, r) in placed {
        spec = spec.with_term(Region::disk(Cx::new(T::lit(x), T::lit(y)), T::lit(r)), -T::one());
    }
    Ok(spec)
}

/// A point inside hole `k` (its centre) for the given spec, if it has that many holes.
pub fn hole_center<T: Real>(spec: &DensitySpec<T>, k: usize) -> Option<Cx<T>> {
    spec.terms
        .iter()
        .filter(|t| t.coeff < T::zero())
        .nth(k)
        .and_then(|t| match t.shape {
            Region::Disk { center, .. } => Some(center),
            _ => None,
        })
}
