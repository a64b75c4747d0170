//! Closed forms of `E` for disc indicators.

use num_traits::Zero;

use crate::density::{DensitySpec, Region};
use crate::error::{Error, Result};
use crate::scalar::{is_finite_point, Cx, Real};

/// `E_D(λ, w)` for the indicator of the open unit disc `D`.
///
/// Piecewise in whether `λ` and `w` lie in `D` (points on the circle count as
/// outside). The diagonal follows the kernel convention: `0` inside `D`,
/// `1 - 1/|w|²` outside.
pub fn eval_e_unit_disc<T: Real>(lambda: Cx<T>, w: Cx<T>) -> Result<Cx<T>> {
    if !is_finite_point(lambda) || !is_finite_point(w) {
        return Err(Error::InvalidPoint("non-finite argument".into()));
    }
    let one = Cx::new(T::one(), T::zero());
    let lambda_in = lambda.norm_sqr() < T::one();
    let w_in = w.norm_sqr() < T::one();
    let ratio = |num: Cx<T>, den: Cx<T>| -> Result<Cx<T>> {
        if den.is_zero() {
            Err(Error::PoleCase)
        } else {
            Ok(num / den)
        }
    };
    match (lambda_in, w_in) {
        (true, true) => ratio(Cx::new((lambda - w).norm_sqr(), T::zero()), one - w.conj() * lambda),
        (true, false) => Ok(ratio(w - lambda, w)?.conj()),
        (false, true) => Ok(one - ratio(w, lambda)?),
        (false, false) => Ok(one - ratio(one, w.conj() * lambda)?),
    }
}

/// `E` for the indicator of the disc `D(center, radius)`, by translating and
/// dilating onto the unit disc.
pub fn eval_e_disc<T: Real>(center: Cx<T>, radius: T, lambda: Cx<T>, w: Cx<T>) -> Result<Cx<T>> {
    if !(radius > T::zero()) || !radius.is_finite() {
        return Err(Error::InvalidArgument("disc radius must be positive".into()));
    }
    eval_e_unit_disc((lambda - center) / radius, (w - center) / radius)
}

/// `E` for a signed sum of disc indicators with coefficients `±1`, as the
/// product of disc factors (holes divide). Off-diagonal only.
pub fn eval_e_signed_discs<T: Real>(g: &DensitySpec<T>, lambda: Cx<T>, w: Cx<T>) -> Result<Cx<T>> {
    if lambda == w {
        return Err(Error::InvalidPoint("diagonal is not factorised; evaluate by quadrature".into()));
    }
    if g.grid.is_some() {
        return Err(Error::InvalidArgument("sampled grids have no closed form".into()));
    }
    let mut product = Cx::new(T::one(), T::zero());
    for term in &g.terms {
        if term.coeff == T::zero() {
            continue;
        }
        let Region::Disk { center, radius } = term.shape else {
            return Err(Error::InvalidArgument("closed form needs disc terms only".into()));
        };
        let factor = eval_e_disc(center, radius, lambda, w)?;
        if term.coeff == T::one() {
            product *= factor;
        } else if term.coeff == -T::one() {
            if factor.is_zero() {
                return Err(Error::ZeroDivisor);
            }
            product /= factor;
        } else {
            return Err(Error::InvalidArgument("disc coefficients must be +1 or -1".into()));
        }
    }
    Ok(product)
}
