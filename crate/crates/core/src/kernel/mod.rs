//! The exponential kernel `E_g(λ, w)`: quadrature evaluation, closed forms for
//! discs, the Möbius discs and tail masses.

mod closed_form;
mod discs;
mod eval;

pub use closed_form::{eval_e_disc, eval_e_signed_discs, eval_e_unit_disc};
pub use discs::{
    disc_imag_integral, disc_real_integral, tail_bound_imag, tail_bound_real, tail_imag_quadrature,
    tail_real_quadrature, DiscFamily, MobiusDiscParams,
};
pub use eval::{eval_e, eval_e_with_threshold, prelim_bound_check, DiagonalCase, KernelValue, PrelimBound};
