//! Verification suites: fixed fixture sets checked against closed forms and
//! identities, each producing a [`SuiteReport`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::{estimate_density, estimate_lipschitz_exponent, RadialSchedule, DEFAULT_DIRECTIONS};
use crate::cauchy::{check_h0_binomial, check_power_identity, check_product_identity, check_representation, dbar_stencil, H0Context, Regime};
use crate::density::{swiss_cheese, DensitySpec, Region};
use crate::error::{Error, Result};
use crate::fixtures::{annulus_point, random_density, random_pair};
use crate::kernel::{
    disc_imag_integral, disc_real_integral, eval_e, eval_e_signed_discs, eval_e_unit_disc, tail_bound_imag, tail_bound_real,
    tail_imag_quadrature, tail_real_quadrature, MobiusDiscParams,
};
use crate::quadrature::{check_tol, integrate_diagonal, DiagonalMass, DEFAULT_DIVERGENCE_THRESHOLD};
use crate::rng::Mcg64;
use crate::shift::{check_mobius_transfer, check_shift_identity, resolvent_coeffs, DEFAULT_TRUNCATION};

type C = num_complex::Complex64;
type D = DensitySpec<f64>;

pub const DEFAULT_SEED: u64 = 0x00c0_ffee;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    DiscClosedForms,
    Tails,
    Representation,
    CauchyAlgebra,
    Shift,
    Lipschitz,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::DiscClosedForms,
        Suite::Tails,
        Suite::Representation,
        Suite::CauchyAlgebra,
        Suite::Shift,
        Suite::Lipschitz,
        Suite::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DiscClosedForms => "disc-closed-forms",
            Suite::Tails => "tails",
            Suite::Representation => "representation",
            Suite::CauchyAlgebra => "cauchy-algebra",
            Suite::Shift => "shift",
            Suite::Lipschitz => "lipschitz",
            Suite::Properties => "properties",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self { suite: suite.into(), checks, pass }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            writeln!(
                f,
                "  {} {:<48} residual {:.3e}  threshold {:.3e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.residual,
                c.threshold
            )?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

fn check(name: impl Into<String>, residual: f64, threshold: f64) -> Check {
    Check { name: name.into(), residual, threshold, pass: residual <= threshold }
}

fn z(x: f64, y: f64) -> C {
    C::new(x, y)
}

/// Maximum of a residual list; NaN propagates so it fails.
fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

pub fn run_suite(suite: Suite, tol: f64, seed: u64) -> Result<SuiteReport> {
    check_tol(tol)?;
    let checks = match suite {
        Suite::DiscClosedForms => {
            let mut c = unit_disc_vs_quadrature(tol, seed)?;
            c.extend(disc_integral_identities(tol)?);
            c
        }
        Suite::Tails => tail_checks(tol)?,
        Suite::Representation => representation_checks(tol)?,
        Suite::CauchyAlgebra => cauchy_algebra_checks(tol)?,
        Suite::Shift => {
            let mut c = shift_checks(tol, seed)?;
            c.extend(diagonal_dichotomy(tol)?);
            c
        }
        Suite::Lipschitz => {
            let mut c = density_checks(tol)?;
            c.extend(lipschitz_checks(tol)?);
            c
        }
        Suite::Properties => {
            let mut c = kernel_bound_checks(tol, seed)?;
            c.extend(property_checks(tol, seed)?);
            c
        }
    };
    Ok(SuiteReport::new(suite.name(), checks))
}

/// 25 pairs cycling through the four in/out placements, at least `0.05` from
/// each other and from the unit circle.
pub fn unit_disc_pairs(seed: u64) -> Vec<(C, C)> {
    let mut rng = Mcg64::new(seed);
    let pick = |inside: bool, rng: &mut Mcg64| -> C {
        if inside {
            annulus_point(rng, 0.0, 0.95)
        } else {
            annulus_point(rng, 1.05, 2.5)
        }
    };
    let mut out = Vec::new();
    let mut k = 0;
    while out.len() < 25 {
        let (li, wi) = [(true, true), (true, false), (false, true), (false, false)][k % 4];
        let lambda = pick(li, &mut rng);
        let w = pick(wi, &mut rng);
        if (lambda - w).norm() >= 0.05 {
            out.push((lambda, w));
            k += 1;
        }
    }
    out
}

pub fn unit_disc_vs_quadrature(tol: f64, seed: u64) -> Result<Vec<Check>> {
    let g = D::unit_disc();
    let mut res = Vec::new();
    for (lambda, w) in unit_disc_pairs(seed) {
        let e = eval_e(&g, lambda, w, tol)?;
        res.push((e.value - eval_e_unit_disc(lambda, w)?).norm());
    }
    Ok(vec![check("unit disc: eval_E vs closed form (25 pairs)", worst(res), 1e-4)])
}

pub const ALPHAS: [f64; 5] = [-2.0, -1.0 / 3.0, 0.0, 0.5, 3.0];
pub const BETAS: [f64; 4] = [0.5, -0.5, 2.0, -2.0];

pub fn disc_pairs() -> [(C, C); 2] {
    [(z(0.3, 0.4), z(-0.2, 0.1)), (z(-1.7, 2.2), z(3.1, -0.6))]
}

pub fn disc_integral_identities(tol: f64) -> Result<Vec<Check>> {
    let mut real = Vec::new();
    let mut imag = Vec::new();
    for (lambda, w) in disc_pairs() {
        for a in ALPHAS {
            let v = MobiusDiscParams::alpha(a, lambda, w).log_kernel(tol)?;
            real.push((v.re - disc_real_integral(a)).abs());
        }
        for b in BETAS {
            let v = MobiusDiscParams::beta(b, lambda, w)?.log_kernel(tol)?;
            imag.push((v.im - disc_imag_integral(b)?).abs());
        }
    }
    Ok(vec![
        check("D_{λ,α} real part vs ln(2/(1+|α|))", worst(real), 1e-4),
        check("Δ_{λ,β} imaginary part vs arctan(β/2)", worst(imag), 1e-4),
    ])
}

pub fn kernel_bound_checks(tol: f64, seed: u64) -> Result<Vec<Check>> {
    let mut rng = Mcg64::new(seed ^ 0xb0_0d);
    let mut peak: f64 = 0.0;
    for k in 0..200 {
        let g = random_density::<f64>(&mut rng);
        let (lambda, w) = random_pair(&mut rng, 1.5, 1e-3);
        let w = if k % 10 == 0 { lambda } else { w };
        peak = peak.max(eval_e(&g, lambda, w, tol)?.value.norm());
    }
    let antipodal = eval_e_unit_disc(z(1.0, 0.0), z(-1.0, 0.0))?;
    Ok(vec![
        check("|E| over 200 random fixtures (max - 2)", (peak - 2.0).max(0.0), 1e-6),
        check("antipodal E_D(1, -1) = 2", (antipodal - z(2.0, 0.0)).norm(), 0.0),
    ])
}

pub fn diagonal_dichotomy(tol: f64) -> Result<Vec<Check>> {
    let g = D::unit_disc();
    let threshold = DEFAULT_DIVERGENCE_THRESHOLD;
    let mut out = Vec::new();
    for r in [0.0, 0.5, 0.9] {
        let m = integrate_diagonal(&g, z(0.0, r), tol, threshold)?;
        out.push(check(format!("diagonal at |w| = {r} divergent"), if m.is_divergent() { 0.0 } else { 1.0 }, 0.0));
    }
    for r in [1.5f64, 2.0, 4.0] {
        let want = -(1.0 - 1.0 / (r * r)).ln();
        let residual = match integrate_diagonal(&g, C::from_polar(r, 0.7), tol, threshold)? {
            DiagonalMass::Finite { value, .. } => (value - want).abs(),
            DiagonalMass::Divergent { .. } => f64::INFINITY,
        };
        out.push(check(format!("diagonal at |w| = {r} finite, -ln(1 - 1/|w|^2)"), residual, 1e-4));
    }
    Ok(out)
}

pub fn lipschitz_checks(tol: f64) -> Result<Vec<Check>> {
    let g = D::unit_disc();
    let s = RadialSchedule::for_density(&g);
    let slope = estimate_lipschitz_exponent(&g, z(0.0, 0.0), &s, DEFAULT_DIRECTIONS, tol)?.fit.slope;
    let mut out = vec![check("unit disc, w = 0: slope within 0.1 of 2", (slope - 2.0).abs(), 0.1)];
    for (name, g, w) in density_point_fixtures() {
        let s = RadialSchedule::for_density(&g);
        let gamma = estimate_density(&g, w, &s, tol)?.gamma;
        let slope = estimate_lipschitz_exponent(&g, w, &s, DEFAULT_DIRECTIONS, tol)?.fit.slope;
        out.push(check(format!("{name}: gamma - slope <= 0.1"), (gamma - slope).max(0.0), 0.1));
    }
    Ok(out)
}

/// `(label, g, w)` with the expected density attached by [`density_checks`].
pub fn density_point_fixtures() -> Vec<(&'static str, D, C)> {
    vec![
        ("1_D at 0", D::unit_disc(), z(0.0, 0.0)),
        ("1_D at 1", D::unit_disc(), z(1.0, 0.0)),
        ("0.3·1_D at 0", D::disc(z(0.0, 0.0), 1.0, 0.3), z(0.0, 0.0)),
    ]
}

pub fn density_checks(tol: f64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for ((name, g, w), want) in density_point_fixtures().into_iter().zip([1.0, 0.5, 0.3]) {
        let gamma = estimate_density(&g, w, &RadialSchedule::for_density(&g), tol)?.gamma;
        out.push(check(format!("density {name} = {want}"), (gamma - want).abs(), 0.02));
    }
    Ok(out)
}

pub fn representation_points_exterior() -> Vec<C> {
    vec![z(3.0, 0.0), z(0.0, 0.5), z(-0.3, 0.2), z(0.0, 1.5), z(-2.0, 0.0), z(0.7, -0.1), z(2.0, 1.0), z(-0.6, -0.6)]
}

pub fn representation_points_interior() -> Vec<C> {
    vec![z(0.5, 0.0), z(0.0, 0.8), z(-0.3, 0.4), z(-0.7, 0.0), z(0.2, -0.6), z(0.1, 0.1)]
}

pub fn representation_checks(tol: f64) -> Result<Vec<Check>> {
    let g = D::unit_disc();
    let a = check_representation(&g, z(2.0, 0.0), Regime::OutsideSupport, &representation_points_exterior(), tol)?;
    let b = check_representation(&g, z(0.0, 0.0), Regime::DensityPoint, &representation_points_interior(), tol)?;
    Ok(vec![
        check("representation, 1_D, w = 2 (8 points)", a.residual, 1e-3),
        check("representation, 1_D, w = 0 (6 points)", b.residual, 1e-3),
    ])
}

/// Twelve points: radii `{0.3, 0.7, 1.6}` at four angles.
pub fn cauchy_panel() -> Vec<C> {
    let mut out = Vec::new();
    for r in [0.3, 0.7, 1.6] {
        for k in 0..4 {
            out.push(C::from_polar(r, 0.4 + k as f64 * std::f64::consts::FRAC_PI_2));
        }
    }
    out
}

pub fn cauchy_algebra_checks(tol: f64) -> Result<Vec<Check>> {
    let panel = cauchy_panel();
    let disc = D::unit_disc();
    let off = D::disc(z(0.2, 0.1), 0.6, 1.0);
    let p1 = check_product_identity(&disc, &disc, &panel, tol)?;
    let p2 = check_product_identity(&disc, &off, &panel, tol)?;
    let q1 = check_power_identity(&disc, 2, &panel, tol)?;
    let q2 = check_power_identity(&off, 2, &panel, tol)?;
    let ring = D::new(z(0.0, 0.0), 1.0, vec![]).with_term(Region::annulus(z(0.0, 0.0), 0.5, 1.0), 1.0);
    let ctx = H0Context::new(ring, z(0.0, 0.0), tol)?;
    let mut binomial = Vec::new();
    for n in 1..=2 {
        for lambda in [z(0.7, 0.0), z(1.5, 0.0), z(0.0, 0.3), z(-1.2, 0.4)] {
            binomial.push(check_h0_binomial(&ctx, n, lambda, tol)?.residual);
        }
    }
    let mut stencil = Vec::new();
    for lambda in [z(0.1, 0.2), z(-0.4, 0.0), z(0.0, 0.3)] {
        stencil.push((dbar_stencil(&disc, lambda, 1e-2, tol.min(1e-8))? + 1.0).norm());
    }
    Ok(vec![
        check("product identity, 1_D·1_D (12 points)", p1.residual, 1e-3),
        check("product identity, 1_D·disc(0.2+0.1i, 0.6)", p2.residual, 1e-3),
        check("power identity N = 2, 1_D", q1.residual, 1e-3),
        check("power identity N = 2, disc(0.2+0.1i, 0.6)", q2.residual, 1e-3),
        check("h0 binomial identity, annulus, N <= 2", worst(binomial), 2e-3),
        check("dbar stencil of the transform = -1", worst(stencil), 1e-2),
    ])
}

pub fn shift_checks(tol: f64, seed: u64) -> Result<Vec<Check>> {
    let mut rng = Mcg64::new(seed ^ 0x5b1f7);
    let mut interior = Vec::new();
    for _ in 0..40 {
        let lambda = annulus_point(&mut rng, 0.0, 0.9);
        let w = annulus_point(&mut rng, 0.0, 0.9);
        interior.push(check_shift_identity(lambda, w, DEFAULT_TRUNCATION, 1e-10)?.residual);
    }
    let mut exterior = Vec::new();
    for _ in 0..20 {
        let lambda = annulus_point(&mut rng, 1.0, 3.0);
        let w = annulus_point(&mut rng, 1.0, 3.0);
        exterior.push(check_shift_identity(lambda, w, DEFAULT_TRUNCATION, 1e-12)?.residual);
    }
    let mut mobius = Vec::new();
    for alpha in [-1.0 / 3.0, 0.0] {
        for (lambda, w) in disc_pairs() {
            let m = check_mobius_transfer(alpha, lambda, w, tol)?;
            mobius.push(m.residual.max((m.shift_value.re - m.closed_form).abs()));
        }
    }
    let mut norms = Vec::new();
    for r in [0.0, 0.3, 0.6, 0.9, 1.0, 1.5, 3.0] {
        let res = resolvent_coeffs(C::from_polar(r, 1.1), DEFAULT_TRUNCATION)?;
        let want = if r < 1.0 { 1.0 } else { 1.0 / r };
        norms.push((res.vector.norm() - want).abs());
    }
    Ok(vec![
        check("shift identity, interior panel (40 pairs, N = 256)", worst(interior), 1e-10),
        check("shift identity, exterior pairs (20)", worst(exterior), 1e-12),
        check("Möbius transfer, α ∈ {-1/3, 0}", worst(mobius), 1e-4),
        check("resolvent norms: 1 inside, 1/|λ| outside", worst(norms), 1e-6),
    ])
}

pub const TAIL_NS: [f64; 10] = [2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0];

pub fn tail_checks(tol: f64) -> Result<Vec<Check>> {
    let mut positive = true;
    let mut decreasing = true;
    let mut small: f64 = 0.0;
    let mut prev = (f64::INFINITY, f64::INFINITY);
    for n in TAIL_NS {
        let (r, i) = (tail_bound_real(n)?, tail_bound_imag(n)?);
        positive &= r > 0.0 && i > 0.0;
        decreasing &= r < prev.0 && i < prev.1;
        if n >= 64.0 {
            small = small.max(r).max(i);
        }
        prev = (r, i);
    }
    let mut quad = Vec::new();
    for (lambda, w) in disc_pairs() {
        quad.push((tail_real_quadrature(2.0, lambda, w, tol)? - tail_bound_real(2.0)?).abs());
        quad.push((tail_imag_quadrature(2.0, lambda, w, tol)? - tail_bound_imag(2.0)?).abs());
    }
    Ok(vec![
        check("tails positive", if positive { 0.0 } else { 1.0 }, 0.0),
        check("tails strictly decreasing, N = 2..1024", if decreasing { 0.0 } else { 1.0 }, 0.0),
        check("tails below 1e-2 for N >= 64", small, 1e-2),
        check("tail quadrature at N = 2", worst(quad), 1e-3),
    ])
}

fn pair_off_diagonal(rng: &mut Mcg64) -> (C, C) {
    random_pair(rng, 1.2, 0.05)
}

pub fn property_checks(tol: f64, seed: u64) -> Result<Vec<Check>> {
    let mut rng = Mcg64::new(seed ^ 0x9e37);
    let mut hermitian = Vec::new();
    let mut multiplicative = Vec::new();
    let mut covariance = Vec::new();
    for k in 0..50 {
        let g = random_density::<f64>(&mut rng);
        let (lambda, w) = pair_off_diagonal(&mut rng);
        let a = eval_e(&g, lambda, w, tol)?.value;
        let b = eval_e(&g, w, lambda, tol)?.value;
        hermitian.push((a - b.conj()).norm());

        let g1 = random_density::<f64>(&mut rng).scaled(0.5);
        let mut g2 = random_density::<f64>(&mut rng).scaled(0.5);
        if g1.grid.is_some() && g2.grid.is_some() {
            g2 = D::disc(z(0.1, -0.2), 0.7, 0.5);
        }
        let sum = g1.sum(&g2)?;
        let (lambda, w) = pair_off_diagonal(&mut rng);
        let w = if k % 5 == 0 { lambda } else { w };
        let joint = eval_e(&sum, lambda, w, tol)?.value;
        let split = eval_e(&g1, lambda, w, tol)?.value * eval_e(&g2, lambda, w, tol)?.value;
        multiplicative.push((joint - split).norm());

        let rho = rng.uniform(0.5, 2.0);
        let shift = z(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        let (lambda, w) = pair_off_diagonal(&mut rng);
        let moved = eval_e(&g.affine(rho, shift), lambda * rho + shift, w * rho + shift, tol)?.value;
        covariance.push((moved - eval_e(&g, lambda, w, tol)?.value).norm());
    }
    let mut swiss = Vec::new();
    for s in 1..=10u64 {
        let g = swiss_cheese::<f64>(seed.wrapping_add(s), 1 + (s % 3) as usize, 0.3)?;
        let (lambda, w) = pair_off_diagonal(&mut rng);
        let quad = eval_e(&g, lambda, w, tol)?.value;
        swiss.push((eval_e_signed_discs(&g, lambda, w)? - quad).norm());
    }
    Ok(vec![
        check("Hermitian symmetry (50 fixtures)", worst(hermitian), 1e-4),
        check("multiplicativity over density sums (50)", worst(multiplicative), 1e-4),
        check("translation/dilation covariance (50)", worst(covariance), 1e-4),
        check("Swiss cheese factorisation (10)", worst(swiss), 1e-3),
    ])
}
