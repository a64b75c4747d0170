use std::time::Instant;

use expkernel::cauchy::{
    check_h0_binomial, check_power_identity, check_product_identity, check_representation, dbar_stencil, H0Context,
    Regime,
};
use expkernel::density::{DensitySpec, Region};
use expkernel::error::Error;
use expkernel::scalar::Cx;

type C = Cx<f64>;
type D = DensitySpec<f64>;

fn annulus() -> D {
    D::new(C::new(0.0, 0.0), 1.0, vec![]).with_term(Region::annulus(C::new(0.0, 0.0), 0.5, 1.0), 1.0)
}

#[test]
fn product_identity_on_discs() {
    let t = Instant::now();
    let g = D::unit_disc();
    let r = check_product_identity(&g, &g, &[C::new(0.0, 0.0), C::new(2.0, 0.0), C::new(0.3, -0.4)], 1e-6).unwrap();
    eprintln!("product: {:?} in {:?}", r.residual, t.elapsed());
    assert!(r.points[0].residual < 1e-6);
    assert!((r.points[1].lhs - C::new(0.25, 0.0)).norm() < 1e-6);
    assert!(r.residual < 1e-5);
    let r = check_product_identity(&g, &D::zero(), &[C::new(0.5, 0.2)], 1e-6).unwrap();
    assert_eq!(r.residual, 0.0);
}

#[test]
fn power_identity() {
    let t = Instant::now();
    let g = D::unit_disc().with_term(Region::disk(C::new(0.4, 0.1), 0.2), -1.0);
    let r = check_power_identity(&g, 1, &[C::new(0.1, 0.7), C::new(3.0, 1.0)], 1e-6).unwrap();
    assert_eq!(r.residual, 0.0);
    let d = D::unit_disc();
    let r = check_power_identity(&d, 2, &[C::new(0.0, 0.0), C::new(2.0, 0.0)], 1e-6).unwrap();
    eprintln!("power: {:?} in {:?}", r.residual, t.elapsed());
    assert!(r.points[0].lhs.norm() < 1e-6 && r.points[0].rhs.norm() < 1e-5);
    assert!((r.points[1].lhs - C::new(0.25, 0.0)).norm() < 1e-6);
    assert!(r.residual < 1e-5);
    assert!(check_power_identity(&d, 5, &[C::new(2.0, 0.0)], 1e-6).is_err());
}

#[test]
fn binomial() {
    let t = Instant::now();
    let ctx = H0Context::new(annulus(), C::new(0.0, 0.0), 1e-8).unwrap();
    assert!(ctx.c.norm() < 1e-8);
    assert!(ctx.recheck_c(1e-8).unwrap() < 1e-8);
    let r = check_h0_binomial(&ctx, 1, C::new(0.7, 0.0), 1e-6).unwrap();
    assert!(r.residual < 1e-5, "{r:?}");
    let r = check_h0_binomial(&ctx, 2, C::new(1.5, 0.0), 1e-6).unwrap();
    eprintln!("binomial: {:?} in {:?}", r.residual, t.elapsed());
    assert!(r.residual < 1e-5, "{r:?}");
    assert!(check_h0_binomial(&ctx, 2, C::new(0.0, 0.0), 1e-6).is_err());
    // non-radial density with C != 0
    let g = D::disc(C::new(0.3, 0.2), 0.5, 1.0);
    let ctx = H0Context::new(g, C::new(0.0, 0.0), 1e-8).unwrap();
    assert!(ctx.c.norm() > 1e-2);
    let r = check_h0_binomial(&ctx, 2, C::new(-0.4, 0.6), 1e-6).unwrap();
    assert!(r.residual < 1e-5, "{r:?}");
}

#[test]
fn stencil() {
    let v = dbar_stencil(&D::unit_disc(), C::new(0.1, 0.2), 1e-2, 1e-9).unwrap();
    assert!((v - C::new(-1.0, 0.0)).norm() < 1e-4, "{v}");
    let v = dbar_stencil(&D::unit_disc(), C::new(2.0, 0.2), 1e-2, 1e-9).unwrap();
    assert!(v.norm() < 1e-4, "{v}");
}

#[test]
fn representation() {
    let g = D::unit_disc();
    let t = Instant::now();
    let r = check_representation(&g, C::new(2.0, 0.0), Regime::OutsideSupport, &[C::new(3.0, 0.0), C::new(0.2, 0.5)], 1e-5).unwrap();
    eprintln!("repr outside: {:?} in {:?}", r.residual, t.elapsed());
    assert!(r.residual < 1e-4, "{r:?}");
    let t = Instant::now();
    let r = check_representation(&g, C::new(0.0, 0.0), Regime::DensityPoint, &[C::new(0.5, 0.0)], 1e-5).unwrap();
    eprintln!("repr density point: {:?} in {:?}", r.residual, t.elapsed());
    assert!(r.residual < 1e-4, "{r:?}");
    let r = check_representation(&D::zero(), C::new(0.0, 0.0), Regime::OutsideSupport, &[C::new(0.5, 0.0)], 1e-5).unwrap();
    assert_eq!(r.residual, 0.0);
    assert!(matches!(
        check_representation(&g, C::new(0.0, 0.0), Regime::FiniteDiagonal, &[C::new(0.5, 0.0)], 1e-5),
        Err(Error::RegimeUnverified(_))
    ));
    assert!(matches!(
        check_representation(&g, C::new(0.5, 0.0), Regime::OutsideSupport, &[C::new(0.2, 0.0)], 1e-5),
        Err(Error::RegimeUnverified(_))
    ));
}
