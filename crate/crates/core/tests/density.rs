use expkernel::density::{hole_center, swiss_cheese, DensitySpec, Region, Violation};
use expkernel::error::Error;
use expkernel::scalar::Cx;

type C = Cx<f64>;

#[test]
fn spec_examples() {
    let g = DensitySpec::<f64>::unit_disc();
    assert_eq!(g.eval(C::new(0.0, 0.0)), 1.0);
    assert_eq!(g.eval(C::new(2.0, 0.0)), 0.0);
    let holed = g.clone().with_term(Region::disk(C::new(0.3, 0.0), 0.1), -1.0);
    assert_eq!(holed.eval(C::new(0.3, 0.0)), 0.0);
    holed.validate().unwrap();
    let doubled = g.clone().with_term(Region::disk(C::new(0.0, 0.0), 1.0), 1.0);
    assert!(matches!(doubled.validate(), Err(Violation::OutOfRange { value, .. }) if value == 2.0));
    let negative = DensitySpec::<f64>::disc(C::new(0.0, 0.0), 1.0, -1.0);
    assert!(matches!(negative.validate(), Err(Violation::OutOfRange { value, .. }) if value == -1.0));
}

#[test]
fn swiss_cheese_is_reproducible_and_within_budget() {
    for seed in 1..20u64 {
        let a = swiss_cheese::<f64>(seed, 5, 0.3).unwrap();
        let b = swiss_cheese::<f64>(seed, 5, 0.3).unwrap();
        assert_eq!(a, b);
        a.validate().unwrap();
        let total: f64 = a
            .terms
            .iter()
            .filter(|t| t.coeff < 0.0)
            .map(|t| match t.shape {
                Region::Disk { radius, .. } => radius,
                _ => panic!("holes are discs"),
            })
            .sum();
        assert!(total <= 0.3 + 1e-12);
        for k in 0..5 {
            assert_eq!(a.eval(hole_center(&a, k).unwrap()), 0.0);
        }
    }
    let one = swiss_cheese::<f64>(1, 1, 0.3).unwrap();
    assert_eq!(one.terms.len(), 2);
}

#[test]
fn config_parsing() {
    let text = r#"{"support_center":[0,0],"support_radius":1,
        "terms":[{"shape":{"kind":"disk","center":[0,0],"radius":1},"coeff":1},
                 {"shape":{"kind":"disk","center":[0.5,0],"radius":0.2},"coeff":-1}]}"#;
    let g = DensitySpec::<f64>::from_json(text).unwrap();
    assert_eq!(g.eval(C::new(0.5, 0.0)), 0.0);
    assert_eq!(DensitySpec::<f64>::from_json(&g.to_json()).unwrap(), g);
    let unknown = text.replace("\"coeff\":1}", "\"coeff\":1,\"weight\":2}");
    assert!(matches!(DensitySpec::<f64>::from_json(&unknown), Err(Error::Config(_))));
    let bad = text.replace("\"coeff\":-1", "\"coeff\":1");
    assert!(matches!(DensitySpec::<f64>::from_json(&bad), Err(Error::InvalidDensity(_))));
}
