use ideal_duality::duality::{
    batch_verify, classical_duality, classical_sweep, ClassicalIdentity, PrimeFunction, Rational,
};
use ideal_duality::{ClassLabel, ExtensionContext, PrimeIdealSelector};

fn ctx(field: &str, ext: &str) -> ExtensionContext {
    ExtensionContext::new(field.parse().unwrap(), ext.parse().unwrap()).unwrap()
}

#[test]
fn every_class_of_every_backend_is_exact() {
    for (field, ext) in [
        ("q", "cyclo:8"),
        ("quad:-1", "trivial"),
        ("quad:5", "relquad:-1"),
        ("quad:-5", "trivial"),
    ] {
        let c = ctx(field, ext);
        for class in c.class_ids() {
            let sel = PrimeIdealSelector::class(c, class).unwrap();
            let s = batch_verify(&c, 2000, 3, &sel).unwrap();
            assert!(
                s.violations.is_empty(),
                "{field}+{ext} {class}: {:?}",
                s.violations.first()
            );
            assert!(s.checked > 0);
        }
    }
}

#[test]
fn custom_selectors_are_exact() {
    for field in ["quad:-1", "quad:5"] {
        let c = ctx(field, "trivial");
        for spec in ["normmod:1:3", "normmod:2:5", "all"] {
            let sel = PrimeIdealSelector::from_spec(spec, c, None).unwrap();
            let s = batch_verify(&c, 3000, 3, &sel).unwrap();
            assert!(s.violations.is_empty(), "{field} {spec}");
        }
    }
}

#[test]
fn skip_accounting_adds_up() {
    let c = ctx("quad:-1", "trivial");
    let sel = PrimeIdealSelector::class(c, ClassLabel::IDENTITY).unwrap();
    let s1 = batch_verify(&c, 3000, 1, &sel).unwrap();
    assert_eq!(s1.skipped_hypothesis + s1.skipped_undefined, 0);
    let s3 = batch_verify(&c, 3000, 3, &sel).unwrap();
    assert_eq!(
        s3.checked + s3.skipped_hypothesis + s3.skipped_undefined,
        3 * s1.checked
    );
    assert!(s3.skipped_hypothesis > 0);
}

#[test]
fn classical_identities_hold_for_seeded_tables() {
    for seed in [7, 8] {
        let f = PrimeFunction::random(seed, 20_000);
        let s = classical_sweep(20_000, 4, &f).unwrap();
        assert_eq!(s.checked, 20_000 * 4 * 4);
        assert!(s.violations.is_empty(), "{:?}", s.violations.first());
    }
}

#[test]
fn classical_identity_at_thirty() {
    // f(p) = p: identity 1 at n = 30, k = 2 gives C(2,1)·f(2) = 4.
    let f = PrimeFunction::from_map(
        [2, 3, 5]
            .into_iter()
            .map(|p| (p, Rational::from_integer(p as i64)))
            .collect(),
    );
    let (lhs, rhs) = classical_duality(30, 2, &f, ClassicalIdentity::LargestToSmallest).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(rhs, Rational::from_integer(4));
    let (lhs, rhs) = classical_duality(30, 2, &f, ClassicalIdentity::BinomialSmallest).unwrap();
    assert_eq!((lhs, rhs), (Rational::from_integer(3), Rational::from_integer(3)));
}
