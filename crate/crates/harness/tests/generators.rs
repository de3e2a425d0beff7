use mdx_core::exterior::ext_deriv;
use mdx_core::multipoisson::verify_admissible;
use mdx_harness::dsl::Value;
use mdx_harness::generate::{random_object, GenError, Generator, GeneratorConfig, ObjectKind};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = GeneratorConfig> {
    (any::<u64>(), 1usize..=4, 0u32..=2, 1usize..=3).prop_flat_map(|(seed, dim, degree, terms)| {
        (1..=dim).prop_map(move |ambient| GeneratorConfig {
            seed,
            dim,
            ambient,
            max_poly_degree: degree,
            max_terms: terms,
            ..GeneratorConfig::default()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn same_seed_and_stream_same_objects(cfg in config(), stream in any::<u64>()) {
        let mut a = Generator::new(&cfg, stream);
        let mut b = Generator::new(&cfg, stream);
        for k in 0..=cfg.dim {
            prop_assert_eq!(a.form(k), b.form(k));
            prop_assert_eq!(a.multivector(k), b.multivector(k));
        }
    }

    #[test]
    fn objects_respect_the_bounds(cfg in config(), stream in any::<u64>()) {
        let mut g = Generator::new(&cfg, stream);
        for _ in 0..8 {
            let p = g.polynomial();
            prop_assert!(p.num_terms() <= cfg.max_terms);
            prop_assert!(p.total_degree().unwrap_or(0) <= cfg.max_poly_degree);
        }
        for k in 0..=cfg.dim {
            let f = g.form(k);
            prop_assert_eq!(f.degree(), k as i32);
            prop_assert!(f.num_terms() <= 3);
            for (_, p) in f.terms() {
                prop_assert!(p.total_degree().unwrap_or(0) <= cfg.max_poly_degree);
            }
            prop_assert!(g.constant_form(k).is_constant());
        }
    }

    #[test]
    fn closed_forms_are_closed(cfg in config(), stream in any::<u64>(), k in 1usize..=4) {
        let mut g = Generator::new(&cfg, stream);
        match g.closed_form(k) {
            Ok(f) => prop_assert!(ext_deriv(&f).is_zero()),
            Err(e) => prop_assert!(matches!(e, GenError::Unsatisfiable(_)), "{}", e),
        }
    }

    #[test]
    fn admissible_forms_verify(seed in any::<u64>(), r in 1usize..=2) {
        let cfg = GeneratorConfig::with_seed(seed);
        match random_object(ObjectKind::Admissible(r), &cfg) {
            Ok(Value::Admissible(a)) => {
                let (ok, defect) = verify_admissible(a.parent(), a.sigma(), a.gamma()).unwrap();
                prop_assert!(ok, "{}", defect);
            }
            Ok(other) => prop_assert!(false, "unexpected {}", other.kind()),
            Err(e) => prop_assert!(matches!(e, GenError::Unsatisfiable(_)), "{}", e),
        }
    }
}

#[test]
fn random_objects_are_reproducible() {
    let cfg = GeneratorConfig::default();
    for kind in [
        ObjectKind::Polynomial,
        ObjectKind::Multivector(2),
        ObjectKind::Form(1),
        ObjectKind::GradedPair(1),
        ObjectKind::ClosedForm(2),
        ObjectKind::Admissible(1),
    ] {
        let a = random_object(kind, &cfg).unwrap();
        let b = random_object(kind, &cfg).unwrap();
        assert!(a.same_as(&b), "{kind:?}: {a} vs {b}");
    }
    assert!(random_object(ObjectKind::Form(5), &cfg).is_err());
}

#[test]
fn invalid_configs_are_rejected() {
    let bad = GeneratorConfig {
        dim: 7,
        ..GeneratorConfig::default()
    };
    assert!(matches!(bad.validate(), Err(GenError::InvalidConfig(_))));
    let bad = GeneratorConfig {
        ambient: 4,
        ..GeneratorConfig::default()
    };
    assert!(bad.validate().is_err());
}
