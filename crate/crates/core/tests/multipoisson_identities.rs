//! Property tests for admissible forms and the multi-Poisson bracket over
//! constant-coefficient forms.

mod common;

use std::sync::Arc;

use common::*;
use mdx_core::courant::multi_courant;
use mdx_core::exterior::{contract, ext_deriv, poincare_homotopy, schouten};
use mdx_core::multidirac::GraphMultiDirac;
use mdx_core::multipoisson::{
    jacobi_cyclic_sum, jacobi_defect, jacobi_primitive, plain_cyclic_sum, poisson_bracket,
    solve_hamiltonian, verify_admissible, witness_kernel,
};
use mdx_core::{
    rat, AdmissibleForm, Blade, Chart, Form, GradedContext, GradedPair, Multivector, Polynomial,
};
use proptest::prelude::*;

fn constant_graded<V: mdx_core::exterior::Variance>(
    c: Arc<Chart>,
    degree: usize,
) -> impl Strategy<Value = mdx_core::exterior::Graded<V>> {
    let dim = c.dimension();
    let blades: Vec<Blade> = Blade::all_of_grade(dim, degree as u32).collect();
    prop::collection::vec(
        prop::option::weighted(0.7, (-3i64..=3, 1i64..=2)),
        blades.len(),
    )
    .prop_map(move |cs| {
        let terms = blades
            .iter()
            .zip(cs)
            .filter_map(|(b, c)| c.map(|(n, d)| (*b, Polynomial::constant(dim, rat(n, d)))));
        mdx_core::exterior::Graded::<V>::from_terms(&c, degree as i32, terms).unwrap()
    })
}

/// Canonical forms plus a random constant form in dimension 4.
fn structure() -> impl Strategy<Value = GraphMultiDirac> {
    let canonical = |dim: usize, n: usize| {
        let ctx = context(dim, n);
        let omega = Form::basis(ctx.chart(), &(0..=n).collect::<Vec<_>>()).unwrap();
        GraphMultiDirac::new(&ctx, omega).unwrap()
    };
    let random = (2usize..=3).prop_flat_map(|n| {
        let ctx = context(4, n);
        constant_graded(ctx.chart().clone(), n + 1)
            .prop_map(move |om| GraphMultiDirac::new(&ctx, om).unwrap())
    });
    prop_oneof![Just(canonical(2, 1)), Just(canonical(3, 2)), random]
}

/// Solves for a witness of a random form; when none exists, falls back to
/// a constant witness and the homotopy primitive of `i_Γ Ω`.
fn admissible(g: GraphMultiDirac) -> impl Strategy<Value = AdmissibleForm> {
    let ctx = g.context().clone();
    let c = ctx.chart().clone();
    (1..=ctx.n()).prop_flat_map(move |r| {
        let g = g.clone();
        (form(c.clone(), ctx.n() - r), constant_graded(c.clone(), r)).prop_map(
            move |(sigma, gamma)| {
                if let Some(a) = AdmissibleForm::solve(&g, sigma).unwrap() {
                    return a;
                }
                let primitive = poincare_homotopy(&contract(&gamma, g.omega()).unwrap());
                AdmissibleForm::new(&g, primitive, gamma).unwrap()
            },
        )
    })
}

fn with_forms(count: usize) -> impl Strategy<Value = (GraphMultiDirac, Vec<AdmissibleForm>)> {
    structure().prop_flat_map(move |g| {
        let forms = prop::collection::vec(admissible(g.clone()), count);
        (Just(g), forms)
    })
}

fn with_forms_and_function(
    count: usize,
) -> impl Strategy<Value = (GraphMultiDirac, Vec<AdmissibleForm>, Polynomial)> {
    structure().prop_flat_map(move |g| {
        let dim = g.context().chart().dimension();
        let forms = prop::collection::vec(admissible(g.clone()), count);
        (Just(g), forms, poly(dim))
    })
}

fn pair_of(sigma: &Form, gamma: &Multivector, ctx: &GradedContext) -> GradedPair {
    GradedPair::new(ctx, gamma.clone(), ext_deriv(sigma)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_graded_anticommutative((_g, fs) in with_forms(2)) {
        let (a, b) = (&fs[0], &fs[1]);
        let kl = a.grade() * b.grade();
        let ab = poisson_bracket(a, b).unwrap();
        let ba = poisson_bracket(b, a).unwrap();
        prop_assert_eq!(ab.value(), &ba.value().scale(&-sign(kl as i32)));
        prop_assert_eq!(ab.grade(), a.grade() + b.grade());
    }

    #[test]
    fn brackets_of_differentials((g, fs) in with_forms(2)) {
        let (a, b) = (&fs[0], &fs[1]);
        let ctx = g.context();
        let (r, s) = (a.gamma().degree(), b.gamma().degree());
        prop_assume!(r + s <= ctx.n() as i32 + 1);
        let shift = a.grade() + b.grade();
        let lhs = multi_courant(&pair_of(a.sigma(), a.gamma(), ctx), &pair_of(b.sigma(), b.gamma(), ctx)).unwrap();
        let pb = poisson_bracket(a, b).unwrap();
        prop_assert_eq!(lhs.gamma(), &schouten(a.gamma(), b.gamma()).unwrap());
        prop_assert_eq!(lhs.sigma(), &ext_deriv(pb.value()).scale(&sign(shift as i32)));
        prop_assert!(pb.is_admissible());
    }

    #[test]
    fn bracket_does_not_depend_on_the_witness(
        (g, fs, f) in with_forms_and_function(2),
        pick in any::<prop::sample::Index>(),
    ) {
        let (a, b) = (&fs[0], &fs[1]);
        let kernel = witness_kernel(&g, b.gamma().degree()).unwrap();
        prop_assume!(!kernel.is_empty());
        let delta = pick.get(&kernel).mul_poly(&f).unwrap();
        let other = b.with_witness(b.gamma().clone() + delta).unwrap();
        let original = poisson_bracket(a, b).unwrap();
        let perturbed = poisson_bracket(a, &other).unwrap();
        prop_assert_eq!(original.value(), perturbed.value());
    }

    #[test]
    fn jacobi_holds_up_to_an_explicit_exact_form((_g, fs) in with_forms(3)) {
        let (a, b, c) = (&fs[0], &fs[1], &fs[2]);
        prop_assert!(jacobi_defect(a, b, c).unwrap().is_zero());
        prop_assert_eq!(
            jacobi_cyclic_sum(a, b, c).unwrap(),
            ext_deriv(&jacobi_primitive(a, b, c).unwrap())
        );
        let (k, l, m) = (a.grade(), b.grade(), c.grade());
        if (k - l) % 2 == 0 && (l - m) % 2 == 0 {
            prop_assert_eq!(plain_cyclic_sum(a, b, c).unwrap(), jacobi_cyclic_sum(a, b, c).unwrap());
        }
    }

    #[test]
    fn closed_forms_are_admissible_with_zero_witness((g, _, f) in with_forms_and_function(0)) {
        let ctx = g.context();
        let c = ctx.chart().clone();
        let n = ctx.n();
        // an (n−1)-form d f ∧ dx_1 ∧ … ∧ dx_{n−2}, closed by construction
        let mut sigma = ext_deriv(&Form::scalar(&c, f).unwrap());
        if n == 1 {
            sigma = Form::scalar(&c, Polynomial::constant(c.dimension(), rat(5, 2))).unwrap();
        }
        for i in 0..n.saturating_sub(2) {
            sigma = sigma.wedge(&Form::coordinate(&c, i).unwrap()).unwrap();
        }
        let zero = Multivector::zero(&c, 1);
        prop_assert!(verify_admissible(&g, &sigma, &zero).unwrap().0);
    }
}

fn plane() -> GraphMultiDirac {
    let ctx = GradedContext::new(Arc::new(Chart::new(["q", "p"]).unwrap()), 1).unwrap();
    let omega = Form::basis(ctx.chart(), &[0, 1]).unwrap();
    GraphMultiDirac::new(&ctx, omega).unwrap()
}

#[test]
fn canonical_bracket_against_brute_force_contraction() {
    let g = plane();
    let c = g.context().chart().clone();
    let q = Form::scalar(&c, Polynomial::var(2, 0).unwrap()).unwrap();
    let p = Form::scalar(&c, Polynomial::var(2, 1).unwrap()).unwrap();
    let gamma_p = solve_hamiltonian(&g, &p).unwrap().unwrap();
    assert_eq!(gamma_p, Multivector::coordinate(&c, 0).unwrap());
    // −(−1)^0 i_{∂q} dq, evaluated directly
    let by_hand = -contract(&gamma_p, &ext_deriv(&q)).unwrap();
    let a = AdmissibleForm::solve(&g, q).unwrap().unwrap();
    let b = AdmissibleForm::solve(&g, p).unwrap().unwrap();
    let value = poisson_bracket(&a, &b).unwrap().value().clone();
    assert_eq!(value, by_hand);
    assert_eq!(value.as_scalar(), Polynomial::constant(2, rat(-1, 1)));
}

#[test]
fn constant_differentials_give_zero_defect() {
    let g = plane();
    let c = g.context().chart().clone();
    let lin = |i: usize| {
        AdmissibleForm::solve(
            &g,
            Form::scalar(&c, Polynomial::var(2, i).unwrap()).unwrap(),
        )
        .unwrap()
        .unwrap()
    };
    let (q, p) = (lin(0), lin(1));
    assert!(jacobi_defect(&q, &p, &q).unwrap().is_zero());
    assert!(jacobi_cyclic_sum(&q, &p, &p).unwrap().is_zero());
}
