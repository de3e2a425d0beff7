//! Property tests for the Cartan calculus of multivector fields and forms.

mod common;

use common::*;
use mdx_core::exterior::{contract, ext_deriv, lie_bracket, lie_derivative, schouten};
use mdx_core::{Form, Multivector};
use proptest::prelude::*;

const DIM: usize = 3;

fn mv() -> impl Strategy<Value = Multivector> {
    (0..=DIM).prop_flat_map(|k| multivector(chart(DIM), k))
}

fn fm() -> impl Strategy<Value = Form> {
    (0..=DIM).prop_flat_map(|k| form(chart(DIM), k))
}

fn s(k: i32) -> mdx_core::Rational {
    sign(k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(a in fm()) {
        prop_assert!(ext_deriv(&ext_deriv(&a)).is_zero());
    }

    #[test]
    fn contractions_graded_commute(g in mv(), h in mv(), a in fm()) {
        let (r, q) = (g.degree(), h.degree());
        let lhs = contract(&g, &contract(&h, &a).unwrap()).unwrap();
        let rhs = contract(&h, &contract(&g, &a).unwrap()).unwrap().scale(&s(r * q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_graded_commutes(a in fm(), b in fm()) {
        let lhs = a.wedge(&b).unwrap();
        let rhs = b.wedge(&a).unwrap().scale(&s(a.degree() * b.degree()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_matches_lie_bracket(x in multivector(chart(DIM), 1), y in multivector(chart(DIM), 1)) {
        prop_assert_eq!(schouten(&x, &y).unwrap(), lie_bracket(&x, &y).unwrap());
    }

    #[test]
    fn schouten_anticommutes(g in mv(), h in mv()) {
        let (k, l) = (g.degree(), h.degree());
        let lhs = schouten(&g, &h).unwrap();
        let rhs = -schouten(&h, &g).unwrap().scale(&s((k - 1) * (l - 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_leibniz(g in mv(), h in mv(), e in mv()) {
        let (k, l) = (g.degree(), h.degree());
        let lhs = schouten(&g, &h.wedge(&e).unwrap()).unwrap();
        let rhs = schouten(&g, &h).unwrap().wedge(&e).unwrap()
            + h.wedge(&schouten(&g, &e).unwrap()).unwrap().scale(&s((k - 1) * l));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_jacobi(g in mv(), h in mv(), e in mv()) {
        let (k, l, m) = (g.degree(), h.degree(), e.degree());
        let t1 = schouten(&g, &schouten(&h, &e).unwrap()).unwrap().scale(&s((k - 1) * (m - 1)));
        let t2 = schouten(&h, &schouten(&e, &g).unwrap()).unwrap().scale(&s((l - 1) * (k - 1)));
        let t3 = schouten(&e, &schouten(&g, &h).unwrap()).unwrap().scale(&s((m - 1) * (l - 1)));
        prop_assert!((t1 + t2 + t3).is_zero());
    }

    #[test]
    fn d_commutes_with_lie(g in mv(), a in fm()) {
        let k = g.degree();
        let lhs = ext_deriv(&lie_derivative(&g, &a).unwrap());
        let rhs = lie_derivative(&g, &ext_deriv(&a)).unwrap().scale(&s(k - 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_identity(g in mv(), h in mv(), a in fm()) {
        let (k, l) = (g.degree(), h.degree());
        let lhs = contract(&schouten(&g, &h).unwrap(), &a).unwrap();
        let rhs = lie_derivative(&g, &contract(&h, &a).unwrap()).unwrap().scale(&s((k - 1) * l))
            - contract(&h, &lie_derivative(&g, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_of_bracket(g in mv(), h in mv(), a in fm()) {
        let (k, l) = (g.degree(), h.degree());
        let lhs = lie_derivative(&schouten(&g, &h).unwrap(), &a).unwrap();
        let rhs = lie_derivative(&g, &lie_derivative(&h, &a).unwrap()).unwrap().scale(&s((k - 1) * (l - 1)))
            - lie_derivative(&h, &lie_derivative(&g, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_of_wedge(g in mv(), h in mv(), a in fm()) {
        let l = h.degree();
        let lhs = lie_derivative(&g.wedge(&h).unwrap(), &a).unwrap();
        let rhs = contract(&h, &lie_derivative(&g, &a).unwrap()).unwrap().scale(&s(l))
            + lie_derivative(&h, &contract(&g, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
