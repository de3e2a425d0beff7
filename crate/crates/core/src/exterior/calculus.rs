//! Contraction, exterior derivative and the generalized Lie derivative.

use std::collections::BTreeMap;

use super::graded::{accumulate, same_chart};
use super::{Blade, Form, Multivector};
use crate::coeff_ring::{Polynomial, Rational};
use crate::{parity_sign, Result};

/// Sign and remainder of contracting the coordinate multivector `∂_A` into the
/// coordinate form `dx^B`, with `i_{∂a1∧…∧∂ak} = i_{∂ak} ⋯ i_{∂a1}`, i.e. the
/// lowest index is contracted first.
fn contract_blades(a: Blade, b: Blade) -> Option<(Blade, i32)> {
    if !a.is_subset_of(b) {
        return None;
    }
    let mut rest = b;
    let mut sign = 1;
    for i in a.indices() {
        if rest.count_below(i) % 2 == 1 {
            sign = -sign;
        }
        rest = rest.without(i);
    }
    Some((rest, sign))
}

/// Interior product `i_Γ α`, of degree `deg α − deg Γ`.
///
/// For a decomposable `Γ = X_1 ∧ … ∧ X_k` this is `i_{X_k} ⋯ i_{X_1} α`; it
/// vanishes whenever `deg Γ > deg α`.
pub fn contract(gamma: &Multivector, alpha: &Form) -> Result<Form> {
    same_chart(gamma.chart(), alpha.chart())?;
    let degree = alpha.degree() - gamma.degree();
    let mut out = BTreeMap::new();
    if degree >= 0 {
        for (ba, pa) in gamma.terms() {
            for (bb, pb) in alpha.terms() {
                if let Some((rest, sign)) = contract_blades(*ba, *bb) {
                    let c = pa * pb;
                    let c = if sign < 0 { -c } else { c };
                    accumulate(&mut out, rest, &c);
                }
            }
        }
    }
    Ok(Form::from_map(alpha.chart(), degree, out))
}

/// Exterior derivative. The result has degree `deg α + 1`; `d` of a
/// top-degree form is the zero form of degree `dim + 1`.
pub fn ext_deriv(alpha: &Form) -> Form {
    let dim = alpha.dimension();
    let mut out = BTreeMap::new();
    for (b, p) in alpha.terms() {
        for i in 0..dim {
            if b.contains(i) {
                continue;
            }
            let dp = p.partial(i).expect("index within chart");
            if dp.is_zero() {
                continue;
            }
            // dx^i ∧ dx^B: move dx^i past the indices of B below i
            let dp = if b.count_below(i) % 2 == 1 { -dp } else { dp };
            accumulate(&mut out, b.union(Blade::single(i)), &dp);
        }
    }
    Form::from_map(alpha.chart(), alpha.degree() + 1, out)
}

/// Generalized Lie derivative `£_Γ α = d i_Γ α − (−1)^k i_Γ dα`, `k = deg Γ`.
pub fn lie_derivative(gamma: &Multivector, alpha: &Form) -> Result<Form> {
    let first = ext_deriv(&contract(gamma, alpha)?);
    let second = contract(gamma, &ext_deriv(alpha))?;
    let sign = parity_sign(gamma.degree().into());
    first.checked_sub(&second.scale(&Rational::from_integer(sign.into())))
}

/// Homotopy operator `h` of the Poincaré lemma for the radial contraction to
/// the origin, `h(x^a dx^I) = x^a i_E dx^I / (|a| + |I|)` with `E = Σ x_j ∂_j`.
/// On polynomial forms of positive degree `α = h dα + d hα`; in particular
/// `α = d hα` whenever `α` is closed.
pub fn poincare_homotopy(alpha: &Form) -> Form {
    let nvars = alpha.dimension();
    let mut out = BTreeMap::new();
    for (b, p) in alpha.terms() {
        let k = b.grade();
        for (m, c) in p.terms() {
            let weight = Rational::from_integer((m.total_degree() + k).into());
            let c = c / weight;
            for j in b.indices() {
                let mut exps = m.exponents().to_vec();
                exps[j] += 1;
                let c = if b.count_below(j) % 2 == 1 {
                    -c.clone()
                } else {
                    c.clone()
                };
                let term =
                    Polynomial::from_terms(nvars, [(exps, c)]).expect("exponent length matches");
                accumulate(&mut out, b.without(j), &term);
            }
        }
    }
    Form::from_map(alpha.chart(), alpha.degree() - 1, out)
}

/// Directional derivative `X(f) = Σ X^i ∂_i f` of a polynomial along a
/// vector field.
pub fn vector_field_action(x: &Multivector, f: &Polynomial) -> Polynomial {
    debug_assert_eq!(x.degree(), 1);
    let mut acc = Polynomial::zero(f.nvars());
    for (b, coeff) in x.terms() {
        let i = b.indices().next().expect("degree-one blade");
        acc += &(coeff * &f.partial(i).expect("index within chart"));
    }
    acc
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exterior::Chart;

    fn chart(names: &[&str]) -> Arc<Chart> {
        Arc::new(Chart::new(names.iter().copied()).unwrap())
    }

    fn var(c: &Arc<Chart>, i: usize) -> Polynomial {
        Polynomial::var(c.dimension(), i).unwrap()
    }

    #[test]
    fn homotopy_inverts_d_on_closed_forms() {
        let c = chart(&["x", "y", "z"]);
        let (x, y, z) = (var(&c, 0), var(&c, 1), var(&c, 2));
        let tau = Form::coordinate(&c, 0)
            .unwrap()
            .mul_poly(&(&(&x * &y) * &z))
            .unwrap()
            + Form::coordinate(&c, 1)
                .unwrap()
                .mul_poly(&x.pow(2))
                .unwrap();
        for alpha in [
            ext_deriv(&tau),
            ext_deriv(&Form::scalar(&c, &y * &z).unwrap()),
        ] {
            assert_eq!(ext_deriv(&poincare_homotopy(&alpha)), alpha);
        }
        let vol = Form::basis(&c, &[0, 1, 2]).unwrap();
        assert_eq!(ext_deriv(&poincare_homotopy(&vol)), vol);
        assert_eq!(
            poincare_homotopy(&Form::scalar(&c, x).unwrap()).degree(),
            -1
        );
    }

    #[test]
    fn contraction_examples() {
        let c = chart(&["x", "y"]);
        let dx = Form::coordinate(&c, 0).unwrap();
        let dx_dy = Form::basis(&c, &[0, 1]).unwrap();
        let px = Multivector::coordinate(&c, 0).unwrap();
        let px_py = Multivector::basis(&c, &[0, 1]).unwrap();
        let one = Form::scalar(&c, Polynomial::one(2)).unwrap();

        assert_eq!(contract(&px, &dx).unwrap(), one);
        // i_{∂y} i_{∂x} (dx∧dy) = i_{∂y} dy = 1
        assert_eq!(contract(&px_py, &dx_dy).unwrap(), one);
        let lower = contract(&px_py, &dx).unwrap();
        assert!(lower.is_zero());
        assert_eq!(lower.degree(), -1);
    }

    #[test]
    fn contraction_order_matches_iterated_vectors() {
        let c = chart(&["x", "y", "z"]);
        let vol = Form::basis(&c, &[0, 1, 2]).unwrap();
        let py = Multivector::coordinate(&c, 1).unwrap();
        let pz = Multivector::coordinate(&c, 2).unwrap();
        // i_{∂y∧∂z} = i_{∂z} i_{∂y}
        let iterated = contract(&pz, &contract(&py, &vol).unwrap()).unwrap();
        let joint = contract(&py.wedge(&pz).unwrap(), &vol).unwrap();
        assert_eq!(iterated, joint);
        assert_eq!(joint, Form::coordinate(&c, 0).unwrap());
    }

    #[test]
    fn derivative_examples() {
        let c = chart(&["x", "y"]);
        let (x, y) = (var(&c, 0), var(&c, 1));
        let dx = Form::coordinate(&c, 0).unwrap();
        let dy = Form::coordinate(&c, 1).unwrap();

        let x_dy = dy.mul_poly(&x).unwrap();
        assert_eq!(ext_deriv(&x_dy), Form::basis(&c, &[0, 1]).unwrap());
        assert!(ext_deriv(&dx).is_zero());

        let xy = Form::scalar(&c, &x * &y).unwrap();
        let expected = dx.mul_poly(&y).unwrap() + dy.mul_poly(&x).unwrap();
        assert_eq!(ext_deriv(&xy), expected);

        let top = ext_deriv(&Form::basis(&c, &[0, 1]).unwrap().mul_poly(&x).unwrap());
        assert!(top.is_zero());
        assert_eq!(top.degree(), 3);
    }

    #[test]
    fn lie_derivative_examples() {
        let c = chart(&["x", "y"]);
        let x = var(&c, 0);
        let dx = Form::coordinate(&c, 0).unwrap();
        let px = Multivector::coordinate(&c, 0).unwrap();

        // £_{∂x}(x dx) = d(x) + i_{∂x}(0) = dx
        let x_dx = dx.mul_poly(&x).unwrap();
        assert_eq!(lie_derivative(&px, &x_dx).unwrap(), dx);

        // £_{∂x∧∂y}(dx∧dy) = d(1) − i(0) = 0
        let px_py = Multivector::basis(&c, &[0, 1]).unwrap();
        let l = lie_derivative(&px_py, &Form::basis(&c, &[0, 1]).unwrap()).unwrap();
        assert!(l.is_zero());
        assert_eq!(l.degree(), 1);

        // degree of Γ exceeds deg α + 1
        let l = lie_derivative(&px_py, &Form::scalar(&c, x).unwrap()).unwrap();
        assert!(l.is_zero());
        assert_eq!(l.degree(), -1);
    }
}
