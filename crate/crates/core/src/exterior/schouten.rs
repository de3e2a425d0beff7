//! The Schouten–Nijenhuis bracket.
//!
//! Each basis term `f ∂_{a1} ∧ … ∧ ∂_{ak}` is treated as the decomposable
//! product `X_1 ∧ … ∧ X_k` with `X_1 = f ∂_{a1}` and `X_i = ∂_{ai}`, and
//!
//! ```text
//! [X_1∧…∧X_k, Y_1∧…∧Y_l] = Σ_{i,j} (−1)^{i+j} [X_i, Y_j] ∧ X_1∧…X̂_i…∧X_k ∧ Y_1∧…Ŷ_j…∧Y_l
//! [X_1∧…∧X_k, g]         = Σ_i (−1)^{k−i} X_i(g) X_1∧…X̂_i…∧X_k
//! [f, Γ']                = (−1)^l [Γ', f]
//! [f, g]                 = 0
//! ```
//!
//! With the contraction order `i_{X_1∧…∧X_k} = i_{X_k} ⋯ i_{X_1}` and
//! `£_Γ = d i_Γ − (−1)^k i_Γ d`, these signs satisfy the Koszul identity
//! `i_{[Γ,Γ']} = (−1)^{(k−1)l} £_Γ i_{Γ'} − i_{Γ'} £_Γ`, which the test suite
//! uses to pin the convention.

use std::collections::BTreeMap;

use super::graded::{accumulate, same_chart};
use super::mutation::schouten_sign_flipped;
use super::{Blade, Multivector};
use crate::coeff_ring::Polynomial;
use crate::Result;

/// One factor `c ∂_i` of a decomposable basis term.
struct Factor<'a> {
    index: usize,
    coeff: Option<&'a Polynomial>,
}

fn factors(blade: Blade, coeff: &Polynomial) -> Vec<Factor<'_>> {
    blade
        .indices()
        .enumerate()
        .map(|(pos, index)| Factor {
            index,
            coeff: (pos == 0).then_some(coeff),
        })
        .collect()
}

fn coeff_or_one(c: Option<&Polynomial>, nvars: usize) -> Polynomial {
    c.cloned().unwrap_or_else(|| Polynomial::one(nvars))
}

/// Product of the coefficients of all factors except `skip`, and the blade they
/// span (in ascending, hence positively oriented, order).
fn remainder(blade: Blade, fs: &[Factor<'_>], skip: usize, nvars: usize) -> (Blade, Polynomial) {
    let rest = blade.without(fs[skip].index);
    let coeff = if skip == 0 {
        Polynomial::one(nvars)
    } else {
        coeff_or_one(fs[0].coeff, nvars)
    };
    (rest, coeff)
}

/// `[u ∂_a, v ∂_b] = u ∂_a(v) ∂_b − v ∂_b(u) ∂_a` as a list of single terms.
fn lie_bracket_terms(x: &Factor<'_>, y: &Factor<'_>) -> Vec<(usize, Polynomial)> {
    let mut out = Vec::with_capacity(2);
    if let Some(v) = y.coeff {
        let dv = v.partial(x.index).expect("index within chart");
        if !dv.is_zero() {
            out.push((
                y.index,
                match x.coeff {
                    Some(u) => u * &dv,
                    None => dv,
                },
            ));
        }
    }
    if let Some(u) = x.coeff {
        let du = u.partial(y.index).expect("index within chart");
        if !du.is_zero() {
            out.push((
                x.index,
                -match y.coeff {
                    Some(v) => v * &du,
                    None => du,
                },
            ));
        }
    }
    out
}

fn push_signed(out: &mut BTreeMap<Blade, Polynomial>, blade: Blade, sign: i32, c: Polynomial) {
    let c = if sign < 0 { -c } else { c };
    accumulate(out, blade, &c);
}

fn bracket_terms(
    ba: Blade,
    fa: &Polynomial,
    bb: Blade,
    fb: &Polynomial,
    nvars: usize,
    out: &mut BTreeMap<Blade, Polynomial>,
) {
    let (k, l) = (ba.grade() as usize, bb.grade() as usize);
    match (k, l) {
        (0, 0) => {}
        (_, 0) => multivector_function(ba, fa, fb, nvars, 1, out),
        (0, _) => {
            let sign = if l % 2 == 0 { 1 } else { -1 };
            multivector_function(bb, fb, fa, nvars, sign, out)
        }
        _ => {
            let global = if schouten_sign_flipped() { -1 } else { 1 };
            let xs = factors(ba, fa);
            let ys = factors(bb, fb);
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in ys.iter().enumerate() {
                    if x.coeff.is_none() && y.coeff.is_none() {
                        continue; // coordinate fields commute
                    }
                    let (rest_x, cx) = remainder(ba, &xs, i, nvars);
                    let (rest_y, cy) = remainder(bb, &ys, j, nvars);
                    let Some(s_rest) = rest_x.wedge_sign(rest_y) else {
                        continue;
                    };
                    let rest = rest_x.union(rest_y);
                    let c_rest = &cx * &cy;
                    let ij_sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    for (idx, c) in lie_bracket_terms(x, y) {
                        let head = Blade::single(idx);
                        if let Some(s_head) = head.wedge_sign(rest) {
                            push_signed(
                                out,
                                head.union(rest),
                                global * ij_sign * s_rest * s_head,
                                &c * &c_rest,
                            );
                        }
                    }
                }
            }
        }
    }
}

/// `sign · [f_A ∂_A, g]` accumulated into `out`.
fn multivector_function(
    blade: Blade,
    coeff: &Polynomial,
    g: &Polynomial,
    nvars: usize,
    sign: i32,
    out: &mut BTreeMap<Blade, Polynomial>,
) {
    let xs = factors(blade, coeff);
    let k = xs.len();
    for (i, x) in xs.iter().enumerate() {
        let dg = g.partial(x.index).expect("index within chart");
        if dg.is_zero() {
            continue;
        }
        let action = match x.coeff {
            Some(c) => c * &dg,
            None => dg,
        };
        let (rest, c_rest) = remainder(blade, &xs, i, nvars);
        // 1-based position i+1, sign (−1)^{k−(i+1)}
        let pos_sign = if (k - i - 1).is_multiple_of(2) { 1 } else { -1 };
        push_signed(out, rest, sign * pos_sign, &action * &c_rest);
    }
}

/// Schouten–Nijenhuis bracket `[Γ, Γ']` of degree `k + l − 1`.
pub fn schouten(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    same_chart(a.chart(), b.chart())?;
    let nvars = a.dimension();
    let mut out = BTreeMap::new();
    for (ba, fa) in a.terms() {
        for (bb, fb) in b.terms() {
            bracket_terms(*ba, fa, *bb, fb, nvars, &mut out);
        }
    }
    Ok(Multivector::from_map(
        a.chart(),
        a.degree() + b.degree() - 1,
        out,
    ))
}

/// Lie bracket of vector fields, computed componentwise as
/// `[X, Y]^i = X(Y^i) − Y(X^i)`. Independent of [`schouten`].
pub fn lie_bracket(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    same_chart(x.chart(), y.chart())?;
    let dim = x.dimension();
    let mut out = BTreeMap::new();
    for i in 0..dim {
        let b = Blade::single(i);
        let c = super::vector_field_action(x, &y.coefficient(b))
            - super::vector_field_action(y, &x.coefficient(b));
        accumulate(&mut out, b, &c);
    }
    Ok(Multivector::from_map(x.chart(), 1, out))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exterior::{mutation, Chart};
    use crate::rat;

    fn setup() -> (Arc<Chart>, Polynomial, Polynomial) {
        let c = Arc::new(Chart::new(["x", "y"]).unwrap());
        (
            c,
            Polynomial::var(2, 0).unwrap(),
            Polynomial::var(2, 1).unwrap(),
        )
    }

    #[test]
    fn functions_commute() {
        let (c, x, y) = setup();
        let f = Multivector::scalar(&c, x).unwrap();
        let g = Multivector::scalar(&c, y).unwrap();
        let br = schouten(&f, &g).unwrap();
        assert!(br.is_zero());
        assert_eq!(br.degree(), -1);
    }

    #[test]
    fn vector_fields() {
        let (c, x, y) = setup();
        let px = Multivector::coordinate(&c, 0).unwrap();
        let py = Multivector::coordinate(&c, 1).unwrap();
        // [x∂y, y∂x] = x∂x − y∂y
        let a = py.mul_poly(&x).unwrap();
        let b = px.mul_poly(&y).unwrap();
        let expected = px.mul_poly(&x).unwrap() - py.mul_poly(&y).unwrap();
        assert_eq!(schouten(&a, &b).unwrap(), expected);
        assert_eq!(lie_bracket(&a, &b).unwrap(), expected);
    }

    #[test]
    fn bivector_with_vector() {
        let (c, x, _) = setup();
        let px = Multivector::coordinate(&c, 0).unwrap();
        let pxy = Multivector::basis(&c, &[0, 1]).unwrap();
        // [∂x∧∂y, x∂x] = [∂x, x∂x]∧∂y = ∂x∧∂y
        let v = px.mul_poly(&x).unwrap();
        assert_eq!(schouten(&pxy, &v).unwrap(), pxy);
    }

    #[test]
    fn vector_with_function() {
        let (c, x, y) = setup();
        let v = Multivector::coordinate(&c, 0)
            .unwrap()
            .mul_poly(&y)
            .unwrap();
        let g = Multivector::scalar(&c, &x * &x).unwrap();
        // [y∂x, x²] = 2xy, and [x², y∂x] = −2xy
        let xy2 = Multivector::scalar(&c, (&x * &y).scale(&rat(2, 1))).unwrap();
        assert_eq!(schouten(&v, &g).unwrap(), xy2);
        assert_eq!(schouten(&g, &v).unwrap(), -xy2);
    }

    #[test]
    fn mutation_flag_is_scoped() {
        let (c, x, y) = setup();
        let a = Multivector::coordinate(&c, 1)
            .unwrap()
            .mul_poly(&x)
            .unwrap();
        let b = Multivector::coordinate(&c, 0)
            .unwrap()
            .mul_poly(&y)
            .unwrap();
        let normal = schouten(&a, &b).unwrap();
        let flipped = mutation::with_flipped_schouten_sign(|| schouten(&a, &b).unwrap());
        assert_eq!(flipped, -normal.clone());
        assert_eq!(schouten(&a, &b).unwrap(), normal);
    }
}
