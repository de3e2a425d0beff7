//! Admissible forms of a graph multi-Dirac structure and the multi-Poisson
//! bracket between them.
//!
//! A form `Σ` of degree `n − r` is admissible when some `r`-multivector `Γ_Σ`
//! satisfies `i_{Γ_Σ} Ω = dΣ`. Its grade is `|Σ| = n − deg Σ − 1 = r − 1`.
//! The witness is stored alongside the form; [`solve_hamiltonian`] finds one
//! when `Ω` has constant coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::coeff_ring::{solve, Monomial, Polynomial, Rational, RationalMatrix};
use crate::exterior::{contract, ext_deriv, schouten, Blade, Form, Multivector};
use crate::multidirac::GraphMultiDirac;
use crate::{parity_sign, Error, Result};

fn sign(k: i64) -> Rational {
    Rational::from_integer(parity_sign(k).into())
}

/// An admissible form together with a Hamiltonian multivector witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleForm {
    parent: GraphMultiDirac,
    sigma: Form,
    gamma: Multivector,
}

impl AdmissibleForm {
    /// Checks `i_Γ Ω = dΣ` and fails with [`Error::NotAdmissible`] otherwise.
    pub fn new(parent: &GraphMultiDirac, sigma: Form, gamma: Multivector) -> Result<Self> {
        let (ok, defect) = verify_admissible(parent, &sigma, &gamma)?;
        if !ok {
            return Err(Error::NotAdmissible {
                defect: defect.to_string(),
            });
        }
        Ok(AdmissibleForm {
            parent: parent.clone(),
            sigma,
            gamma,
        })
    }

    /// Pairs `Σ` with a witness produced by [`solve_hamiltonian`], or `None`
    /// when no witness exists.
    pub fn solve(parent: &GraphMultiDirac, sigma: Form) -> Result<Option<Self>> {
        Ok(
            solve_hamiltonian(parent, &sigma)?.map(|gamma| AdmissibleForm {
                parent: parent.clone(),
                sigma,
                gamma,
            }),
        )
    }

    pub fn parent(&self) -> &GraphMultiDirac {
        &self.parent
    }

    pub fn sigma(&self) -> &Form {
        &self.sigma
    }

    pub fn gamma(&self) -> &Multivector {
        &self.gamma
    }

    /// `|Σ| = n − deg Σ − 1`.
    pub fn grade(&self) -> i64 {
        grade_of(&self.parent, &self.sigma)
    }

    /// The same form with a different witness.
    pub fn with_witness(&self, gamma: Multivector) -> Result<Self> {
        AdmissibleForm::new(&self.parent, self.sigma.clone(), gamma)
    }
}

impl fmt::Display for AdmissibleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "adm({}; {})", self.sigma, self.gamma)
    }
}

fn grade_of(parent: &GraphMultiDirac, sigma: &Form) -> i64 {
    parent.context().n() as i64 - i64::from(sigma.degree()) - 1
}

/// Returns whether `i_Γ Ω = dΣ` together with the defect `i_Γ Ω − dΣ`.
pub fn verify_admissible(
    parent: &GraphMultiDirac,
    sigma: &Form,
    gamma: &Multivector,
) -> Result<(bool, Form)> {
    let n = parent.context().n() as i32;
    if sigma.degree() != n - gamma.degree() {
        return Err(Error::DegreeMismatch {
            expected: (n - gamma.degree()).into(),
            found: sigma.degree().into(),
        });
    }
    if sigma.chart() != parent.context().chart() || gamma.chart() != parent.context().chart() {
        return Err(Error::ChartMismatch);
    }
    let defect = contract(gamma, parent.omega())?.checked_sub(&ext_deriv(sigma))?;
    Ok((defect.is_zero(), defect))
}

/// Linear map `Γ ↦ i_Γ Ω` on constant `r`-multivectors, with columns indexed
/// by basis blades in increasing mask order.
struct ContractionMatrix {
    columns: Vec<Blade>,
    images: Vec<Form>,
}

impl ContractionMatrix {
    fn new(parent: &GraphMultiDirac, r: i32) -> Result<Self> {
        let omega = parent.omega();
        if !omega.is_constant() {
            return Err(Error::Unsupported(
                "the Hamiltonian solver needs a constant-coefficient form; supply a witness instead".into(),
            ));
        }
        let chart = parent.context().chart();
        let columns: Vec<Blade> = Blade::all_of_grade(chart.dimension(), r as u32).collect();
        let images = columns
            .iter()
            .map(|b| {
                let basis = Multivector::basis(chart, &b.indices().collect::<Vec<_>>())?;
                contract(&basis, omega)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ContractionMatrix { columns, images })
    }

    /// Builds the matrix over the given rows.
    fn matrix(&self, rows: &[Blade]) -> RationalMatrix {
        let mut a = RationalMatrix::zeros(rows.len(), self.columns.len());
        for (j, image) in self.images.iter().enumerate() {
            for (i, row) in rows.iter().enumerate() {
                a.set(i, j, image.coefficient(*row).constant_term());
            }
        }
        a
    }

    fn rows_with(&self, target: &Form) -> Vec<Blade> {
        let mut rows: BTreeSet<Blade> = target.terms().map(|(b, _)| *b).collect();
        for image in &self.images {
            rows.extend(image.terms().map(|(b, _)| *b));
        }
        rows.into_iter().collect()
    }
}

fn requested_degree(parent: &GraphMultiDirac, sigma: &Form) -> Result<i32> {
    let n = parent.context().n() as i32;
    let r = n - sigma.degree();
    if r < 1 || r > n {
        return Err(Error::DegreeOutOfRange {
            degree: sigma.degree().into(),
            min: 0,
            max: (n - 1).into(),
        });
    }
    if sigma.chart() != parent.context().chart() {
        return Err(Error::ChartMismatch);
    }
    Ok(r)
}

/// Finds `Γ` with `i_Γ Ω = dΣ` for constant-coefficient `Ω`, solving one exact
/// linear system per monomial of `dΣ`. Free variables are set to zero.
pub fn solve_hamiltonian(parent: &GraphMultiDirac, sigma: &Form) -> Result<Option<Multivector>> {
    let r = requested_degree(parent, sigma)?;
    let map = ContractionMatrix::new(parent, r)?;
    let target = ext_deriv(sigma);
    let rows = map.rows_with(&target);
    let a = map.matrix(&rows);
    let nvars = parent.context().chart().dimension();

    let monomials: BTreeSet<Monomial> = target
        .terms()
        .flat_map(|(_, p)| p.terms().map(|(m, _)| m.clone()))
        .collect();
    let mut coefficients: BTreeMap<Blade, Vec<(Vec<u16>, Rational)>> = BTreeMap::new();
    for m in monomials {
        let rhs: Vec<Rational> = rows
            .iter()
            .map(|b| target.coefficient(*b).coefficient(&m))
            .collect();
        let Some(x) = solve(&a, &rhs).particular else {
            return Ok(None);
        };
        for (j, v) in x.into_iter().enumerate() {
            if !v.is_zero() {
                coefficients
                    .entry(map.columns[j])
                    .or_default()
                    .push((m.exponents().to_vec(), v));
            }
        }
    }
    let terms = coefficients
        .into_iter()
        .map(|(b, ts)| Polynomial::from_terms(nvars, ts).map(|p| (b, p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(Multivector::from_terms(
        parent.context().chart(),
        r,
        terms,
    )?))
}

/// A basis of the constant `r`-multivectors `Δ` with `i_Δ Ω = 0`, for
/// constant-coefficient `Ω`. Adding any function multiple of these to a
/// witness yields another witness.
pub fn witness_kernel(parent: &GraphMultiDirac, r: i32) -> Result<Vec<Multivector>> {
    let n = parent.context().n() as i32;
    if r < 1 || r > n {
        return Err(Error::DegreeOutOfRange {
            degree: r.into(),
            min: 1,
            max: n.into(),
        });
    }
    let map = ContractionMatrix::new(parent, r)?;
    let rows = map.rows_with(&Form::zero(parent.context().chart(), n + 1 - r));
    let a = map.matrix(&rows);
    let zeros = vec![Rational::zero(); rows.len()];
    let chart = parent.context().chart();
    let nvars = chart.dimension();
    solve(&a, &zeros)
        .nullspace
        .into_iter()
        .map(|v| {
            let terms = map
                .columns
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(b, c)| (*b, Polynomial::constant(nvars, c)));
            Multivector::from_terms(chart, r, terms)
        })
        .collect()
}

/// Result of a multi-Poisson bracket. `defect = i_Γ Ω − d{Σ, Σ'}` for the
/// computed witness `Γ`; it vanishes whenever `Ω` is closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonBracket {
    parent: GraphMultiDirac,
    value: Form,
    witness: Multivector,
    defect: Form,
}

impl PoissonBracket {
    pub fn value(&self) -> &Form {
        &self.value
    }

    pub fn witness(&self) -> &Multivector {
        &self.witness
    }

    pub fn defect(&self) -> &Form {
        &self.defect
    }

    pub fn is_admissible(&self) -> bool {
        self.defect.is_zero()
    }

    pub fn grade(&self) -> i64 {
        grade_of(&self.parent, &self.value)
    }

    /// The bracket as an admissible form, failing with
    /// [`Error::NotAdmissible`] when the defect is nonzero.
    pub fn into_admissible(self) -> Result<AdmissibleForm> {
        if !self.is_admissible() {
            return Err(Error::NotAdmissible {
                defect: self.defect.to_string(),
            });
        }
        Ok(AdmissibleForm {
            parent: self.parent,
            sigma: self.value,
            gamma: self.witness,
        })
    }
}

fn check_parent(a: &AdmissibleForm, b: &AdmissibleForm) -> Result<()> {
    if a.parent != b.parent {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// `{Σ, Σ'} = −(−1)^k i_{Γ'} dΣ` with `k = |Σ|`; only `Σ` and the witness of
/// `Σ'` enter.
fn bracket_value(sigma: &Form, k: i64, gamma2: &Multivector) -> Result<Form> {
    Ok(contract(gamma2, &ext_deriv(sigma))?.scale(&-sign(k)))
}

/// The multi-Poisson bracket `{Σ, Σ'} = −(−1)^k i_{Γ_{Σ'}} dΣ`, with witness
/// `(−1)^{k+l} [Γ_Σ, Γ_{Σ'}]`, so that the multi-Courant bracket of
/// `(Γ_Σ, dΣ)` and `(Γ_{Σ'}, dΣ')` is `([Γ_Σ, Γ_{Σ'}], (−1)^{k+l} d{Σ, Σ'})`.
pub fn poisson_bracket(a: &AdmissibleForm, b: &AdmissibleForm) -> Result<PoissonBracket> {
    check_parent(a, b)?;
    let (k, l) = (a.grade(), b.grade());
    let value = bracket_value(&a.sigma, k, &b.gamma)?;
    let witness = schouten(&a.gamma, &b.gamma)?.scale(&sign(k + l));
    let defect = contract(&witness, a.parent.omega())?.checked_sub(&ext_deriv(&value))?;
    Ok(PoissonBracket {
        parent: a.parent.clone(),
        value,
        witness,
        defect,
    })
}

/// `(−1)^{(k+l)(m−1)} i_{Γ'} i_{Γ''} dΣ`, whose exterior derivative is the
/// cyclic sum of iterated brackets.
pub fn jacobi_primitive(
    a: &AdmissibleForm,
    b: &AdmissibleForm,
    c: &AdmissibleForm,
) -> Result<Form> {
    check_parent(a, b)?;
    check_parent(a, c)?;
    let (k, l, m) = (a.grade(), b.grade(), c.grade());
    let inner = contract(&c.gamma, &ext_deriv(&a.sigma))?;
    Ok(contract(&b.gamma, &inner)?.scale(&sign((k + l) * (m - 1))))
}

/// The cyclic sum
/// `(−1)^{km+k+l}{{Σ,Σ'},Σ''} + (−1)^{lk+l+m}{{Σ',Σ''},Σ} + (−1)^{ml+m+k}{{Σ'',Σ},Σ'}`.
/// When `k`, `l`, `m` share a parity the extra `k+l`, `l+m`, `m+k` drop out
/// and this is the usual graded cyclic sum; with mixed parities the usual
/// sum need not even be closed (see [`plain_cyclic_sum`]).
pub fn jacobi_cyclic_sum(
    a: &AdmissibleForm,
    b: &AdmissibleForm,
    c: &AdmissibleForm,
) -> Result<Form> {
    check_parent(a, b)?;
    check_parent(a, c)?;
    let (k, l, m) = (a.grade(), b.grade(), c.grade());
    let ab = bracket_value(&a.sigma, k, &b.gamma)?;
    let bc = bracket_value(&b.sigma, l, &c.gamma)?;
    let ca = bracket_value(&c.sigma, m, &a.gamma)?;
    let t1 = bracket_value(&ab, k + l, &c.gamma)?.scale(&sign(k * m + k + l));
    let t2 = bracket_value(&bc, l + m, &a.gamma)?.scale(&sign(l * k + l + m));
    let t3 = bracket_value(&ca, m + k, &b.gamma)?.scale(&sign(m * l + m + k));
    t1.checked_add(&t2)?.checked_add(&t3)
}

/// `(−1)^{km}{{Σ,Σ'},Σ''} + (−1)^{lk}{{Σ',Σ''},Σ} + (−1)^{ml}{{Σ'',Σ},Σ'}`,
/// which agrees with [`jacobi_cyclic_sum`] only for equal parities.
pub fn plain_cyclic_sum(
    a: &AdmissibleForm,
    b: &AdmissibleForm,
    c: &AdmissibleForm,
) -> Result<Form> {
    check_parent(a, b)?;
    check_parent(a, c)?;
    let (k, l, m) = (a.grade(), b.grade(), c.grade());
    let ab = bracket_value(&a.sigma, k, &b.gamma)?;
    let bc = bracket_value(&b.sigma, l, &c.gamma)?;
    let ca = bracket_value(&c.sigma, m, &a.gamma)?;
    let t1 = bracket_value(&ab, k + l, &c.gamma)?.scale(&sign(k * m));
    let t2 = bracket_value(&bc, l + m, &a.gamma)?.scale(&sign(l * k));
    let t3 = bracket_value(&ca, m + k, &b.gamma)?.scale(&sign(m * l));
    t1.checked_add(&t2)?.checked_add(&t3)
}

/// Cyclic sum minus `d` of [`jacobi_primitive`]; identically zero when `Ω` is
/// closed.
pub fn jacobi_defect(a: &AdmissibleForm, b: &AdmissibleForm, c: &AdmissibleForm) -> Result<Form> {
    jacobi_cyclic_sum(a, b, c)?.checked_sub(&ext_deriv(&jacobi_primitive(a, b, c)?))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::courant::GradedContext;
    use crate::exterior::Chart;
    use crate::rat;

    fn plane() -> GraphMultiDirac {
        let chart = Arc::new(Chart::new(["q", "p"]).unwrap());
        let ctx = GradedContext::new(chart.clone(), 1).unwrap();
        GraphMultiDirac::new(&ctx, Form::basis(&chart, &[0, 1]).unwrap()).unwrap()
    }

    fn space() -> GraphMultiDirac {
        let chart = Arc::new(Chart::new(["x", "y", "z"]).unwrap());
        let ctx = GradedContext::new(chart.clone(), 2).unwrap();
        GraphMultiDirac::new(&ctx, Form::basis(&chart, &[0, 1, 2]).unwrap()).unwrap()
    }

    fn var(g: &GraphMultiDirac, i: usize) -> Polynomial {
        Polynomial::var(g.context().chart().dimension(), i).unwrap()
    }

    fn function(g: &GraphMultiDirac, p: Polynomial) -> Form {
        Form::scalar(g.context().chart(), p).unwrap()
    }

    fn one_form(g: &GraphMultiDirac, coeff: Polynomial, i: usize) -> Form {
        Form::coordinate(g.context().chart(), i)
            .unwrap()
            .mul_poly(&coeff)
            .unwrap()
    }

    fn vf(g: &GraphMultiDirac, i: usize) -> Multivector {
        Multivector::coordinate(g.context().chart(), i).unwrap()
    }

    #[test]
    fn verify_examples() {
        let g = plane();
        let q = function(&g, var(&g, 0));
        let (ok, defect) = verify_admissible(&g, &q, &-vf(&g, 1)).unwrap();
        assert!(ok && defect.is_zero());

        let g = space();
        let zdx = one_form(&g, var(&g, 2), 0);
        assert!(verify_admissible(&g, &zdx, &vf(&g, 1)).unwrap().0);
        let (ok, defect) = verify_admissible(&g, &zdx, &vf(&g, 0)).unwrap();
        assert!(!ok);
        // i_{∂x}Ω − d(z dx) = dy∧dz − dz∧dx = dy∧dz + dx∧dz
        let expected = Form::basis(g.context().chart(), &[1, 2]).unwrap()
            + Form::basis(g.context().chart(), &[0, 2]).unwrap();
        assert_eq!(defect, expected);

        assert!(matches!(
            verify_admissible(
                &g,
                &zdx,
                &Multivector::basis(g.context().chart(), &[0, 1]).unwrap()
            ),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn solver_examples() {
        let g = plane();
        let p = function(&g, var(&g, 1));
        assert_eq!(solve_hamiltonian(&g, &p).unwrap(), Some(vf(&g, 0)));

        let g = space();
        let xdy = one_form(&g, var(&g, 0), 1);
        assert_eq!(solve_hamiltonian(&g, &xdy).unwrap(), Some(vf(&g, 2)));

        let chart = Arc::new(Chart::new(["x", "y", "z"]).unwrap());
        let ctx = GradedContext::new(chart.clone(), 1).unwrap();
        let g = GraphMultiDirac::new(&ctx, Form::basis(&chart, &[0, 1]).unwrap()).unwrap();
        let z = function(&g, var(&g, 2));
        assert_eq!(solve_hamiltonian(&g, &z).unwrap(), None);
        let kernel = witness_kernel(&g, 1).unwrap();
        assert_eq!(kernel, vec![vf(&g, 2)]);
    }

    #[test]
    fn solver_handles_polynomial_targets() {
        let g = plane();
        let qp = function(&g, var(&g, 0) * var(&g, 1));
        let gamma = solve_hamiltonian(&g, &qp).unwrap().unwrap();
        assert!(verify_admissible(&g, &qp, &gamma).unwrap().0);
    }

    #[test]
    fn solver_rejects_non_constant_forms() {
        let chart = Arc::new(Chart::new(["q", "p"]).unwrap());
        let ctx = GradedContext::new(chart.clone(), 1).unwrap();
        let omega = Form::basis(&chart, &[0, 1])
            .unwrap()
            .mul_poly(&Polynomial::var(2, 0).unwrap())
            .unwrap();
        let g = GraphMultiDirac::new(&ctx, omega).unwrap();
        let p = Form::scalar(&chart, Polynomial::var(2, 1).unwrap()).unwrap();
        assert!(matches!(
            solve_hamiltonian(&g, &p),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn canonical_bracket() {
        let g = plane();
        let q = AdmissibleForm::solve(&g, function(&g, var(&g, 0)))
            .unwrap()
            .unwrap();
        let p = AdmissibleForm::solve(&g, function(&g, var(&g, 1)))
            .unwrap()
            .unwrap();
        let b = poisson_bracket(&q, &p).unwrap();
        assert_eq!(
            b.value(),
            &function(&g, Polynomial::constant(2, rat(-1, 1)))
        );
        assert!(b.is_admissible());
        assert_eq!(b.grade(), 0);
    }

    #[test]
    fn one_form_bracket() {
        let g = space();
        let a = AdmissibleForm::new(&g, one_form(&g, var(&g, 2), 0), vf(&g, 1)).unwrap();
        let b = AdmissibleForm::new(&g, one_form(&g, var(&g, 0), 1), vf(&g, 2)).unwrap();
        let pb = poisson_bracket(&a, &b).unwrap();
        assert_eq!(
            pb.value(),
            &-Form::coordinate(g.context().chart(), 0).unwrap()
        );
        assert_eq!(pb.grade(), a.grade() + b.grade());
        assert!(pb.is_admissible());
    }

    #[test]
    fn degree_clamp() {
        let g = space();
        let bivector = Multivector::basis(g.context().chart(), &[0, 1]).unwrap();
        let c = AdmissibleForm::new(&g, function(&g, var(&g, 2)), bivector.clone()).unwrap();
        let pb = poisson_bracket(&c, &c).unwrap();
        assert!(pb.value().is_zero());
        assert_eq!(pb.value().degree(), -1);
        assert_eq!(pb.grade(), 2);
    }

    #[test]
    fn canonical_jacobi() {
        let g = plane();
        let (q, p) = (var(&g, 0), var(&g, 1));
        let forms: Vec<AdmissibleForm> = [q.clone(), p.clone(), q.pow(2), q * p]
            .into_iter()
            .map(|f| AdmissibleForm::solve(&g, function(&g, f)).unwrap().unwrap())
            .collect();
        for a in &forms {
            for b in &forms {
                for c in &forms {
                    assert!(jacobi_defect(a, b, c).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn mixed_parity_needs_shifted_signs() {
        let g = space();
        let c = g.context().chart().clone();
        let (x, y, z) = (var(&g, 0), var(&g, 1), var(&g, 2));
        let solve = |f: Form| AdmissibleForm::solve(&g, f).unwrap().unwrap();
        let a = solve(one_form(&g, x, 1));
        let b = solve(one_form(&g, &y * &z, 0));
        let f = solve(function(&g, y.clone() * z));
        assert_eq!((a.grade(), b.grade(), f.grade()), (0, 0, 1));
        let plain = plain_cyclic_sum(&a, &b, &f).unwrap();
        assert_eq!(plain, function(&g, y.scale(&rat(2, 1))));
        assert_eq!(
            ext_deriv(&plain),
            Form::coordinate(&c, 1).unwrap().scale(&rat(2, 1))
        );
        assert!(jacobi_defect(&a, &b, &f).unwrap().is_zero());
    }

    #[test]
    fn parent_mismatch() {
        let g = plane();
        let h = space();
        let q = AdmissibleForm::solve(&g, function(&g, var(&g, 0)))
            .unwrap()
            .unwrap();
        let z = AdmissibleForm::new(&h, one_form(&h, var(&h, 2), 0), vf(&h, 1)).unwrap();
        assert_eq!(poisson_bracket(&q, &z).unwrap_err(), Error::ContextMismatch);
    }
}
