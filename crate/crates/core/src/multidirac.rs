//! Multi-Dirac structures: graphs of `(n+1)`-forms and finitely generated
//! isotropic structures, together with the integrability tensor, the
//! Jacobiator of the multi-Courant bracket and the form `Ω_D` induced by the
//! degree-one component.

use crate::coeff_ring::{rat, Polynomial, Rational};
use crate::courant::{multi_courant, pairing_minus, GradedContext, GradedPair};
use crate::exterior::{contract, ext_deriv, lie_derivative, Form, Multivector};
use crate::{parity_sign, Error, Result};

fn sign(k: i64) -> Rational {
    Rational::from_integer(parity_sign(k).into())
}

/// The multi-Dirac structure `D_r = {(Γ, i_Γ Ω)}` determined by an
/// `(n+1)`-form `Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMultiDirac {
    ctx: GradedContext,
    omega: Form,
}

/// A section `(Γ, i_Γ Ω)` of a graph structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSection {
    pair: GradedPair,
}

impl DSection {
    pub fn gamma(&self) -> &Multivector {
        self.pair.gamma()
    }

    pub fn sigma(&self) -> &Form {
        self.pair.sigma()
    }

    pub fn as_pair(&self) -> &GradedPair {
        &self.pair
    }

    pub fn into_pair(self) -> GradedPair {
        self.pair
    }
}

impl GraphMultiDirac {
    pub fn new(ctx: &GradedContext, omega: Form) -> Result<Self> {
        let expected = ctx.n() as i32 + 1;
        if omega.degree() != expected {
            return Err(Error::DegreeMismatch {
                expected: expected.into(),
                found: omega.degree().into(),
            });
        }
        if omega.chart() != ctx.chart() {
            return Err(Error::ChartMismatch);
        }
        Ok(GraphMultiDirac {
            ctx: ctx.clone(),
            omega,
        })
    }

    pub fn context(&self) -> &GradedContext {
        &self.ctx
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    /// `(Γ, i_Γ Ω) ∈ D_r` for `1 ≤ deg Γ ≤ n`.
    pub fn embed(&self, gamma: &Multivector) -> Result<DSection> {
        let sigma = contract(gamma, &self.omega)?;
        let pair = GradedPair::new(&self.ctx, gamma.clone(), sigma)?;
        Ok(DSection { pair })
    }

    /// `⟨⟨(Γ, i_ΓΩ), (Γ', i_{Γ'}Ω)⟩⟩_−`, which vanishes for every graph.
    pub fn isotropy_defect(&self, gamma: &Multivector, gamma2: &Multivector) -> Result<Form> {
        let a = self.embed(gamma)?;
        let b = self.embed(gamma2)?;
        pairing_minus(a.as_pair(), b.as_pair())
    }

    /// `dΩ`; the structure is integrable exactly when this vanishes.
    pub fn closedness_check(&self) -> Form {
        ext_deriv(&self.omega)
    }

    pub fn is_integrable(&self) -> bool {
        self.closedness_check().is_zero()
    }

    /// True when `pair` is a section of this structure, i.e. `Σ = i_Γ Ω`.
    pub fn contains(&self, pair: &GradedPair) -> Result<bool> {
        self.ctx.check(pair.context())?;
        Ok(contract(pair.gamma(), &self.omega)? == *pair.sigma())
    }
}

/// A multi-Dirac structure presented by a finite list of generators. Only
/// isotropy of the generators is checked; maximality is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpannedStructure {
    ctx: GradedContext,
    generators: Vec<GradedPair>,
}

impl SpannedStructure {
    pub fn new(ctx: &GradedContext, generators: Vec<GradedPair>) -> Result<Self> {
        for g in &generators {
            ctx.check(g.context())?;
        }
        for (i, a) in generators.iter().enumerate() {
            for (j, b) in generators.iter().enumerate().skip(i) {
                if !pairing_minus(a, b)?.is_zero() {
                    return Err(Error::NotIsotropic(i, j));
                }
            }
        }
        Ok(SpannedStructure {
            ctx: ctx.clone(),
            generators,
        })
    }

    pub fn context(&self) -> &GradedContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[GradedPair] {
        &self.generators
    }

    /// Generators of degree one, i.e. the `D_1` component.
    pub fn degree_one(&self) -> impl Iterator<Item = &GradedPair> {
        self.generators.iter().filter(|g| g.degree() == 1)
    }
}

/// `T_D(a, b, c) = 2⟨⟨a, [[b, c]]⟩⟩_−`, a form of degree `n + 2 − r − s − t`.
pub fn t_d_direct(a: &GradedPair, b: &GradedPair, c: &GradedPair) -> Result<Form> {
    let bc = multi_courant(b, c)?;
    Ok(pairing_minus(a, &bc)?.scale(&rat(2, 1)))
}

/// The integrability tensor in the expanded form valid on isotropic inputs:
///
/// ```text
/// T_D = −(−1)^{t(r−1)} [ −(−1)^{(r+s)t} d i_{Γ'} i_{Γ''} Σ + (−1)^{s(t−1)} i_{Γ'} £_Γ Σ''
///                         + (−1)^{r(s−1)} i_Γ £_{Γ''} Σ' + (−1)^{t(r−1)} i_{Γ''} £_{Γ'} Σ ]
/// ```
///
/// The overall minus sign is needed for agreement with `2⟨⟨a, [[b, c]]⟩⟩_−`;
/// without it the right-hand side computes `−T_D`.
///
/// Computed without any bracket of pairs, so it serves as an independent
/// cross-check on [`t_d_direct`].
pub fn t_d_expanded(a: &GradedPair, b: &GradedPair, c: &GradedPair) -> Result<Form> {
    a.context().check(b.context())?;
    a.context().check(c.context())?;
    let (r, s, t) = (
        i64::from(a.degree()),
        i64::from(b.degree()),
        i64::from(c.degree()),
    );
    let n = a.context().n() as i64;
    let degree = (n + 2 - r - s - t) as i32;
    let chart = a.context().chart();
    if r + s + t > n + 2 || s + t > n + 1 {
        return Ok(Form::zero(chart, degree));
    }
    let (g, sg) = (a.gamma(), a.sigma());
    let (g1, sg1) = (b.gamma(), b.sigma());
    let (g2, sg2) = (c.gamma(), c.sigma());

    let term1 = ext_deriv(&contract(g1, &contract(g2, sg)?)?).scale(&-sign((r + s) * t));
    let term2 = contract(g1, &lie_derivative(g, sg2)?)?.scale(&sign(s * (t - 1)));
    let term3 = contract(g, &lie_derivative(g2, sg1)?)?.scale(&sign(r * (s - 1)));
    let term4 = contract(g2, &lie_derivative(g1, sg)?)?.scale(&sign(t * (r - 1)));
    let total = term1
        .checked_add(&term2)?
        .checked_add(&term3)?
        .checked_add(&term4)?;
    Ok(total.scale(&-sign(t * (r - 1))))
}

/// The Jacobiator
/// `[[a,[[b,c]]]] + (−1)^{(t−1)(r+s)}[[c,[[a,b]]]] + (−1)^{(r−1)(s+t)}[[b,[[c,a]]]]`.
///
/// On sections of a graph structure its multivector part vanishes and its
/// form part is `−(−1)^{s+t} ½ d T_D(a, b, c)`; see [`jacobiator_from_td`].
pub fn jacobiator(a: &GradedPair, b: &GradedPair, c: &GradedPair) -> Result<GradedPair> {
    let (r, s, t) = (
        i64::from(a.degree()),
        i64::from(b.degree()),
        i64::from(c.degree()),
    );
    let j1 = multi_courant(a, &multi_courant(b, c)?)?;
    let j2 = multi_courant(c, &multi_courant(a, b)?)?.scale(&sign((t - 1) * (r + s)));
    let j3 = multi_courant(b, &multi_courant(c, a)?)?.scale(&sign((r - 1) * (s + t)));
    j1.checked_add(&j2)?.checked_add(&j3)
}

/// The value the Jacobiator takes on graph sections, `(0, −(−1)^{s+t} ½ d T_D)`,
/// computed from [`t_d_direct`].
pub fn jacobiator_from_td(a: &GradedPair, b: &GradedPair, c: &GradedPair) -> Result<GradedPair> {
    let (s, t) = (i64::from(b.degree()), i64::from(c.degree()));
    let td = t_d_direct(a, b, c)?;
    let sigma = ext_deriv(&td).scale(&(-sign(s + t) * rat(1, 2)));
    let degree = a.degree() + b.degree() + c.degree() - 2;
    let ctx = a.context();
    if degree > ctx.n() as i32 {
        return Ok(GradedPair::zero(ctx, degree));
    }
    let gamma = Multivector::zero(ctx.chart(), degree);
    GradedPair::new(ctx, gamma, sigma)
}

/// `Ω_D(v_1, …, v_{n+1}) := α_{n+1}(v_1, …, v_n)`, evaluated as
/// `i_{v_n ∧ … ∧ v_1} α_{n+1}`, for `n + 1` degree-one sections `(v_i, α_i)`.
/// Each `α_i` is an `n`-form, so `n + 1` arguments are needed for a scalar;
/// on the graph of `Ω` this is `i_{v_{n+1} ∧ … ∧ v_1} Ω`.
pub fn omega_from_d1(sections: &[GradedPair]) -> Result<Polynomial> {
    let first = sections.first().ok_or(Error::Arity {
        expected: 1,
        found: 0,
    })?;
    let ctx = first.context();
    let n = ctx.n();
    if sections.len() != n + 1 {
        return Err(Error::Arity {
            expected: n + 1,
            found: sections.len(),
        });
    }
    for s in sections {
        ctx.check(s.context())?;
        if s.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: s.degree().into(),
            });
        }
    }
    // i_{v_n∧…∧v_1} = i_{v_1} ∘ ⋯ ∘ i_{v_n}: contract v_n first
    let mut acc = sections[n].sigma().clone();
    for s in sections[..n].iter().rev() {
        acc = contract(s.gamma(), &acc)?;
    }
    debug_assert_eq!(acc.degree(), 0);
    Ok(acc.as_scalar())
}

/// The anchor `ρ(Γ, Σ) = Γ`.
pub fn rho_project(a: &GradedPair) -> Multivector {
    a.gamma().clone()
}
