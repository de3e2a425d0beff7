//! The graded bundle `L = ⊕_{r=1}^n L_r`, `L_r = Λ^r(TZ) ×_Z Λ^{n+1−r}(T*Z)`,
//! with its pairings, section wedge, multi-Courant bracket and the gauge
//! transformations `Φ_σ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::coeff_ring::{rat, Polynomial, Rational};
use crate::exterior::{contract, ext_deriv, lie_derivative, schouten, Chart, Form, Multivector};
use crate::{parity_sign, Error, Result};

fn sign(k: i64) -> Rational {
    Rational::from_integer(parity_sign(k).into())
}

fn half() -> Rational {
    rat(1, 2)
}

/// A chart together with the ambient degree `n ≤ dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedContext {
    chart: Arc<Chart>,
    n: usize,
}

impl GradedContext {
    pub fn new(chart: Arc<Chart>, n: usize) -> Result<Self> {
        if n < 1 || n > chart.dimension() {
            return Err(Error::DegreeOutOfRange {
                degree: n as i64,
                min: 1,
                max: chart.dimension() as i64,
            });
        }
        Ok(GradedContext { chart, n })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree of the form component in `L_r`.
    pub fn form_degree(&self, r: i32) -> i32 {
        self.n as i32 + 1 - r
    }

    pub(crate) fn check(&self, other: &GradedContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

/// Homogeneous section `(Γ, Σ)` of `L_r`.
///
/// Nonzero pairs always satisfy `1 ≤ r ≤ n`. Operations whose natural target
/// lies outside that range return the zero pair tagged with the formal degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPair {
    ctx: GradedContext,
    degree: i32,
    gamma: Multivector,
    sigma: Form,
}

impl GradedPair {
    pub fn new(ctx: &GradedContext, gamma: Multivector, sigma: Form) -> Result<Self> {
        let r = gamma.degree();
        if r < 1 || r > ctx.n as i32 {
            return Err(Error::DegreeOutOfRange {
                degree: r.into(),
                min: 1,
                max: ctx.n as i64,
            });
        }
        let expected = ctx.form_degree(r);
        if sigma.degree() != expected {
            return Err(Error::DegreeMismatch {
                expected: expected.into(),
                found: sigma.degree().into(),
            });
        }
        if gamma.chart() != ctx.chart() || sigma.chart() != ctx.chart() {
            return Err(Error::ChartMismatch);
        }
        Ok(GradedPair {
            ctx: ctx.clone(),
            degree: r,
            gamma,
            sigma,
        })
    }

    /// The zero section of `L_r` (any formal degree `r`).
    pub fn zero(ctx: &GradedContext, r: i32) -> Self {
        GradedPair {
            ctx: ctx.clone(),
            degree: r,
            gamma: Multivector::zero(&ctx.chart, r),
            sigma: Form::zero(&ctx.chart, ctx.form_degree(r)),
        }
    }

    pub fn context(&self) -> &GradedContext {
        &self.ctx
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn gamma(&self) -> &Multivector {
        &self.gamma
    }

    pub fn sigma(&self) -> &Form {
        &self.sigma
    }

    pub fn into_parts(self) -> (Multivector, Form) {
        (self.gamma, self.sigma)
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_zero() && self.sigma.is_zero()
    }

    fn in_range(&self) -> bool {
        self.degree >= 1 && self.degree <= self.ctx.n as i32
    }

    /// Builds a pair without the range check; only used for results that are
    /// in range by construction or forced to zero.
    fn assemble(ctx: &GradedContext, degree: i32, gamma: Multivector, sigma: Form) -> Self {
        let pair = GradedPair {
            ctx: ctx.clone(),
            degree,
            gamma,
            sigma,
        };
        if pair.in_range() {
            pair
        } else {
            GradedPair::zero(ctx, degree)
        }
    }

    fn check_same(&self, other: &GradedPair) -> Result<()> {
        self.ctx.check(&other.ctx)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree.into(),
                found: other.degree.into(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GradedPair) -> Result<GradedPair> {
        self.check_same(other)?;
        Ok(GradedPair::assemble(
            &self.ctx,
            self.degree,
            self.gamma.checked_add(&other.gamma)?,
            self.sigma.checked_add(&other.sigma)?,
        ))
    }

    pub fn checked_sub(&self, other: &GradedPair) -> Result<GradedPair> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Rational) -> GradedPair {
        GradedPair {
            ctx: self.ctx.clone(),
            degree: self.degree,
            gamma: self.gamma.scale(c),
            sigma: self.sigma.scale(c),
        }
    }

    /// Multiplies both components by the function `f`.
    pub fn mul_poly(&self, f: &Polynomial) -> Result<GradedPair> {
        Ok(GradedPair {
            ctx: self.ctx.clone(),
            degree: self.degree,
            gamma: self.gamma.mul_poly(f)?,
            sigma: self.sigma.mul_poly(f)?,
        })
    }
}

impl fmt::Display for GradedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pair({}; {})", self.gamma, self.sigma)
    }
}

impl Add<&GradedPair> for &GradedPair {
    type Output = GradedPair;
    fn add(self, rhs: &GradedPair) -> GradedPair {
        self.checked_add(rhs).expect("incompatible pairs in +")
    }
}

impl Add for GradedPair {
    type Output = GradedPair;
    fn add(self, rhs: GradedPair) -> GradedPair {
        &self + &rhs
    }
}

impl Sub<&GradedPair> for &GradedPair {
    type Output = GradedPair;
    fn sub(self, rhs: &GradedPair) -> GradedPair {
        self.checked_sub(rhs).expect("incompatible pairs in -")
    }
}

impl Sub for GradedPair {
    type Output = GradedPair;
    fn sub(self, rhs: GradedPair) -> GradedPair {
        &self - &rhs
    }
}

impl Neg for &GradedPair {
    type Output = GradedPair;
    fn neg(self) -> GradedPair {
        GradedPair {
            ctx: self.ctx.clone(),
            degree: self.degree,
            gamma: -&self.gamma,
            sigma: -&self.sigma,
        }
    }
}

impl Neg for GradedPair {
    type Output = GradedPair;
    fn neg(self) -> GradedPair {
        -&self
    }
}

fn pairing(a: &GradedPair, b: &GradedPair, plus: bool) -> Result<Form> {
    a.ctx.check(&b.ctx)?;
    let (r, s) = (i64::from(a.degree), i64::from(b.degree));
    let first = contract(&b.gamma, &a.sigma)?;
    let second = contract(&a.gamma, &b.sigma)?.scale(&sign(r * s));
    let sum = if plus {
        first.checked_add(&second)?
    } else {
        first.checked_sub(&second)?
    };
    Ok(sum.scale(&half()))
}

/// Graded anticommutative pairing `½(i_{Γ'}Σ − (−1)^{rs} i_Γ Σ')`, a form of
/// degree `n + 1 − r − s` (zero when `r + s > n + 1`).
pub fn pairing_minus(a: &GradedPair, b: &GradedPair) -> Result<Form> {
    pairing(a, b, false)
}

/// Graded commutative pairing `½(i_{Γ'}Σ + (−1)^{rs} i_Γ Σ')`.
pub fn pairing_plus(a: &GradedPair, b: &GradedPair) -> Result<Form> {
    pairing(a, b, true)
}

/// `(Γ, Σ) ∧ (Γ', Σ') = (Γ ∧ Γ', ⟨⟨(Γ, Σ), (Γ', Σ')⟩⟩_+)`, in `L_{r+s}`, zero
/// when `r + s > n`.
pub fn section_wedge(a: &GradedPair, b: &GradedPair) -> Result<GradedPair> {
    a.ctx.check(&b.ctx)?;
    let degree = a.degree + b.degree;
    if degree > a.ctx.n as i32 {
        return Ok(GradedPair::zero(&a.ctx, degree));
    }
    let gamma = a.gamma.wedge(&b.gamma)?;
    let sigma = pairing_plus(a, b)?;
    Ok(GradedPair::assemble(&a.ctx, degree, gamma, sigma))
}

/// Multi-Courant bracket `L_r × L_s → L_{r+s−1}`:
///
/// ```text
/// [[(Γ,Σ),(Γ',Σ')]] = ([Γ,Γ'], (−1)^{(r−1)s} £_Γ Σ' + (−1)^s £_{Γ'} Σ − (−1)^s d⟨⟨(Γ,Σ),(Γ',Σ')⟩⟩_+)
/// ```
///
/// and zero when `r + s > n + 1`.
pub fn multi_courant(a: &GradedPair, b: &GradedPair) -> Result<GradedPair> {
    a.ctx.check(&b.ctx)?;
    let (r, s) = (i64::from(a.degree), i64::from(b.degree));
    let degree = a.degree + b.degree - 1;
    if r + s > a.ctx.n as i64 + 1 {
        return Ok(GradedPair::zero(&a.ctx, degree));
    }
    let gamma = schouten(&a.gamma, &b.gamma)?;
    let t1 = lie_derivative(&a.gamma, &b.sigma)?.scale(&sign((r - 1) * s));
    let t2 = lie_derivative(&b.gamma, &a.sigma)?;
    let t3 = ext_deriv(&pairing_plus(a, b)?);
    let sigma = t1.checked_add(&t2.checked_sub(&t3)?.scale(&sign(s)))?;
    Ok(GradedPair::assemble(&a.ctx, degree, gamma, sigma))
}

/// Gauge transformation `Φ_σ(Γ, Σ) = (Γ, Σ + i_Γ σ)` for an `(n+1)`-form `σ`.
pub fn gauge_transform(sigma: &Form, a: &GradedPair) -> Result<GradedPair> {
    let expected = a.ctx.n as i32 + 1;
    if sigma.degree() != expected {
        return Err(Error::DegreeMismatch {
            expected: expected.into(),
            found: sigma.degree().into(),
        });
    }
    let shifted = a.sigma.checked_add(&contract(&a.gamma, sigma)?)?;
    Ok(GradedPair::assemble(
        &a.ctx,
        a.degree,
        a.gamma.clone(),
        shifted,
    ))
}

/// Inhomogeneous section of `L`: a finite sum of homogeneous pairs, keyed by
/// degree. All operations extend bilinearly from the homogeneous ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedSection {
    ctx: GradedContext,
    parts: BTreeMap<i32, GradedPair>,
}

impl MixedSection {
    pub fn zero(ctx: &GradedContext) -> Self {
        MixedSection {
            ctx: ctx.clone(),
            parts: BTreeMap::new(),
        }
    }

    pub fn from_pairs(
        ctx: &GradedContext,
        pairs: impl IntoIterator<Item = GradedPair>,
    ) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for p in pairs {
            out.push(p)?;
        }
        Ok(out)
    }

    /// Adds a homogeneous component; out-of-range zeros are dropped.
    pub fn push(&mut self, p: GradedPair) -> Result<()> {
        self.ctx.check(&p.ctx)?;
        if p.is_zero() {
            return Ok(());
        }
        let merged = match self.parts.remove(&p.degree) {
            Some(q) => q.checked_add(&p)?,
            None => p,
        };
        if !merged.is_zero() {
            self.parts.insert(merged.degree, merged);
        }
        Ok(())
    }

    pub fn component(&self, r: i32) -> GradedPair {
        self.parts
            .get(&r)
            .cloned()
            .unwrap_or_else(|| GradedPair::zero(&self.ctx, r))
    }

    pub fn components(&self) -> impl Iterator<Item = &GradedPair> {
        self.parts.values()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    fn bilinear(
        &self,
        other: &MixedSection,
        op: impl Fn(&GradedPair, &GradedPair) -> Result<GradedPair>,
    ) -> Result<MixedSection> {
        self.ctx.check(&other.ctx)?;
        let mut out = MixedSection::zero(&self.ctx);
        for a in self.parts.values() {
            for b in other.parts.values() {
                out.push(op(a, b)?)?;
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &MixedSection) -> Result<MixedSection> {
        self.bilinear(other, section_wedge)
    }

    pub fn courant(&self, other: &MixedSection) -> Result<MixedSection> {
        self.bilinear(other, multi_courant)
    }

    pub fn gauge(&self, sigma: &Form) -> Result<MixedSection> {
        let mut out = MixedSection::zero(&self.ctx);
        for a in self.parts.values() {
            out.push(gauge_transform(sigma, a)?)?;
        }
        Ok(out)
    }

    /// `⟨⟨·,·⟩⟩_−` extended bilinearly; results grouped by form degree.
    pub fn pairing_minus(&self, other: &MixedSection) -> Result<BTreeMap<i32, Form>> {
        self.ctx.check(&other.ctx)?;
        let mut out: BTreeMap<i32, Form> = BTreeMap::new();
        for a in self.parts.values() {
            for b in other.parts.values() {
                let f = pairing_minus(a, b)?;
                if f.is_zero() {
                    continue;
                }
                let entry = out
                    .entry(f.degree())
                    .or_insert_with(|| Form::zero(&self.ctx.chart, f.degree()));
                *entry = entry.checked_add(&f)?;
            }
        }
        out.retain(|_, f| !f.is_zero());
        Ok(out)
    }
}
