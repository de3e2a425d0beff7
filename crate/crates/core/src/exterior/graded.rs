use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed};

use super::{Blade, Chart};
use crate::coeff_ring::{format_rational, Polynomial, Rational};
use crate::{Error, Result};

/// Marker distinguishing multivector fields from forms.
pub trait Variance:
    Copy + Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static
{
    /// Name of the basis element for the coordinate called `var`.
    fn basis_symbol(var: &str) -> String;
    const KIND: &'static str;
}

/// Tangent directions: `∂/∂x` is written `@x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Contravariant;

/// Cotangent directions: `dx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Covariant;

impl Variance for Contravariant {
    fn basis_symbol(var: &str) -> String {
        format!("@{var}")
    }
    const KIND: &'static str = "multivector";
}

impl Variance for Covariant {
    fn basis_symbol(var: &str) -> String {
        format!("d{var}")
    }
    const KIND: &'static str = "form";
}

/// Homogeneous element of the exterior algebra of `TZ` or `T*Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graded<V: Variance> {
    chart: Arc<Chart>,
    degree: i32,
    terms: BTreeMap<Blade, Polynomial>,
    _variance: PhantomData<V>,
}

pub(crate) fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch)
    }
}

impl<V: Variance> Graded<V> {
    pub fn zero(chart: &Arc<Chart>, degree: i32) -> Self {
        Graded {
            chart: Arc::clone(chart),
            degree,
            terms: BTreeMap::new(),
            _variance: PhantomData,
        }
    }

    /// Degree-zero element with the given coefficient.
    pub fn scalar(chart: &Arc<Chart>, p: Polynomial) -> Result<Self> {
        Self::from_terms(chart, 0, [(Blade::EMPTY, p)])
    }

    /// The coordinate basis element `∂_i` or `dx^i`.
    pub fn coordinate(chart: &Arc<Chart>, i: usize) -> Result<Self> {
        Self::basis(chart, &[i])
    }

    /// `e_{i_1} ∧ … ∧ e_{i_k}` in the given order, with unit coefficient.
    pub fn basis(chart: &Arc<Chart>, indices: &[usize]) -> Result<Self> {
        let dim = chart.dimension();
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dimension: dim,
            });
        }
        let degree = indices.len() as i32;
        Ok(match Blade::from_indices(indices) {
            None => Self::zero(chart, degree),
            Some((blade, sign)) => {
                let c = Polynomial::constant(dim, Rational::from_integer(sign.into()));
                Self::from_terms_unchecked(chart, degree, [(blade, c)])
            }
        })
    }

    /// Builds an element from `(blade, coefficient)` pairs; repeated blades are
    /// summed and zero coefficients dropped.
    pub fn from_terms<I>(chart: &Arc<Chart>, degree: i32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, Polynomial)>,
    {
        let dim = chart.dimension();
        let terms: Vec<_> = terms.into_iter().collect();
        for (b, p) in &terms {
            if b.grade() as i32 != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree.into(),
                    found: b.grade().into(),
                });
            }
            if b.indices().any(|i| i >= dim) {
                return Err(Error::IndexOutOfRange {
                    index: b.indices().last().unwrap_or(0),
                    dimension: dim,
                });
            }
            if p.nvars() != dim {
                return Err(Error::DimensionMismatch(dim, p.nvars()));
            }
        }
        Ok(Self::from_terms_unchecked(chart, degree, terms))
    }

    pub(crate) fn from_terms_unchecked<I>(chart: &Arc<Chart>, degree: i32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Blade, Polynomial)>,
    {
        let mut out = Self::zero(chart, degree);
        for (b, p) in terms {
            out.accumulate(b, &p);
        }
        out
    }

    pub(crate) fn from_map(
        chart: &Arc<Chart>,
        degree: i32,
        terms: BTreeMap<Blade, Polynomial>,
    ) -> Self {
        let mut terms = terms;
        terms.retain(|_, p| !p.is_zero());
        Graded {
            chart: Arc::clone(chart),
            degree,
            terms,
            _variance: PhantomData,
        }
    }

    pub(crate) fn accumulate(&mut self, blade: Blade, p: &Polynomial) {
        accumulate(&mut self.terms, blade, p);
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dimension(&self) -> usize {
        self.chart.dimension()
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is a constant polynomial.
    pub fn is_constant(&self) -> bool {
        self.terms.values().all(Polynomial::is_constant)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Polynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: Blade) -> Polynomial {
        self.terms
            .get(&blade)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.dimension()))
    }

    /// The degree-zero coefficient as a polynomial (zero for other degrees).
    pub fn as_scalar(&self) -> Polynomial {
        if self.degree == 0 {
            self.coefficient(Blade::EMPTY)
        } else {
            Polynomial::zero(self.dimension())
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        same_chart(&self.chart, &other.chart)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree.into(),
                found: other.degree.into(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (b, p) in &other.terms {
            out.accumulate(*b, p);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (b, p) in &other.terms {
            out.accumulate(*b, &-p);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_map(
            &self.chart,
            self.degree,
            self.terms.iter().map(|(b, p)| (*b, p.scale(c))).collect(),
        )
    }

    pub fn scale_sign(&self, sign: i32) -> Self {
        if sign >= 0 {
            self.clone()
        } else {
            -self
        }
    }

    /// Multiplies every coefficient by `f`.
    pub fn mul_poly(&self, f: &Polynomial) -> Result<Self> {
        if f.nvars() != self.dimension() {
            return Err(Error::DimensionMismatch(self.dimension(), f.nvars()));
        }
        Ok(Self::from_map(
            &self.chart,
            self.degree,
            self.terms.iter().map(|(b, p)| (*b, p * f)).collect(),
        ))
    }

    /// Graded-commutative wedge product. The result has degree
    /// `deg self + deg other` and is zero when that exceeds the dimension.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        same_chart(&self.chart, &other.chart)?;
        let mut out = BTreeMap::new();
        for (ba, pa) in &self.terms {
            for (bb, pb) in &other.terms {
                if let Some(sign) = ba.wedge_sign(*bb) {
                    let c = pa * pb;
                    accumulate(
                        &mut out,
                        ba.union(*bb),
                        &c.scale(&Rational::from_integer(sign.into())),
                    );
                }
            }
        }
        Ok(Self::from_map(&self.chart, self.degree + other.degree, out))
    }

    /// Maps each coefficient through `f`, keeping the basis fixed.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        Self::from_map(
            &self.chart,
            self.degree,
            self.terms.iter().map(|(b, p)| (*b, f(p))).collect(),
        )
    }
}

pub(crate) fn accumulate(terms: &mut BTreeMap<Blade, Polynomial>, blade: Blade, p: &Polynomial) {
    if p.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(blade) {
        Entry::Vacant(v) => {
            v.insert(p.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += p;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl<V: Variance> fmt::Display for Graded<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.chart.names();
        for (idx, (blade, coeff)) in self.terms.iter().enumerate() {
            let basis: Vec<String> = blade
                .indices()
                .map(|i| V::basis_symbol(&names[i]))
                .collect();
            let basis = basis.join("^");
            let (negative, body) = if coeff.is_monomial() {
                let (m, c) = coeff.terms().next().expect("nonzero coefficient");
                let negative = c.is_negative();
                let abs = c.abs();
                let mut factors = Vec::new();
                if !abs.is_one() || (m.is_one() && basis.is_empty()) {
                    factors.push(format_rational(&abs));
                }
                let mono = Polynomial::from_terms(
                    coeff.nvars(),
                    [(m.exponents().to_vec(), Rational::one())],
                )
                .expect("consistent dimension");
                if !m.is_one() {
                    factors.push(mono.display(names).to_string());
                }
                if !basis.is_empty() {
                    factors.push(basis);
                }
                (negative, factors.join("*"))
            } else if basis.is_empty() {
                (false, format!("({})", coeff.display(names)))
            } else {
                (false, format!("({})*{basis}", coeff.display(names)))
            };
            match (idx, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl<V: Variance> Add<&Graded<V>> for &Graded<V> {
    type Output = Graded<V>;
    fn add(self, rhs: &Graded<V>) -> Graded<V> {
        self.checked_add(rhs).expect("incompatible operands in +")
    }
}

impl<V: Variance> Add for Graded<V> {
    type Output = Graded<V>;
    fn add(self, rhs: Graded<V>) -> Graded<V> {
        &self + &rhs
    }
}

impl<V: Variance> Sub<&Graded<V>> for &Graded<V> {
    type Output = Graded<V>;
    fn sub(self, rhs: &Graded<V>) -> Graded<V> {
        self.checked_sub(rhs).expect("incompatible operands in -")
    }
}

impl<V: Variance> Sub for Graded<V> {
    type Output = Graded<V>;
    fn sub(self, rhs: Graded<V>) -> Graded<V> {
        &self - &rhs
    }
}

impl<V: Variance> Neg for &Graded<V> {
    type Output = Graded<V>;
    fn neg(self) -> Graded<V> {
        self.map_coefficients(|p| -p)
    }
}

impl<V: Variance> Neg for Graded<V> {
    type Output = Graded<V>;
    fn neg(self) -> Graded<V> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Form, Multivector};
    use super::*;
    use crate::rat;

    fn r3() -> Arc<Chart> {
        Arc::new(Chart::new(["x", "y", "z"]).unwrap())
    }

    #[test]
    fn wedge_examples() {
        let c = r3();
        let dx = Multivector::coordinate(&c, 0).unwrap();
        let dy = Multivector::coordinate(&c, 1).unwrap();
        assert!(dx.wedge(&dx).unwrap().is_zero());
        assert_eq!(dx.wedge(&dy).unwrap(), -dy.wedge(&dx).unwrap());

        let x = Polynomial::var(3, 0).unwrap();
        let y = Polynomial::var(3, 1).unwrap();
        let a = dx.mul_poly(&x).unwrap();
        let b = dy.mul_poly(&y).unwrap();
        let expected = Multivector::basis(&c, &[0, 1])
            .unwrap()
            .mul_poly(&(&x * &y))
            .unwrap();
        assert_eq!(a.wedge(&b).unwrap(), expected);
    }

    #[test]
    fn overflow_is_zero_with_formal_degree() {
        let c = r3();
        let v = Form::basis(&c, &[0, 1, 2]).unwrap();
        let w = v.wedge(&Form::coordinate(&c, 0).unwrap()).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.degree(), 4);
    }

    #[test]
    fn chart_mismatch() {
        let a = Form::coordinate(&r3(), 0).unwrap();
        let other = Arc::new(Chart::new(["p", "q", "r"]).unwrap());
        let b = Form::coordinate(&other, 0).unwrap();
        assert_eq!(a.wedge(&b), Err(Error::ChartMismatch));
        assert_eq!(a.checked_add(&b), Err(Error::ChartMismatch));
    }

    #[test]
    fn display() {
        let c = r3();
        let x = Polynomial::var(3, 0).unwrap();
        let y = Polynomial::var(3, 1).unwrap();
        let f = Form::basis(&c, &[0, 2])
            .unwrap()
            .mul_poly(&(&x + &y))
            .unwrap()
            - Form::basis(&c, &[0, 1]).unwrap().scale(&rat(3, 2));
        assert_eq!(f.to_string(), "-3/2*dx^dy + (x + y)*dx^dz");
        let s = Multivector::scalar(&c, Polynomial::constant(3, rat(-2, 1))).unwrap();
        assert_eq!(s.to_string(), "-2");
    }
}
