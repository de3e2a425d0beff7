//! Seeded random objects: polynomials, multivector fields, forms, pairs,
//! closed forms, graph structures and admissible forms.
//!
//! Every draw comes from a ChaCha8 stream selected by `(seed, stream)`, so a
//! trial can be reproduced on its own and trials can run in any order or in
//! parallel.

use std::fmt;
use std::sync::Arc;

use mdx_core::exterior::{contract, ext_deriv, poincare_homotopy, Graded, Variance};
use mdx_core::{
    rat, AdmissibleForm, Blade, Chart, Error as CoreError, Form, GradedContext, GradedPair,
    GraphMultiDirac, Multivector, Polynomial, Rational,
};
use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dsl::Value;

pub const DEFAULT_SEED: u64 = 42;
pub const MAX_DIMENSION: usize = 6;

const NAMES: [&str; MAX_DIMENSION] = ["x", "y", "z", "w", "u", "v"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub dim: usize,
    pub ambient: usize,
    pub max_poly_degree: u32,
    pub max_terms: usize,
    pub numerator_bound: i64,
    pub denominator_bound: i64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: DEFAULT_SEED,
            dim: 3,
            ambient: 2,
            max_poly_degree: 2,
            max_terms: 3,
            numerator_bound: 3,
            denominator_bound: 2,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: String| Err(GenError::InvalidConfig(m));
        if self.dim == 0 || self.dim > MAX_DIMENSION {
            return bad(format!(
                "dimension must be in 1..={MAX_DIMENSION}, got {}",
                self.dim
            ));
        }
        if self.ambient == 0 || self.ambient > self.dim {
            return bad(format!(
                "ambient degree must be in 1..={}, got {}",
                self.dim, self.ambient
            ));
        }
        if self.max_poly_degree > 2 {
            return bad(format!(
                "max polynomial degree must be at most 2, got {}",
                self.max_poly_degree
            ));
        }
        if self.max_terms == 0 || self.max_terms > 3 {
            return bad(format!(
                "terms per coefficient must be in 1..=3, got {}",
                self.max_terms
            ));
        }
        if self.numerator_bound < 1 || self.denominator_bound < 1 {
            return bad("coefficient bounds must be positive".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenError {
    InvalidConfig(String),
    Unsatisfiable(String),
    Core(CoreError),
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::InvalidConfig(m) => write!(f, "invalid generator configuration: {m}"),
            GenError::Unsatisfiable(m) => write!(f, "unsatisfiable request: {m}"),
            GenError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GenError {}

impl From<CoreError> for GenError {
    fn from(e: CoreError) -> Self {
        GenError::Core(e)
    }
}

/// Chart with coordinates `x, y, z, w, u, v` truncated to `dim`.
pub fn chart(dim: usize) -> Arc<Chart> {
    assert!(
        (1..=MAX_DIMENSION).contains(&dim),
        "dimension {dim} out of range"
    );
    Arc::new(Chart::new(NAMES[..dim].iter().copied()).expect("valid names"))
}

pub struct Generator {
    rng: ChaCha8Rng,
    cfg: GeneratorConfig,
    chart: Arc<Chart>,
}

impl Generator {
    /// Generator on the configuration's own chart, reading stream `stream`.
    pub fn new(cfg: &GeneratorConfig, stream: u64) -> Self {
        Generator::on_chart(cfg, chart(cfg.dim), stream)
    }

    pub fn on_chart(cfg: &GeneratorConfig, chart: Arc<Chart>, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Generator {
            rng,
            cfg: cfg.clone(),
            chart,
        }
    }

    /// Continues the same random stream on another chart.
    pub fn set_chart(&mut self, chart: Arc<Chart>) {
        self.chart = chart;
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.cfg
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dimension()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn rational(&mut self) -> Rational {
        let b = self.cfg.numerator_bound;
        let mut num = self.rng.random_range(1..=b);
        if self.rng.random_bool(0.5) {
            num = -num;
        }
        let den = self.rng.random_range(1..=self.cfg.denominator_bound);
        rat(num, den)
    }

    fn exponents(&mut self) -> Vec<u16> {
        let dim = self.dim();
        let total = self.rng.random_range(0..=self.cfg.max_poly_degree);
        let mut e = vec![0u16; dim];
        for _ in 0..total {
            e[self.rng.random_range(0..dim)] += 1;
        }
        e
    }

    pub fn polynomial(&mut self) -> Polynomial {
        let count = self.rng.random_range(1..=self.cfg.max_terms);
        let terms: Vec<(Vec<u16>, Rational)> = (0..count)
            .map(|_| (self.exponents(), self.rational()))
            .collect();
        Polynomial::from_terms(self.dim(), terms).expect("exponent vectors match the chart")
    }

    pub fn constant(&mut self) -> Polynomial {
        Polynomial::constant(self.dim(), self.rational())
    }

    fn graded<V: Variance>(&mut self, degree: i32, constant: bool) -> Graded<V> {
        let dim = self.dim();
        if degree < 0 || degree as usize > dim {
            return Graded::zero(&self.chart, degree);
        }
        let blades: Vec<Blade> = Blade::all_of_grade(dim, degree as u32).collect();
        let count = self.rng.random_range(1..=blades.len().min(3));
        let chosen = blades.into_iter().choose_multiple(&mut self.rng, count);
        let terms: Vec<(Blade, Polynomial)> = chosen
            .into_iter()
            .map(|b| {
                (
                    b,
                    if constant {
                        self.constant()
                    } else {
                        self.polynomial()
                    },
                )
            })
            .collect();
        Graded::from_terms(&self.chart, degree, terms).expect("blades of the requested degree")
    }

    pub fn multivector(&mut self, r: usize) -> Multivector {
        self.graded(r as i32, false)
    }

    pub fn form(&mut self, k: usize) -> Form {
        self.graded(k as i32, false)
    }

    pub fn constant_multivector(&mut self, r: usize) -> Multivector {
        self.graded(r as i32, true)
    }

    pub fn constant_form(&mut self, k: usize) -> Form {
        self.graded(k as i32, true)
    }

    pub fn function(&mut self) -> Form {
        let p = self.polynomial();
        Form::scalar(&self.chart, p).expect("same chart")
    }

    /// `dτ` for a random `τ` of degree `k − 1`.
    pub fn closed_form(&mut self, k: usize) -> Result<Form, GenError> {
        if k == 0 {
            return Err(GenError::Unsatisfiable(
                "closed 0-forms are constant; ask for a constant instead".into(),
            ));
        }
        if k > self.dim() {
            return Err(GenError::Unsatisfiable(format!(
                "no nonzero {k}-forms in dimension {}",
                self.dim()
            )));
        }
        Ok(ext_deriv(&self.form(k - 1)))
    }

    pub fn context(&self, n: usize) -> Result<GradedContext, GenError> {
        Ok(GradedContext::new(self.chart.clone(), n)?)
    }

    /// Arbitrary (not necessarily isotropic) section of `L_r`.
    pub fn pair(&mut self, ctx: &GradedContext, r: usize) -> Result<GradedPair, GenError> {
        if r == 0 || r > ctx.n() {
            return Err(GenError::Unsatisfiable(format!(
                "pairs have degree 1..={}, got {r}",
                ctx.n()
            )));
        }
        let gamma = self.multivector(r);
        let sigma = self.form(ctx.n() + 1 - r);
        Ok(GradedPair::new(ctx, gamma, sigma)?)
    }

    /// Graph structure of a random `(n+1)`-form: exact (`dτ`) when `closed`,
    /// otherwise redrawn a few times looking for `dΩ ≠ 0`, which needs
    /// `dim ≥ n + 2`.
    pub fn graph(
        &mut self,
        ctx: &GradedContext,
        closed: bool,
    ) -> Result<GraphMultiDirac, GenError> {
        let n = ctx.n();
        let omega = if closed {
            ext_deriv(&self.form(n))
        } else {
            let mut omega = self.form(n + 1);
            for _ in 0..16 {
                if !ext_deriv(&omega).is_zero() {
                    break;
                }
                omega = self.form(n + 1);
            }
            omega
        };
        Ok(GraphMultiDirac::new(ctx, omega)?)
    }

    /// Embeds a random multivector of degree in `1..=n` into `g`.
    pub fn section(&mut self, g: &GraphMultiDirac) -> Result<GradedPair, GenError> {
        let r = self.range(1, g.context().n());
        self.section_of_degree(g, r)
    }

    pub fn section_of_degree(
        &mut self,
        g: &GraphMultiDirac,
        r: usize,
    ) -> Result<GradedPair, GenError> {
        let gamma = self.multivector(r);
        Ok(g.embed(&gamma)?.into_pair())
    }

    /// Admissible form with a constant witness `Γ` of degree `r`: `Σ` is the
    /// homotopy primitive of `i_Γ Ω` plus a random exact form.
    pub fn admissible(
        &mut self,
        g: &GraphMultiDirac,
        r: usize,
    ) -> Result<AdmissibleForm, GenError> {
        let n = g.context().n();
        if r == 0 || r > n {
            return Err(GenError::Unsatisfiable(format!(
                "witness degree must be in 1..={n}, got {r}"
            )));
        }
        let gamma = self.constant_multivector(r);
        let target = contract(&gamma, g.omega())?;
        if !ext_deriv(&target).is_zero() {
            return Err(GenError::Unsatisfiable(
                "i_Γ Ω is not closed, so it has no primitive".into(),
            ));
        }
        let mut sigma = poincare_homotopy(&target);
        if n - r >= 1 && self.coin() {
            sigma = sigma.checked_add(&ext_deriv(&self.form(n - r - 1)))?;
        }
        Ok(AdmissibleForm::new(g, sigma, gamma)?)
    }

    /// Random polynomial form solved for a witness; falls back to
    /// [`Generator::admissible`] when the solver finds none.
    pub fn admissible_mixed(&mut self, g: &GraphMultiDirac) -> Result<AdmissibleForm, GenError> {
        let r = self.range(1, g.context().n());
        self.admissible_mixed_of_degree(g, r)
    }

    /// [`Generator::admissible_mixed`] with a witness of degree `r`.
    pub fn admissible_mixed_of_degree(
        &mut self,
        g: &GraphMultiDirac,
        r: usize,
    ) -> Result<AdmissibleForm, GenError> {
        let n = g.context().n();
        if r == 0 || r > n {
            return Err(GenError::Unsatisfiable(format!(
                "witness degree must be in 1..={n}, got {r}"
            )));
        }
        if self.range(0, 3) > 0 {
            let sigma = self.form(n - r);
            if let Some(a) = AdmissibleForm::solve(g, sigma)? {
                return Ok(a);
            }
        }
        self.admissible(g, r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    Polynomial,
    Multivector(usize),
    Form(usize),
    GradedPair(usize),
    ClosedForm(usize),
    /// Admissible form with a witness of the given degree, against a random
    /// constant `(n+1)`-form.
    Admissible(usize),
}

pub fn random_object(kind: ObjectKind, cfg: &GeneratorConfig) -> Result<Value, GenError> {
    cfg.validate()?;
    let mut g = Generator::new(cfg, 0);
    let dim = cfg.dim;
    let check = |k: usize| {
        if k > dim {
            Err(GenError::Unsatisfiable(format!(
                "degree {k} exceeds the dimension {dim}"
            )))
        } else {
            Ok(())
        }
    };
    Ok(match kind {
        ObjectKind::Polynomial => Value::from_form(g.function()),
        ObjectKind::Multivector(r) => {
            check(r)?;
            Value::from_multivector(g.multivector(r))
        }
        ObjectKind::Form(k) => {
            check(k)?;
            Value::from_form(g.form(k))
        }
        ObjectKind::GradedPair(r) => {
            let ctx = g.context(cfg.ambient)?;
            Value::Pair(g.pair(&ctx, r)?)
        }
        ObjectKind::ClosedForm(k) => Value::from_form(g.closed_form(k)?),
        ObjectKind::Admissible(r) => {
            let ctx = g.context(cfg.ambient)?;
            if cfg.ambient + 1 > dim {
                return Err(GenError::Unsatisfiable(format!(
                    "an {}-form needs dimension at least {}",
                    cfg.ambient + 1,
                    cfg.ambient + 1
                )));
            }
            let omega = g.constant_form(cfg.ambient + 1);
            let structure = GraphMultiDirac::new(&ctx, omega)?;
            Value::Admissible(g.admissible(&structure, r)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use mdx_core::multipoisson::verify_admissible;

    use super::*;

    #[test]
    fn same_seed_same_object() {
        let cfg = GeneratorConfig::with_seed(7);
        for kind in [
            ObjectKind::Polynomial,
            ObjectKind::Form(2),
            ObjectKind::GradedPair(1),
            ObjectKind::Admissible(1),
        ] {
            assert_eq!(
                random_object(kind, &cfg).unwrap(),
                random_object(kind, &cfg).unwrap()
            );
        }
        let other = GeneratorConfig::with_seed(8);
        assert_ne!(
            random_object(ObjectKind::Form(2), &cfg).unwrap(),
            random_object(ObjectKind::Form(2), &other).unwrap()
        );
    }

    #[test]
    fn streams_differ() {
        let cfg = GeneratorConfig::default();
        let a = Generator::new(&cfg, 0).form(1);
        let b = Generator::new(&cfg, 1).form(1);
        assert_ne!(a, b);
    }

    #[test]
    fn closed_forms_are_closed() {
        let cfg = GeneratorConfig::default();
        for s in 0..20 {
            let c = Generator::new(&cfg, s).closed_form(2).unwrap();
            assert!(ext_deriv(&c).is_zero());
        }
        assert!(matches!(
            random_object(ObjectKind::ClosedForm(0), &cfg),
            Err(GenError::Unsatisfiable(_))
        ));
    }

    #[test]
    fn admissible_output_verifies() {
        let cfg = GeneratorConfig::default();
        for s in 0..20 {
            let mut g = Generator::new(&cfg, s);
            let ctx = g.context(2).unwrap();
            let omega = g.constant_form(3);
            let structure = GraphMultiDirac::new(&ctx, omega).unwrap();
            let r = 1 + (s as usize % 2);
            let a = g.admissible(&structure, r).unwrap();
            assert!(
                verify_admissible(&structure, a.sigma(), a.gamma())
                    .unwrap()
                    .0
            );
            let b = g.admissible_mixed(&structure).unwrap();
            assert!(
                verify_admissible(&structure, b.sigma(), b.gamma())
                    .unwrap()
                    .0
            );
        }
    }

    #[test]
    fn bounds_are_respected() {
        let cfg = GeneratorConfig {
            max_poly_degree: 1,
            max_terms: 2,
            ..Default::default()
        };
        let mut g = Generator::new(&cfg, 3);
        for _ in 0..50 {
            let p = g.polynomial();
            assert!(p.total_degree().unwrap_or(0) <= 1);
            assert!(p.num_terms() <= 2);
        }
        assert!(GeneratorConfig {
            dim: 7,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(GeneratorConfig {
            ambient: 4,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(GeneratorConfig {
            max_poly_degree: 3,
            ..Default::default()
        }
        .validate()
        .is_err());
    }
}
