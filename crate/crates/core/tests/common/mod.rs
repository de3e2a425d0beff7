#![allow(dead_code)]

use std::sync::Arc;

use mdx_core::exterior::{Graded, Variance};
use mdx_core::multidirac::GraphMultiDirac;
use mdx_core::{rat, Blade, Chart, Form, GradedContext, GradedPair, Multivector, Polynomial};
use proptest::prelude::*;

pub fn chart(dim: usize) -> Arc<Chart> {
    Arc::new(Chart::standard(dim).unwrap())
}

/// Polynomial with at most three terms of total degree ≤ 2.
pub fn poly(dim: usize) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0u16..=2, dim), -3i64..=3, 1i64..=2);
    prop::collection::vec(term, 0..=3).prop_map(move |terms| {
        Polynomial::from_terms(
            dim,
            terms.into_iter().map(|(mut e, n, d)| {
                // clamp total degree to 2
                while e.iter().map(|&x| x as u32).sum::<u32>() > 2 {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                (e, rat(n, d))
            }),
        )
        .unwrap()
    })
}

fn blades(dim: usize, degree: usize) -> Vec<Blade> {
    (0u64..(1 << dim))
        .filter(|m| m.count_ones() as usize == degree)
        .map(Blade::from_mask)
        .collect()
}

pub fn graded<V: Variance>(c: Arc<Chart>, degree: usize) -> impl Strategy<Value = Graded<V>> {
    let dim = c.dimension();
    let bs = blades(dim, degree);
    prop::collection::vec(prop::option::weighted(0.6, poly(dim)), bs.len()).prop_map(move |cs| {
        let terms = bs.iter().zip(cs).filter_map(|(b, p)| p.map(|p| (*b, p)));
        Graded::<V>::from_terms(&c, degree as i32, terms).unwrap()
    })
}

pub fn multivector(c: Arc<Chart>, degree: usize) -> impl Strategy<Value = Multivector> {
    graded(c, degree)
}

pub fn form(c: Arc<Chart>, degree: usize) -> impl Strategy<Value = Form> {
    graded(c, degree)
}

pub fn sign(k: i32) -> mdx_core::Rational {
    rat(mdx_core::parity_sign(k.into()).into(), 1)
}

pub fn context(dim: usize, n: usize) -> GradedContext {
    GradedContext::new(chart(dim), n).unwrap()
}

/// Arbitrary (not necessarily isotropic) section of `L_r`.
pub fn pair(ctx: GradedContext, r: usize) -> impl Strategy<Value = GradedPair> {
    let c = ctx.chart().clone();
    let k = ctx.n() + 1 - r;
    (multivector(c.clone(), r), form(c, k))
        .prop_map(move |(g, s)| GradedPair::new(&ctx, g, s).unwrap())
}

/// Section of `L_r` with `r` drawn from `1..=n`.
pub fn any_pair(ctx: GradedContext) -> impl Strategy<Value = GradedPair> {
    (1..=ctx.n()).prop_flat_map(move |r| pair(ctx.clone(), r))
}

/// Graph structure of a random `(n+1)`-form, closed when `closed` is set.
pub fn graph(ctx: GradedContext, closed: bool) -> BoxedStrategy<GraphMultiDirac> {
    let c = ctx.chart().clone();
    let n = ctx.n();
    if closed {
        form(c, n)
            .prop_map(move |tau| {
                GraphMultiDirac::new(&ctx, mdx_core::exterior::ext_deriv(&tau)).unwrap()
            })
            .boxed()
    } else {
        form(c, n + 1)
            .prop_map(move |om| GraphMultiDirac::new(&ctx, om).unwrap())
            .boxed()
    }
}

/// Random multivector of degree in `1..=n`, to be embedded into a graph.
pub fn any_multivector(ctx: &GradedContext) -> impl Strategy<Value = Multivector> {
    let c = ctx.chart().clone();
    (1..=ctx.n()).prop_flat_map(move |r| multivector(c.clone(), r))
}

pub fn embed(g: &GraphMultiDirac, gamma: &Multivector) -> GradedPair {
    g.embed(gamma).unwrap().into_pair()
}
