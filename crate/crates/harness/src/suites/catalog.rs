use std::fmt::Display;
use std::sync::Arc;

use mdx_core::courant::{
    gauge_transform, multi_courant, pairing_minus, pairing_plus, section_wedge,
};
use mdx_core::exterior::{
    contract, ext_deriv, lie_bracket, lie_derivative, schouten, Graded, Variance,
};
use mdx_core::multidirac::{jacobiator, omega_from_d1, t_d_direct, t_d_expanded, GraphMultiDirac};
use mdx_core::multipoisson::{poisson_bracket, solve_hamiltonian, witness_kernel};
use mdx_core::{
    parity_sign, rat, AdmissibleForm, Blade, Chart, Form, GradedContext, GradedPair, Multivector,
    Polynomial, Rational,
};

use super::{Check, Identity, Suite};
use crate::generate::{chart, GenError, Generator, MAX_DIMENSION};

type Outcome = Result<Check, GenError>;

fn sign(k: i64) -> Rational {
    rat(parity_sign(k).into(), 1)
}

trait Diff: PartialEq + Display {
    fn diff(&self, other: &Self) -> String;
    fn vanishes(&self) -> bool;
}

impl<V: Variance> Diff for Graded<V> {
    fn diff(&self, other: &Self) -> String {
        match self.checked_sub(other) {
            Ok(d) if self.degree() == other.degree() => d.to_string(),
            _ => format!(
                "{self} (degree {}) vs {other} (degree {})",
                self.degree(),
                other.degree()
            ),
        }
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Diff for GradedPair {
    fn diff(&self, other: &Self) -> String {
        match self.checked_sub(other) {
            Ok(d) => d.to_string(),
            Err(_) => format!(
                "{self} (degree {}) vs {other} (degree {})",
                self.degree(),
                other.degree()
            ),
        }
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

/// `lhs == rhs`; a passing trial counts as tested when `tested` holds.
fn compare_tested<T: Diff>(lhs: &T, rhs: &T, tested: bool, inputs: Vec<String>) -> Outcome {
    Ok(if lhs != rhs {
        Check::Fails {
            inputs,
            defect: lhs.diff(rhs),
        }
    } else if tested {
        Check::Holds
    } else {
        Check::Trivial
    })
}

fn compare<T: Diff>(lhs: &T, rhs: &T, inputs: Vec<String>) -> Outcome {
    compare_tested(lhs, rhs, !lhs.vanishes(), inputs)
}

fn vanishes<T: Display>(value: &T, zero: bool, inputs: Vec<String>) -> Outcome {
    vanishes_tested(value, zero, true, inputs)
}

fn vanishes_tested<T: Display>(
    value: &T,
    zero: bool,
    tested: bool,
    inputs: Vec<String>,
) -> Outcome {
    Ok(if !zero {
        Check::Fails {
            inputs,
            defect: value.to_string(),
        }
    } else if tested {
        Check::Holds
    } else {
        Check::Trivial
    })
}

/// Degrees `lo[i]..=hi[i]` drawn until `ok` accepts them, so that trials land
/// where the identity has something to say. Gives up after a few attempts and
/// keeps the last draw.
fn pick<const K: usize>(
    g: &mut Generator,
    lo: [usize; K],
    hi: [usize; K],
    ok: impl Fn([usize; K]) -> bool,
) -> [usize; K] {
    let mut d = [0; K];
    for _ in 0..64 {
        for i in 0..K {
            d[i] = g.range(lo[i], hi[i].max(lo[i]));
        }
        if ok(d) {
            break;
        }
    }
    d
}

/// `a && b` over checks, keeping the first failure; trivial only if both are.
fn both(a: Outcome, b: impl FnOnce() -> Outcome) -> Outcome {
    match (a?, b) {
        (fail @ Check::Fails { .. }, _) => Ok(fail),
        (Check::Trivial, b) => b(),
        (Check::Holds, b) => match b()? {
            Check::Trivial => Ok(Check::Holds),
            other => Ok(other),
        },
    }
}

macro_rules! inputs {
    ($($name:expr => $value:expr),* $(,)?) => {
        vec![$(format!("{} = {}", $name, $value)),*]
    };
}

fn scalar(c: &Arc<Chart>, p: Polynomial) -> Form {
    Form::scalar(c, p).expect("same chart")
}

fn deg(a: &GradedPair) -> i64 {
    a.degree().into()
}

fn ctx(g: &Generator) -> Result<GradedContext, GenError> {
    g.context(g.config().ambient)
}

/// A context where `(n+1)`-forms need not be closed, that is `dim ≥ n + 2`.
/// The chart is enlarged when the configured one is too small; past the
/// largest chart, `n` is lowered instead.
fn open_context(g: &mut Generator) -> Result<GradedContext, GenError> {
    let (dim, n) = (g.config().dim, g.config().ambient);
    if dim >= n + 2 {
        return ctx(g);
    }
    if n + 2 <= MAX_DIMENSION {
        g.set_chart(chart(n + 2));
        return g.context(n);
    }
    g.context(dim - 2)
}

// ---------------------------------------------------------------- Schouten

fn schouten_functions(g: &mut Generator) -> Outcome {
    let c = g.chart().clone();
    let (f, h) = (g.polynomial(), g.polynomial());
    let (mf, mh) = (
        Multivector::scalar(&c, f.clone())?,
        Multivector::scalar(&c, h.clone())?,
    );
    let b = schouten(&mf, &mh)?;
    vanishes(
        &b,
        b.is_zero(),
        inputs!["f" => scalar(&c, f), "g" => scalar(&c, h)],
    )
}

fn top(g: &Generator) -> usize {
    g.dim().min(3)
}

fn schouten_anticommutes(g: &mut Generator) -> Outcome {
    let (t, dim) = (top(g), g.dim());
    let [k, l] = pick(g, [0; 2], [t; 2], |[k, l]| k + l >= 1 && k + l <= dim + 1);
    let (a, b) = (g.multivector(k), g.multivector(l));
    let lhs = schouten(&a, &b)?;
    let rhs = -schouten(&b, &a)?.scale(&sign((k as i64 - 1) * (l as i64 - 1)));
    compare(&lhs, &rhs, inputs!["Γ" => &a, "Γ'" => &b])
}

fn schouten_is_lie_bracket(g: &mut Generator) -> Outcome {
    let (x, y) = (g.multivector(1), g.multivector(1));
    compare(
        &schouten(&x, &y)?,
        &lie_bracket(&x, &y)?,
        inputs!["X" => &x, "Y" => &y],
    )
}

fn schouten_leibniz(g: &mut Generator) -> Outcome {
    let (t, dim) = (top(g), g.dim());
    let [k, l, m] = pick(g, [0; 3], [t; 3], |[k, l, m]| {
        l + m <= dim && k + l + m >= 1 && k + l + m <= dim + 1
    });
    let (a, b, e) = (g.multivector(k), g.multivector(l), g.multivector(m));
    let lhs = schouten(&a, &b.wedge(&e)?)?;
    let rhs = schouten(&a, &b)?.wedge(&e)?
        + b.wedge(&schouten(&a, &e)?)?
            .scale(&sign((k as i64 - 1) * l as i64));
    compare(&lhs, &rhs, inputs!["Γ" => &a, "Γ'" => &b, "Γ''" => &e])
}

fn schouten_jacobi(g: &mut Generator) -> Outcome {
    let (t, dim) = (top(g), g.dim());
    let [k, l, m] = pick(g, [0; 3], [t; 3], |[k, l, m]| {
        k + l + m >= 2 && k + l + m <= dim + 2
    });
    let (a, b, e) = (g.multivector(k), g.multivector(l), g.multivector(m));
    let (k, l, m) = (k as i64, l as i64, m as i64);
    let t1 = schouten(&a, &schouten(&b, &e)?)?.scale(&sign((k - 1) * (m - 1)));
    let t2 = schouten(&b, &schouten(&e, &a)?)?.scale(&sign((l - 1) * (k - 1)));
    let t3 = schouten(&e, &schouten(&a, &b)?)?.scale(&sign((m - 1) * (l - 1)));
    let tested = !(t1.is_zero() && t2.is_zero() && t3.is_zero());
    let sum = t1.checked_add(&t2)?.checked_add(&t3)?;
    vanishes_tested(
        &sum,
        sum.is_zero(),
        tested,
        inputs!["Γ" => &a, "Γ'" => &b, "Γ''" => &e],
    )
}

const SCHOUTEN: &[Identity] = &[
    Identity {
        name: "vanishes-on-functions",
        statement: "[f, g] = 0",
        once: false,
        check: schouten_functions,
    },
    Identity {
        name: "anticommutativity",
        statement: "[Γ, Γ'] = −(−1)^{(k−1)(l−1)} [Γ', Γ]",
        once: false,
        check: schouten_anticommutes,
    },
    Identity {
        name: "lie-bracket",
        statement: "[X, Y] is the Lie bracket of vector fields",
        once: false,
        check: schouten_is_lie_bracket,
    },
    Identity {
        name: "leibniz",
        statement: "[Γ, Γ'∧Γ''] = [Γ, Γ']∧Γ'' + (−1)^{(k−1)l} Γ'∧[Γ, Γ'']",
        once: false,
        check: schouten_leibniz,
    },
    Identity {
        name: "jacobi",
        statement: "(−1)^{(k−1)(m−1)} [Γ, [Γ', Γ'']] + cyclic = 0",
        once: false,
        check: schouten_jacobi,
    },
];

// ------------------------------------------------------ Lie derivative

fn d_commutes_with_lie(g: &mut Generator) -> Outcome {
    let (t, dim) = (top(g), g.dim());
    let [k, j] = pick(g, [0, 0], [t, dim], |[k, j]| j + 1 >= k && j + 2 <= dim + k);
    let (a, alpha) = (g.multivector(k), g.form(j));
    let lhs = ext_deriv(&lie_derivative(&a, &alpha)?);
    let rhs = lie_derivative(&a, &ext_deriv(&alpha))?.scale(&sign(k as i64 - 1));
    compare(&lhs, &rhs, inputs!["Γ" => &a, "α" => &alpha])
}

fn koszul(g: &mut Generator) -> Outcome {
    let (t, dim) = (top(g), g.dim());
    let [k, l, j] = pick(g, [0, 0, 0], [t, t, dim], |[k, l, j]| {
        k + l >= 1 && j + 1 >= k + l
    });
    let (a, b, alpha) = (g.multivector(k), g.multivector(l), g.form(j));
    let lhs = contract(&schouten(&a, &b)?, &alpha)?;
    let rhs = lie_derivative(&a, &contract(&b, &alpha)?)?.scale(&sign((k as i64 - 1) * l as i64))
        - contract(&b, &lie_derivative(&a, &alpha)?)?;
    compare(&lhs, &rhs, inputs!["Γ" => &a, "Γ'" => &b, "α" => &alpha])
}

fn lie_of_bracket(g: &mut Generator) -> Outcome {
    let (t, dim) = (top(g), g.dim());
    let [k, l, j] = pick(g, [0, 0, 0], [t, t, dim], |[k, l, j]| {
        k + l >= 1 && j + 2 >= k + l
    });
    let (a, b, alpha) = (g.multivector(k), g.multivector(l), g.form(j));
    let lhs = lie_derivative(&schouten(&a, &b)?, &alpha)?;
    let rhs = lie_derivative(&a, &lie_derivative(&b, &alpha)?)?
        .scale(&sign((k as i64 - 1) * (l as i64 - 1)))
        - lie_derivative(&b, &lie_derivative(&a, &alpha)?)?;
    compare(&lhs, &rhs, inputs!["Γ" => &a, "Γ'" => &b, "α" => &alpha])
}

fn lie_of_wedge(g: &mut Generator) -> Outcome {
    let (t, dim) = (top(g), g.dim());
    let [k, l, j] = pick(g, [0, 0, 0], [t, t, dim], |[k, l, j]| {
        k + l <= dim && j + 1 >= k + l
    });
    let (a, b, alpha) = (g.multivector(k), g.multivector(l), g.form(j));
    let lhs = lie_derivative(&a.wedge(&b)?, &alpha)?;
    let rhs = contract(&b, &lie_derivative(&a, &alpha)?)?.scale(&sign(l as i64))
        + lie_derivative(&b, &contract(&a, &alpha)?)?;
    compare(&lhs, &rhs, inputs!["Γ" => &a, "Γ'" => &b, "α" => &alpha])
}

const PROP_A3: &[Identity] = &[
    Identity {
        name: "d-commutes-with-lie",
        statement: "d £_Γ α = (−1)^{k−1} £_Γ dα",
        once: false,
        check: d_commutes_with_lie,
    },
    Identity {
        name: "koszul",
        statement: "i_{[Γ,Γ']} α = (−1)^{(k−1)l} £_Γ i_{Γ'} α − i_{Γ'} £_Γ α",
        once: false,
        check: koszul,
    },
    Identity {
        name: "lie-of-bracket",
        statement: "£_{[Γ,Γ']} α = (−1)^{(k−1)(l−1)} £_Γ £_{Γ'} α − £_{Γ'} £_Γ α",
        once: false,
        check: lie_of_bracket,
    },
    Identity {
        name: "lie-of-wedge",
        statement: "£_{Γ∧Γ'} α = (−1)^l i_{Γ'} £_Γ α + £_{Γ'} i_Γ α",
        once: false,
        check: lie_of_wedge,
    },
];

// ------------------------------------------------------------ pairings

/// Two pairs with degrees `r + s ≤ n + slack`.
fn two_pairs_in(
    g: &mut Generator,
    ctx: &GradedContext,
    slack: usize,
) -> Result<(GradedPair, GradedPair), GenError> {
    let n = ctx.n();
    let [r, s] = pick(g, [1; 2], [n; 2], |[r, s]| r + s <= n + slack);
    Ok((g.pair(ctx, r)?, g.pair(ctx, s)?))
}

fn two_pairs(g: &mut Generator, slack: usize) -> Result<(GradedPair, GradedPair), GenError> {
    let ctx = ctx(g)?;
    two_pairs_in(g, &ctx, slack)
}

fn pairing_minus_antisymmetric(g: &mut Generator) -> Outcome {
    let (a, b) = two_pairs(g, 1)?;
    let rhs = pairing_minus(&b, &a)?.scale(&-sign(deg(&a) * deg(&b)));
    compare(&pairing_minus(&a, &b)?, &rhs, inputs!["a" => &a, "b" => &b])
}

fn pairing_plus_symmetric(g: &mut Generator) -> Outcome {
    let (a, b) = two_pairs(g, 1)?;
    let rhs = pairing_plus(&b, &a)?.scale(&sign(deg(&a) * deg(&b)));
    compare(&pairing_plus(&a, &b)?, &rhs, inputs!["a" => &a, "b" => &b])
}

fn pairings_sum(g: &mut Generator) -> Outcome {
    let (a, b) = two_pairs(g, 1)?;
    let lhs = pairing_plus(&a, &b)?.checked_add(&pairing_minus(&a, &b)?)?;
    compare(
        &lhs,
        &contract(b.gamma(), a.sigma())?,
        inputs!["a" => &a, "b" => &b],
    )
}

fn section_wedge_commutes(g: &mut Generator) -> Outcome {
    let (a, b) = two_pairs(g, 0)?;
    let rhs = section_wedge(&b, &a)?.scale(&sign(deg(&a) * deg(&b)));
    compare(&section_wedge(&a, &b)?, &rhs, inputs!["a" => &a, "b" => &b])
}

fn bracket_anticommutes(g: &mut Generator) -> Outcome {
    let (a, b) = two_pairs(g, 1)?;
    let rhs = multi_courant(&b, &a)?.scale(&-sign((deg(&a) - 1) * (deg(&b) - 1)));
    compare(&multi_courant(&a, &b)?, &rhs, inputs!["a" => &a, "b" => &b])
}

const PAIRING: &[Identity] = &[
    Identity {
        name: "minus-antisymmetric",
        statement: "⟨⟨a, b⟩⟩₋ = −(−1)^{rs} ⟨⟨b, a⟩⟩₋",
        once: false,
        check: pairing_minus_antisymmetric,
    },
    Identity {
        name: "plus-symmetric",
        statement: "⟨⟨a, b⟩⟩₊ = (−1)^{rs} ⟨⟨b, a⟩⟩₊",
        once: false,
        check: pairing_plus_symmetric,
    },
    Identity {
        name: "sum-is-contraction",
        statement: "⟨⟨a, b⟩⟩₊ + ⟨⟨a, b⟩⟩₋ = i_{Γ'} Σ",
        once: false,
        check: pairings_sum,
    },
    Identity {
        name: "wedge-graded-commutative",
        statement: "a ∧ b = (−1)^{rs} b ∧ a",
        once: false,
        check: section_wedge_commutes,
    },
    Identity {
        name: "bracket-anticommutative",
        statement: "[[a, b]] = −(−1)^{(r−1)(s−1)} [[b, a]] on all of L",
        once: false,
        check: bracket_anticommutes,
    },
];

// --------------------------------------------------------------- gauge

fn exact_gauge_bracket(g: &mut Generator) -> Outcome {
    let ctx = open_context(g)?;
    let (a, b) = two_pairs_in(g, &ctx, 1)?;
    let n = ctx.n();
    let sigma = ext_deriv(&g.form(n));
    let phi = |p: &GradedPair| gauge_transform(&sigma, p);
    let lhs = phi(&multi_courant(&a, &b)?)?;
    let rhs = multi_courant(&phi(&a)?, &phi(&b)?)?;
    compare(&lhs, &rhs, inputs!["σ" => &sigma, "a" => &a, "b" => &b])
}

fn gauge_wedge(g: &mut Generator, closed: bool) -> Outcome {
    let ctx = open_context(g)?;
    let (a, b) = two_pairs_in(g, &ctx, 0)?;
    let n = ctx.n();
    let sigma = if closed {
        ext_deriv(&g.form(n))
    } else {
        g.form(n + 1)
    };
    let phi = |p: &GradedPair| gauge_transform(&sigma, p);
    let lhs = phi(&section_wedge(&a, &b)?)?;
    let rhs = section_wedge(&phi(&a)?, &phi(&b)?)?;
    compare(&lhs, &rhs, inputs!["σ" => &sigma, "a" => &a, "b" => &b])
}

fn exact_gauge_wedge(g: &mut Generator) -> Outcome {
    gauge_wedge(g, true)
}

fn any_gauge_wedge(g: &mut Generator) -> Outcome {
    gauge_wedge(g, false)
}

fn gauge_defect(g: &mut Generator) -> Outcome {
    let ctx = open_context(g)?;
    let n = ctx.n();
    let r = g.range(1, n);
    let s = g.range(1, (n + 1 - r).min(n));
    let (a, b) = (g.pair(&ctx, r)?, g.pair(&ctx, s)?);
    let sigma = g.form(n + 1);
    let phi = |p: &GradedPair| gauge_transform(&sigma, p);
    let defect =
        multi_courant(&phi(&a)?, &phi(&b)?)?.checked_sub(&phi(&multi_courant(&a, &b)?)?)?;
    let wedge = a.gamma().wedge(b.gamma())?;
    let expected_sigma = contract(&wedge, &ext_deriv(&sigma))?.scale(&-sign(r as i64));
    let expected = GradedPair::new(
        &ctx,
        Multivector::zero(ctx.chart(), defect.degree()),
        expected_sigma,
    )?;
    compare(
        &defect,
        &expected,
        inputs!["σ" => &sigma, "a" => &a, "b" => &b],
    )
}

const GAUGE: &[Identity] = &[
    Identity {
        name: "exact-bracket",
        statement: "Φ_{dτ}[[a, b]] = [[Φ_{dτ}a, Φ_{dτ}b]]",
        once: false,
        check: exact_gauge_bracket,
    },
    Identity {
        name: "exact-wedge",
        statement: "Φ_{dτ}(a ∧ b) = Φ_{dτ}a ∧ Φ_{dτ}b",
        once: false,
        check: exact_gauge_wedge,
    },
    Identity {
        name: "bracket-defect",
        statement: "[[Φ_σ a, Φ_σ b]] − Φ_σ[[a, b]] = (0, −(−1)^r i_{Γ∧Γ'} dσ), r + s ≤ n + 1",
        once: false,
        check: gauge_defect,
    },
    Identity {
        name: "any-wedge",
        statement: "Φ_σ(a ∧ b) = Φ_σ a ∧ Φ_σ b for any σ",
        once: false,
        check: any_gauge_wedge,
    },
];

// -------------------------------------------------------------- graphs

/// A graph structure with `K` sections whose degrees sum to at most
/// `n + slack`.
fn graph_and_sections<const K: usize>(
    g: &mut Generator,
    closed: bool,
    slack: usize,
) -> Result<(GraphMultiDirac, [GradedPair; K]), GenError> {
    let ctx = if closed { ctx(g)? } else { open_context(g)? };
    let graph = g.graph(&ctx, closed)?;
    let n = ctx.n();
    let degrees = pick(g, [1; K], [n; K], |d| d.iter().sum::<usize>() <= n + slack);
    let mut out = Vec::with_capacity(K);
    for r in degrees {
        out.push(g.section_of_degree(&graph, r)?);
    }
    Ok((graph, out.try_into().expect("K sections")))
}

fn isotropy(g: &mut Generator, closed: bool) -> Outcome {
    let (graph, [a, b]) = graph_and_sections::<2>(g, closed, 1)?;
    let defect = pairing_minus(&a, &b)?;
    let by_structure = graph.isotropy_defect(a.gamma(), b.gamma())?;
    let inputs = inputs!["Ω" => graph.omega(), "Γ" => a.gamma(), "Γ'" => b.gamma()];
    both(vanishes(&defect, defect.is_zero(), inputs.clone()), || {
        vanishes(&by_structure, by_structure.is_zero(), inputs)
    })
}

fn isotropy_closed(g: &mut Generator) -> Outcome {
    isotropy(g, true)
}

fn isotropy_any(g: &mut Generator) -> Outcome {
    isotropy(g, false)
}

const ISOTROPY: &[Identity] = &[
    Identity {
        name: "closed-omega",
        statement: "⟨⟨(Γ, i_Γ Ω), (Γ', i_{Γ'} Ω)⟩⟩₋ = 0, Ω = dτ",
        once: false,
        check: isotropy_closed,
    },
    Identity {
        name: "any-omega",
        statement: "⟨⟨(Γ, i_Γ Ω), (Γ', i_{Γ'} Ω)⟩⟩₋ = 0, arbitrary Ω",
        once: false,
        check: isotropy_any,
    },
];

fn simplified_bracket(g: &mut Generator) -> Outcome {
    let closed = g.coin();
    let (graph, [a, b]) = graph_and_sections::<2>(g, closed, 1)?;
    let n = graph.context().n() as i64;
    let (r, s) = (deg(&a), deg(&b));
    if r + s > n + 1 {
        let br = multi_courant(&a, &b)?;
        return vanishes(
            &br,
            br.is_zero(),
            inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b],
        );
    }
    let sigma = lie_derivative(a.gamma(), b.sigma())?.scale(&sign((r - 1) * s))
        - contract(b.gamma(), &ext_deriv(a.sigma()))?;
    let expected = GradedPair::new(graph.context(), schouten(a.gamma(), b.gamma())?, sigma)?;
    compare(
        &multi_courant(&a, &b)?,
        &expected,
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b],
    )
}

fn simplified_pairing(g: &mut Generator) -> Outcome {
    let closed = g.coin();
    let (graph, [a, b]) = graph_and_sections::<2>(g, closed, 1)?;
    compare(
        &pairing_plus(&a, &b)?,
        &contract(b.gamma(), a.sigma())?,
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b],
    )
}

fn membership_defect(graph: &GraphMultiDirac, p: &GradedPair) -> Result<Form, GenError> {
    if p.degree() < 1 || p.degree() > graph.context().n() as i32 {
        return Ok(Form::zero(graph.context().chart(), 0));
    }
    Ok(p.sigma()
        .checked_sub(&contract(p.gamma(), graph.omega())?)?)
}

fn wedge_closure(g: &mut Generator) -> Outcome {
    let closed = g.coin();
    let (graph, [a, b]) = graph_and_sections::<2>(g, closed, 0)?;
    let w = section_wedge(&a, &b)?;
    let defect = membership_defect(&graph, &w)?;
    vanishes(
        &defect,
        defect.is_zero(),
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b],
    )
}

fn bracket_closure(g: &mut Generator) -> Outcome {
    let (graph, [a, b]) = graph_and_sections::<2>(g, true, 1)?;
    let br = multi_courant(&a, &b)?;
    let defect = membership_defect(&graph, &br)?;
    vanishes(
        &defect,
        defect.is_zero(),
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b],
    )
}

const DIRCOURANT: &[Identity] = &[
    Identity {
        name: "bracket",
        statement: "[[a, b]] = ([Γ, Γ'], (−1)^{(r−1)s} £_Γ Σ' − i_{Γ'} dΣ) on graph sections",
        once: false,
        check: simplified_bracket,
    },
    Identity {
        name: "pairing",
        statement: "⟨⟨a, b⟩⟩₊ = i_{Γ'} Σ on graph sections",
        once: false,
        check: simplified_pairing,
    },
    Identity {
        name: "wedge-closure",
        statement: "a ∧ b lies in the graph of Ω",
        once: false,
        check: wedge_closure,
    },
    Identity {
        name: "bracket-closure",
        statement: "[[a, b]] lies in the graph of Ω when dΩ = 0",
        once: false,
        check: bracket_closure,
    },
];

// -------------------------------------------------- integrability tensor

fn td_cross(g: &mut Generator) -> Outcome {
    let (graph, [a, b, c]) = graph_and_sections::<3>(g, false, 2)?;
    compare(
        &t_d_direct(&a, &b, &c)?,
        &t_d_expanded(&a, &b, &c)?,
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b, "c" => &c],
    )
}

fn td_closed(g: &mut Generator) -> Outcome {
    let (graph, [a, b, c]) = graph_and_sections::<3>(g, true, 2)?;
    let td = t_d_direct(&a, &b, &c)?;
    vanishes(
        &td,
        td.is_zero(),
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b, "c" => &c],
    )
}

/// The graph of `w dx∧dy∧dz` on `ℝ⁴` with `n = 2` is not integrable; the
/// sections `∂w`, `∂x`, `∂y∧∂z` witness it with `T_D = 1`.
pub fn non_integrable_witness() -> Result<(GraphMultiDirac, [GradedPair; 3], Form), GenError> {
    let c = chart(4);
    let ctx = GradedContext::new(c.clone(), 2)?;
    let w = Polynomial::var(4, 3)?;
    let omega = Form::basis(&c, &[0, 1, 2])?.mul_poly(&w)?;
    let graph = GraphMultiDirac::new(&ctx, omega)?;
    let a = graph.embed(&Multivector::coordinate(&c, 3)?)?.into_pair();
    let b = graph.embed(&Multivector::coordinate(&c, 0)?)?.into_pair();
    let e = graph.embed(&Multivector::basis(&c, &[1, 2])?)?.into_pair();
    let td = t_d_direct(&a, &b, &e)?;
    Ok((graph, [a, b, e], td))
}

fn td_witness(_: &mut Generator) -> Outcome {
    let (graph, [a, b, c], td) = non_integrable_witness()?;
    let inputs = inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b, "c" => &c];
    let expected = scalar(graph.context().chart(), Polynomial::one(4));
    both(compare(&td, &expected, inputs.clone()), || {
        let expanded = t_d_expanded(&a, &b, &c)?;
        compare(&expanded, &td, inputs)
    })
}

const TD: &[Identity] = &[
    Identity {
        name: "expanded-equals-direct",
        statement: "2⟨⟨a, [[b, c]]⟩⟩₋ equals its expansion through d, i and £, any Ω",
        once: false,
        check: td_cross,
    },
    Identity {
        name: "vanishes-for-closed",
        statement: "T_D = 0 when Ω = dτ",
        once: false,
        check: td_closed,
    },
    Identity {
        name: "non-integrable-witness",
        statement: "T_D(∂w, ∂x, ∂y∧∂z) = 1 for Ω = w dx∧dy∧dz on ℝ⁴",
        once: true,
        check: td_witness,
    },
];

fn jacobiator_is_d_td(g: &mut Generator) -> Outcome {
    let (graph, [a, b, c]) = graph_and_sections::<3>(g, false, 2)?;
    let (s, t) = (deg(&b), deg(&c));
    let jac = jacobiator(&a, &b, &c)?;
    let sigma = ext_deriv(&t_d_direct(&a, &b, &c)?).scale(&(-sign(s + t) * rat(1, 2)));
    let ctx = graph.context();
    let expected = if jac.degree() > ctx.n() as i32 {
        GradedPair::zero(ctx, jac.degree())
    } else {
        GradedPair::new(ctx, Multivector::zero(ctx.chart(), jac.degree()), sigma)?
    };
    compare(
        &jac,
        &expected,
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b, "c" => &c],
    )
}

const JACOBIATOR: &[Identity] = &[Identity {
    name: "jacobiator",
    statement: "Jac(a, b, c) = (0, −(−1)^{s+t} ½ d T_D(a, b, c)) on graph sections, any Ω",
    once: false,
    check: jacobiator_is_d_td,
}];

fn closed_anticommutative(g: &mut Generator) -> Outcome {
    let (graph, [a, b]) = graph_and_sections::<2>(g, true, 1)?;
    let rhs = multi_courant(&b, &a)?.scale(&-sign((deg(&a) - 1) * (deg(&b) - 1)));
    compare(
        &multi_courant(&a, &b)?,
        &rhs,
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b],
    )
}

fn closed_leibniz(g: &mut Generator) -> Outcome {
    let (graph, [a, b, c]) = graph_and_sections::<3>(g, true, 1)?;
    let (r, s) = (deg(&a), deg(&b));
    let lhs = multi_courant(&a, &section_wedge(&b, &c)?)?;
    let rhs = section_wedge(&multi_courant(&a, &b)?, &c)?
        .checked_add(&section_wedge(&b, &multi_courant(&a, &c)?)?.scale(&sign((r - 1) * s)))?;
    compare(
        &lhs,
        &rhs,
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b, "c" => &c],
    )
}

fn closed_jacobi(g: &mut Generator) -> Outcome {
    let (graph, [a, b, c]) = graph_and_sections::<3>(g, true, 2)?;
    let (r, s, t) = (deg(&a), deg(&b), deg(&c));
    let j1 = multi_courant(&a, &multi_courant(&b, &c)?)?;
    let j2 = multi_courant(&c, &multi_courant(&a, &b)?)?.scale(&sign((t - 1) * (r + s)));
    let j3 = multi_courant(&b, &multi_courant(&c, &a)?)?.scale(&sign((r - 1) * (s + t)));
    let tested = !(j1.is_zero() && j2.is_zero() && j3.is_zero());
    let sum = j1.checked_add(&j2)?.checked_add(&j3)?;
    vanishes_tested(
        &sum,
        sum.is_zero(),
        tested,
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b, "c" => &c],
    )
}

const GERSTENHABER: &[Identity] = &[
    Identity {
        name: "anticommutativity",
        statement: "[[a, b]] = −(−1)^{(r−1)(s−1)} [[b, a]], dΩ = 0",
        once: false,
        check: closed_anticommutative,
    },
    Identity {
        name: "leibniz",
        statement: "[[a, b∧c]] = [[a, b]]∧c + (−1)^{(r−1)s} b∧[[a, c]], dΩ = 0",
        once: false,
        check: closed_leibniz,
    },
    Identity {
        name: "jacobi",
        statement: "[[a,[[b,c]]]] + (−1)^{(t−1)(r+s)}[[c,[[a,b]]]] + (−1)^{(r−1)(s+t)}[[b,[[c,a]]]] = 0, dΩ = 0",
        once: false,
        check: closed_jacobi,
    },
];

fn td_function_linear(g: &mut Generator) -> Outcome {
    let (graph, [a, b, c]) = graph_and_sections::<3>(g, false, 2)?;
    let f = g.polynomial();
    let fa = graph.embed(&a.gamma().mul_poly(&f)?)?.into_pair();
    let lhs = t_d_direct(&fa, &b, &c)?;
    let rhs = t_d_direct(&a, &b, &c)?.mul_poly(&f)?;
    let inputs = inputs![
        "Ω" => graph.omega(),
        "f" => scalar(graph.context().chart(), f),
        "a" => &a,
        "b" => &b,
        "c" => &c,
    ];
    compare(&lhs, &rhs, inputs)
}

fn td_swap(g: &mut Generator) -> Outcome {
    let (graph, [a, b, c]) = graph_and_sections::<3>(g, false, 2)?;
    let (s, t) = (deg(&b), deg(&c));
    let rhs = t_d_direct(&a, &c, &b)?.scale(&-sign((s - 1) * (t - 1)));
    compare(
        &t_d_direct(&a, &b, &c)?,
        &rhs,
        inputs!["Ω" => graph.omega(), "a" => &a, "b" => &b, "c" => &c],
    )
}

const APPENDIX_B: &[Identity] = &[
    Identity {
        name: "function-linear",
        statement: "T_D(f·a, b, c) = f T_D(a, b, c) on graph sections",
        once: false,
        check: td_function_linear,
    },
    Identity {
        name: "swap-last-two",
        statement: "T_D(a, b, c) = −(−1)^{(s−1)(t−1)} T_D(a, c, b) on graph sections",
        once: false,
        check: td_swap,
    },
];

// -------------------------------------------------------- Poisson bracket

fn structure(name: &[&str], n: usize, blades: &[&[usize]]) -> GraphMultiDirac {
    let c = Arc::new(Chart::new(name.iter().copied()).expect("valid names"));
    let ctx = GradedContext::new(c.clone(), n).expect("n within dimension");
    let mut omega = Form::zero(&c, n as i32 + 1);
    for b in blades {
        omega = omega + Form::basis(&c, b).expect("valid blade");
    }
    GraphMultiDirac::new(&ctx, omega).expect("degree n + 1")
}

/// A constant symplectic or volume structure, or a random constant form on
/// the configured chart, with the generator moved onto the structure's chart.
fn poisson_structure(g: &mut Generator) -> Result<GraphMultiDirac, GenError> {
    let n = g.config().ambient;
    let random_ok = g.config().dim > n;
    let pick = g.range(0, if random_ok { 4 } else { 3 });
    let s = match pick {
        0 => structure(&["q", "p"], 1, &[&[0, 1]]),
        1 => structure(&["x", "y", "z"], 2, &[&[0, 1, 2]]),
        2 => structure(&["q1", "p1", "q2", "p2"], 1, &[&[0, 1], &[2, 3]]),
        3 => structure(&["x", "y", "z", "w"], 3, &[&[0, 1, 2, 3]]),
        _ => {
            let c = chart(g.config().dim);
            g.set_chart(c.clone());
            let ctx = GradedContext::new(c, n)?;
            let omega = g.constant_form(n + 1);
            GraphMultiDirac::new(&ctx, omega)?
        }
    };
    g.set_chart(s.context().chart().clone());
    Ok(s)
}

/// Admissible forms on `s` with witness degrees summing to at most
/// `n + slack`; `{A, B}` needs `r_A + r_B ≤ n + 1` to be nonzero.
fn admissibles<const K: usize>(
    g: &mut Generator,
    s: &GraphMultiDirac,
    slack: usize,
) -> Result<[AdmissibleForm; K], GenError> {
    let n = s.context().n();
    let degrees = pick(g, [1; K], [n; K], |d| d.iter().sum::<usize>() <= n + slack);
    let forms = degrees
        .into_iter()
        .map(|r| g.admissible_mixed_of_degree(s, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(forms.try_into().expect("K forms"))
}

fn poisson_pair(
    g: &mut Generator,
) -> Result<(GraphMultiDirac, AdmissibleForm, AdmissibleForm), GenError> {
    let s = poisson_structure(g)?;
    let [a, b] = admissibles(g, &s, 1)?;
    Ok((s, a, b))
}

fn pb_anticommutes(g: &mut Generator) -> Outcome {
    let (s, a, b) = poisson_pair(g)?;
    let (k, l) = (a.grade(), b.grade());
    let ab = poisson_bracket(&a, &b)?;
    let ba = poisson_bracket(&b, &a)?;
    compare(
        ab.value(),
        &ba.value().scale(&-sign(k * l)),
        inputs!["Ω" => s.omega(), "A" => &a, "B" => &b],
    )
}

fn pb_grade_additive(g: &mut Generator) -> Outcome {
    let (s, a, b) = poisson_pair(g)?;
    let pb = poisson_bracket(&a, &b)?;
    let (got, want) = (pb.grade(), a.grade() + b.grade());
    Ok(if got == want {
        Check::Holds
    } else {
        Check::Fails {
            inputs: inputs!["Ω" => s.omega(), "A" => &a, "B" => &b],
            defect: format!("grade {got}, expected {want}"),
        }
    })
}

fn pb_differentials(g: &mut Generator) -> Outcome {
    let (s, a, b) = poisson_pair(g)?;
    let ctx = s.context();
    let (k, l) = (a.grade(), b.grade());
    let pa = GradedPair::new(ctx, a.gamma().clone(), ext_deriv(a.sigma()))?;
    let pb_pair = GradedPair::new(ctx, b.gamma().clone(), ext_deriv(b.sigma()))?;
    let lhs = multi_courant(&pa, &pb_pair)?;
    let value = poisson_bracket(&a, &b)?;
    let inputs = inputs!["Ω" => s.omega(), "A" => &a, "B" => &b];
    if lhs.degree() > ctx.n() as i32 {
        return vanishes(&lhs, lhs.is_zero(), inputs);
    }
    let expected = GradedPair::new(
        ctx,
        schouten(a.gamma(), b.gamma())?,
        ext_deriv(value.value()).scale(&sign(k + l)),
    )?;
    compare(&lhs, &expected, inputs)
}

/// `−(−1)^k i_{Γ'} dΣ` computed componentwise for a vector-field witness:
/// `(i_X β)_J = Σ_j X^j β_{jJ}`.
fn brute_force_bracket(sigma: &Form, k: i64, witness: &Multivector) -> Form {
    let c = sigma.chart().clone();
    let beta = ext_deriv(sigma);
    let dim = c.dimension();
    let mut terms: Vec<(Blade, Polynomial)> = Vec::new();
    for (blade, coeff) in beta.terms() {
        for (xb, xc) in witness.terms() {
            let j = xb.indices().next().expect("vector field");
            if !blade.contains(j) {
                continue;
            }
            let sign_j = if blade.count_below(j) % 2 == 0 { 1 } else { -1 };
            let value = coeff.checked_mul(xc).expect("same chart");
            terms.push((blade.without(j), if sign_j > 0 { value } else { -value }));
        }
    }
    let mut out = Form::zero(&c, beta.degree() - 1);
    for (b, p) in terms {
        out = out + Form::from_terms(&c, b.grade() as i32, [(b, p)]).expect("valid term");
    }
    let _ = dim;
    out.scale(&-sign(k))
}

fn pb_canonical_values(_: &mut Generator) -> Outcome {
    let plane = structure(&["q", "p"], 1, &[&[0, 1]]);
    let c = plane.context().chart().clone();
    let q = scalar(&c, Polynomial::var(2, 0)?);
    let p = scalar(&c, Polynomial::var(2, 1)?);
    let solve = |s: &GraphMultiDirac, f: Form| -> Result<AdmissibleForm, GenError> {
        AdmissibleForm::solve(s, f)?.ok_or_else(|| GenError::Unsatisfiable("no witness".into()))
    };
    let (aq, ap) = (solve(&plane, q)?, solve(&plane, p)?);
    let value = poisson_bracket(&aq, &ap)?.value().clone();
    let minus_one = scalar(&c, Polynomial::constant(2, rat(-1, 1)));
    let oracle = brute_force_bracket(aq.sigma(), aq.grade(), ap.gamma());
    let first = both(
        compare(&value, &minus_one, inputs!["A" => &aq, "B" => &ap]),
        || compare(&oracle, &minus_one, inputs!["A" => &aq, "B" => &ap]),
    );

    let space = structure(&["x", "y", "z"], 2, &[&[0, 1, 2]]);
    let c3 = space.context().chart().clone();
    let zdx = Form::coordinate(&c3, 0)?.mul_poly(&Polynomial::var(3, 2)?)?;
    let xdy = Form::coordinate(&c3, 1)?.mul_poly(&Polynomial::var(3, 0)?)?;
    let a = AdmissibleForm::new(&space, zdx, Multivector::coordinate(&c3, 1)?)?;
    let b = AdmissibleForm::new(&space, xdy, Multivector::coordinate(&c3, 2)?)?;
    let minus_dx = -Form::coordinate(&c3, 0)?;
    let value = poisson_bracket(&a, &b)?.value().clone();
    let oracle = brute_force_bracket(a.sigma(), a.grade(), b.gamma());
    both(first, || {
        both(
            compare(&value, &minus_dx, inputs!["A" => &a, "B" => &b]),
            || compare(&oracle, &minus_dx, inputs!["A" => &a, "B" => &b]),
        )
    })
}

const POISSON_ANTICOMM: &[Identity] = &[
    Identity {
        name: "anticommutativity",
        statement: "{A, B} = −(−1)^{kl} {B, A}",
        once: false,
        check: pb_anticommutes,
    },
    Identity {
        name: "grade-additivity",
        statement: "|{A, B}| = |A| + |B|",
        once: false,
        check: pb_grade_additive,
    },
    Identity {
        name: "bracket-of-differentials",
        statement: "[[(Γ_A, dA), (Γ_B, dB)]] = ([Γ_A, Γ_B], (−1)^{k+l} d{A, B})",
        once: false,
        check: pb_differentials,
    },
    Identity {
        name: "canonical-values",
        statement: "{q, p} = −1 on dq∧dp; {z dx, x dy} = −dx on dx∧dy∧dz",
        once: true,
        check: pb_canonical_values,
    },
];

/// Constant structures whose contraction map has a kernel in every degree.
fn degenerate_structure(g: &mut Generator) -> Result<GraphMultiDirac, GenError> {
    let s = if g.coin() {
        structure(&["x", "y", "z"], 1, &[&[0, 1]])
    } else {
        let c = chart(4);
        g.set_chart(c.clone());
        let ctx = GradedContext::new(c, 2)?;
        let omega = g.constant_form(3);
        GraphMultiDirac::new(&ctx, omega)?
    };
    g.set_chart(s.context().chart().clone());
    Ok(s)
}

fn pb_witness_independent(g: &mut Generator) -> Outcome {
    let s = degenerate_structure(g)?;
    let [a, b] = admissibles(g, &s, 1)?;
    let kernel = witness_kernel(&s, b.gamma().degree())?;
    if kernel.is_empty() {
        return Err(GenError::Unsatisfiable("empty witness kernel".into()));
    }
    let pick = g.range(0, kernel.len() - 1);
    let f = g.polynomial();
    let delta = kernel[pick].mul_poly(&f)?;
    let other = b.with_witness(b.gamma().checked_add(&delta)?)?;
    let original = poisson_bracket(&a, &b)?;
    let perturbed = poisson_bracket(&a, &other)?;
    compare(
        original.value(),
        perturbed.value(),
        inputs!["Ω" => s.omega(), "A" => &a, "B" => &b, "Δ" => &delta],
    )
}

fn pb_exact_shift(g: &mut Generator) -> Outcome {
    let s = poisson_structure(g)?;
    let n = s.context().n();
    if n < 2 {
        return Ok(Check::Trivial);
    }
    let [ra, rb] = pick(g, [1; 2], [n - 1, n], |[ra, rb]| ra + rb <= n + 1);
    let a = g.admissible_mixed_of_degree(&s, ra)?;
    let b = g.admissible_mixed_of_degree(&s, rb)?;
    let deg_a = a.sigma().degree();
    let tau = g.form(deg_a as usize - 1);
    let shifted = AdmissibleForm::new(
        &s,
        a.sigma().checked_add(&ext_deriv(&tau))?,
        a.gamma().clone(),
    )?;
    compare(
        poisson_bracket(&a, &b)?.value(),
        poisson_bracket(&shifted, &b)?.value(),
        inputs!["Ω" => s.omega(), "A" => &a, "B" => &b, "τ" => &tau],
    )
}

fn pb_closure(g: &mut Generator) -> Outcome {
    let (s, a, b) = poisson_pair(g)?;
    let pb = poisson_bracket(&a, &b)?;
    vanishes(
        pb.defect(),
        pb.is_admissible(),
        inputs!["Ω" => s.omega(), "A" => &a, "B" => &b],
    )
}

fn closed_forms_zero_witness(g: &mut Generator) -> Outcome {
    let s = poisson_structure(g)?;
    let n = s.context().n();
    let r = g.range(1, n);
    let sigma = if n - r == 0 {
        let c = g.constant();
        scalar(s.context().chart(), c)
    } else {
        g.closed_form(n - r)?
    };
    let zero = Multivector::zero(s.context().chart(), r as i32);
    let found = solve_hamiltonian(&s, &sigma)?;
    let inputs = inputs!["Ω" => s.omega(), "Σ" => &sigma];
    match found {
        Some(w) if w.is_zero() && AdmissibleForm::new(&s, sigma.clone(), zero).is_ok() => {
            Ok(Check::Holds)
        }
        Some(w) => Ok(Check::Fails {
            inputs,
            defect: format!("solver returned witness {w}"),
        }),
        None => Ok(Check::Fails {
            inputs,
            defect: "solver found no witness".into(),
        }),
    }
}

const POISSON_WELLDEF: &[Identity] = &[
    Identity {
        name: "witness-independence",
        statement: "{A, B} is unchanged by Γ_B ↦ Γ_B + f Δ with i_Δ Ω = 0",
        once: false,
        check: pb_witness_independent,
    },
    Identity {
        name: "exact-shift",
        statement: "{A + dτ, B} = {A, B}",
        once: false,
        check: pb_exact_shift,
    },
    Identity {
        name: "closure",
        statement: "{A, B} is admissible with witness (−1)^{k+l} [Γ_A, Γ_B]",
        once: false,
        check: pb_closure,
    },
    Identity {
        name: "closed-forms",
        statement: "closed forms are admissible with witness 0",
        once: false,
        check: closed_forms_zero_witness,
    },
];

fn nested(a: &AdmissibleForm, b: &AdmissibleForm, c: &AdmissibleForm) -> Result<Form, GenError> {
    let ab = poisson_bracket(a, b)?.into_admissible()?;
    Ok(poisson_bracket(&ab, c)?.value().clone())
}

fn pb_jacobi_parts(
    g: &mut Generator,
) -> Result<(GraphMultiDirac, [AdmissibleForm; 3], [Form; 3], Form), GenError> {
    // The primitive's sign only shows when k + l is odd and the primitive is
    // nonzero, which needs n ≥ 3: lean on the volume form of ℝ⁴.
    let s = if g.coin() {
        let s = structure(&["x", "y", "z", "w"], 3, &[&[0, 1, 2, 3]]);
        g.set_chart(s.context().chart().clone());
        s
    } else {
        poisson_structure(g)?
    };
    let [a, b, c] = admissibles(g, &s, 2)?;
    let t1 = nested(&a, &b, &c)?;
    let t2 = nested(&b, &c, &a)?;
    let t3 = nested(&c, &a, &b)?;
    let (k, l, m) = (a.grade(), b.grade(), c.grade());
    let inner = contract(c.gamma(), &ext_deriv(a.sigma()))?;
    let primitive = contract(b.gamma(), &inner)?.scale(&sign((k + l) * (m + 1)));
    Ok((s, [a, b, c], [t1, t2, t3], ext_deriv(&primitive)))
}

fn pb_jacobi(g: &mut Generator) -> Outcome {
    let (s, [a, b, c], [t1, t2, t3], exact) = pb_jacobi_parts(g)?;
    let (k, l, m) = (a.grade(), b.grade(), c.grade());
    let tested = !(t1.is_zero() && t2.is_zero() && t3.is_zero());
    let sum = t1.scale(&sign(k * m + k + l))
        + t2.scale(&sign(l * k + l + m))
        + t3.scale(&sign(m * l + m + k));
    compare_tested(
        &sum,
        &exact,
        tested,
        inputs!["Ω" => s.omega(), "A" => &a, "B" => &b, "C" => &c],
    )
}

fn pb_jacobi_equal_parity(g: &mut Generator) -> Outcome {
    let (s, [a, b, c], [t1, t2, t3], exact) = pb_jacobi_parts(g)?;
    let (k, l, m) = (a.grade(), b.grade(), c.grade());
    if (k - l) % 2 != 0 || (l - m) % 2 != 0 {
        return Ok(Check::Trivial);
    }
    let tested = !(t1.is_zero() && t2.is_zero() && t3.is_zero());
    let sum = t1.scale(&sign(k * m)) + t2.scale(&sign(l * k)) + t3.scale(&sign(m * l));
    compare_tested(
        &sum,
        &exact,
        tested,
        inputs!["Ω" => s.omega(), "A" => &a, "B" => &b, "C" => &c],
    )
}

const POISSON_JACOBI: &[Identity] = &[
    Identity {
        name: "jacobi-up-to-exact",
        statement: "Σ_cyc (−1)^{km+k+l} {{A,B},C} = d((−1)^{(k+l)(m+1)} i_{Γ_B} i_{Γ_C} dA)",
        once: false,
        check: pb_jacobi,
    },
    Identity {
        name: "jacobi-equal-parity",
        statement: "Σ_cyc (−1)^{km} {{A,B},C} = d((−1)^{(k+l)(m−1)} i_{Γ_B} i_{Γ_C} dA) when k ≡ l ≡ m mod 2",
        once: false,
        check: pb_jacobi_equal_parity,
    },
];

// ------------------------------------------------------------ degree one

/// Courant's bracket `([X,Y], £_X η − £_Y ξ + ½ d(ξ(Y) − η(X)))` with the
/// vector-field Lie bracket and `£_X = i_X d + d i_X`.
fn courant_bracket(a: &GradedPair, b: &GradedPair) -> Result<GradedPair, GenError> {
    let (x, xi) = (a.gamma(), a.sigma());
    let (y, eta) = (b.gamma(), b.sigma());
    let lie = |v: &Multivector, f: &Form| -> Result<Form, GenError> {
        Ok(contract(v, &ext_deriv(f))?.checked_add(&ext_deriv(&contract(v, f)?))?)
    };
    let half_d = ext_deriv(&contract(y, xi)?.checked_sub(&contract(x, eta)?)?).scale(&rat(1, 2));
    let sigma = lie(x, eta)?
        .checked_sub(&lie(y, xi)?)?
        .checked_add(&half_d)?;
    Ok(GradedPair::new(a.context(), lie_bracket(x, y)?, sigma)?)
}

fn degree_one_courant(g: &mut Generator) -> Outcome {
    let ctx = g.context(1)?;
    let (a, b) = (g.pair(&ctx, 1)?, g.pair(&ctx, 1)?);
    compare(
        &multi_courant(&a, &b)?,
        &courant_bracket(&a, &b)?,
        inputs!["a" => &a, "b" => &b],
    )
}

const DEGREE_ONE: &[Identity] = &[Identity {
    name: "courant",
    statement: "for n = 1, [[a, b]] = ([X,Y], £_X η − £_Y ξ + ½ d(ξ(Y) − η(X)))",
    once: false,
    check: degree_one_courant,
}];

fn omega_sections(g: &mut Generator) -> Result<(GraphMultiDirac, Vec<GradedPair>), GenError> {
    let ctx = open_context(g)?;
    let closed = g.coin();
    let graph = g.graph(&ctx, closed)?;
    let sections = (0..=ctx.n())
        .map(|_| g.section_of_degree(&graph, 1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((graph, sections))
}

fn section_inputs(graph: &GraphMultiDirac, sections: &[GradedPair]) -> Vec<String> {
    let mut v = inputs!["Ω" => graph.omega()];
    v.extend(
        sections
            .iter()
            .enumerate()
            .map(|(i, s)| format!("v{} = {}", i + 1, s.gamma())),
    );
    v
}

fn omega_alternating(g: &mut Generator) -> Outcome {
    let (graph, sections) = omega_sections(g)?;
    let c = graph.context().chart().clone();
    let value = scalar(&c, omega_from_d1(&sections)?);
    if value.is_zero() {
        return Ok(Check::Trivial);
    }
    let n = sections.len();
    for i in 0..n {
        for j in i + 1..n {
            let mut swapped = sections.clone();
            swapped.swap(i, j);
            let other = scalar(&c, omega_from_d1(&swapped)?);
            if other != -value.clone() {
                let mut inputs = section_inputs(&graph, &sections);
                inputs.push(format!("transposition = ({} {})", i + 1, j + 1));
                return Ok(Check::Fails {
                    inputs,
                    defect: (other + value).to_string(),
                });
            }
        }
    }
    Ok(Check::Holds)
}

fn omega_is_contraction(g: &mut Generator) -> Outcome {
    let (graph, sections) = omega_sections(g)?;
    let c = graph.context().chart().clone();
    let value = scalar(&c, omega_from_d1(&sections)?);
    let mut reversed = Multivector::scalar(&c, Polynomial::one(c.dimension()))?;
    for s in sections.iter().rev() {
        reversed = reversed.wedge(s.gamma())?;
    }
    let direct = contract(&reversed, graph.omega())?;
    let direct = scalar(&c, direct.as_scalar());
    compare(&value, &direct, section_inputs(&graph, &sections))
}

const OMEGA_D: &[Identity] = &[
    Identity {
        name: "alternating",
        statement: "Ω_D changes sign under every transposition of its arguments",
        once: false,
        check: omega_alternating,
    },
    Identity {
        name: "contraction",
        statement: "Ω_D(v₁, …, vₙ₊₁) = i_{vₙ₊₁∧…∧v₁} Ω",
        once: false,
        check: omega_is_contraction,
    },
];

pub static SUITES: [Suite; 15] = [
    Suite {
        name: "schouten-axioms",
        description: "Schouten–Nijenhuis bracket: vanishing on functions, graded anticommutativity, agreement with the Lie bracket, graded Leibniz rule, graded Jacobi identity",
        identities: SCHOUTEN,
    },
    Suite {
        name: "prop-a3",
        description: "Generalized Lie derivative £_Γ = d i_Γ − (−1)^k i_Γ d: commutation with d, the Koszul identity, £ of a bracket and £ of a wedge",
        identities: PROP_A3,
    },
    Suite {
        name: "pairing-symmetry",
        description: "Graded symmetry of the pairings ⟨⟨·,·⟩⟩±, of the section wedge and of the multi-Courant bracket on arbitrary sections",
        identities: PAIRING,
    },
    Suite {
        name: "gauge-automorphism",
        description: "Gauge transformations Φ_σ(Γ, Σ) = (Γ, Σ + i_Γ σ): automorphisms for σ = dτ, explicit bracket defect for other σ",
        identities: GAUGE,
    },
    Suite {
        name: "graph-isotropy",
        description: "Graphs {(Γ, i_Γ Ω)} are isotropic for ⟨⟨·,·⟩⟩₋, for closed and arbitrary Ω",
        identities: ISOTROPY,
    },
    Suite {
        name: "dircourant-simplify",
        description: "Simplified bracket and pairing on graph sections; closure of graphs under ∧ and, for closed Ω, under the bracket",
        identities: DIRCOURANT,
    },
    Suite {
        name: "td-cross-oracle",
        description: "Integrability tensor T_D = 2⟨⟨a, [[b, c]]⟩⟩₋ against its expansion through d, i and £; vanishing for closed Ω; a non-integrable witness",
        identities: TD,
    },
    Suite {
        name: "jacobiator-td",
        description: "On graph sections of any Ω the Jacobiator of the multi-Courant bracket is exact: (0, −(−1)^{s+t} ½ d T_D)",
        identities: JACOBIATOR,
    },
    Suite {
        name: "gerstenhaber",
        description: "Sections of the graph of a closed Ω form a Gerstenhaber algebra under ∧ and the multi-Courant bracket",
        identities: GERSTENHABER,
    },
    Suite {
        name: "appendix-b",
        description: "Tensoriality of T_D in its first argument and graded anticommutativity in its last two",
        identities: APPENDIX_B,
    },
    Suite {
        name: "poisson-anticomm",
        description: "Multi-Poisson bracket {A, B} = −(−1)^k i_{Γ_B} dA: graded anticommutativity, grades, brackets of differentials, canonical values",
        identities: POISSON_ANTICOMM,
    },
    Suite {
        name: "poisson-welldef",
        description: "The multi-Poisson bracket is independent of the witness and of exact shifts, and closes on admissible forms",
        identities: POISSON_WELLDEF,
    },
    Suite {
        name: "poisson-jacobi",
        description: "Graded Jacobi identity of the multi-Poisson bracket up to an explicit exact form",
        identities: POISSON_JACOBI,
    },
    Suite {
        name: "courant-degree1",
        description: "For n = 1 the multi-Courant bracket is Courant's bracket on TZ ⊕ T*Z",
        identities: DEGREE_ONE,
    },
    Suite {
        name: "omega-d-antisym",
        description: "The form Ω_D induced by degree-one sections is alternating and equals the contraction of Ω",
        identities: OMEGA_D,
    },
];
