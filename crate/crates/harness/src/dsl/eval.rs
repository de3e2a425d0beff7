use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use mdx_core::courant::{
    gauge_transform, multi_courant, pairing_minus, pairing_plus, section_wedge,
};
use mdx_core::exterior::{contract, ext_deriv, lie_derivative, schouten};
use mdx_core::multidirac::{jacobiator, t_d_direct, t_d_expanded};
use mdx_core::multipoisson::poisson_bracket;
use mdx_core::{
    AdmissibleForm, Chart, Error as CoreError, Form, GradedContext, GradedPair, GraphMultiDirac,
    Multivector, Polynomial,
};

use super::ast::{Expr, Func, Script, Stmt, StmtKind};
use super::lexer::Pos;
use super::pretty::pretty_expr;

/// Result of evaluating an expression. Functions (degree-zero forms and
/// multivectors) are always normalized to [`Value::Scalar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Form),
    Multivector(Multivector),
    Form(Form),
    Pair(GradedPair),
    Admissible(AdmissibleForm),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "function",
            Value::Multivector(_) => "multivector",
            Value::Form(_) => "form",
            Value::Pair(_) => "pair",
            Value::Admissible(_) => "admissible form",
        }
    }

    pub fn from_form(f: Form) -> Value {
        if f.degree() == 0 {
            Value::Scalar(f)
        } else {
            Value::Form(f)
        }
    }

    pub fn from_multivector(m: Multivector) -> Value {
        if m.degree() == 0 {
            Value::Scalar(Form::scalar(m.chart(), m.as_scalar()).expect("same chart"))
        } else {
            Value::Multivector(m)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(f) | Value::Form(f) => f.is_zero(),
            Value::Multivector(m) => m.is_zero(),
            Value::Pair(p) => p.is_zero(),
            Value::Admissible(a) => a.sigma().is_zero() && a.gamma().is_zero(),
        }
    }

    fn as_form(&self) -> Option<Form> {
        match self {
            Value::Scalar(f) | Value::Form(f) => Some(f.clone()),
            _ => None,
        }
    }

    fn as_multivector(&self) -> Option<Multivector> {
        match self {
            Value::Scalar(f) => {
                Some(Multivector::scalar(f.chart(), f.as_scalar()).expect("same chart"))
            }
            Value::Multivector(m) => Some(m.clone()),
            _ => None,
        }
    }

    /// Equality up to the identification of functions with degree-zero forms
    /// and multivectors, and of the scalar `0` with every zero value.
    pub fn same_as(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Scalar(a), b) | (b, Value::Scalar(a)) if a.is_zero() && b.is_zero() => true,
            (Value::Admissible(a), Value::Admissible(b)) => {
                a.sigma() == b.sigma() && a.gamma() == b.gamma()
            }
            _ => self == other,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{}", s.as_scalar().display(s.chart().names())),
            Value::Multivector(m) => write!(f, "{m}"),
            Value::Form(a) => write!(f, "{a}"),
            Value::Pair(p) => write!(f, "{p}"),
            Value::Admissible(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalErrorKind {
    /// Type, binding or degree errors; the script is malformed.
    Structural,
    /// Well-formed input outside what the library handles.
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalError {
    pub pos: Pos,
    pub kind: EvalErrorKind,
    pub message: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EvalErrorKind::Structural => write!(f, "{}: {}", self.pos, self.message),
            EvalErrorKind::Unsupported => write!(f, "{}: unsupported: {}", self.pos, self.message),
        }
    }
}

impl std::error::Error for EvalError {}

#[derive(Debug)]
enum Fault {
    Structural(String),
    Core(CoreError),
}

impl From<CoreError> for Fault {
    fn from(e: CoreError) -> Fault {
        Fault::Core(e)
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, Fault> {
    Err(Fault::Structural(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Printed(String),
    Assertion {
        pos: Pos,
        source: String,
        passed: bool,
        lhs: String,
        rhs: String,
    },
}

impl Outcome {
    pub fn failed(&self) -> bool {
        matches!(self, Outcome::Assertion { passed: false, .. })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Printed(s) => write!(f, "{s}"),
            Outcome::Assertion {
                pos,
                source,
                passed: true,
                ..
            } => write!(f, "ok    {pos}  {source}"),
            Outcome::Assertion {
                pos,
                source,
                passed: false,
                lhs,
                rhs,
            } => {
                write!(f, "FAIL  {pos}  {source}\n  left:  {lhs}\n  right: {rhs}")
            }
        }
    }
}

/// Evaluation state: the chart, the ambient degree, the current graph
/// structure and the bindings made so far.
#[derive(Clone, Debug, Default)]
pub struct Interpreter {
    chart: Option<Arc<Chart>>,
    ctx: Option<GradedContext>,
    graph: Option<GraphMultiDirac>,
    env: HashMap<String, Value>,
}

impl Interpreter {
    pub fn new() -> Self {
        Interpreter::default()
    }

    pub fn chart(&self) -> Option<&Arc<Chart>> {
        self.chart.as_ref()
    }

    pub fn lookup(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }

    /// Runs every statement, stopping at the first error.
    pub fn run(&mut self, script: &Script) -> Result<Vec<Outcome>, EvalError> {
        let mut out = Vec::new();
        for stmt in &script.stmts {
            if let Some(o) = self.exec(stmt)? {
                out.push(o);
            }
        }
        Ok(out)
    }

    pub fn exec(&mut self, stmt: &Stmt) -> Result<Option<Outcome>, EvalError> {
        let mut out = self
            .exec_kind(&stmt.kind)
            .map_err(|f| locate(f, stmt.pos))?;
        if let Some(Outcome::Assertion { pos, .. }) = &mut out {
            *pos = stmt.pos;
        }
        Ok(out)
    }

    pub fn eval_at(&self, e: &Expr, pos: Pos) -> Result<Value, EvalError> {
        self.eval(e).map_err(|f| locate(f, pos))
    }

    fn exec_kind(&mut self, kind: &StmtKind) -> Result<Option<Outcome>, Fault> {
        match kind {
            StmtKind::Chart(names) => {
                if self.chart.is_some() {
                    return fail("a chart is already declared");
                }
                self.chart = Some(Arc::new(Chart::new(names.iter().cloned())?));
                Ok(None)
            }
            StmtKind::Ambient(n) => {
                if self.ctx.is_some() {
                    return fail("the ambient degree is already declared");
                }
                let chart = self.need_chart()?;
                self.ctx = Some(GradedContext::new(chart.clone(), *n)?);
                Ok(None)
            }
            StmtKind::Let(name, e) => {
                if let Some(c) = &self.chart {
                    if resolves_in_chart(c, name) {
                        return fail(format!("`{name}` would shadow a coordinate"));
                    }
                }
                let v = self.eval(e)?;
                self.env.insert(name.clone(), v);
                Ok(None)
            }
            StmtKind::Graph(e) => {
                let ctx = self.need_ctx()?.clone();
                let omega = match self.eval(e)? {
                    Value::Form(f) => f,
                    other => {
                        return fail(format!(
                            "graph needs an {}-form, found a {}",
                            ctx.n() + 1,
                            other.kind()
                        ))
                    }
                };
                self.graph = Some(GraphMultiDirac::new(&ctx, omega)?);
                Ok(None)
            }
            StmtKind::Assert(a, b) => {
                let (lhs, rhs) = (self.eval(a)?, self.eval(b)?);
                let passed = lhs.same_as(&rhs);
                Ok(Some(Outcome::Assertion {
                    pos: Default::default(),
                    source: format!("{} == {}", pretty_expr(a), pretty_expr(b)),
                    passed,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                }))
            }
            StmtKind::Print(e) => Ok(Some(Outcome::Printed(self.eval(e)?.to_string()))),
        }
    }

    fn need_chart(&self) -> Result<&Arc<Chart>, Fault> {
        self.chart.as_ref().ok_or_else(|| {
            Fault::Structural("no chart declared (start with `chart x, y, ...;`)".into())
        })
    }

    fn need_ctx(&self) -> Result<&GradedContext, Fault> {
        self.ctx.as_ref().ok_or_else(|| {
            Fault::Structural("no ambient degree declared (use `ambient n;`)".into())
        })
    }

    fn need_graph(&self) -> Result<&GraphMultiDirac, Fault> {
        self.graph.as_ref().ok_or_else(|| {
            Fault::Structural("no graph structure declared (use `graph OMEGA;`)".into())
        })
    }

    fn eval(&self, e: &Expr) -> Result<Value, Fault> {
        match e {
            Expr::Num(q) => {
                let c = self.need_chart()?;
                Ok(Value::Scalar(Form::scalar(
                    c,
                    Polynomial::constant(c.dimension(), q.clone()),
                )?))
            }
            Expr::Name(name) => self.name(name),
            Expr::Tangent(name) => {
                let c = self.need_chart()?;
                match c.index_of(name) {
                    Some(i) => Ok(Value::Multivector(Multivector::coordinate(c, i)?)),
                    None => fail(format!("`@{name}`: `{name}` is not a coordinate")),
                }
            }
            Expr::Neg(a) => negate(self.eval(a)?),
            Expr::Add(a, b) => add(self.eval(a)?, self.eval(b)?),
            Expr::Sub(a, b) => add(self.eval(a)?, negate(self.eval(b)?)?),
            Expr::Mul(a, b) => multiply(self.eval(a)?, self.eval(b)?),
            Expr::Wedge(a, b) => wedge(self.eval(a)?, self.eval(b)?),
            Expr::Pow(a, k) => match self.eval(a)? {
                Value::Scalar(f) => Ok(Value::Scalar(Form::scalar(
                    f.chart(),
                    f.as_scalar().pow(*k),
                )?)),
                other => fail(format!(
                    "only functions can be raised to a power, found a {}",
                    other.kind()
                )),
            },
            Expr::Call(f, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.eval(a))
                    .collect::<Result<Vec<_>, _>>()?;
                self.call(*f, vals)
            }
        }
    }

    fn name(&self, name: &str) -> Result<Value, Fault> {
        if let Some(c) = &self.chart {
            if let Some(i) = c.index_of(name) {
                return Ok(Value::Scalar(Form::scalar(
                    c,
                    Polynomial::var(c.dimension(), i)?,
                )?));
            }
            if let Some(i) = name.strip_prefix('d').and_then(|v| c.index_of(v)) {
                return Ok(Value::Form(Form::coordinate(c, i)?));
            }
        }
        match self.env.get(name) {
            Some(v) => Ok(v.clone()),
            None if self.chart.is_none() => {
                fail(format!("unbound name `{name}` (no chart declared)"))
            }
            None => fail(format!("unbound name `{name}`")),
        }
    }

    fn call(&self, f: Func, mut args: Vec<Value>) -> Result<Value, Fault> {
        let name = f.name();
        match f {
            Func::D => {
                let a = form_arg(name, &args[0])?;
                Ok(Value::from_form(ext_deriv(&a)))
            }
            Func::I | Func::L => {
                let g = multivector_arg(name, &args[0])?;
                let a = form_arg(name, &args[1])?;
                let r = if f == Func::I {
                    contract(&g, &a)?
                } else {
                    lie_derivative(&g, &a)?
                };
                Ok(Value::from_form(r))
            }
            Func::Sn => {
                let g = multivector_arg(name, &args[0])?;
                let h = multivector_arg(name, &args[1])?;
                Ok(Value::from_multivector(schouten(&g, &h)?))
            }
            Func::PairM | Func::PairP => {
                let (a, b) = (pair_arg(name, &args[0])?, pair_arg(name, &args[1])?);
                let r = if f == Func::PairM {
                    pairing_minus(a, b)?
                } else {
                    pairing_plus(a, b)?
                };
                Ok(Value::from_form(r))
            }
            Func::Cb => Ok(Value::Pair(multi_courant(
                pair_arg(name, &args[0])?,
                pair_arg(name, &args[1])?,
            )?)),
            Func::Phi => {
                let s = form_arg(name, &args[0])?;
                Ok(Value::Pair(gauge_transform(&s, pair_arg(name, &args[1])?)?))
            }
            Func::Td | Func::TdExpanded | Func::Jac => {
                let (a, b, c) = (
                    pair_arg(name, &args[0])?,
                    pair_arg(name, &args[1])?,
                    pair_arg(name, &args[2])?,
                );
                match f {
                    Func::Td => Ok(Value::from_form(t_d_direct(a, b, c)?)),
                    Func::TdExpanded => Ok(Value::from_form(t_d_expanded(a, b, c)?)),
                    _ => Ok(Value::Pair(jacobiator(a, b, c)?)),
                }
            }
            Func::Pb => {
                let (a, b) = (
                    admissible_arg(name, &args[0])?,
                    admissible_arg(name, &args[1])?,
                );
                let pb = poisson_bracket(a, b)?;
                if pb.is_admissible() {
                    Ok(Value::Admissible(pb.into_admissible()?))
                } else {
                    Ok(Value::from_form(pb.value().clone()))
                }
            }
            Func::Pair => {
                let ctx = self.need_ctx()?;
                let sigma = args.pop().expect("two arguments");
                let gamma = args.pop().expect("two arguments");
                make_pair(ctx, gamma, sigma)
            }
            Func::Embed => {
                let g = self.need_graph()?;
                let gamma = multivector_arg(name, &args[0])?;
                Ok(Value::Pair(g.embed(&gamma)?.into_pair()))
            }
            Func::Adm => {
                let g = self.need_graph()?;
                let sigma = form_arg(name, &args[0])?;
                if args.len() == 2 {
                    let gamma = multivector_arg(name, &args[1])?;
                    return Ok(Value::Admissible(AdmissibleForm::new(g, sigma, gamma)?));
                }
                match AdmissibleForm::solve(g, sigma)? {
                    Some(a) => Ok(Value::Admissible(a)),
                    None => fail("no Hamiltonian multivector field exists for this form"),
                }
            }
            Func::Gamma | Func::Sigma => match &args[0] {
                Value::Pair(p) => Ok(if f == Func::Gamma {
                    Value::from_multivector(p.gamma().clone())
                } else {
                    Value::from_form(p.sigma().clone())
                }),
                Value::Admissible(a) => Ok(if f == Func::Gamma {
                    Value::from_multivector(a.gamma().clone())
                } else {
                    Value::from_form(a.sigma().clone())
                }),
                other => fail(format!(
                    "`{name}` needs a pair or admissible form, found a {}",
                    other.kind()
                )),
            },
        }
    }
}

fn resolves_in_chart(c: &Chart, name: &str) -> bool {
    c.index_of(name).is_some()
        || name
            .strip_prefix('d')
            .is_some_and(|v| c.index_of(v).is_some())
}

fn locate(f: Fault, pos: Pos) -> EvalError {
    match f {
        Fault::Structural(message) => EvalError {
            pos,
            kind: EvalErrorKind::Structural,
            message,
        },
        Fault::Core(CoreError::Unsupported(message)) => EvalError {
            pos,
            kind: EvalErrorKind::Unsupported,
            message,
        },
        Fault::Core(e) => EvalError {
            pos,
            kind: EvalErrorKind::Structural,
            message: e.to_string(),
        },
    }
}

fn form_arg(func: &str, v: &Value) -> Result<Form, Fault> {
    v.as_form().map_or_else(
        || fail(format!("`{func}` expects a form, found a {}", v.kind())),
        Ok,
    )
}

fn multivector_arg(func: &str, v: &Value) -> Result<Multivector, Fault> {
    v.as_multivector().map_or_else(
        || {
            fail(format!(
                "`{func}` expects a multivector, found a {}",
                v.kind()
            ))
        },
        Ok,
    )
}

fn pair_arg<'a>(func: &str, v: &'a Value) -> Result<&'a GradedPair, Fault> {
    match v {
        Value::Pair(p) => Ok(p),
        other => fail(format!("`{func}` expects a pair, found a {}", other.kind())),
    }
}

fn admissible_arg<'a>(func: &str, v: &'a Value) -> Result<&'a AdmissibleForm, Fault> {
    match v {
        Value::Admissible(a) => Ok(a),
        other => fail(format!(
            "`{func}` expects an admissible form, found a {}",
            other.kind()
        )),
    }
}

/// `pair(Γ; Σ)`; a literal `0` on either side takes the degree forced by the
/// other side.
fn make_pair(ctx: &GradedContext, gamma: Value, sigma: Value) -> Result<Value, Fault> {
    let n = ctx.n() as i32;
    let c = ctx.chart();
    let zero_scalar = |v: &Value| matches!(v, Value::Scalar(f) if f.is_zero());
    let (gamma, sigma) = match (zero_scalar(&gamma), zero_scalar(&sigma)) {
        (true, true) => return fail("cannot infer the degree of pair(0; 0)"),
        (true, false) => {
            let s = form_arg("pair", &sigma)?;
            (Multivector::zero(c, n + 1 - s.degree()), s)
        }
        (false, true) => {
            let g = multivector_arg("pair", &gamma)?;
            let k = n + 1 - g.degree();
            (g, Form::zero(c, k))
        }
        (false, false) => (multivector_arg("pair", &gamma)?, form_arg("pair", &sigma)?),
    };
    Ok(Value::Pair(GradedPair::new(ctx, gamma, sigma)?))
}

fn negate(v: Value) -> Result<Value, Fault> {
    Ok(match v {
        Value::Scalar(f) => Value::Scalar(-f),
        Value::Form(f) => Value::Form(-f),
        Value::Multivector(m) => Value::Multivector(-m),
        Value::Pair(p) => Value::Pair(-p),
        Value::Admissible(_) => {
            return fail("admissible forms cannot be negated; negate the form and witness")
        }
    })
}

fn add(a: Value, b: Value) -> Result<Value, Fault> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.checked_add(&y)?)),
        (Value::Scalar(z), other) | (other, Value::Scalar(z)) if z.is_zero() => Ok(other),
        (Value::Form(x), Value::Form(y)) => Ok(Value::from_form(x.checked_add(&y)?)),
        (Value::Multivector(x), Value::Multivector(y)) => {
            Ok(Value::from_multivector(x.checked_add(&y)?))
        }
        (Value::Pair(x), Value::Pair(y)) => Ok(Value::Pair(x.checked_add(&y)?)),
        (x, y) => fail(format!("cannot add a {} and a {}", x.kind(), y.kind())),
    }
}

fn scale_by(f: &Form, v: Value) -> Result<Value, Fault> {
    let p = f.as_scalar();
    Ok(match v {
        Value::Scalar(g) => Value::Scalar(g.mul_poly(&p)?),
        Value::Form(g) => Value::from_form(g.mul_poly(&p)?),
        Value::Multivector(m) => Value::from_multivector(m.mul_poly(&p)?),
        Value::Pair(q) => Value::Pair(q.mul_poly(&p)?),
        Value::Admissible(_) => return fail("admissible forms cannot be rescaled by a function"),
    })
}

fn multiply(a: Value, b: Value) -> Result<Value, Fault> {
    match (a, b) {
        (Value::Scalar(f), v) | (v, Value::Scalar(f)) => scale_by(&f, v),
        (x, y) => fail(format!(
            "cannot multiply a {} by a {}; use `^` for wedge products",
            x.kind(),
            y.kind()
        )),
    }
}

fn wedge(a: Value, b: Value) -> Result<Value, Fault> {
    match (a, b) {
        (Value::Form(x), Value::Form(y)) => Ok(Value::from_form(x.wedge(&y)?)),
        (Value::Multivector(x), Value::Multivector(y)) => Ok(Value::from_multivector(x.wedge(&y)?)),
        (Value::Pair(x), Value::Pair(y)) => Ok(Value::Pair(section_wedge(&x, &y)?)),
        (Value::Scalar(f), v) | (v, Value::Scalar(f)) => scale_by(&f, v),
        (x, y) => fail(format!("cannot wedge a {} with a {}", x.kind(), y.kind())),
    }
}
