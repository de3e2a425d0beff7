use mdx_core::Rational;

use super::lexer::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative rational literal; signs are carried by [`Expr::Neg`].
    Num(Rational),
    /// Chart variable, `d<var>` or a bound name, resolved during evaluation.
    Name(String),
    Tangent(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    D,
    I,
    L,
    Sn,
    PairM,
    PairP,
    Cb,
    Phi,
    Td,
    TdExpanded,
    Jac,
    Pb,
    Pair,
    Embed,
    Adm,
    Gamma,
    Sigma,
}

impl Func {
    pub const ALL: [Func; 17] = [
        Func::D,
        Func::I,
        Func::L,
        Func::Sn,
        Func::PairM,
        Func::PairP,
        Func::Cb,
        Func::Phi,
        Func::Td,
        Func::TdExpanded,
        Func::Jac,
        Func::Pb,
        Func::Pair,
        Func::Embed,
        Func::Adm,
        Func::Gamma,
        Func::Sigma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::D => "d",
            Func::I => "i",
            Func::L => "L",
            Func::Sn => "sn",
            Func::PairM => "pairm",
            Func::PairP => "pairp",
            Func::Cb => "cb",
            Func::Phi => "phi",
            Func::Td => "td",
            Func::TdExpanded => "tdx",
            Func::Jac => "jac",
            Func::Pb => "pb",
            Func::Pair => "pair",
            Func::Embed => "embed",
            Func::Adm => "adm",
            Func::Gamma => "gamma",
            Func::Sigma => "sigma",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Accepted argument counts.
    pub fn arity(self) -> &'static [usize] {
        match self {
            Func::D | Func::Embed | Func::Gamma | Func::Sigma => &[1],
            Func::Td | Func::TdExpanded | Func::Jac => &[3],
            Func::Adm => &[1, 2],
            _ => &[2],
        }
    }

    /// Separator used when printing: operator-on-operand calls read `f(A; B)`.
    pub fn separator(self) -> &'static str {
        match self {
            Func::I | Func::L | Func::Phi | Func::Pair | Func::Adm => "; ",
            _ => ", ",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Chart(Vec<String>),
    Ambient(usize),
    Let(String, Expr),
    Graph(Expr),
    Assert(Expr, Expr),
    Print(Expr),
}

#[derive(Clone, Debug)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Stmt) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

pub const KEYWORDS: [&str; 6] = ["chart", "ambient", "let", "graph", "assert", "print"];

pub fn is_reserved(name: &str) -> bool {
    KEYWORDS.contains(&name) || Func::from_name(name).is_some()
}
