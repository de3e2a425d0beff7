use std::collections::BTreeSet;

use mdx_core::Rational;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::ast::{is_reserved, Expr, Func, Script, Stmt, StmtKind};
use super::lexer::{tokenize, Pos, Tok, Token};
use super::ParseError;

pub fn parse(src: &str) -> Result<Script, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        at: 0,
        expected: BTreeSet::new(),
    };
    let mut stmts = Vec::new();
    while !p.check(&Tok::Eof) {
        stmts.push(p.stmt()?);
    }
    Ok(Script { stmts })
}

/// Parses a single expression, e.g. for the REPL.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        at: 0,
        expected: BTreeSet::new(),
    };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    expected: BTreeSet<String>,
}

const EXPR_START: [&str; 5] = ["number", "identifier", "tangent `@x`", "`(`", "`-`"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        self.expected.clear();
        t
    }

    /// Tests the next token against `tok`, recording it as expected on a miss.
    fn check(&mut self, tok: &Tok) -> bool {
        if std::mem::discriminant(&self.peek().tok) == std::mem::discriminant(tok) {
            return true;
        }
        let sym = match tok {
            Tok::Int(_) | Tok::Ident(_) | Tok::Tangent(_) | Tok::Eof => tok.symbol().to_string(),
            _ => format!("`{}`", tok.symbol()),
        };
        self.expected.insert(sym);
        false
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.check(tok) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if matches!(&self.peek().tok, Tok::Ident(s) if s == kw) {
            self.bump();
            return true;
        }
        self.expected.insert(format!("`{kw}`"));
        false
    }

    fn error(&mut self) -> ParseError {
        let t = self.peek().clone();
        let expected = std::mem::take(&mut self.expected);
        ParseError::new(t.pos, format!("unexpected {}", t.tok.describe()), expected)
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.check(&tok) {
            Ok(self.bump())
        } else {
            Err(self.error())
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let pos = self.bump().pos;
                Ok((s, pos))
            }
            _ => {
                self.expected.insert("identifier".into());
                Err(self.error())
            }
        }
    }

    fn unreserved(&mut self) -> Result<String, ParseError> {
        let (name, pos) = self.ident()?;
        if is_reserved(&name) {
            return Err(ParseError::new(
                pos,
                format!("`{name}` is reserved"),
                ["identifier"],
            ));
        }
        Ok(name)
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let pos = self.peek().pos;
        let kind = if self.keyword("chart") {
            let mut names = vec![self.unreserved()?];
            while self.eat(&Tok::Comma) {
                names.push(self.unreserved()?);
            }
            StmtKind::Chart(names)
        } else if self.keyword("ambient") {
            let t = self.expect(Tok::Int(BigInt::zero()))?;
            let Tok::Int(n) = t.tok else { unreachable!() };
            let n = n.to_usize().filter(|&n| n >= 1).ok_or_else(|| {
                ParseError::new(
                    t.pos,
                    "ambient degree must be a positive integer",
                    ["number"],
                )
            })?;
            StmtKind::Ambient(n)
        } else if self.keyword("let") {
            let name = self.unreserved()?;
            self.expect(Tok::Eq)?;
            StmtKind::Let(name, self.expr()?)
        } else if self.keyword("graph") {
            StmtKind::Graph(self.expr()?)
        } else if self.keyword("assert") {
            let lhs = self.expr()?;
            self.expect(Tok::EqEq)?;
            StmtKind::Assert(lhs, self.expr()?)
        } else if self.keyword("print") {
            StmtKind::Print(self.expr()?)
        } else {
            return Err(self.error());
        };
        self.expect(Tok::Semi)?;
        Ok(Stmt { kind, pos })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        let hit = match &self.peek().tok {
            Tok::Int(_) | Tok::Tangent(_) | Tok::LParen => true,
            Tok::Ident(s) => !crate::dsl::ast::KEYWORDS.contains(&s.as_str()),
            _ => false,
        };
        if !hit {
            for e in &EXPR_START[..4] {
                self.expected.insert((*e).into());
            }
        }
        hit
    }

    /// Products, written with `*` or by juxtaposition.
    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.starts_atom() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.wedge()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.wedge()
    }

    fn wedge(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while self.eat(&Tok::Caret) {
            lhs = Expr::Wedge(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(&Tok::StarStar) {
            let t = self.expect(Tok::Int(BigInt::zero()))?;
            let Tok::Int(n) = t.tok else { unreachable!() };
            let n = n
                .to_u32()
                .ok_or_else(|| ParseError::new(t.pos, "exponent too large", ["number"]))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                if self.eat(&Tok::Slash) {
                    let dt = self.expect(Tok::Int(BigInt::zero()))?;
                    let Tok::Int(den) = dt.tok else {
                        unreachable!()
                    };
                    if den.is_zero() {
                        return Err(ParseError::new(dt.pos, "zero denominator", ["number"]));
                    }
                    return Ok(Expr::Num(Rational::new(n, den)));
                }
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Tok::Tangent(name) => {
                self.bump();
                Ok(Expr::Tangent(name))
            }
            Tok::Ident(name) => {
                if crate::dsl::ast::KEYWORDS.contains(&name.as_str()) {
                    self.expected.extend(EXPR_START.map(String::from));
                    return Err(self.error());
                }
                self.bump();
                match Func::from_name(&name) {
                    Some(f) => self.call(f, t.pos),
                    None => Ok(Expr::Name(name)),
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => {
                self.expected.extend(EXPR_START.map(String::from));
                Err(self.error())
            }
        }
    }

    fn call(&mut self, f: Func, pos: Pos) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.expr()?];
        loop {
            if self.eat(&Tok::Comma) || self.eat(&Tok::Semi) {
                args.push(self.expr()?);
            } else {
                self.expect(Tok::RParen)?;
                break;
            }
        }
        if !f.arity().contains(&args.len()) {
            let want: Vec<String> = f.arity().iter().map(|n| n.to_string()).collect();
            return Err(ParseError::new(
                pos,
                format!(
                    "`{}` takes {} argument(s), found {}",
                    f.name(),
                    want.join(" or "),
                    args.len()
                ),
                [] as [&str; 0],
            ));
        }
        Ok(Expr::Call(f, args))
    }
}
