use std::fmt::Write;

use mdx_core::coeff_ring::format_rational;

use super::ast::{Expr, Script, StmtKind};

// binding strength, loosest first
const SUM: u8 = 0;
const PRODUCT: u8 = 1;
const PREFIX: u8 = 2;
const WEDGE: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn strength(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) => PRODUCT,
        Expr::Neg(..) => PREFIX,
        Expr::Wedge(..) => WEDGE,
        Expr::Pow(..) => POWER,
        Expr::Num(q) if !q.is_integer() => POWER,
        _ => ATOM,
    }
}

fn write_at(out: &mut String, e: &Expr, min: u8) {
    if strength(e) < min {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    match e {
        Expr::Num(q) => out.push_str(&format_rational(q)),
        Expr::Name(n) => out.push_str(n),
        Expr::Tangent(n) => {
            out.push('@');
            out.push_str(n);
        }
        Expr::Neg(a) => {
            out.push('-');
            write_at(out, a, PREFIX);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_at(out, a, SUM);
            out.push_str(if matches!(e, Expr::Add(..)) {
                " + "
            } else {
                " - "
            });
            write_at(out, b, PRODUCT);
        }
        Expr::Mul(a, b) => {
            write_at(out, a, PRODUCT);
            out.push('*');
            write_at(out, b, PREFIX);
        }
        Expr::Wedge(a, b) => {
            write_at(out, a, WEDGE);
            out.push_str(" ^ ");
            write_at(out, b, POWER);
        }
        Expr::Pow(a, k) => {
            // a rational base needs no parentheses: `3/2**2` reads as `(3/2)**2`
            if matches!(**a, Expr::Num(_)) {
                write_expr(out, a);
            } else {
                write_at(out, a, ATOM);
            }
            let _ = write!(out, "**{k}");
        }
        Expr::Call(f, args) => {
            out.push_str(f.name());
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i == 1 {
                    out.push_str(f.separator());
                } else if i > 1 {
                    out.push_str(", ");
                }
                write_expr(out, a);
            }
            out.push(')');
        }
    }
}

pub fn pretty_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

pub fn pretty_print(s: &Script) -> String {
    let mut out = String::new();
    for stmt in &s.stmts {
        match &stmt.kind {
            StmtKind::Chart(names) => {
                let _ = writeln!(out, "chart {};", names.join(", "));
            }
            StmtKind::Ambient(n) => {
                let _ = writeln!(out, "ambient {n};");
            }
            StmtKind::Let(name, e) => {
                let _ = writeln!(out, "let {name} = {};", pretty_expr(e));
            }
            StmtKind::Graph(e) => {
                let _ = writeln!(out, "graph {};", pretty_expr(e));
            }
            StmtKind::Assert(a, b) => {
                let _ = writeln!(out, "assert {} == {};", pretty_expr(a), pretty_expr(b));
            }
            StmtKind::Print(e) => {
                let _ = writeln!(out, "print {};", pretty_expr(e));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_expr;
    use super::*;

    #[test]
    fn minimal_parentheses() {
        for src in [
            "x*dy ^ dz",
            "(x + y)*dz",
            "-(dx ^ dy)",
            "a - (b - c)",
            "a - b - c",
            "(-x)**2",
            "3/2**2",
            "(dx ^ dy) ^ dz",
            "dx ^ (dy ^ dz)",
            "i(@x ^ @y; dx ^ dy)",
            "td(a, b, c)",
            "2*-x",
            "(x*y)**3",
        ] {
            let e = parse_expr(src).unwrap();
            let printed = pretty_expr(&e);
            assert_eq!(parse_expr(&printed).unwrap(), e, "{src} -> {printed}");
        }
        assert_eq!(pretty_expr(&parse_expr("x dy ^ dz").unwrap()), "x*dy ^ dz");
        assert_eq!(
            pretty_expr(&parse_expr("dx ^ dy ^ dz").unwrap()),
            "dx ^ dy ^ dz"
        );
    }
}
