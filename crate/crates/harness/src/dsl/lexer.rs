use std::fmt;

use num_bigint::BigInt;

use super::ParseError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `@x`, a coordinate vector field.
    Tangent(String),
    Int(BigInt),
    Semi,
    Comma,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    StarStar,
    Slash,
    Caret,
    Eq,
    EqEq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Tangent(s) => format!("`@{s}`"),
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::StarStar => "**",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::Eq => "=",
            Tok::EqEq => "==",
            Tok::Ident(_) => "identifier",
            Tok::Tangent(_) => "@name",
            Tok::Int(_) => "number",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        let tok = if ident_start(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !ident_continue(c) {
                    break;
                }
                s.push(c);
                bump!();
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                bump!();
            }
            Tok::Int(s.parse().expect("ascii digits"))
        } else if c == '@' {
            bump!();
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !(if s.is_empty() {
                    ident_start(c)
                } else {
                    ident_continue(c)
                }) {
                    break;
                }
                s.push(c);
                bump!();
            }
            if s.is_empty() {
                return Err(ParseError::new(
                    pos,
                    "expected a coordinate name after `@`",
                    ["identifier"],
                ));
            }
            Tok::Tangent(s)
        } else {
            bump!();
            match c {
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '/' => Tok::Slash,
                '^' | '∧' => Tok::Caret,
                '*' => {
                    if chars.peek() == Some(&'*') {
                        bump!();
                        Tok::StarStar
                    } else {
                        Tok::Star
                    }
                }
                '=' => {
                    if chars.peek() == Some(&'=') {
                        bump!();
                        Tok::EqEq
                    } else {
                        Tok::Eq
                    }
                }
                other => {
                    return Err(ParseError::new(
                        pos,
                        format!("unexpected character `{other}`"),
                        [] as [&str; 0],
                    ));
                }
            }
        };
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            toks("x**2 ^ @y == 3/2;"),
            vec![
                Tok::Ident("x".into()),
                Tok::StarStar,
                Tok::Int(2.into()),
                Tok::Caret,
                Tok::Tangent("y".into()),
                Tok::EqEq,
                Tok::Int(3.into()),
                Tok::Slash,
                Tok::Int(2.into()),
                Tok::Semi,
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn positions_and_comments() {
        let t = tokenize("# header\n  let a").unwrap();
        assert_eq!(t[0].pos, Pos { line: 2, col: 3 });
        assert_eq!(t[1].pos, Pos { line: 2, col: 7 });
    }

    #[test]
    fn bad_character() {
        let e = tokenize("x $ y").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 3 });
        assert!(tokenize("@ x").is_err());
    }
}
