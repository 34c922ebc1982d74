//! Polynomial text grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term { ('+'|'-') term }
//! term   := factor { ['*'|'/'] factor }        juxtaposition multiplies
//! factor := '-' factor | atom ['^' integer]
//! atom   := integer | name | 'e[' ['-'] integer ['/' integer] ']' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{PolyError, Polynomial};
use crate::cyclotomic::CycNum;
use crate::rational::{lcm_all, Q};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Root(Q),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c.is_whitespace() {
            bump!();
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            bump!();
            out.push(Spanned {
                tok,
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                bump!();
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Num(s.parse().expect("digits")),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                bump!();
            }
            let name: String = chars[start..i].iter().collect();
            if name == "e" && i < chars.len() && chars[i] == '[' {
                bump!();
                let close = chars[i..]
                    .iter()
                    .position(|&ch| ch == ']')
                    .ok_or_else(|| syntax(l0, c0, "unterminated e[...]"))?;
                let inner: String = chars[i..i + close].iter().collect();
                let alpha = parse_phase(inner.trim())
                    .ok_or_else(|| syntax(line, col, format!("bad root of unity `{inner}`")))?;
                for _ in 0..=close {
                    bump!();
                }
                out.push(Spanned {
                    tok: Tok::Root(alpha),
                    line: l0,
                    col: c0,
                });
            } else {
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    line: l0,
                    col: c0,
                });
            }
            continue;
        }
        return Err(syntax(l0, c0, format!("unexpected character `{c}`")));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

/// Parses `p`, `-p`, `p/q` into a small rational.
pub(crate) fn parse_phase(s: &str) -> Option<Q> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: i64 = num.parse().ok()?;
    let d: i64 = den.parse().ok()?;
    (d != 0).then(|| Q::new(n, d))
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [String],
    conductor: u32,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = match self.peek().tok {
            Tok::Plus => {
                self.next();
                self.term()?
            }
            Tok::Minus => {
                self.next();
                -&self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc += &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.next();
                    let d = self.factor()?;
                    let c = constant_value(&d)
                        .ok_or_else(|| syntax(t.line, t.col, "division by a non-constant"))?;
                    let inv = c
                        .inv()
                        .map_err(|_| syntax(t.line, t.col, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::Root(_) | Tok::LParen => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let t = self.next();
            match t.tok {
                Tok::Num(k) => {
                    let e: u32 = k
                        .try_into()
                        .map_err(|_| syntax(t.line, t.col, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(syntax(t.line, t.col, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        let t = self.next();
        let n = self.n();
        match t.tok {
            Tok::Num(k) => Ok(Polynomial::constant(
                n,
                CycNum::from_rational(1, BigRational::from_integer(k)),
            )),
            Tok::Root(alpha) => {
                let z = CycNum::root_of_unity(self.conductor, alpha)
                    .expect("conductor covers every root in the text");
                Ok(Polynomial::constant(n, z))
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::var(n, i)),
                None => Err(PolyError::UnknownVariable {
                    name,
                    line: t.line,
                    col: t.col,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(syntax(close.line, close.col, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(t.line, t.col, "unexpected end of input")),
            other => Err(syntax(t.line, t.col, format!("unexpected token {other:?}"))),
        }
    }
}

fn constant_value(p: &Polynomial) -> Option<CycNum> {
    if p.is_zero() {
        return Some(CycNum::zero(1));
    }
    if p.len() == 1 {
        let (m, c) = p.terms().next().unwrap();
        if m.degree() == 0 {
            return Some(c.clone());
        }
    }
    None
}

/// Parses `text` as a polynomial in the given ordered variables, rejecting
/// mixed quadratic monomials `x_i*x_j`.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, PolyError> {
    let poly = parse_expr(text, vars)?;
    if let Some(m) = poly.monomials().find(|m| m.is_mixed_quadratic()) {
        let names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        return Err(PolyError::MixedQuadratic(m.display_with(&names)));
    }
    Ok(poly)
}

/// Parses any polynomial expression, without the mixed quadratic restriction.
pub fn parse_expr<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, PolyError> {
    let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
    let toks = lex(text)?;
    let conductor = lcm_all(toks.iter().filter_map(|t| match t.tok {
        Tok::Root(a) => Some(*a.denom() as u64),
        _ => None,
    })) as u32;
    let mut p = Parser {
        toks,
        pos: 0,
        vars: &vars,
        conductor,
    };
    let poly = p.expr()?;
    let end = p.peek().clone();
    if end.tok != Tok::End {
        return Err(syntax(end.line, end.col, "unexpected trailing input"));
    }
    Ok(poly)
}

/// Variable names appearing in `text`, in natural order (`x2` before `x10`).
pub fn infer_variables(text: &str) -> Result<Vec<String>, PolyError> {
    let mut names: Vec<String> = lex(text)?
        .into_iter()
        .filter_map(|t| match t.tok {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect();
    names.sort_by_key(|a| natural_key(a));
    names.dedup();
    Ok(names)
}

fn natural_key(s: &str) -> (String, u64, String) {
    let split = s
        .rfind(|c: char| !c.is_ascii_digit())
        .map_or(0, |i| i + s[i..].chars().next().unwrap().len_utf8());
    let (head, digits) = s.split_at(split);
    (head.to_string(), digits.parse().unwrap_or(0), s.to_string())
}
