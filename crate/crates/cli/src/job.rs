//! Job files: `key = value` statements separated by newlines or `;`.

use std::fmt;

use lgorb::polynomial::{infer_variables, parse_poly, PolyError};
use lgorb::rational::{frac, Q};
use lgorb::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JobError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("arity mismatch at {line}:{col}: expected {expected} entries, found {found}")]
    Arity {
        line: usize,
        col: usize,
        expected: usize,
        found: usize,
    },
    #[error("mixed quadratic monomial {0} is not allowed")]
    MixedQuadratic(String),
}

fn syntax(pos: Pos, msg: impl Into<String>) -> JobError {
    JobError::Syntax {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Symmetries,
    Jacobian,
    Diamond,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Symmetries => "symmetries",
            Command::Jacobian => "jacobian",
            Command::Diamond => "diamond",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One factor of a generator product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Id,
    Jf,
    /// Phases reduced into `[0, 1)`.
    Diag(Vec<Q>),
    /// Cycles of 0-based variable indices.
    Perm(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    /// `f1^k1 * f2^k2 * …`, composed left to right.
    Product(Vec<(Factor, i64)>),
    /// Generators of the maximal diagonal symmetry group.
    Gd,
    /// Generators of the diagonal symmetries of determinant 1.
    SLd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub format: Format,
    pub closure_cap: usize,
    pub verify: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            format: Format::Text,
            closure_cap: lgorb::symmetry::DEFAULT_CLOSURE_CAP,
            verify: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub poly_text: String,
    pub vars: Vec<String>,
    pub f: Polynomial,
    /// `None` when the job has no `group` line.
    pub group: Option<Vec<GenSpec>>,
    pub command: Command,
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

type Chars = Vec<(char, Pos)>;

fn text_of(cs: &[(char, Pos)]) -> String {
    cs.iter().map(|c| c.0).collect()
}

fn trim(cs: &[(char, Pos)]) -> &[(char, Pos)] {
    let start = cs.iter().position(|c| !c.0.is_whitespace()).unwrap_or(cs.len());
    let end = cs.iter().rposition(|c| !c.0.is_whitespace()).map_or(start, |e| e + 1);
    &cs[start..end]
}

/// Splits into statements at top-level `;` and newlines, dropping `#` comments.
fn statements(text: &str) -> Vec<Chars> {
    let mut out = Vec::new();
    let mut cur: Chars = Vec::new();
    let mut depth = 0i32;
    let mut comment = false;
    let (mut line, mut col) = (1, 1);
    for ch in text.chars() {
        let pos = Pos { line, col };
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
        if comment {
            if ch != '\n' {
                continue;
            }
            comment = false;
        }
        match ch {
            '#' => comment = true,
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if comment {
            continue;
        }
        if (ch == ';' || ch == '\n') && depth <= 0 {
            out.push(std::mem::take(&mut cur));
            continue;
        }
        cur.push((ch, pos));
    }
    out.push(cur);
    out.into_iter().filter(|s| !trim(s).is_empty()).collect()
}

fn map_poly_error(e: PolyError, value: &[(char, Pos)]) -> JobError {
    // value positions are relative to the polynomial text
    let locate = |line: usize, col: usize| -> Pos {
        let (mut l, mut c) = (1, 1);
        for &(ch, p) in value {
            if (l, c) == (line, col) {
                return p;
            }
            if ch == '\n' {
                l += 1;
                c = 1;
            } else {
                c += 1;
            }
        }
        value.last().map_or(Pos { line: 1, col: 1 }, |&(_, p)| Pos {
            line: p.line,
            col: p.col + 1,
        })
    };
    match e {
        PolyError::Syntax { line, col, msg } => syntax(locate(line, col), msg),
        PolyError::UnknownVariable { name, line, col } => {
            syntax(locate(line, col), format!("unknown variable `{name}`"))
        }
        PolyError::MixedQuadratic(m) => JobError::MixedQuadratic(m),
        PolyError::DimensionMismatch { expected, found } => {
            let p = locate(1, 1);
            JobError::Arity {
                line: p.line,
                col: p.col,
                expected,
                found,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(Q),
    Sym(char),
    End,
}

fn lex(cs: &[(char, Pos)]) -> Result<Vec<(Tok, Pos)>, JobError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let (c, p) = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].0.is_ascii_alphanumeric() || cs[i].0 == '_') {
                i += 1;
            }
            out.push((Tok::Ident(text_of(&cs[start..i])), p));
        } else if c.is_ascii_digit() || c == '-' {
            let start = i;
            i += 1;
            while i < cs.len() && (cs[i].0.is_ascii_digit() || cs[i].0 == '/') {
                i += 1;
            }
            let s = text_of(&cs[start..i]);
            let x: Q = s
                .parse()
                .map_err(|_| syntax(p, format!("invalid number `{s}`")))?;
            out.push((Tok::Num(x), p));
        } else if "()[],*^".contains(c) {
            out.push((Tok::Sym(c), p));
            i += 1;
        } else {
            return Err(syntax(p, format!("unexpected character `{c}`")));
        }
    }
    let end = cs.last().map_or(Pos { line: 1, col: 1 }, |&(_, p)| Pos {
        line: p.line,
        col: p.col + 1,
    });
    out.push((Tok::End, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.i]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<Pos, JobError> {
        match self.next() {
            (Tok::Sym(s), p) if s == c => Ok(p),
            (t, p) => Err(syntax(p, format!("expected `{c}`, found {}", describe(&t)))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().0 == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<(i64, Pos), JobError> {
        match self.next() {
            (Tok::Num(x), p) if x.is_integer() => Ok((x.to_integer(), p)),
            (t, p) => Err(syntax(p, format!("expected an integer, found {}", describe(&t)))),
        }
    }

    fn finish(&mut self) -> Result<(), JobError> {
        match self.next() {
            (Tok::End, _) => Ok(()),
            (t, p) => Err(syntax(p, format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(x) => format!("`{x}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of statement".into(),
    }
}

/// A parsed factor with the data needed for arity checks.
struct RawFactor {
    factor: Factor,
    pos: Pos,
    /// Largest 1-based variable index mentioned, with its position.
    max_index: Option<(usize, Pos)>,
}

fn parse_factor(p: &mut Parser) -> Result<RawFactor, JobError> {
    let (t, pos) = p.next();
    let name = match t {
        Tok::Ident(s) => s,
        t => return Err(syntax(pos, format!("expected a generator, found {}", describe(&t)))),
    };
    match name.as_str() {
        "id" => Ok(RawFactor {
            factor: Factor::Id,
            pos,
            max_index: None,
        }),
        "jf" => Ok(RawFactor {
            factor: Factor::Jf,
            pos,
            max_index: None,
        }),
        "diag" => {
            p.expect('(')?;
            let mut phases = Vec::new();
            loop {
                match p.next() {
                    (Tok::Num(x), _) => phases.push(frac(x)),
                    (t, q) => {
                        return Err(syntax(q, format!("expected a rational, found {}", describe(&t))))
                    }
                }
                if !p.eat(',') {
                    break;
                }
            }
            p.expect(')')?;
            Ok(RawFactor {
                factor: Factor::Diag(phases),
                pos,
                max_index: None,
            })
        }
        "perm" => {
            let mut cycles = Vec::new();
            let mut max_index: Option<(usize, Pos)> = None;
            while p.peek().0 == Tok::Sym('(') {
                p.next();
                let mut cycle: Vec<usize> = Vec::new();
                while p.peek().0 != Tok::Sym(')') {
                    let (k, q) = p.int()?;
                    if k < 1 {
                        return Err(syntax(q, "variable indices start at 1"));
                    }
                    let k = k as usize;
                    if cycle.contains(&(k - 1)) {
                        return Err(syntax(q, format!("index {k} repeated in a cycle")));
                    }
                    if max_index.is_none_or(|(m, _)| k > m) {
                        max_index = Some((k, q));
                    }
                    cycle.push(k - 1);
                }
                p.expect(')')?;
                if cycle.is_empty() {
                    return Err(syntax(pos, "empty cycle"));
                }
                cycles.push(cycle);
            }
            if cycles.is_empty() {
                return Err(syntax(p.peek().1, "expected `(` after perm"));
            }
            let all: Vec<usize> = cycles.iter().flatten().copied().collect();
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            if dedup.len() != all.len() {
                return Err(syntax(pos, "cycles of a permutation must be disjoint"));
            }
            Ok(RawFactor {
                factor: Factor::Perm(cycles),
                pos,
                max_index,
            })
        }
        other => Err(syntax(
            pos,
            format!("unknown generator `{other}` (expected jf, id, diag, perm, Gd or SLd)"),
        )),
    }
}

fn parse_group(value: &[(char, Pos)], n: usize) -> Result<Vec<GenSpec>, JobError> {
    let mut p = Parser {
        toks: lex(value)?,
        i: 0,
    };
    p.expect('[')?;
    let mut gens = Vec::new();
    if p.eat(']') {
        p.finish()?;
        return Ok(gens);
    }
    loop {
        match p.peek().0.clone() {
            Tok::Ident(s) if s == "Gd" || s == "SLd" => {
                p.next();
                gens.push(if s == "Gd" { GenSpec::Gd } else { GenSpec::SLd });
            }
            _ => {
                let mut factors = Vec::new();
                loop {
                    let raw = parse_factor(&mut p)?;
                    check_arity(&raw, n)?;
                    let k = if p.eat('^') { p.int()?.0 } else { 1 };
                    factors.push((raw.factor, k));
                    if !p.eat('*') {
                        break;
                    }
                }
                gens.push(GenSpec::Product(factors));
            }
        }
        if !p.eat(',') {
            break;
        }
    }
    p.expect(']')?;
    p.finish()?;
    Ok(gens)
}

fn check_arity(raw: &RawFactor, n: usize) -> Result<(), JobError> {
    match &raw.factor {
        Factor::Diag(ph) if ph.len() != n => Err(JobError::Arity {
            line: raw.pos.line,
            col: raw.pos.col,
            expected: n,
            found: ph.len(),
        }),
        Factor::Perm(_) => match raw.max_index {
            Some((k, pos)) if k > n => Err(syntax(
                pos,
                format!("variable index {k} exceeds the {n} variables"),
            )),
            _ => Ok(()),
        },
        _ => Ok(()),
    }
}

fn parse_vars(value: &[(char, Pos)]) -> Result<Vec<String>, JobError> {
    let mut p = Parser {
        toks: lex(value)?,
        i: 0,
    };
    p.expect('[')?;
    let mut vars: Vec<String> = Vec::new();
    if !p.eat(']') {
        loop {
            match p.next() {
                (Tok::Ident(s), q) => {
                    if vars.contains(&s) {
                        return Err(syntax(q, format!("variable `{s}` listed twice")));
                    }
                    vars.push(s)
                }
                (t, q) => {
                    return Err(syntax(q, format!("expected a variable name, found {}", describe(&t))))
                }
            }
            if !p.eat(',') {
                break;
            }
        }
        p.expect(']')?;
    }
    p.finish()?;
    Ok(vars)
}

fn parse_command(value: &[(char, Pos)]) -> Result<Command, JobError> {
    let pos = value[0].1;
    match text_of(value).as_str() {
        "analyze" => Ok(Command::Analyze),
        "symmetries" => Ok(Command::Symmetries),
        "jacobian" => Ok(Command::Jacobian),
        "diamond" => Ok(Command::Diamond),
        other => Err(syntax(
            pos,
            format!("unknown command `{other}` (expected analyze, symmetries, jacobian or diamond)"),
        )),
    }
}

/// Parses a job file. Without a `command` line the command is `diamond`;
/// without `vars` the variables are those of `f` in natural order.
pub fn parse_job(text: &str) -> Result<Job, JobError> {
    let mut f_value: Option<Chars> = None;
    let mut vars_value: Option<Chars> = None;
    let mut group_value: Option<Chars> = None;
    let mut command_value: Option<Chars> = None;
    for st in statements(text) {
        let st = trim(&st);
        let Some(eq) = st.iter().position(|c| c.0 == '=') else {
            return Err(syntax(st[0].1, "expected `key = value`"));
        };
        let key = trim(&st[..eq]);
        let value = trim(&st[eq + 1..]).to_vec();
        if key.is_empty() {
            return Err(syntax(st[0].1, "missing key before `=`"));
        }
        if value.is_empty() {
            return Err(syntax(st[eq].1, "missing value after `=`"));
        }
        let slot = match text_of(key).as_str() {
            "f" => &mut f_value,
            "vars" => &mut vars_value,
            "group" => &mut group_value,
            "command" => &mut command_value,
            other => {
                return Err(syntax(
                    key[0].1,
                    format!("unknown key `{other}` (expected f, vars, group or command)"),
                ))
            }
        };
        if slot.is_some() {
            return Err(syntax(key[0].1, format!("`{}` given twice", text_of(key))));
        }
        *slot = Some(value);
    }
    let Some(f_value) = f_value else {
        return Err(JobError::Syntax {
            line: 1,
            col: 1,
            msg: "missing `f = <polynomial>`".into(),
        });
    };
    let poly_text = text_of(&f_value);
    let vars = match &vars_value {
        Some(v) => parse_vars(v)?,
        None => infer_variables(&poly_text).map_err(|e| map_poly_error(e, &f_value))?,
    };
    if vars.is_empty() {
        return Err(syntax(f_value[0].1, "the polynomial has no variables"));
    }
    let f = parse_poly(&poly_text, &vars).map_err(|e| map_poly_error(e, &f_value))?;
    let group = group_value
        .map(|g| parse_group(&g, vars.len()))
        .transpose()?;
    let command = command_value
        .map(|c| parse_command(&c))
        .transpose()?
        .unwrap_or(Command::Diamond);
    Ok(Job {
        poly_text,
        vars,
        f,
        group,
        command,
        options: Options::default(),
    })
}
