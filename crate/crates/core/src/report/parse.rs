//! Input documents: a few named polynomials, optionally over `Q[t]/(m)`.
//!
//! ```text
//! # comment
//! field t^2 - 2
//! A0 = X2 - X1; A1 = (1 + t)*X1 - X2
//! A2 = -t*X1
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraicContext, Exponent, QPoly, Rat, Scalar, SparsePoly};
use crate::local::AdaptedGenerator;
use crate::projective::ProjectiveFoliation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error("'{0}' is defined twice")]
    Duplicate(String),
    #[error("names from different input modes: '{0}' and '{1}'")]
    MixedModes(String, String),
    #[error("missing {0}")]
    Missing(String),
    #[error("no polynomials given")]
    Empty,
    #[error("{0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("negative exponent outside a Laurent pair")]
    NegativeExponent,
    #[error("exponent too large")]
    ExponentRange,
    #[error("division by a non-constant or zero expression")]
    Division,
    #[error("field modulus must be a polynomial in t with rational coefficients")]
    FieldModulus,
    #[error("invalid field modulus: {0}")]
    FieldContext(String),
    #[error("field given twice")]
    DuplicateField,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{position}: {kind}")]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
}

fn err<T>(position: Position, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { position, kind })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Equals,
    Separator,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(n) => write!(f, "number {n}"),
            Token::Ident(s) => write!(f, "'{s}'"),
            Token::Plus => f.write_str("'+'"),
            Token::Minus => f.write_str("'-'"),
            Token::Star => f.write_str("'*'"),
            Token::Slash => f.write_str("'/'"),
            Token::Caret => f.write_str("'^'"),
            Token::LParen => f.write_str("'('"),
            Token::RParen => f.write_str("')'"),
            Token::Equals => f.write_str("'='"),
            Token::Separator => f.write_str("end of statement"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, Position)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Position { line, column };
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        match c {
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    advance(&mut chars);
                }
            }
            '\n' | ';' => {
                advance(&mut chars);
                out.push((Token::Separator, pos));
            }
            c if c.is_whitespace() => {
                advance(&mut chars);
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while chars.peek().is_some_and(char::is_ascii_digit) {
                    digits.push(advance(&mut chars));
                }
                out.push((Token::Number(digits.parse().expect("digits")), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while chars
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    name.push(advance(&mut chars));
                }
                out.push((Token::Ident(name), pos));
            }
            _ => {
                let tok = match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    '=' => Token::Equals,
                    other => return err(pos, ParseErrorKind::UnexpectedChar(other)),
                };
                advance(&mut chars);
                out.push((tok, pos));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Number(BigInt),
    Var(String, Position),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Position),
    Pow(Box<Expr>, i64, Position),
}

struct Parser {
    tokens: Vec<(Token, Position)>,
    at: usize,
    end: Position,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn position(&self) -> Position {
        self.tokens.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), Token::to_string)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn at_statement_end(&self) -> bool {
        matches!(self.peek(), None | Some(Token::Separator))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Token::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Token::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Token::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Token::Slash) {
                let pos = self.position();
                self.at += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Token::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Token::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        let pos = self.position();
        self.at += 1;
        let negative = self.eat(&Token::Minus);
        match self.bump() {
            Some(Token::Number(n)) => {
                let k = i64::try_from(&n).ok().filter(|k| *k <= i64::from(i32::MAX));
                let Some(k) = k else {
                    return err(pos, ParseErrorKind::ExponentRange);
                };
                Ok(Expr::Pow(
                    Box::new(base),
                    if negative { -k } else { k },
                    pos,
                ))
            }
            _ => {
                self.at -= 1;
                err(
                    self.position(),
                    ParseErrorKind::Unexpected {
                        expected: "an integer exponent",
                        found: self.found(),
                    },
                )
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.position();
        match self.bump() {
            Some(Token::Number(n)) => Ok(Expr::Number(n)),
            Some(Token::Ident(name)) => Ok(Expr::Var(name, pos)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return err(
                        self.position(),
                        ParseErrorKind::Unexpected {
                            expected: "')'",
                            found: self.found(),
                        },
                    );
                }
                Ok(e)
            }
            _ => {
                self.at -= 1;
                err(
                    pos,
                    ParseErrorKind::Unexpected {
                        expected: "a number, variable or '('",
                        found: self.found(),
                    },
                )
            }
        }
    }
}

/// Which polynomials a document defines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputMode {
    /// `A0, A1, A2` in `X0, X1, X2`.
    Logarithmic,
    /// `f0, f1, f2` in `X0, X1, X2`.
    Holomorphic,
    /// `a1, a2` in `x1, x2`: a germ at a corner of two invariant components.
    LocalCorner,
    /// `h1, h2` in `u1, u2`, negative exponents allowed.
    LaurentPair,
}

impl InputMode {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            InputMode::Logarithmic => &["A0", "A1", "A2"],
            InputMode::Holomorphic => &["f0", "f1", "f2"],
            InputMode::LocalCorner => &["a1", "a2"],
            InputMode::LaurentPair => &["h1", "h2"],
        }
    }

    pub fn variables(self) -> &'static [&'static str] {
        match self {
            InputMode::Logarithmic | InputMode::Holomorphic => &["X0", "X1", "X2"],
            InputMode::LocalCorner => &["x1", "x2"],
            InputMode::LaurentPair => &["u1", "u2"],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            InputMode::Logarithmic => "logarithmic",
            InputMode::Holomorphic => "holomorphic",
            InputMode::LocalCorner => "local-corner",
            InputMode::LaurentPair => "laurent-pair",
        }
    }

    fn of_name(name: &str) -> Option<Self> {
        [
            InputMode::Logarithmic,
            InputMode::Holomorphic,
            InputMode::LocalCorner,
            InputMode::LaurentPair,
        ]
        .into_iter()
        .find(|m| m.names().contains(&name))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub mode: InputMode,
    /// Monic squarefree modulus of the coefficient ring, in `t`.
    pub field: Option<QPoly>,
    /// Polynomials in the order of `mode.names()`.
    pub polys: Vec<SparsePoly>,
}

struct Scope<'a> {
    variables: &'a [&'a str],
    ctx: Option<&'a AlgebraicContext>,
    laurent: bool,
}

fn eval(e: &Expr, scope: &Scope) -> Result<SparsePoly, ParseError> {
    let arity = scope.variables.len();
    Ok(match e {
        Expr::Number(n) => {
            SparsePoly::constant(arity, Scalar::Rational(Rat::from_integer(n.clone())))
        }
        Expr::Var(name, pos) => {
            if let Some(i) = scope.variables.iter().position(|v| v == name) {
                SparsePoly::var(arity, i)
            } else if let (true, Some(ctx)) = (name == "t", scope.ctx) {
                SparsePoly::constant(arity, ctx.generator())
            } else {
                return err(*pos, ParseErrorKind::UnknownVariable(name.clone()));
            }
        }
        Expr::Neg(a) => -&eval(a, scope)?,
        Expr::Add(a, b) => &eval(a, scope)? + &eval(b, scope)?,
        Expr::Sub(a, b) => &eval(a, scope)? - &eval(b, scope)?,
        Expr::Mul(a, b) => &eval(a, scope)? * &eval(b, scope)?,
        Expr::Div(a, b, pos) => {
            let num = eval(a, scope)?;
            let den = eval(b, scope)?;
            if !den.is_constant() || den.is_zero() {
                return err(*pos, ParseErrorKind::Division);
            }
            let inv = den.constant_term().inv().map_err(|_| ParseError {
                position: *pos,
                kind: ParseErrorKind::Division,
            })?;
            num.scale(&inv)
        }
        Expr::Pow(a, k, pos) => {
            let base = eval(a, scope)?;
            if *k >= 0 {
                base.pow(*k as u32)
            } else {
                if !scope.laurent || !base.is_monomial() {
                    return err(*pos, ParseErrorKind::NegativeExponent);
                }
                let (e, c) = base
                    .terms()
                    .next()
                    .map(|(e, c)| (*e, c.clone()))
                    .expect("monomial");
                let inv = c.inv().map_err(|_| ParseError {
                    position: *pos,
                    kind: ParseErrorKind::Division,
                })?;
                let m = (-*k) as i32;
                SparsePoly::monomial(arity, Exponent(e.0.map(|v| -v * m)), inv.pow(m as u32))
            }
        }
    })
}

struct Statement {
    name: String,
    position: Position,
    expr: Expr,
}

pub fn parse_input(text: &str) -> Result<InputDocument, ParseError> {
    let tokens = tokenize(text)?;
    let lines = text.split('\n').count();
    let end = Position {
        line: lines,
        column: text.rsplit('\n').next().map_or(0, str::len) + 1,
    };
    let mut p = Parser { tokens, at: 0, end };
    let mut field: Option<(Expr, Position)> = None;
    let mut statements: Vec<Statement> = Vec::new();
    while p.peek().is_some() {
        if p.eat(&Token::Separator) {
            continue;
        }
        let position = p.position();
        let name = match p.bump() {
            Some(Token::Ident(name)) => name,
            _ => {
                p.at -= 1;
                return err(
                    position,
                    ParseErrorKind::Unexpected {
                        expected: "a name",
                        found: p.found(),
                    },
                );
            }
        };
        if name == "field" {
            if field.is_some() {
                return err(position, ParseErrorKind::DuplicateField);
            }
            p.eat(&Token::Equals);
            field = Some((p.expr()?, position));
        } else {
            if !p.eat(&Token::Equals) {
                return err(
                    p.position(),
                    ParseErrorKind::Unexpected {
                        expected: "'='",
                        found: p.found(),
                    },
                );
            }
            statements.push(Statement {
                name,
                position,
                expr: p.expr()?,
            });
        }
        if !p.at_statement_end() {
            return err(
                p.position(),
                ParseErrorKind::Unexpected {
                    expected: "end of statement",
                    found: p.found(),
                },
            );
        }
    }

    let first = statements.first().ok_or(ParseError {
        position: end,
        kind: ParseErrorKind::Empty,
    })?;
    let mode = InputMode::of_name(&first.name).ok_or_else(|| ParseError {
        position: first.position,
        kind: ParseErrorKind::UnknownName(first.name.clone()),
    })?;
    let mut slots: Vec<Option<&Statement>> = vec![None; mode.names().len()];
    for s in &statements {
        match InputMode::of_name(&s.name) {
            None => return err(s.position, ParseErrorKind::UnknownName(s.name.clone())),
            Some(m) if m != mode => {
                return err(
                    s.position,
                    ParseErrorKind::MixedModes(first.name.clone(), s.name.clone()),
                )
            }
            Some(_) => {}
        }
        let k = mode
            .names()
            .iter()
            .position(|n| *n == s.name)
            .expect("mode name");
        if slots[k].is_some() {
            return err(s.position, ParseErrorKind::Duplicate(s.name.clone()));
        }
        slots[k] = Some(s);
    }
    let missing: Vec<&str> = mode
        .names()
        .iter()
        .zip(&slots)
        .filter(|(_, s)| s.is_none())
        .map(|(n, _)| *n)
        .collect();
    if !missing.is_empty() {
        return err(end, ParseErrorKind::Missing(missing.join(", ")));
    }

    let (modulus, ctx) = match &field {
        None => (None, None),
        Some((expr, pos)) => {
            let scope = Scope {
                variables: &["t"],
                ctx: None,
                laurent: false,
            };
            let q = eval(expr, &scope)?;
            let coeffs: Option<Vec<Rat>> = q.to_dense(0).ok().and_then(|d| {
                d.coeffs()
                    .iter()
                    .map(|c| c.as_rational().cloned())
                    .collect::<Option<Vec<_>>>()
            });
            let Some(coeffs) = coeffs else {
                return err(*pos, ParseErrorKind::FieldModulus);
            };
            let ctx = AlgebraicContext::new(&QPoly::new(coeffs)).map_err(|e| ParseError {
                position: *pos,
                kind: ParseErrorKind::FieldContext(e.to_string()),
            })?;
            (Some(ctx.modulus().clone()), Some(ctx))
        }
    };
    let scope = Scope {
        variables: mode.variables(),
        ctx: ctx.as_ref(),
        laurent: mode == InputMode::LaurentPair,
    };
    let mut polys = Vec::new();
    for s in slots.into_iter().map(|s| s.expect("checked")) {
        let poly = eval(&s.expr, &scope)?;
        let homogeneous_mode = matches!(mode, InputMode::Logarithmic | InputMode::Holomorphic);
        if homogeneous_mode && !poly.is_zero() && poly.homogeneous_degree().is_none() {
            return err(s.position, ParseErrorKind::NotHomogeneous(s.name.clone()));
        }
        polys.push(poly);
    }
    Ok(InputDocument {
        mode,
        field: modulus,
        polys,
    })
}

impl InputDocument {
    pub fn context(&self) -> Option<AlgebraicContext> {
        self.field
            .as_ref()
            .map(|m| AlgebraicContext::new(m).expect("validated modulus"))
    }

    /// Text that parses back to this document.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(m) = &self.field {
            out.push_str(&format!("field {m}\n"));
        }
        for (name, p) in self.mode.names().iter().zip(&self.polys) {
            out.push_str(&format!("{name} = {}\n", p.render(self.mode.variables())));
        }
        out
    }

    pub fn named(&self) -> Vec<(&'static str, String)> {
        self.mode
            .names()
            .iter()
            .zip(&self.polys)
            .map(|(n, p)| (*n, p.render(self.mode.variables())))
            .collect()
    }

    pub fn foliation(&self) -> Result<ProjectiveFoliation, crate::projective::ProjectiveError> {
        let [a, b, c]: [SparsePoly; 3] = self
            .polys
            .clone()
            .try_into()
            .map_err(|_| crate::projective::ProjectiveError::Arity)?;
        match self.mode {
            InputMode::Logarithmic => ProjectiveFoliation::validate(a, b, c),
            _ => ProjectiveFoliation::from_holomorphic(a, b, c),
        }
    }

    pub fn corner_germ(&self) -> Result<AdaptedGenerator, crate::local::LocalError> {
        AdaptedGenerator::corner(self.polys[0].clone(), self.polys[1].clone())
    }
}

/// Exact rational written as `n` or `n/d`.
pub fn rational_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_zero() {
        "0".into()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logarithmic_triple() {
        let doc = parse_input("A0 = X2 - X1; A1 = X1; A2 = -X2").unwrap();
        assert_eq!(doc.mode, InputMode::Logarithmic);
        assert_eq!(doc.polys[1], SparsePoly::var(3, 1));
        assert_eq!(doc.polys[0].homogeneous_degree(), Some(1));
    }

    #[test]
    fn field_extension() {
        let doc = parse_input("field t^2-2; A0 = X2 - X1; A1 = (1+t)*X1 - X2; A2 = -t*X1").unwrap();
        assert_eq!(doc.field, Some(QPoly::from_ints(&[-2, 0, 1])));
        let f = doc.foliation().unwrap();
        assert!(f.context().is_some());
    }

    #[test]
    fn missing_coefficients() {
        let e = parse_input("A0 = X1 + X2^2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Missing("A1, A2".into()));
    }

    #[test]
    fn positions_are_reported() {
        let e = parse_input("A0 = X1\nA1 = X1 $ X2").unwrap_err();
        assert_eq!(e.position, Position { line: 2, column: 9 });
        let e = parse_input("A0 = X1; A1 = Y; A2 = X1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("Y".into()));
        assert_eq!(
            e.position,
            Position {
                line: 1,
                column: 15
            }
        );
        let e = parse_input("A0 = X1 + X2^2; A1 = X1; A2 = X2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NotHomogeneous("A0".into()));
    }

    #[test]
    fn rationals_and_laurent() {
        let doc = parse_input("a1 = 3/2*x1 + x2^2; a2 = 1").unwrap();
        assert_eq!(doc.polys[0].render(&["x1", "x2"]), "x2^2 + 3/2*x1");
        let doc = parse_input("h1 = 1 + u1 + u2^-1; h2 = 1 + u1*u2").unwrap();
        assert!(doc.polys[0].is_laurent());
        assert!(parse_input("a1 = x1^-1; a2 = 1").is_err());
    }

    #[test]
    fn round_trip() {
        for text in [
            "field t^2-2; A0 = X2 - X1; A1 = (1+t)*X1 - X2; A2 = -t*X1",
            "f0 = X1; f1 = -X0; f2 = 0",
            "h1 = 1 + u1 + u2; h2 = 1 + u1*u2^-3",
            "a1 = -x1 + 2/3*x2^2; a2 = 1",
        ] {
            let doc = parse_input(text).unwrap();
            assert_eq!(parse_input(&doc.render()).unwrap(), doc, "{}", doc.render());
        }
    }
}
