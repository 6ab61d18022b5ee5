//! Textual grammar for polynomials.
//!
//! ```text
//! equation := expr ['=' expr]
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor (['*'] factor)*
//! factor   := ['-'] primary ['^' INT]
//! primary  := INT | 'm' | 'n' | 'x' | 'y' | 'z'
//!           | MAP '[' expr ']'            MAP ∈ {T, T0, D, F, Fc}
//!           | '[' expr ',' expr ']'       commutator
//!           | '(' expr ')'
//!           | 'use' LABEL ['{' GEN '->' expr (',' GEN '->' expr)* '}']
//! ```
//!
//! Lowercase runs are read one letter at a time, so `2mnxyx` is
//! `2*m*n*x*y*x`. The `use` form refers to a previously established
//! identity and is only meaningful inside a proof script.

use std::fmt;

use num_bigint::BigInt;

use super::{FreeAlgError, Generator, MapSym, NCPoly, ScalarPoly, Substitution};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    ParamM,
    ParamN,
    Gen(Generator),
    App(MapSym, Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Ref {
        label: String,
        subst: Vec<(Generator, Expr)>,
    },
}

/// Syntax error with a character offset into the parsed text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

pub struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    pub fn offset(&self) -> usize {
        self.pos
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            offset: self.pos,
            message: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek2(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos + 1).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(d) => self.err(format!("expected '{c}', found '{d}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn expect_end(&mut self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    fn at_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let n = kw.chars().count();
        if self.pos + n > self.chars.len() {
            return false;
        }
        let word: String = self.chars[self.pos..self.pos + n].iter().collect();
        word == kw
            && self
                .chars
                .get(self.pos + n)
                .is_none_or(|c| !c.is_alphanumeric() && *c != '_')
    }

    /// `lhs = rhs` is read as `lhs - rhs`.
    pub fn parse_equation(&mut self) -> PResult<Expr> {
        let lhs = self.parse_expr()?;
        if self.peek() == Some('=') && self.peek2() != Some('>') {
            self.pos += 1;
            let rhs = self.parse_expr()?;
            return Ok(Expr::Sub(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    pub fn parse_expr(&mut self) -> PResult<Expr> {
        let mut acc = if self.eat('-') {
            Expr::Neg(Box::new(self.parse_term()?))
        } else {
            self.eat('+');
            self.parse_term()?
        };
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.parse_term()?));
            } else if self.peek() == Some('-') && self.peek2() != Some('>') {
                self.pos += 1;
                acc = Expr::Sub(Box::new(acc), Box::new(self.parse_term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '[')
    }

    fn parse_term(&mut self) -> PResult<Expr> {
        let mut acc = self.parse_factor()?;
        loop {
            if self.eat('*') || self.starts_factor() {
                acc = Expr::Mul(Box::new(acc), Box::new(self.parse_factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_factor(&mut self) -> PResult<Expr> {
        if self.peek() == Some('-') && self.peek2() != Some('>') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.parse_factor()?)));
        }
        let base = self.parse_primary()?;
        if self.eat('^') {
            let k = self.parse_uint()?;
            let k = u32::try_from(k).or_else(|_| self.err("exponent too large"))?;
            if k == 0 {
                return self.err("zeroth powers are not defined without a unit");
            }
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn parse_uint(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| self.err("integer out of range"))
    }

    fn parse_label(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && is_label_char(self.chars[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an identity label");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    pub fn parse_generator(&mut self) -> PResult<Generator> {
        match self.peek() {
            Some(c) => match Generator::new(c) {
                Some(g) => {
                    self.pos += 1;
                    Ok(g)
                }
                None => self.err(format!("'{c}' is not a generator")),
            },
            None => self.err("expected a generator"),
        }
    }

    /// `{x -> p, y -> q}`; empty when no brace follows.
    pub fn parse_subst(&mut self) -> PResult<Vec<(Generator, Expr)>> {
        let mut out = Vec::new();
        if !self.eat('{') {
            return Ok(out);
        }
        if self.eat('}') {
            return Ok(out);
        }
        loop {
            let g = self.parse_generator()?;
            self.expect('-')?;
            self.expect('>')?;
            let e = self.parse_expr()?;
            if out.iter().any(|(h, _)| *h == g) {
                return self.err(format!("generator {g} substituted twice"));
            }
            out.push((g, e));
            if self.eat(',') {
                continue;
            }
            self.expect('}')?;
            return Ok(out);
        }
    }

    fn parse_primary(&mut self) -> PResult<Expr> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of input");
        };
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            return Ok(Expr::Int(s.parse().expect("digits")));
        }
        if c == '(' {
            self.pos += 1;
            let e = self.parse_expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if c == '[' {
            self.pos += 1;
            let a = self.parse_expr()?;
            self.expect(',')?;
            let b = self.parse_expr()?;
            self.expect(']')?;
            return Ok(Expr::Comm(Box::new(a), Box::new(b)));
        }
        if self.at_keyword("use") {
            self.pos += 3;
            let label = self.parse_label()?;
            let subst = self.parse_subst()?;
            return Ok(Expr::Ref { label, subst });
        }
        if c.is_ascii_uppercase() {
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            let Some(f) = MapSym::from_name(&name) else {
                self.pos = start;
                return self.err(format!("unknown map symbol '{name}'"));
            };
            self.expect('[')?;
            let arg = self.parse_expr()?;
            self.expect(']')?;
            return Ok(Expr::App(f, Box::new(arg)));
        }
        if c.is_ascii_lowercase() {
            self.pos += 1;
            return match c {
                'm' => Ok(Expr::ParamM),
                'n' => Ok(Expr::ParamN),
                _ => match Generator::new(c) {
                    Some(g) => Ok(Expr::Gen(g)),
                    None => {
                        self.pos -= 1;
                        self.err(format!("unknown symbol '{c}'"))
                    }
                },
            };
        }
        self.err(format!("unexpected '{c}'"))
    }
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\'')
}

/// Evaluation failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("a nonzero scalar cannot be added to a ring element (no unit)")]
    NoUnit,
    #[error("a ring element was expected where a scalar was found")]
    ScalarNotAllowed,
    #[error("a scalar was expected where a ring element was found")]
    ElementNotAllowed,
    #[error("identity references are not allowed here")]
    RefNotAllowed,
    #[error("terms without an identity reference cannot be added to derived terms")]
    UnsupportedTerm,
    #[error("unknown identity '{0}'")]
    UnknownLabel(String),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

/// Result of evaluating an [`Expr`]. `derived` marks values lying in the
/// ideal generated by referenced identities, i.e. known to vanish.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(ScalarPoly),
    Element { poly: NCPoly, derived: bool },
}

impl Value {
    fn elem(poly: NCPoly, derived: bool) -> Self {
        Value::Element { poly, derived }
    }
}

/// Supplies the instance of a referenced identity under a substitution.
pub trait Resolver {
    fn resolve(&self, label: &str, subst: &Substitution) -> Result<NCPoly, EvalError>;
}

/// Resolver for plain polynomials: every reference is an error.
pub struct NoRefs;

impl Resolver for NoRefs {
    fn resolve(&self, _label: &str, _subst: &Substitution) -> Result<NCPoly, EvalError> {
        Err(EvalError::RefNotAllowed)
    }
}

fn add_values(a: Value, b: Value) -> Result<Value, EvalError> {
    Ok(match (a, b) {
        (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a + &b),
        (Value::Scalar(s), e @ Value::Element { .. }) | (e @ Value::Element { .. }, Value::Scalar(s)) => {
            if !s.is_zero() {
                return Err(EvalError::NoUnit);
            }
            e
        }
        (Value::Element { poly: p, derived: dp }, Value::Element { poly: q, derived: dq }) => {
            let derived = match (dp, dq) {
                (true, true) | (false, false) => dp,
                (true, false) if q.is_zero() => true,
                (false, true) if p.is_zero() => true,
                _ => return Err(EvalError::UnsupportedTerm),
            };
            Value::elem(&p + &q, derived)
        }
    })
}

fn mul_values(a: Value, b: Value) -> Value {
    match (a, b) {
        (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a * &b),
        (Value::Scalar(s), Value::Element { poly, derived }) | (Value::Element { poly, derived }, Value::Scalar(s)) => {
            Value::elem(poly.scale(&s), derived)
        }
        (Value::Element { poly: p, derived: dp }, Value::Element { poly: q, derived: dq }) => {
            Value::elem(&p * &q, dp || dq)
        }
    }
}

fn neg_value(a: Value) -> Value {
    match a {
        Value::Scalar(s) => Value::Scalar(-s),
        Value::Element { poly, derived } => Value::elem(-poly, derived),
    }
}

impl Expr {
    pub fn eval(&self, resolver: &dyn Resolver) -> Result<Value, EvalError> {
        Ok(match self {
            Expr::Int(c) => Value::Scalar(ScalarPoly::constant(c.clone())),
            Expr::ParamM => Value::Scalar(ScalarPoly::m()),
            Expr::ParamN => Value::Scalar(ScalarPoly::n()),
            Expr::Gen(g) => Value::elem(NCPoly::gen(*g), false),
            Expr::App(f, arg) => {
                let (poly, derived) = arg.eval_element(resolver)?;
                Value::elem(NCPoly::apply(*f, &poly), derived)
            }
            Expr::Comm(a, b) => {
                let (p, dp) = a.eval_element(resolver)?;
                let (q, dq) = b.eval_element(resolver)?;
                Value::elem(p.commutator(&q), dp || dq)
            }
            Expr::Add(a, b) => add_values(a.eval(resolver)?, b.eval(resolver)?)?,
            Expr::Sub(a, b) => add_values(a.eval(resolver)?, neg_value(b.eval(resolver)?))?,
            Expr::Mul(a, b) => mul_values(a.eval(resolver)?, b.eval(resolver)?),
            Expr::Neg(a) => neg_value(a.eval(resolver)?),
            Expr::Pow(a, k) => match a.eval(resolver)? {
                Value::Scalar(s) => Value::Scalar(s.pow(*k)),
                Value::Element { poly, derived } => Value::elem(poly.pow(*k), derived),
            },
            Expr::Ref { label, subst } => {
                let mut sigma = Substitution::new();
                for (g, e) in subst {
                    let (p, derived) = e.eval_element(resolver)?;
                    if derived {
                        return Err(EvalError::RefNotAllowed);
                    }
                    sigma.insert(*g, p);
                }
                Value::elem(resolver.resolve(label, &sigma)?, true)
            }
        })
    }

    /// Evaluates to a ring element; a literal zero scalar is accepted.
    pub fn eval_element(&self, resolver: &dyn Resolver) -> Result<(NCPoly, bool), EvalError> {
        match self.eval(resolver)? {
            Value::Element { poly, derived } => Ok((poly, derived)),
            Value::Scalar(s) if s.is_zero() => Ok((NCPoly::zero(), false)),
            Value::Scalar(_) => Err(EvalError::ScalarNotAllowed),
        }
    }

    pub fn eval_scalar(&self) -> Result<ScalarPoly, EvalError> {
        match self.eval(&NoRefs)? {
            Value::Scalar(s) => Ok(s),
            Value::Element { .. } => Err(EvalError::ElementNotAllowed),
        }
    }

    pub fn mentions_refs(&self) -> bool {
        match self {
            Expr::Ref { .. } => true,
            Expr::Int(_) | Expr::ParamM | Expr::ParamN | Expr::Gen(_) => false,
            Expr::App(_, a) | Expr::Neg(a) | Expr::Pow(a, _) => a.mentions_refs(),
            Expr::Comm(a, b) | Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.mentions_refs() || b.mentions_refs()
            }
        }
    }
}

/// Error from [`parse_poly`] and [`parse_scalar`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyParseError {
    #[error("syntax error {0}")]
    Syntax(ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Parses a polynomial or an equation `lhs = rhs` (read as `lhs − rhs`).
pub fn parse_poly(src: &str) -> Result<NCPoly, PolyParseError> {
    let mut p = Parser::new(src);
    let e = p.parse_equation().map_err(PolyParseError::Syntax)?;
    p.expect_end().map_err(PolyParseError::Syntax)?;
    Ok(e.eval_element(&NoRefs)?.0)
}

pub fn parse_scalar(src: &str) -> Result<ScalarPoly, PolyParseError> {
    let mut p = Parser::new(src);
    let e = p.parse_expr().map_err(PolyParseError::Syntax)?;
    p.expect_end().map_err(PolyParseError::Syntax)?;
    Ok(e.eval_scalar()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::normalize;

    #[test]
    fn defining_law_roundtrip() {
        let p = parse_poly("(m+n)*T[x^2] - m*T[x]*x - n*x*T0[x]").unwrap();
        assert_eq!(p.len(), 3);
        let printed = p.to_string();
        assert_eq!(parse_poly(&printed).unwrap(), p);
    }

    #[test]
    fn juxtaposition_and_equations() {
        let a = parse_poly("2mn x T0[y] x").unwrap();
        let b = parse_poly("2*m*n*x*T0[y]*x").unwrap();
        assert_eq!(a, b);
        let e = parse_poly("(m + n)T[x^2] = mT[x]x + nxT[x]").unwrap();
        let f = parse_poly("(m+n)*T[x*x] - m*T[x]*x - n*x*T[x]").unwrap();
        assert_eq!(e, f);
    }

    #[test]
    fn commutator_syntax() {
        let p = parse_poly("[T[x], x^2] - [T[x],x] x - x [T[x],x]").unwrap();
        assert!(normalize(&p).unwrap().is_zero());
        let q = parse_poly("[[T[x],x],x]").unwrap();
        assert_eq!(q.to_string(), "x^2*T[x] - 2*x*T[x]*x + T[x]*x^2");
    }

    #[test]
    fn sums_under_maps_expand() {
        let p = parse_poly("T0[x y + y x]").unwrap();
        assert_eq!(p, parse_poly("T0[xy] + T0[yx]").unwrap());
        let q = parse_poly("T[-x]").unwrap();
        assert_eq!(q, parse_poly("-T[x]").unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_poly("x + 1"),
            Err(PolyParseError::Eval(EvalError::NoUnit))
        ));
        assert!(matches!(parse_poly("G[x]"), Err(PolyParseError::Syntax(_))));
        assert!(matches!(parse_poly("x ^ 0"), Err(PolyParseError::Syntax(_))));
        assert!(matches!(
            parse_poly("use e1"),
            Err(PolyParseError::Eval(EvalError::RefNotAllowed))
        ));
        assert!(matches!(parse_poly("(x"), Err(PolyParseError::Syntax(_))));
    }

    #[test]
    fn scalars() {
        let s = parse_scalar("n(2m+n)").unwrap();
        assert_eq!(s.to_string(), "2*m*n + n^2");
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn reference_syntax_parses() {
        let mut p = Parser::new("3 use e5{y -> x y, x->x+y} x - use law");
        let e = p.parse_expr().unwrap();
        p.expect_end().unwrap();
        assert!(e.mentions_refs());
    }
}
