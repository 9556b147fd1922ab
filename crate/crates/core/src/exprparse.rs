//! The expression language for algebra elements.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?          right-associative
//! exponent:= '-'? INT | '(' '-'? INT ')' | power-of-exponent chain
//! atom    := INT | e | f | k | q | s | z | '(' expr ')'
//! ```
//!
//! `s` is `q^{1/2}` and `z` is the generator `zeta` of the root-mode field,
//! so every printed scalar can be read back. The divisor of `/` must be a
//! scalar. Multiplication is always explicit.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pbw::{AlgebraElement, Monomial};
use crate::scalars::{Scalar, ScalarField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    E,
    F,
    K,
    Q,
    S,
    Z,
}

impl Symbol {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "e" => Symbol::E,
            "f" => Symbol::F,
            "k" => Symbol::K,
            "q" => Symbol::Q,
            "s" => Symbol::S,
            "z" => Symbol::Z,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Symbol::E => "e",
            Symbol::F => "f",
            Symbol::K => "k",
            Symbol::Q => "q",
            Symbol::S => "s",
            Symbol::Z => "z",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(BigRational),
    Sym(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a scalar.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Group(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(r) => write!(f, "{r}"),
            Expr::Sym(s) => f.write_str(s.name()),
            Expr::Neg(x) => write!(f, "Neg({x})"),
            Expr::Add(a, b) => write!(f, "Add({a}, {b})"),
            Expr::Sub(a, b) => write!(f, "Sub({a}, {b})"),
            Expr::Mul(a, b) => write!(f, "Mul({a}, {b})"),
            Expr::Div(a, b) => write!(f, "Div({a}, {b})"),
            Expr::Pow(a, n) => write!(f, "Pow({a}, {n})"),
            Expr::Group(x) => write!(f, "({x})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Sym(Symbol),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &text[start..i];
                let sym = Symbol::from_name(word).ok_or_else(|| {
                    let hint = if word.len() > 1 && word.chars().all(|ch| "efkqsz".contains(ch)) {
                        "; multiplication must be written with '*'"
                    } else {
                        ""
                    };
                    Error::parse(start, format!("unknown symbol {word:?}{hint}"))
                })?;
                out.push((Tok::Sym(sym), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(Error::parse(start, format!("unexpected character {ch:?}")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::parse(self.offset(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = match (lhs, rhs) {
                        // 3/2 is a rational literal
                        (Expr::Lit(a), Expr::Lit(b)) if !b.is_zero() => Expr::Lit(a / b),
                        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let n = self.exponent()?;
        // a^b^c = a^(b^c): only integer towers are meaningful
        if *self.peek() == Tok::Caret {
            let at = self.offset();
            self.bump();
            let m = self.exponent()?;
            let tower = u32::try_from(m)
                .ok()
                .and_then(|m| n.checked_pow(m))
                .ok_or_else(|| Error::parse(at, "exponent tower out of range"))?;
            return Ok(Expr::Pow(Box::new(base), tower));
        }
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn exponent(&mut self) -> Result<i64> {
        let at = self.offset();
        let grouped = *self.peek() == Tok::LParen;
        if grouped {
            self.bump();
        }
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let n = match self.bump() {
            Tok::Int(n) => n,
            _ => return Err(Error::parse(at, "exponent must be an integer literal")),
        };
        if grouped {
            self.expect(Tok::RParen, "')' after exponent")?;
        }
        let n = n
            .to_i64()
            .ok_or_else(|| Error::parse(at, "exponent out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Lit(BigRational::from_integer(n))),
            Tok::Sym(s) => Ok(Expr::Sym(s)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Group(Box::new(inner)))
            }
            Tok::End => Err(Error::parse(at, "unexpected end of input")),
            t => Err(Error::parse(at, format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::RParen => "')'",
        Tok::LParen => "'('",
        Tok::Int(_) => "number",
        Tok::Sym(_) => "symbol",
        Tok::End => "end of input",
    }
}

/// Parses text into an expression tree.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(Error::parse(
            p.offset(),
            format!("unexpected {}", describe(p.peek())),
        ));
    }
    Ok(e)
}

fn symbol_value(field: &ScalarField, s: Symbol) -> Result<AlgebraElement> {
    let scalar = |c: Scalar| Ok(AlgebraElement::scalar(field, c));
    match s {
        Symbol::E => Ok(AlgebraElement::e(field)),
        Symbol::F => Ok(AlgebraElement::f(field)),
        Symbol::K => Ok(AlgebraElement::k(field)),
        Symbol::Q => scalar(field.q().clone()),
        Symbol::S => scalar(field.q_half().clone()),
        Symbol::Z => {
            scalar(field.root_power(1).map_err(|_| {
                Error::Input("`z` names the root of unity and needs root mode".into())
            })?)
        }
    }
}

/// `c k^j` when the element is a single such term.
fn as_k_monomial(x: &AlgebraElement) -> Option<(i32, Scalar)> {
    let mut it = x.terms();
    let (m, c) = it.next()?;
    (it.next().is_none() && m.a == 0 && m.b == 0).then(|| (m.c, c.clone()))
}

/// Evaluates an expression tree in the algebra over `field`.
pub fn lower(ast: &Expr, field: &ScalarField) -> Result<AlgebraElement> {
    match ast {
        Expr::Lit(r) => Ok(AlgebraElement::scalar(field, field.from_rational(r))),
        Expr::Sym(s) => symbol_value(field, *s),
        Expr::Neg(x) => Ok(lower(x, field)?.neg()),
        Expr::Group(x) => lower(x, field),
        Expr::Add(a, b) => lower(a, field)?.try_add(&lower(b, field)?),
        Expr::Sub(a, b) => lower(a, field)?.try_sub(&lower(b, field)?),
        Expr::Mul(a, b) => lower(a, field)?.try_mul(&lower(b, field)?),
        Expr::Div(a, b) => {
            let d = lower(b, field)?
                .as_scalar()
                .ok_or_else(|| Error::Input("division is only by scalars".into()))?;
            lower(a, field)?.scale(&d.inv()?)
        }
        Expr::Pow(base, n) => {
            let x = lower(base, field)?;
            if let Some(c) = x.as_scalar() {
                return Ok(AlgebraElement::scalar(field, c.pow(*n)?));
            }
            if *n >= 0 {
                let n = u32::try_from(*n).map_err(|_| Error::Input("exponent too large".into()))?;
                return Ok(x.pow(n));
            }
            let (j, c) = as_k_monomial(&x).ok_or_else(|| {
                Error::Input("negative powers are defined only for scalars and k".into())
            })?;
            let ci = c.inv()?.pow(-*n)?;
            let exp = (j as i64)
                .checked_mul(*n)
                .and_then(|v| i32::try_from(v).ok())
                .ok_or_else(|| Error::Input("exponent too large".into()))?;
            Ok(AlgebraElement::monomial(
                field,
                Monomial::new(0, 0, exp),
                ci,
            ))
        }
    }
}

/// Parses and lowers in one step.
pub fn parse_element(field: &ScalarField, text: &str) -> Result<AlgebraElement> {
    lower(&parse(text)?, field)
}

/// Parses text that must denote a scalar, such as a canonical scalar string.
pub fn parse_scalar(field: &ScalarField, text: &str) -> Result<Scalar> {
    parse_element(field, text)?
        .as_scalar()
        .ok_or_else(|| Error::Input(format!("{text:?} is not a scalar")))
}

/// True when every rational literal in the tree is nonnegative; literals
/// carry no sign of their own.
pub fn literals_unsigned(ast: &Expr) -> bool {
    match ast {
        Expr::Lit(r) => !r.is_negative(),
        Expr::Sym(_) => true,
        Expr::Neg(x) | Expr::Group(x) | Expr::Pow(x, _) => literals_unsigned(x),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            literals_unsigned(a) && literals_unsigned(b)
        }
    }
}
