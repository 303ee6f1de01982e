//! Rational expressions over words: `+ - . shuffle stuffle` and postfix `*`.
//!
//! Atoms are letters (`x0`, `y2`), integers and the indeterminate (`z` or
//! `t`). Precedence, loosest first: `+ -`, `shuffle stuffle`, `. * /`,
//! unary `-`, postfix `*`, `^n`. An infix `*` is concatenation (so `2*x0`
//! scales); a `*` not followed by an operand is the Kleene star. Division
//! is by scalars only.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::alphabet::{Letter, Word};
use crate::automata::{
    rep_conc, rep_difference, rep_polynomial_star, rep_shuffle, rep_star, rep_stuffle, rep_sum, AutomataError,
    LinearRepresentation,
};
use crate::ring::{Coeff, RatFun, UPoly, Q};
use crate::series::{star, stuffle_product, NCPoly, SeriesError, Truncated};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coefficient {0} is not in the coefficient ring")]
    NotInRing(String),
    #[error("star of a series with nonzero constant term {0}")]
    NotProper(String),
    #[error("expression contains a star; it is not a polynomial")]
    NotPolynomial,
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(RatFun),
    Letter(Letter),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Conc(Box<Expr>, Box<Expr>),
    /// Division by a nonzero scalar.
    Div(Box<Expr>, RatFun),
    Pow(Box<Expr>, u32),
    Shuffle(Box<Expr>, Box<Expr>),
    Stuffle(Box<Expr>, Box<Expr>),
    Star(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var,
    Letter(Letter),
    Shuffle,
    Stuffle,
    Sym(u8),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let src = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    let syntax = |pos: usize, msg: String| ExprError::Syntax { pos, msg };
    while pos < src.len() {
        let b = src[pos];
        let start = pos;
        if b.is_ascii_whitespace() {
            pos += 1;
        } else if b.is_ascii_digit() {
            while pos < src.len() && src[pos].is_ascii_digit() {
                pos += 1;
            }
            out.push((start, Tok::Int(text[start..pos].parse().expect("digits"))));
        } else if b.is_ascii_alphabetic() {
            while pos < src.len() && src[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let ident = &text[start..pos];
            let tok = match ident {
                "z" | "t" => Tok::Var,
                "shuffle" => Tok::Shuffle,
                "stuffle" => Tok::Stuffle,
                _ => Tok::Letter(ident.parse().map_err(|_| syntax(start, format!("unknown name {ident:?}")))?),
            };
            out.push((start, tok));
        } else if b"+-.*/^()".contains(&b) {
            pos += 1;
            out.push((start, Tok::Sym(b)));
        } else {
            let ch = text[start..].chars().next().expect("in bounds");
            let tok = match ch {
                '⧢' => Tok::Shuffle,
                '⧣' => Tok::Stuffle,
                _ => return Err(syntax(start, format!("unexpected character {ch:?}"))),
            };
            pos += ch.len_utf8();
            out.push((start, tok));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, msg: &str) -> ExprError {
        ExprError::Syntax { pos: self.pos(), msg: msg.to_string() }
    }

    fn eat(&mut self, sym: u8) -> bool {
        if self.peek() == Some(&Tok::Sym(sym)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn starts_operand(t: Option<&Tok>) -> bool {
        matches!(t, Some(Tok::Int(_) | Tok::Var | Tok::Letter(_) | Tok::Sym(b'(')))
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.merge()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.merge()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.merge()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn merge(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Shuffle) => {
                    self.at += 1;
                    acc = Expr::Shuffle(Box::new(acc), Box::new(self.product()?));
                }
                Some(Tok::Stuffle) => {
                    self.at += 1;
                    acc = Expr::Stuffle(Box::new(acc), Box::new(self.product()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'.') || self.eat(b'*') {
                acc = Expr::Conc(Box::new(acc), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym(b'/')) {
                self.at += 1;
                let pos = self.pos();
                let d = self.unary()?;
                let d = d.scalar().ok_or(ExprError::Syntax { pos, msg: "divisor must be a scalar".into() })?;
                if d.is_zero() {
                    return Err(ExprError::Syntax { pos, msg: "division by zero".into() });
                }
                acc = Expr::Div(Box::new(acc), d);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.power()?;
        // A `*` followed by an operand is left for `product`.
        while self.peek() == Some(&Tok::Sym(b'*')) && !Self::starts_operand(self.toks.get(self.at + 1).map(|(_, t)| t))
        {
            self.at += 1;
            acc = Expr::Star(Box::new(acc));
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let pos = self.pos();
            return match self.peek() {
                Some(Tok::Int(n)) => {
                    let n = u32::try_from(n).map_err(|_| ExprError::Syntax { pos, msg: "exponent too large".into() })?;
                    self.at += 1;
                    Ok(Expr::Pow(Box::new(base), n))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.at += 1;
        match tok {
            Tok::Int(n) => Ok(Expr::Scalar(RatFun::from_poly(UPoly::constant(Q::from_integer(n))))),
            Tok::Var => Ok(Expr::Scalar(RatFun::var())),
            Tok::Letter(l) => Ok(Expr::Letter(l)),
            Tok::Sym(b'(') => {
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            _ => {
                self.at -= 1;
                Err(self.err("expected an operand"))
            }
        }
    }
}

/// Parses an expression such as `(-t^2*x0.x1)* shuffle (t^2*x0.x1)*`.
pub fn parse_expression(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, end: text.len() };
    let e = p.sum()?;
    if p.at != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

fn coeff<C: Coeff>(r: &RatFun) -> Result<C, ExprError> {
    C::from_ratfun(r).ok_or_else(|| ExprError::NotInRing(r.to_string()))
}

impl Expr {
    /// The value of a letter-free, star-free expression.
    pub fn scalar(&self) -> Option<RatFun> {
        Some(match self {
            Expr::Scalar(c) => c.clone(),
            Expr::Letter(_) | Expr::Star(_) => return None,
            Expr::Add(a, b) | Expr::Shuffle(a, b) => {
                let (a, b) = (a.scalar()?, b.scalar()?);
                if matches!(self, Expr::Add(..)) {
                    a + b
                } else {
                    a * b
                }
            }
            Expr::Sub(a, b) => a.scalar()? - b.scalar()?,
            Expr::Neg(a) => -a.scalar()?,
            Expr::Conc(a, b) | Expr::Stuffle(a, b) => a.scalar()? * b.scalar()?,
            Expr::Div(a, d) => a.scalar()? / d.clone(),
            Expr::Pow(a, n) => a.scalar()?.pow(*n),
        })
    }

    /// True when the expression contains no star.
    pub fn is_polynomial(&self) -> bool {
        match self {
            Expr::Scalar(_) | Expr::Letter(_) => true,
            Expr::Star(_) => false,
            Expr::Neg(a) | Expr::Div(a, _) | Expr::Pow(a, _) => a.is_polynomial(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Conc(a, b)
            | Expr::Shuffle(a, b)
            | Expr::Stuffle(a, b) => a.is_polynomial() && b.is_polynomial(),
        }
    }

    /// The polynomial denoted by a star-free expression.
    pub fn to_poly<C: Coeff>(&self) -> Result<NCPoly<C>, ExprError> {
        Ok(match self {
            Expr::Scalar(c) => NCPoly::constant(coeff(c)?),
            Expr::Letter(l) => NCPoly::letter(*l),
            Expr::Add(a, b) => a.to_poly()? + b.to_poly()?,
            Expr::Sub(a, b) => a.to_poly()? - b.to_poly()?,
            Expr::Neg(a) => -a.to_poly()?,
            Expr::Conc(a, b) => a.to_poly::<C>()?.conc(&b.to_poly()?),
            Expr::Div(a, d) => a.to_poly::<C>()?.scale(&coeff(&(RatFun::one() / d.clone()))?),
            Expr::Pow(a, n) => a.to_poly::<C>()?.conc_pow(*n as usize),
            Expr::Shuffle(a, b) => a.to_poly::<C>()?.shuffle(&b.to_poly()?),
            Expr::Stuffle(a, b) => stuffle_product(&a.to_poly()?, &b.to_poly()?)?,
            Expr::Star(_) => return Err(ExprError::NotPolynomial),
        })
    }

    /// Compiles to a linear representation: star-free parts become prefix
    /// trees, the star of a polynomial uses its proper prefixes as states,
    /// and the other operations use the block and Kronecker constructions.
    pub fn to_rep<C: Coeff>(&self) -> Result<LinearRepresentation<C>, ExprError> {
        if self.is_polynomial() {
            return Ok(LinearRepresentation::from_polynomial(&self.to_poly::<C>()?));
        }
        let not_proper = |e: AutomataError| match e {
            AutomataError::NotProper(c) => ExprError::NotProper(c),
            e => e.into(),
        };
        Ok(match self {
            Expr::Add(a, b) => rep_sum(&a.to_rep()?, &b.to_rep()?),
            Expr::Sub(a, b) => rep_difference(&a.to_rep()?, &b.to_rep()?),
            Expr::Neg(a) => a.to_rep::<C>()?.scale(&-C::one()),
            Expr::Conc(a, b) => rep_conc(&a.to_rep()?, &b.to_rep()?),
            Expr::Div(a, d) => a.to_rep::<C>()?.scale(&coeff(&(RatFun::one() / d.clone()))?),
            Expr::Pow(a, n) => {
                let r = a.to_rep::<C>()?;
                (0..*n).fold(LinearRepresentation::constant(C::one()), |acc, _| rep_conc(&acc, &r))
            }
            Expr::Shuffle(a, b) => rep_shuffle(&a.to_rep()?, &b.to_rep()?),
            Expr::Stuffle(a, b) => rep_stuffle(&a.to_rep()?, &b.to_rep()?)?,
            Expr::Star(a) if a.is_polynomial() => rep_polynomial_star(&a.to_poly::<C>()?).map_err(not_proper)?,
            Expr::Star(a) => rep_star(&a.to_rep::<C>()?).map_err(not_proper)?,
            Expr::Scalar(_) | Expr::Letter(_) => unreachable!("polynomial atoms"),
        })
    }

    /// Expansion up to grade `bound` by truncated series arithmetic.
    pub fn expand<C: Coeff>(&self, bound: usize) -> Result<Truncated<C>, ExprError> {
        if self.is_polynomial() {
            return Ok(Truncated::new(self.to_poly::<C>()?.truncate(bound), bound));
        }
        Ok(match self {
            Expr::Add(a, b) => a.expand::<C>(bound)?.add(&b.expand(bound)?),
            Expr::Sub(a, b) => a.expand::<C>(bound)?.sub(&b.expand(bound)?),
            Expr::Neg(a) => a.expand::<C>(bound)?.scale(&-C::one()),
            Expr::Conc(a, b) => a.expand::<C>(bound)?.conc(&b.expand(bound)?),
            Expr::Div(a, d) => a.expand::<C>(bound)?.scale(&coeff(&(RatFun::one() / d.clone()))?),
            Expr::Pow(a, n) => {
                let s = a.expand::<C>(bound)?;
                (0..*n).fold(Truncated::new(NCPoly::one(), bound), |acc, _| acc.conc(&s))
            }
            Expr::Shuffle(a, b) => a.expand::<C>(bound)?.shuffle(&b.expand(bound)?),
            Expr::Stuffle(a, b) => {
                let (a, b) = (a.expand::<C>(bound)?, b.expand::<C>(bound)?);
                if !(a.poly().letters_are_y() && b.poly().letters_are_y()) {
                    return Err(SeriesError::NotGraded.into());
                }
                a.stuffle(&b)
            }
            Expr::Star(a) => {
                let s = a.expand::<C>(bound)?;
                let c = s.constant_term();
                if !c.is_zero() {
                    return Err(ExprError::NotProper(c.to_string()));
                }
                star(&s, bound)?
            }
            Expr::Scalar(_) | Expr::Letter(_) => unreachable!("polynomial atoms"),
        })
    }
}

fn wrap(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Scalar(c) if c.is_polynomial() && c.numer().is_constant() && c.numer().leading() >= Q::zero() => {
            write!(f, "{e}")
        }
        Expr::Letter(_) => write!(f, "{e}"),
        _ => write!(f, "({e})"),
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized form; it parses back to an equal tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr| {
            wrap(a, f)?;
            f.write_str(op)?;
            wrap(b, f)
        };
        match self {
            Expr::Scalar(c) => {
                let text = c.fmt_with('z');
                if c.is_polynomial() && c.numer().is_constant() && c.numer().leading() >= Q::zero() {
                    f.write_str(&text)
                } else {
                    write!(f, "({text})")
                }
            }
            Expr::Letter(l) => write!(f, "{l}"),
            Expr::Add(a, b) => bin(f, a, " + ", b),
            Expr::Sub(a, b) => bin(f, a, " - ", b),
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(a, f)
            }
            Expr::Conc(a, b) => bin(f, a, ".", b),
            Expr::Div(a, d) => {
                wrap(a, f)?;
                write!(f, "/({})", d.fmt_with('z'))
            }
            Expr::Pow(a, n) => {
                wrap(a, f)?;
                write!(f, "^{n}")
            }
            Expr::Shuffle(a, b) => bin(f, a, " shuffle ", b),
            Expr::Stuffle(a, b) => bin(f, a, " stuffle ", b),
            Expr::Star(a) => {
                wrap(a, f)?;
                f.write_str("*")
            }
        }
    }
}

/// A word as an expression, `1` for the empty word.
pub fn word_expr(w: &Word) -> Expr {
    let mut it = w.letters().iter().map(|&l| Expr::Letter(l));
    match it.next() {
        None => Expr::Scalar(RatFun::one()),
        Some(first) => it.fold(first, |acc, l| Expr::Conc(Box::new(acc), Box::new(l))),
    }
}
