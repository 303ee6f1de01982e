//! Exact coefficient rings.
//!
//! Three exact rings are supported: the rationals `Q`, univariate polynomials
//! `Q[t]` ([`UPoly`]) and univariate rational functions `Q(z)` ([`RatFun`]).
//! `f64` also implements [`Coeff`] so that numeric truncated series can reuse
//! the same product code.

mod parse;
mod ratfun;
mod upoly;

use std::fmt;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use parse::{parse_coeff, ParseCoeffError};
pub use ratfun::RatFun;
pub use upoly::UPoly;

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// A commutative coefficient ring containing the rationals.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: &Q) -> Self;

    fn from_int(i: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(i)))
    }

    /// Sign and magnitude text used when the value is printed as the
    /// coefficient of a word. `None` magnitude means "one".
    fn term_parts(&self) -> (bool, Option<String>);

    /// Returns the value as a rational constant when it is one.
    fn as_rational(&self) -> Option<Q>;

    /// Converts a parsed rational function into this ring when it lies in it.
    fn from_ratfun(r: &RatFun) -> Option<Self>;
}

/// A coefficient ring that is a field.
pub trait Field: Coeff + std::ops::Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Size measure used to pick pivots with small entries.
    fn complexity(&self) -> usize {
        0
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_to_f64(x: &Q) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge numerators/denominators before dividing.
            let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
            let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Canonical text of a rational: `3`, `-3/4`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Coeff for Q {
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }

    fn term_parts(&self) -> (bool, Option<String>) {
        let mag = self.abs();
        let text = if mag.is_one() { None } else { Some(fmt_q(&mag)) };
        (self.is_negative(), text)
    }

    fn as_rational(&self) -> Option<Q> {
        Some(self.clone())
    }

    fn from_ratfun(r: &RatFun) -> Option<Self> {
        r.as_rational()
    }
}

impl Field for Q {
    fn complexity(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Coeff for f64 {
    fn from_rational(q: &Q) -> Self {
        q_to_f64(q)
    }

    fn term_parts(&self) -> (bool, Option<String>) {
        let mag = self.abs();
        let text = if mag == 1.0 { None } else { Some(format!("{mag:e}")) };
        (*self < 0.0, text)
    }

    fn as_rational(&self) -> Option<Q> {
        Q::from_float(*self)
    }

    fn from_ratfun(r: &RatFun) -> Option<Self> {
        r.as_rational().map(|c| q_to_f64(&c))
    }
}

impl Field for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_term_parts() {
        assert_eq!(q(-3, 4).term_parts(), (true, Some("3/4".to_string())));
        assert_eq!(qi(1).term_parts(), (false, None));
        assert_eq!(qi(-1).term_parts(), (true, None));
        assert_eq!(fmt_q(&q(6, 3)), "2");
    }

    #[test]
    fn rational_to_float() {
        assert!((q_to_f64(&q(1, 3)) - 1.0 / 3.0).abs() < 1e-16);
        let huge = Q::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399) * 4);
        assert!((q_to_f64(&huge) - 2.5).abs() < 1e-12);
    }
}
