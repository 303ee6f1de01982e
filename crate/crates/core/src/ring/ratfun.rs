use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Coeff, Field, UPoly, Q};

/// Univariate rational function over `Q`, kept with coprime numerator and
/// denominator and a monic denominator so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: UPoly,
    den: UPoly,
}

impl RatFun {
    /// Builds `num / den`; panics when `den` is zero.
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = UPoly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading();
        let inv = Q::one() / lc;
        RatFun { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFun { num: p, den: UPoly::one() }
    }

    pub fn var() -> Self {
        RatFun::from_poly(UPoly::var())
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn derivative(&self) -> RatFun {
        let n = self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        RatFun::new(n, self.den.clone() * self.den.clone())
    }

    pub fn nth_derivative(&self, r: usize) -> RatFun {
        (0..r).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval_q(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval_q(x);
        (!d.is_zero()).then(|| self.num.eval_q(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn pow(&self, e: u32) -> RatFun {
        (0..e).fold(RatFun::one(), |acc, _| acc * self.clone())
    }

    pub fn fmt_with(&self, var: char) -> String {
        if self.den.is_one() {
            self.num.fmt_with(var)
        } else {
            format!("({})/({})", self.num.fmt_with(var), self.den.fmt_with(var))
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with('z'))
    }
}

impl From<UPoly> for RatFun {
    fn from(p: UPoly) -> Self {
        RatFun::from_poly(p)
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun { num: UPoly::zero(), den: UPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun { num: UPoly::one(), den: UPoly::one() }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(self.num + rhs.num, self.den);
        }
        RatFun::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -self.num, den: self.den }
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        RatFun::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for RatFun {
    type Output = RatFun;
    fn div(self, rhs: RatFun) -> RatFun {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFun::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl Coeff for RatFun {
    fn from_rational(q: &Q) -> Self {
        RatFun::from_poly(UPoly::constant(q.clone()))
    }

    fn term_parts(&self) -> (bool, Option<String>) {
        match self.as_rational() {
            Some(c) => c.term_parts(),
            None => (false, Some(format!("({self})"))),
        }
    }

    fn as_rational(&self) -> Option<Q> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    fn from_ratfun(r: &RatFun) -> Option<Self> {
        Some(r.clone())
    }
}

impl Field for RatFun {
    fn complexity(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0) + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qi;

    #[test]
    fn normal_form_is_canonical() {
        // (z^2 - 1)/(2z - 2) = (z + 1)/2
        let a = RatFun::new(
            UPoly::new(vec![qi(-1), qi(0), qi(1)]),
            UPoly::new(vec![qi(-2), qi(2)]),
        );
        let b = RatFun::new(UPoly::new(vec![qi(1), qi(1)]), UPoly::constant(qi(2)));
        assert_eq!(a, b);
        assert!(a.is_polynomial());
    }

    #[test]
    fn field_ops() {
        let z = RatFun::var();
        let one_minus_z = RatFun::one() - z.clone();
        let f = RatFun::one() / (z.clone() * one_minus_z.clone());
        let g = RatFun::one() / z.clone() + RatFun::one() / one_minus_z;
        assert_eq!(f, g);
        assert_eq!((RatFun::one() / z.clone()).derivative(), -(RatFun::one() / (z.clone() * z)));
        assert_eq!(f.to_string(), "(-1)/(-z+z^2)");
    }
}
