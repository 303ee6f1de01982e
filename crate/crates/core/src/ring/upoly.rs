use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_q, q_to_f64, qi, Coeff, Q};

/// Univariate polynomial over `Q`, coefficients in ascending degree, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<Q>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: Q) -> Self {
        UPoly::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        UPoly::new(vec![qi(0), qi(1)])
    }

    pub fn monomial(c: Q, deg: usize) -> Self {
        let mut coeffs = vec![Q::zero(); deg + 1];
        coeffs[deg] = c;
        UPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Q) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&(Q::one() / lc))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * qi(i as i64))
                .collect(),
        )
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + q_to_f64(c))
    }

    /// `p(x + a)`.
    pub fn shift(&self, a: &Q) -> UPoly {
        let lin = UPoly::new(vec![a.clone(), qi(1)]);
        self.coeffs
            .iter()
            .rev()
            .fold(UPoly::zero(), |acc, c| acc * lin.clone() + UPoly::constant(c.clone()))
    }

    /// Integer-content normalization: returns `p / c` with integer coprime
    /// coefficients, and the factor `c`.
    pub fn primitive_part(&self) -> (UPoly, Q) {
        use num_integer::Integer;
        if self.is_zero() {
            return (UPoly::zero(), Q::one());
        }
        let mut den = num_bigint::BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = num_bigint::BigInt::zero();
        for c in &self.coeffs {
            let v = (c * Q::from_integer(den.clone())).to_integer();
            num = num.gcd(&v);
        }
        let factor = Q::new(num, den);
        (self.scale(&(Q::one() / &factor)), factor)
    }

    pub fn fmt_with(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_q(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", fmt_q(&mag)));
            }
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with('t'))
    }
}

impl Zero for UPoly {
    fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UPoly {
    fn one() -> Self {
        UPoly::constant(qi(1))
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        self + (-rhs)
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Coeff for UPoly {
    fn from_rational(q: &Q) -> Self {
        UPoly::constant(q.clone())
    }

    fn term_parts(&self) -> (bool, Option<String>) {
        if self.is_constant() {
            self.coeff(0).term_parts()
        } else {
            (false, Some(format!("({self})")))
        }
    }

    fn as_rational(&self) -> Option<Q> {
        self.is_constant().then(|| self.coeff(0))
    }

    fn from_ratfun(r: &super::RatFun) -> Option<Self> {
        r.is_polynomial().then(|| r.numer().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, p(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(UPoly::gcd(&a, &p(&[2, 2])), p(&[1, 1]));
        assert_eq!(UPoly::gcd(&p(&[1, 1]), &p(&[-1, 1])), UPoly::one());
    }

    #[test]
    fn shift_and_derivative() {
        let a = p(&[0, 0, 1]); // t^2
        assert_eq!(a.shift(&qi(1)), p(&[1, 2, 1]));
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(a.eval_q(&q(1, 2)), q(1, 4));
    }

    #[test]
    fn printing() {
        assert_eq!(p(&[1, -1]).fmt_with('z'), "1-z");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "-1+t^2");
        assert_eq!(UPoly::new(vec![q(1, 2), qi(0), qi(-3)]).to_string(), "1/2-3*t^2");
        assert_eq!(UPoly::zero().to_string(), "0");
    }

    #[test]
    fn primitive() {
        let a = UPoly::new(vec![q(1, 2), q(-3, 4)]);
        let (pp, c) = a.primitive_part();
        assert_eq!(pp, p(&[2, -3]));
        assert_eq!(c, q(1, 4));
    }
}
