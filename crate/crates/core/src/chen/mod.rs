//! Chen series of real-segment paths: iterated integrals of input forms
//! `u_x(z) dz`, group-likeness checks, evaluation of `y = ⟨C, R⟩` for a
//! rational series `R`, and the scalar linear ODE satisfied by `y`.

mod collocation;
mod pairing;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::alphabet::{Letter, Word};
use crate::diffring::{split_assignments, DiffError};
use crate::ring::{parse_coeff, q_to_f64, Coeff, RatFun, UPoly, Q};
use crate::series::SeriesError;

pub use collocation::{
    chen_series, chen_series_for, friedrichs_check, iterated_integral, log_series, primitive_log_check,
    ChenEvaluation,
};
pub use pairing::{
    chen_series_for_rep, derivative_rows, derive_scalar_ode, ode_state, pair_ode, pair_series, support_words,
    tail_bound, PairValue, ScalarOde,
};

#[derive(Debug, Error)]
pub enum ChenError {
    #[error("input for {letter} is singular on the path ({detail})")]
    Singular { letter: Letter, detail: String },
    #[error("the iterated integral of {0} diverges at the start of the path")]
    Divergent(Word),
    #[error("quadrature did not reach the tolerance on {word} (estimate {estimate:e})")]
    NoConvergence { word: Word, estimate: f64 },
    #[error("no input assigned to {0}")]
    MissingInput(Letter),
    #[error("the evaluation has no value for {0}")]
    Incomplete(Word),
    #[error("input for {0} is not a rational function")]
    NotRational(Letter),
    #[error("ODE integration failed: {0}")]
    Integration(String),
    #[error("no linear dependence among the first {0} derivatives")]
    NoDependence(usize),
    #[error("input syntax: {0}")]
    Parse(String),
    #[error("invalid path: {0}")]
    Path(String),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// An input function `u_x`.
#[derive(Clone, Debug, PartialEq)]
pub enum InputFunction {
    Const(Q),
    /// `1/z`
    InvZ,
    /// `1/(1-z)`
    InvOneMinusZ,
    /// `exp(z)`
    Exp,
    /// `z^a`, real exponent
    Pow(f64),
    Rational(RatFun),
}

fn inv_z() -> RatFun {
    RatFun::one() / RatFun::var()
}

fn inv_one_minus_z() -> RatFun {
    RatFun::one() / (RatFun::one() - RatFun::var())
}

impl InputFunction {
    pub fn from_ratfun(f: RatFun) -> Self {
        if let Some(c) = f.as_rational() {
            InputFunction::Const(c)
        } else if f == inv_z() {
            InputFunction::InvZ
        } else if f == inv_one_minus_z() {
            InputFunction::InvOneMinusZ
        } else {
            InputFunction::Rational(f)
        }
    }

    /// The function as an element of `Q(z)`, when it is one.
    pub fn exact(&self) -> Option<RatFun> {
        match self {
            InputFunction::Const(c) => Some(RatFun::from_rational(c)),
            InputFunction::InvZ => Some(inv_z()),
            InputFunction::InvOneMinusZ => Some(inv_one_minus_z()),
            InputFunction::Rational(f) => Some(f.clone()),
            InputFunction::Exp | InputFunction::Pow(_) => None,
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        match self {
            InputFunction::Const(c) => q_to_f64(c),
            InputFunction::InvZ => 1.0 / z,
            InputFunction::InvOneMinusZ => 1.0 / (1.0 - z),
            InputFunction::Exp => z.exp(),
            InputFunction::Pow(a) => z.powf(*a),
            InputFunction::Rational(f) => f.eval_f64(z),
        }
    }

    /// Order of vanishing at `z0` (negative for a pole), or a lower bound
    /// for it; infinite for the zero function.
    pub fn order_at(&self, z0: f64) -> f64 {
        match self {
            InputFunction::Exp => 0.0,
            InputFunction::Pow(a) => {
                if z0 == 0.0 {
                    *a
                } else {
                    0.0
                }
            }
            _ => {
                let f = self.exact().expect("exact input");
                if f.is_zero() {
                    return f64::INFINITY;
                }
                let c = Q::from_float(z0).expect("finite point");
                multiplicity(f.numer(), &c) as f64 - multiplicity(f.denom(), &c) as f64
            }
        }
    }

    /// Fails when a singularity lies on the path other than at its start.
    pub fn check_path(&self, letter: Letter, path: &SegmentPath) -> Result<(), ChenError> {
        let (lo, hi) = (path.z0.min(path.z1), path.z0.max(path.z1));
        let singular = |detail: String| Err(ChenError::Singular { letter, detail });
        match self {
            InputFunction::Exp => Ok(()),
            InputFunction::Pow(a) => {
                let integer = a.fract() == 0.0;
                if !integer && lo < 0.0 {
                    singular(format!("z^{a} needs z >= 0"))
                } else if *a < 0.0 && lo <= 0.0 && hi >= 0.0 && path.z0 != 0.0 {
                    singular(format!("z^{a} has a pole at 0"))
                } else {
                    Ok(())
                }
            }
            _ => {
                let f = self.exact().expect("exact input");
                let c = Q::from_float(path.z0).expect("finite point");
                let mut rest = f.denom().clone();
                while rest.degree().unwrap_or(0) > 0 && rest.eval_q(&c).is_zero() {
                    rest = rest.div_rem(&UPoly::new(vec![-c.clone(), Q::one()])).0;
                }
                let (a, b) = (Q::from_float(lo).expect("finite"), Q::from_float(hi).expect("finite"));
                if rest.eval_q(&a).is_zero() || rest.eval_q(&b).is_zero() || sturm_count(&rest, &a, &b) > 0 {
                    singular(format!("pole of {} in [{lo}, {hi}]", f.fmt_with('z')))
                } else {
                    Ok(())
                }
            }
        }
    }
}

fn multiplicity(p: &UPoly, c: &Q) -> usize {
    let lin = UPoly::new(vec![-c.clone(), Q::one()]);
    let mut p = p.clone();
    let mut m = 0;
    while !p.is_zero() && p.eval_q(c).is_zero() {
        p = p.div_rem(&lin).0;
        m += 1;
    }
    m
}

/// Number of distinct real roots of `p` in `(a, b)`, where neither end is a root.
fn sturm_count(p: &UPoly, a: &Q, b: &Q) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let g = UPoly::gcd(p, &p.derivative());
    let p0 = p.div_rem(&g).0;
    let mut seq = vec![p0.clone(), p0.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    let changes = |x: &Q| {
        let signs: Vec<bool> =
            seq.iter().map(|q| q.eval_q(x)).filter(|v| !v.is_zero()).map(|v| v > Q::zero()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(a).saturating_sub(changes(b))
}

impl fmt::Display for InputFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputFunction::Const(c) => write!(f, "{c}"),
            InputFunction::InvZ => f.write_str("1/z"),
            InputFunction::InvOneMinusZ => f.write_str("1/(1-z)"),
            InputFunction::Exp => f.write_str("exp(z)"),
            InputFunction::Pow(a) => write!(f, "z^{a}"),
            InputFunction::Rational(r) => f.write_str(&r.fmt_with('z')),
        }
    }
}

impl FromStr for InputFunction {
    type Err = ChenError;

    /// Accepts a `Q(z)` expression, `exp(z)`, `pow(z, a)` or `z^a` with a
    /// real exponent.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Ok(f) = parse_coeff(s) {
            return Ok(InputFunction::from_ratfun(f));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "exp(z)" {
            return Ok(InputFunction::Exp);
        }
        let exponent = compact
            .strip_prefix("pow(z,")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| compact.strip_prefix("z^"))
            .map(|e| e.trim_start_matches('(').trim_end_matches(')'));
        if let Some(e) = exponent {
            let a = match e.parse::<f64>() {
                Ok(a) => a,
                Err(_) => parse_coeff(e)
                    .ok()
                    .and_then(|r| r.as_rational())
                    .map(|q| q_to_f64(&q))
                    .ok_or_else(|| ChenError::Parse(format!("bad exponent {e:?}")))?,
            };
            if a.is_finite() {
                return Ok(InputFunction::Pow(a));
            }
        }
        Err(ChenError::Parse(format!("unrecognized input function {s:?}")))
    }
}

/// Parses `x0=1/z, x1=1/(1-z)`.
pub fn parse_inputs(text: &str) -> Result<BTreeMap<Letter, InputFunction>, ChenError> {
    split_assignments(text)
        .map_err(ChenError::Parse)?
        .into_iter()
        .map(|(l, v)| v.parse().map(|f| (l, f)))
        .collect()
}

/// The `Q(z)` forms of the inputs.
pub fn exact_inputs(inputs: &BTreeMap<Letter, InputFunction>) -> Result<BTreeMap<Letter, RatFun>, ChenError> {
    inputs.iter().map(|(l, f)| f.exact().map(|r| (*l, r)).ok_or(ChenError::NotRational(*l))).collect()
}

/// The real segment from `z0` to `z1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentPath {
    pub z0: f64,
    pub z1: f64,
}

impl SegmentPath {
    pub fn new(z0: f64, z1: f64) -> Result<Self, ChenError> {
        if !z0.is_finite() || !z1.is_finite() {
            return Err(ChenError::Path("endpoints must be finite".into()));
        }
        if z0 == z1 {
            return Err(ChenError::Path("endpoints coincide".into()));
        }
        Ok(SegmentPath { z0, z1 })
    }

    pub fn length(&self) -> f64 {
        (self.z1 - self.z0).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::x;
    use crate::ring::qi;

    #[test]
    fn parse_catalog() {
        let inputs = parse_inputs("x0=1/z, x1=1/(1-z), x2=exp(z), x3=z^1.5, x4=pow(z, 1/2), x5=3, x6=z/(z+2)").unwrap();
        assert_eq!(inputs[&x(0)], InputFunction::InvZ);
        assert_eq!(inputs[&x(1)], InputFunction::InvOneMinusZ);
        assert_eq!(inputs[&x(2)], InputFunction::Exp);
        assert_eq!(inputs[&x(3)], InputFunction::Pow(1.5));
        assert_eq!(inputs[&x(4)], InputFunction::Pow(0.5));
        assert_eq!(inputs[&x(5)], InputFunction::Const(qi(3)));
        assert!(matches!(inputs[&x(6)], InputFunction::Rational(_)));
        assert!((inputs[&x(6)].eval(2.0) - 0.5).abs() < 1e-15);
        assert!(parse_inputs("x0=sin(z)").is_err());
        assert!(exact_inputs(&inputs).is_err());
    }

    #[test]
    fn orders_and_singularities() {
        let p = |a, b| SegmentPath::new(a, b).unwrap();
        assert_eq!(InputFunction::InvZ.order_at(0.0), -1.0);
        assert_eq!(InputFunction::InvZ.order_at(0.5), 0.0);
        assert_eq!(InputFunction::Pow(2f64.sqrt()).order_at(0.0), 2f64.sqrt());
        let sq: InputFunction = "z^2/(z-1)".parse().unwrap();
        assert_eq!(sq.order_at(0.0), 2.0);
        assert_eq!(sq.order_at(1.0), -1.0);
        assert!(InputFunction::InvZ.check_path(x(0), &p(0.0, 1.0)).is_ok());
        assert!(InputFunction::InvZ.check_path(x(0), &p(1.0, 0.0)).is_err());
        assert!(InputFunction::InvZ.check_path(x(0), &p(-1.0, 1.0)).is_err());
        assert!(InputFunction::InvOneMinusZ.check_path(x(1), &p(0.0, 0.5)).is_ok());
        assert!(InputFunction::InvOneMinusZ.check_path(x(1), &p(0.0, 1.0)).is_err());
        let irr: InputFunction = "1/(z^2-2)".parse().unwrap();
        assert!(irr.check_path(x(0), &p(0.0, 1.0)).is_ok());
        assert!(irr.check_path(x(0), &p(0.0, 1.5)).is_err());
        let double: InputFunction = "1/(z^2-2*z+1)".parse().unwrap();
        assert!(double.check_path(x(0), &p(0.0, 2.0)).is_err());
        assert!(InputFunction::Pow(0.5).check_path(x(0), &p(-1.0, 1.0)).is_err());
        assert!(SegmentPath::new(1.0, 1.0).is_err());
    }
}
