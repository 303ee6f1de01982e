//! Differential polynomials in the input symbols `∂^r u_x`, the multiplier
//! polynomials `Q_l` with `d^l S = Q_l S` for `dS = M S`, specialization of
//! the symbols to rational functions, and the input-independence test.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::alphabet::{Letter, Word};
use crate::linalg::RowBasis;
use crate::ring::{fmt_q, parse_coeff, Coeff, RatFun, UPoly, Q};
use crate::series::NCPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("no function assigned to u_{0}")]
    MissingAssignment(Letter),
    #[error("pole of {0} is not rational")]
    NonRationalPole(String),
    #[error("denominator coefficients of {0} are too large to search for rational poles")]
    TooLarge(String),
    #[error("assignment syntax: {0}")]
    Parse(String),
}

/// The symbol `∂^order u_letter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub letter: Letter,
    pub order: u32,
}

impl Symbol {
    pub fn new(letter: Letter, order: u32) -> Self {
        Symbol { letter, order }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            0 => write!(f, "u_{}", self.letter),
            1 => write!(f, "du_{}", self.letter),
            r => write!(f, "d{r}u_{}", self.letter),
        }
    }
}

/// A monomial: symbols with positive exponents.
pub type Monomial = BTreeMap<Symbol, u32>;

/// Commutative polynomial over `Q` in the symbols `∂^r u_x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPolynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl DiffPolynomial {
    pub fn constant(c: Q) -> Self {
        let mut p = DiffPolynomial::default();
        p.add_term(Monomial::new(), c);
        p
    }

    pub fn symbol(s: Symbol) -> Self {
        DiffPolynomial::monomial(Q::one(), [(s, 1)].into_iter().collect())
    }

    /// `u_x`.
    pub fn u(x: Letter) -> Self {
        DiffPolynomial::symbol(Symbol::new(x, 0))
    }

    pub fn monomial(c: Q, m: Monomial) -> Self {
        let mut p = DiffPolynomial::default();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Sum over symbols of `order + 1`, when all monomials agree.
    pub fn weight(&self) -> Option<usize> {
        let ws: BTreeSet<usize> = self
            .terms
            .keys()
            .map(|m| m.iter().map(|(s, e)| (s.order as usize + 1) * *e as usize).sum())
            .collect();
        (ws.len() == 1).then(|| *ws.iter().next().expect("one weight"))
    }

    /// The derivation `∂`, extended by the Leibniz rule.
    pub fn derive(&self) -> DiffPolynomial {
        let mut out = DiffPolynomial::default();
        for (m, c) in &self.terms {
            for (s, e) in m {
                let mut dm = m.clone();
                if *e == 1 {
                    dm.remove(s);
                } else {
                    dm.insert(*s, e - 1);
                }
                *dm.entry(Symbol::new(s.letter, s.order + 1)).or_insert(0) += 1;
                out.add_term(dm, c * Q::from_integer(BigInt::from(*e)));
            }
        }
        out
    }

    /// Substitutes `u_x ↦ assignment[x]`, `∂^r u_x ↦ assignment[x]^{(r)}`.
    pub fn specialize(&self, assignment: &BTreeMap<Letter, RatFun>) -> Result<RatFun, DiffError> {
        let mut cache: BTreeMap<Symbol, RatFun> = BTreeMap::new();
        let mut total = RatFun::zero();
        for (m, c) in &self.terms {
            let mut term = RatFun::from_rational(c);
            for (s, e) in m {
                if !cache.contains_key(s) {
                    let base = assignment.get(&s.letter).ok_or(DiffError::MissingAssignment(s.letter))?;
                    cache.insert(*s, base.nth_derivative(s.order as usize));
                }
                term = term * cache[s].pow(*e);
            }
            total = total + term;
        }
        Ok(total)
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    m.iter()
        .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest total degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let deg = |m: &Monomial| m.values().sum::<u32>();
            deg(b).cmp(&deg(a)).then_with(|| a.cmp(b))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_empty() {
                f.write_str(&fmt_q(&mag))?;
            } else if mag.is_one() {
                f.write_str(&fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", fmt_q(&mag), fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl Add for DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(mut self, rhs: DiffPolynomial) -> DiffPolynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for DiffPolynomial {
    type Output = DiffPolynomial;
    fn neg(self) -> DiffPolynomial {
        DiffPolynomial { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for DiffPolynomial {
    type Output = DiffPolynomial;
    fn sub(self, rhs: DiffPolynomial) -> DiffPolynomial {
        self + (-rhs)
    }
}

impl Mul for DiffPolynomial {
    type Output = DiffPolynomial;
    fn mul(self, rhs: DiffPolynomial) -> DiffPolynomial {
        let mut out = DiffPolynomial::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut m = a.clone();
                for (s, e) in b {
                    *m.entry(*s).or_insert(0) += e;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Zero for DiffPolynomial {
    fn zero() -> Self {
        DiffPolynomial::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for DiffPolynomial {
    fn one() -> Self {
        DiffPolynomial::constant(Q::one())
    }
}

impl Coeff for DiffPolynomial {
    fn from_rational(q: &Q) -> Self {
        DiffPolynomial::constant(q.clone())
    }

    fn term_parts(&self) -> (bool, Option<String>) {
        match self.as_rational() {
            Some(c) => c.term_parts(),
            None if self.terms.len() == 1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                let text = if c.abs().is_one() { fmt_monomial(m) } else { format!("{}*{}", fmt_q(&c.abs()), fmt_monomial(m)) };
                (c.is_negative(), Some(text))
            }
            None => (false, Some(format!("({self})"))),
        }
    }

    fn as_rational(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    fn from_ratfun(r: &RatFun) -> Option<Self> {
        r.as_rational().map(DiffPolynomial::constant)
    }
}

/// Noncommutative polynomial with differential-polynomial coefficients.
pub type DiffNCPolynomial = NCPoly<DiffPolynomial>;

/// Coefficientwise derivation.
pub fn derive_nc(p: &DiffNCPolynomial) -> DiffNCPolynomial {
    p.map_coeffs(|c| c.derive())
}

pub fn specialize_nc(
    p: &DiffNCPolynomial,
    assignment: &BTreeMap<Letter, RatFun>,
) -> Result<NCPoly<RatFun>, DiffError> {
    let mut out = NCPoly::zero();
    for (w, c) in p.iter() {
        out.add_term(w.clone(), c.specialize(assignment)?);
    }
    Ok(out)
}

/// `M = Σ_x u_x x`.
pub fn input_polynomial(letters: &[Letter]) -> DiffNCPolynomial {
    NCPoly::from_terms(letters.iter().map(|&x| (Word::letter(x), DiffPolynomial::u(x))))
}

/// `Q_0 = 1`, `Q_l = Q_{l-1} M + d Q_{l-1}`.
pub fn q_l(letters: &[Letter], l: usize) -> DiffNCPolynomial {
    let m = input_polynomial(letters);
    (0..l).fold(NCPoly::one(), |q, _| q.conc(&m) + derive_nc(&q))
}

/// All `r ∈ N^k` with `Σ r = total`.
pub(crate) fn compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `Q_l` in closed form: the sum over words `x_1..x_k` and derivation orders
/// `r` with `k + Σ r = l` of
/// `Π_m C(r_m + .. + r_k + k - m, r_m) · Π_m ∂^{r_m} u_{x_m} · x_1..x_k`.
pub fn q_l_explicit(letters: &[Letter], l: usize) -> DiffNCPolynomial {
    let mut out = NCPoly::zero();
    if l == 0 {
        return NCPoly::one();
    }
    let mut words: Vec<Vec<Letter>> = vec![vec![]];
    for k in 1..=l {
        words = words
            .iter()
            .flat_map(|w| letters.iter().map(move |&x| [w.as_slice(), &[x]].concat()))
            .collect();
        for r in compositions(l - k, k) {
            let mut c = BigInt::one();
            for m in 0..k {
                let tail: usize = r[m..].iter().sum();
                c *= binomial(tail + (k - 1 - m), r[m]);
            }
            for w in &words {
                let mut mono = Monomial::new();
                for (x, rm) in w.iter().zip(&r) {
                    *mono.entry(Symbol::new(*x, *rm as u32)).or_insert(0) += 1;
                }
                out.add_term(Word::new(w.clone()), DiffPolynomial::monomial(Q::from_integer(c.clone()), mono));
            }
        }
    }
    out
}

/// Splits `x0=a, x1=b` into letters and right-hand sides, ignoring commas
/// inside parentheses.
pub(crate) fn split_assignments(text: &str) -> Result<Vec<(Letter, &str)>, String> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut parts = Vec::new();
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    let mut out: Vec<(Letter, &str)> = Vec::new();
    for part in parts.into_iter().filter(|p| !p.trim().is_empty()) {
        let (name, value) =
            part.split_once('=').ok_or_else(|| format!("expected letter=function in {:?}", part.trim()))?;
        let letter: Letter = name.trim().parse().map_err(|e| format!("{e}"))?;
        if out.iter().any(|(l, _)| *l == letter) {
            return Err(format!("{letter} assigned twice"));
        }
        out.push((letter, value.trim()));
    }
    Ok(out)
}

/// Parses `x0=1/z, x1=1/(1-z)`.
pub fn parse_assignment(text: &str) -> Result<BTreeMap<Letter, RatFun>, DiffError> {
    split_assignments(text)
        .map_err(DiffError::Parse)?
        .into_iter()
        .map(|(l, v)| parse_coeff(v).map(|f| (l, f)).map_err(|e| DiffError::Parse(e.to_string())))
        .collect()
}

/// Base ring against which independence is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    /// Constants: `∂Q = 0`, so only plain linear independence matters.
    Rationals,
    /// `Q(z)`: no nonzero combination may be a derivative.
    RationalFunctions,
}

fn positive_divisors(n: &BigInt, what: &str) -> Result<Vec<u64>, DiffError> {
    let n = n.abs().to_u64().filter(|n| *n <= 1 << 40).ok_or_else(|| DiffError::TooLarge(what.to_string()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Ok(out)
}

/// The roots of `p` with multiplicities; fails when some root is irrational.
pub fn rational_roots(p: &UPoly, what: &str) -> Result<Vec<(Q, usize)>, DiffError> {
    let (prim, _) = p.primitive_part();
    let mut rest = prim.clone();
    let mut out = Vec::new();
    let linear = |c: &Q| UPoly::new(vec![-c.clone(), Q::one()]);
    let mut strip = |rest: &mut UPoly, c: Q| {
        let mut mult = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.eval_q(&c).is_zero() {
            *rest = rest.div_rem(&linear(&c)).0;
            mult += 1;
        }
        if mult > 0 {
            out.push((c, mult));
        }
    };
    strip(&mut rest, Q::zero());
    if rest.degree().unwrap_or(0) > 0 {
        let low = rest.coeffs().iter().find(|c| !c.is_zero()).expect("nonzero").to_integer();
        let high = rest.leading().to_integer();
        let ps = positive_divisors(&low, what)?;
        let qs = positive_divisors(&high, what)?;
        let mut cands = BTreeSet::new();
        for a in &ps {
            for b in &qs {
                if BigInt::from(*a).gcd(&BigInt::from(*b)).is_one() {
                    let v = Q::new(BigInt::from(*a), BigInt::from(*b));
                    cands.insert(-v.clone());
                    cands.insert(v);
                }
            }
        }
        for c in cands {
            strip(&mut rest, c);
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        return Err(DiffError::NonRationalPole(what.to_string()));
    }
    Ok(out)
}

/// First `n` Taylor coefficients of `num / den` at zero; `den(0) ≠ 0`.
fn taylor(num: &UPoly, den: &UPoly, n: usize) -> Vec<Q> {
    let d0 = den.coeff(0);
    let mut s: Vec<Q> = Vec::with_capacity(n);
    for k in 0..n {
        let mut v = num.coeff(k);
        for i in 1..=k {
            v -= den.coeff(i) * &s[k - i];
        }
        s.push(v / &d0);
    }
    s
}

/// Residues of `f` at each of its poles, which must all be rational.
pub fn residues(f: &RatFun) -> Result<BTreeMap<Q, Q>, DiffError> {
    let mut out = BTreeMap::new();
    for (c, m) in rational_roots(f.denom(), &f.to_string())? {
        let lin = UPoly::new(vec![-c.clone(), Q::one()]);
        let e = (0..m).fold(f.denom().clone(), |acc, _| acc.div_rem(&lin).0);
        let coeffs = taylor(&f.numer().shift(&c), &e.shift(&c), m);
        let r = coeffs[m - 1].clone();
        if !r.is_zero() {
            out.insert(c, r);
        }
    }
    Ok(out)
}

/// True iff no nonzero `Q`-combination `Σ c_x u_x` is a derivative in the base.
pub fn independence_criterion(inputs: &BTreeMap<Letter, RatFun>, base: Base) -> Result<bool, DiffError> {
    match base {
        Base::Rationals => {
            let den = inputs.values().fold(UPoly::one(), |acc, f| {
                let g = UPoly::gcd(&acc, f.denom());
                (acc * f.denom().clone()).div_rem(&g).0
            });
            let nums: Vec<UPoly> =
                inputs.values().map(|f| f.numer().clone() * den.div_rem(f.denom()).0).collect();
            let width = nums.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
            let mut basis = RowBasis::new(width);
            Ok(nums.iter().all(|p| basis.insert(&(0..width).map(|i| p.coeff(i)).collect::<Vec<_>>())))
        }
        Base::RationalFunctions => {
            let res: Vec<BTreeMap<Q, Q>> = inputs.values().map(residues).collect::<Result<_, _>>()?;
            let poles: BTreeSet<Q> = res.iter().flat_map(|r| r.keys().cloned()).collect();
            let mut basis = RowBasis::new(poles.len());
            Ok(res
                .iter()
                .all(|r| basis.insert(&poles.iter().map(|p| r.get(p).cloned().unwrap_or_else(Q::zero)).collect::<Vec<_>>())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::x;
    use crate::ring::{q, qi};

    fn z() -> RatFun {
        RatFun::var()
    }

    fn inv(f: RatFun) -> RatFun {
        RatFun::one() / f
    }

    fn sym(l: Letter, r: u32) -> DiffPolynomial {
        DiffPolynomial::symbol(Symbol::new(l, r))
    }

    #[test]
    fn derivation_examples() {
        let (a, b) = (x(0), x(1));
        assert_eq!(DiffPolynomial::u(a).derive(), sym(a, 1));
        let prod = DiffPolynomial::u(a) * DiffPolynomial::u(b);
        assert_eq!(prod.derive(), sym(a, 1) * DiffPolynomial::u(b) + DiffPolynomial::u(a) * sym(b, 1));
        let sq = DiffPolynomial::u(a) * DiffPolynomial::u(a);
        assert_eq!(sq.derive(), DiffPolynomial::constant(qi(2)) * DiffPolynomial::u(a) * sym(a, 1));
        let m = input_polynomial(&[a, b]);
        let dm = NCPoly::from_terms([(Word::letter(a), sym(a, 1)), (Word::letter(b), sym(b, 1))]);
        assert_eq!(derive_nc(&m), dm);
        assert!(DiffPolynomial::constant(qi(5)).derive().is_zero());
    }

    #[test]
    fn display() {
        let a = x(0);
        let p = DiffPolynomial::constant(qi(2)) * DiffPolynomial::u(a) * DiffPolynomial::u(a) - sym(a, 2);
        assert_eq!(p.to_string(), "2*u_x0^2 - d2u_x0");
        let m = input_polynomial(&[a]) + derive_nc(&input_polynomial(&[a]));
        assert_eq!(m.to_string(), "(u_x0 + du_x0)*x0");
    }

    #[test]
    fn small_q_l() {
        let (a, b) = (x(0), x(1));
        let letters = [a, b];
        assert_eq!(q_l(&letters, 0), NCPoly::one());
        assert_eq!(q_l(&letters, 1), input_polynomial(&letters));
        let mut q2 = NCPoly::zero();
        for &u in &letters {
            q2.add_term(Word::letter(u), sym(u, 1));
            for &v in &letters {
                q2.add_term(Word::new(vec![u, v]), DiffPolynomial::u(u) * DiffPolynomial::u(v));
            }
        }
        assert_eq!(q_l(&letters, 2), q2);
    }

    #[test]
    fn q_l_recursion_and_weight() {
        let letters = [x(0), x(1)];
        let m = input_polynomial(&letters);
        for l in 1..=6 {
            let prev = q_l(&letters, l - 1);
            let cur = q_l(&letters, l);
            assert_eq!(cur, prev.conc(&m) + derive_nc(&prev));
            for (w, c) in cur.iter() {
                // Each letter carries one symbol; weight counts letters plus derivatives.
                assert_eq!(c.weight(), Some(l));
                assert!(c.terms().all(|(mono, _)| mono.values().sum::<u32>() as usize == w.len()));
            }
        }
    }

    #[test]
    fn explicit_form_matches_recursion() {
        for letters in [vec![x(0)], vec![x(0), x(1)]] {
            for l in 0..=5 {
                assert_eq!(q_l_explicit(&letters, l), q_l(&letters, l), "l = {l}, letters {letters:?}");
            }
        }
    }

    /// Left-anchored reading of the multinomial product,
    /// `Π_m C(r_1 + .. + r_m + m - 1, r_m)`.
    fn q_l_left_anchored(letters: &[Letter], l: usize) -> DiffNCPolynomial {
        let mut out = NCPoly::zero();
        for k in 1..=l {
            for w in crate::automata::words_over(letters, k).into_iter().filter(|w| w.len() == k) {
                for r in compositions(l - k, k) {
                    let mut c = BigInt::one();
                    for m in 0..k {
                        let head: usize = r[..=m].iter().sum();
                        c *= binomial(head + m, r[m]);
                    }
                    let mut mono = Monomial::new();
                    for (x, rm) in w.letters().iter().zip(&r) {
                        *mono.entry(Symbol::new(*x, *rm as u32)).or_insert(0) += 1;
                    }
                    out.add_term(w.clone(), DiffPolynomial::monomial(Q::from_integer(c), mono));
                }
            }
        }
        out
    }

    #[test]
    fn left_anchored_reading_disagrees_from_weight_three() {
        let one = [x(0)];
        let two = [x(0), x(1)];
        assert_eq!(q_l_left_anchored(&two, 2), q_l(&two, 2));
        // Over a single letter the two readings cannot be told apart.
        assert_eq!(q_l_left_anchored(&one, 3), q_l(&one, 3));
        let l3 = q_l(&two, 3);
        let alt = q_l_left_anchored(&two, 3);
        assert_ne!(alt, l3);
        // (∂u_x0) u_x1 on x0.x1: the recursion gives 2, the left-anchored product 1.
        let w = Word::new(vec![x(0), x(1)]);
        let mono: Monomial = [(Symbol::new(x(0), 1), 1), (Symbol::new(x(1), 0), 1)].into_iter().collect();
        assert_eq!(l3.coeff(&w).coeff(&mono), qi(2));
        assert_eq!(alt.coeff(&w).coeff(&mono), qi(1));
    }

    #[test]
    fn specialization_examples() {
        let a = x(0);
        let b = x(1);
        let asg: BTreeMap<Letter, RatFun> = [(a, inv(z())), (b, inv(RatFun::one() - z()))].into_iter().collect();
        assert_eq!(sym(a, 1).specialize(&asg).unwrap(), -inv(z() * z()));
        let q2 = specialize_nc(&q_l(&[a], 2), &asg).unwrap();
        let zz = inv(z() * z());
        let expected = NCPoly::from_terms([(Word::new(vec![a, a]), zz.clone()), (Word::letter(a), -zz)]);
        assert_eq!(q2, expected);
        let uv = (DiffPolynomial::u(a) * DiffPolynomial::u(b)).specialize(&asg).unwrap();
        assert_eq!(uv, inv(z() * (RatFun::one() - z())));
        let only_a: BTreeMap<Letter, RatFun> = [(a, inv(z()))].into_iter().collect();
        assert_eq!(DiffPolynomial::u(b).specialize(&only_a), Err(DiffError::MissingAssignment(b)));
    }

    #[test]
    fn specialization_commutes_with_derivation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let asg = parse_assignment("x0=1/z, x1=1/(1-z), x2=(z^2+1)/(z-2)").unwrap();
        let letters = [x(0), x(1), x(2)];
        for _ in 0..40 {
            let mut p = DiffPolynomial::zero();
            for _ in 0..rng.gen_range(1..4) {
                let mut mono = Monomial::new();
                for _ in 0..rng.gen_range(0..3) {
                    let s = Symbol::new(letters[rng.gen_range(0..3)], rng.gen_range(0..3));
                    *mono.entry(s).or_insert(0) += 1;
                }
                p.add_term(mono, qi(rng.gen_range(-3..4)));
            }
            let lhs = p.derive().specialize(&asg).unwrap();
            let rhs = p.specialize(&asg).unwrap().derivative();
            assert_eq!(lhs, rhs, "p = {p}");
        }
    }

    #[test]
    fn assignment_parsing() {
        let asg = parse_assignment("x0=1/z, x1=1/(1-z)").unwrap();
        assert_eq!(asg[&x(0)], inv(z()));
        assert_eq!(asg[&x(1)], inv(RatFun::one() - z()));
        assert!(parse_assignment("x0=1/z, x0=z").is_err());
        assert!(parse_assignment("x0 1/z").is_err());
        assert!(parse_assignment("q=1").is_err());
        assert!(parse_assignment("x0=1/(").is_err());
    }

    #[test]
    fn residues_by_partial_fractions() {
        // 1/(z^2 (z-1)) = -1/z - 1/z^2 + 1/(z-1)
        let f = inv(z() * z() * (z() - RatFun::one()));
        let r = residues(&f).unwrap();
        assert_eq!(r.get(&qi(0)), Some(&qi(-1)));
        assert_eq!(r.get(&qi(1)), Some(&qi(1)));
        // (3z+1)/((2z-1)(z+2)) has residue 1/2 at 1/2 and 1 at -2.
        let g = parse_coeff("(3*z+1)/((2*z-1)*(z+2))").unwrap();
        let r = residues(&g).unwrap();
        assert_eq!(r.get(&q(1, 2)), Some(&q(1, 2)));
        assert_eq!(r.get(&qi(-2)), Some(&qi(1)));
        // A derivative has no residues.
        assert!(residues(&f.derivative()).unwrap().is_empty());
        assert!(matches!(residues(&inv(z() * z() - RatFun::from_int(2))), Err(DiffError::NonRationalPole(_))));
    }

    #[test]
    fn independence_examples() {
        let two = parse_assignment("x0=1/z, x1=1/(1-z)").unwrap();
        assert_eq!(independence_criterion(&two, Base::RationalFunctions), Ok(true));
        assert_eq!(independence_criterion(&two, Base::Rationals), Ok(true));
        let constant = parse_assignment("x0=1").unwrap();
        assert_eq!(independence_criterion(&constant, Base::RationalFunctions), Ok(false));
        assert_eq!(independence_criterion(&constant, Base::Rationals), Ok(true));
        // 1/z and 1/z + 1/z^2 differ by a derivative.
        let dep = parse_assignment("x0=1/z, x1=(z+1)/z^2").unwrap();
        assert_eq!(independence_criterion(&dep, Base::RationalFunctions), Ok(false));
        assert_eq!(independence_criterion(&dep, Base::Rationals), Ok(true));
        let lin = parse_assignment("x0=1/z, x1=2/z").unwrap();
        assert_eq!(independence_criterion(&lin, Base::Rationals), Ok(false));
        let irr = parse_assignment("x0=1/(z^2-2)").unwrap();
        assert!(independence_criterion(&irr, Base::RationalFunctions).is_err());
    }
}
