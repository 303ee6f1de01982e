use std::fmt;


use super::{NCPoly, SeriesError};
use crate::alphabet::Word;
use crate::ring::{qi, Coeff};

/// A series known exactly on all words of grade at most `bound`.
#[derive(Clone, PartialEq, Debug)]
pub struct Truncated<C> {
    bound: usize,
    poly: NCPoly<C>,
}

impl<C: Coeff> Truncated<C> {
    /// Truncates `p` at `bound`.
    pub fn new(p: NCPoly<C>, bound: usize) -> Self {
        Truncated { poly: p.truncate(bound), bound }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn poly(&self) -> &NCPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> NCPoly<C> {
        self.poly
    }

    /// Coefficient of `w`; fails beyond the bound.
    pub fn coeff(&self, w: &Word) -> Result<C, SeriesError> {
        if w.grade() > self.bound {
            return Err(SeriesError::BoundExceeded { needed: w.grade(), bound: self.bound });
        }
        Ok(self.poly.coeff(w))
    }

    pub fn constant_term(&self) -> C {
        self.poly.constant_term()
    }

    pub fn add(&self, other: &Self) -> Self {
        let b = self.bound.min(other.bound);
        Truncated::new(self.poly.truncate(b) + other.poly.truncate(b), b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        Truncated { bound: self.bound, poly: self.poly.scale(c) }
    }

    pub fn conc(&self, other: &Self) -> Self {
        let b = self.bound.min(other.bound);
        Truncated { bound: b, poly: self.poly.conc_bounded(&other.poly, b) }
    }

    pub fn shuffle(&self, other: &Self) -> Self {
        let b = self.bound.min(other.bound);
        Truncated { bound: b, poly: self.poly.merge_bounded(&other.poly, b, false) }
    }

    pub fn stuffle(&self, other: &Self) -> Self {
        let b = self.bound.min(other.bound);
        Truncated { bound: b, poly: self.poly.merge_bounded(&other.poly, b, true) }
    }

    /// Pairing with a polynomial whose support lies within the bound.
    pub fn pair(&self, p: &NCPoly<C>) -> Result<C, SeriesError> {
        if let Some(g) = p.max_grade() {
            if g > self.bound {
                return Err(SeriesError::BoundExceeded { needed: g, bound: self.bound });
            }
        }
        Ok(self.poly.pair(p))
    }
}

impl<C: Coeff> fmt::Display for Truncated<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bound == usize::MAX {
            write!(f, "{}", self.poly)
        } else {
            write!(f, "{} + O({})", self.poly, self.bound + 1)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// `P ▷ S` with `<P▷S, w> = <S, wP>`.
    Left,
    /// `S ◁ P` with `<S◁P, w> = <S, Pw>`.
    Right,
}

/// Shift of `s` by the polynomial `p`. The result is known up to
/// `s.bound() - deg(p)`.
pub fn shift<C: Coeff>(side: Side, s: &Truncated<C>, p: &NCPoly<C>) -> Result<Truncated<C>, SeriesError> {
    let deg = p.max_grade().unwrap_or(0);
    if deg > s.bound {
        return Err(SeriesError::BoundExceeded { needed: deg, bound: s.bound });
    }
    let mut out = NCPoly::zero();
    for (u, a) in s.poly.iter() {
        for (v, b) in p.iter() {
            if v.len() > u.len() {
                continue;
            }
            let rest = match side {
                Side::Left if u.letters().ends_with(v.letters()) => u.slice(0, u.len() - v.len()),
                Side::Right if u.letters().starts_with(v.letters()) => u.slice(v.len(), u.len()),
                _ => continue,
            };
            out.add_term(rest, a.clone() * b.clone());
        }
    }
    let bound = if s.bound == usize::MAX { usize::MAX } else { s.bound - deg };
    Ok(Truncated::new(out, bound))
}

/// Kleene star `Σ_n S^n` up to grade `bound`.
pub fn star<C: Coeff>(s: &Truncated<C>, bound: usize) -> Result<Truncated<C>, SeriesError> {
    if !s.constant_term().is_zero() {
        return Err(SeriesError::NonzeroConstant);
    }
    let b = bound.min(s.bound);
    let base = Truncated::new(s.poly.clone(), b);
    let one = Truncated::new(NCPoly::one(), b);
    let mut acc = one.clone();
    for _ in 0..b {
        acc = one.add(&base.conc(&acc));
    }
    Ok(acc)
}

/// Truncated concatenation exponential of a proper series.
pub fn t_exp<C: Coeff>(s: &Truncated<C>, bound: usize) -> Result<Truncated<C>, SeriesError> {
    if !s.constant_term().is_zero() {
        return Err(SeriesError::NonzeroConstant);
    }
    let b = bound.min(s.bound);
    let base = Truncated::new(s.poly.clone(), b);
    let mut term = Truncated::new(NCPoly::one(), b);
    let mut acc = term.clone();
    for n in 1..=b {
        term = term.conc(&base).scale(&C::from_rational(&(qi(1) / qi(n as i64))));
        if term.poly.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Truncated concatenation logarithm of a series with constant term one.
pub fn t_log<C: Coeff>(s: &Truncated<C>, bound: usize) -> Result<Truncated<C>, SeriesError> {
    if s.constant_term() != C::one() {
        return Err(SeriesError::ConstantNotOne);
    }
    let b = bound.min(s.bound);
    let base = Truncated::new(s.poly.clone() - NCPoly::one(), b);
    let mut power = Truncated::new(NCPoly::one(), b);
    let mut acc = Truncated::new(NCPoly::zero(), b);
    for n in 1..=b {
        power = power.conc(&base);
        if power.poly.is_zero() {
            break;
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale(&C::from_rational(&(qi(sign) / qi(n as i64)))));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{w, Alphabet};
    use crate::ring::{q, Q};
    use proptest::prelude::*;

    fn p(terms: &[(i64, &str)]) -> NCPoly<Q> {
        NCPoly::from_terms(terms.iter().map(|&(c, s)| (w(s), qi(c))))
    }

    fn exact(pp: NCPoly<Q>) -> Truncated<Q> {
        Truncated::new(pp, usize::MAX)
    }

    #[test]
    fn shifts() {
        let s = exact(p(&[(1, "x0.x1")]));
        assert_eq!(shift(Side::Right, &s, &p(&[(1, "x0")])).unwrap().poly(), &p(&[(1, "x1")]));
        assert_eq!(shift(Side::Left, &s, &p(&[(1, "x1")])).unwrap().poly(), &p(&[(1, "x0")]));
        let short = Truncated::new(p(&[(1, "x0")]), 1);
        assert!(shift(Side::Left, &short, &p(&[(1, "x0.x1")])).is_err());
    }

    /// `(P ◁ S) ▷ R = P ◁ (S ▷ R)` and both shifts are actions, checked on
    /// word-level instances against the defining pairings.
    #[test]
    fn shift_laws() {
        let words = Alphabet::x(2).words_up_to(3);
        let s = exact(NCPoly::from_terms(
            Alphabet::x(2).words_up_to(5).into_iter().enumerate().map(|(i, u)| (u, qi(i as i64 + 1))),
        ));
        for a in &words {
            for b in &words {
                let (pa, pb) = (NCPoly::word(a.clone()), NCPoly::word(b.clone()));
                // S ◁ (ab) = (S ◁ a) ◁ b
                let lhs = shift(Side::Right, &s, &(pa.clone() * pb.clone())).unwrap();
                let rhs = shift(Side::Right, &shift(Side::Right, &s, &pa).unwrap(), &pb).unwrap();
                assert_eq!(lhs.poly(), rhs.poly());
                // (ab) ▷ S = a ▷ (b ▷ S)
                let lhs = shift(Side::Left, &s, &(pa.clone() * pb.clone())).unwrap();
                let rhs = shift(Side::Left, &shift(Side::Left, &s, &pb).unwrap(), &pa).unwrap();
                assert_eq!(lhs.poly(), rhs.poly());
                // left and right shifts commute
                let lr = shift(Side::Left, &shift(Side::Right, &s, &pa).unwrap(), &pb).unwrap();
                let rl = shift(Side::Right, &shift(Side::Left, &s, &pb).unwrap(), &pa).unwrap();
                assert_eq!(lr.poly(), rl.poly());
            }
        }
    }

    #[test]
    fn stars() {
        let s = star(&exact(p(&[(1, "x0")])), 3).unwrap();
        assert_eq!(s.poly(), &p(&[(1, "1"), (1, "x0"), (1, "x0.x0"), (1, "x0.x0.x0")]));
        let s = star(&exact(p(&[(1, "x0.x1")])), 4).unwrap();
        assert_eq!(s.poly(), &p(&[(1, "1"), (1, "x0.x1"), (1, "x0.x1.x0.x1")]));
        let s = star(&exact(p(&[(1, "x0"), (1, "x1")])), 2).unwrap();
        let want: NCPoly<Q> = NCPoly::from_terms(Alphabet::x(2).words_up_to(2).into_iter().map(|u| (u, qi(1))));
        assert_eq!(s.poly(), &want);
        assert_eq!(star(&exact(p(&[(1, "1")])), 2), Err(SeriesError::NonzeroConstant));
    }

    #[test]
    fn exp_and_log() {
        let e = t_exp(&exact(p(&[(1, "x0")])), 2).unwrap();
        assert_eq!(
            e.poly(),
            &NCPoly::from_terms([(w("1"), qi(1)), (w("x0"), qi(1)), (w("x0.x0"), q(1, 2))])
        );
        let l = t_log(&exact(p(&[(1, "1"), (1, "x0")])), 3).unwrap();
        assert_eq!(
            l.poly(),
            &NCPoly::from_terms([(w("x0"), qi(1)), (w("x0.x0"), q(-1, 2)), (w("x0.x0.x0"), q(1, 3))])
        );
        assert_eq!(t_log(&exact(p(&[(1, "x0")])), 3), Err(SeriesError::ConstantNotOne));
    }

    proptest! {
        #[test]
        fn log_inverts_exp(coeffs in proptest::collection::vec(-4i64..5, 14)) {
            let words = Alphabet::x(2).words_up_to(3);
            let s: NCPoly<Q> = NCPoly::from_terms(
                words.iter().skip(1).zip(&coeffs).map(|(u, &c)| (u.clone(), q(c, 3))),
            );
            let s = Truncated::new(s, 4);
            let e = t_exp(&s, 4).unwrap();
            prop_assert_eq!(t_log(&e, 4).unwrap().into_poly(), s.poly().clone());
            let back = t_exp(&t_log(&e, 4).unwrap(), 4).unwrap();
            prop_assert_eq!(back.into_poly(), e.into_poly());
        }
    }
}
