use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};


use super::{NCPoly, SeriesError};
use crate::alphabet::{Letter, Word};
use crate::ring::Coeff;

/// Finite sum of `u ⊗ v` with nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorPoly<C> {
    terms: BTreeMap<(Word, Word), C>,
}

impl<C: Coeff> Default for TensorPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> TensorPoly<C> {
    pub fn zero() -> Self {
        TensorPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::pure(C::one(), Word::empty(), Word::empty())
    }

    pub fn pure(c: C, u: Word, v: Word) -> Self {
        let mut t = Self::zero();
        t.add_term(u, v, c);
        t
    }

    /// `p ⊗ q`.
    pub fn tensor(p: &NCPoly<C>, q: &NCPoly<C>) -> Self {
        let mut t = Self::zero();
        for (u, a) in p.iter() {
            for (v, b) in q.iter() {
                t.add_term(u.clone(), v.clone(), a.clone() * b.clone());
            }
        }
        t
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        match self.terms.get_mut(&key) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> C {
        self.terms.get(&(u.clone(), v.clone())).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Word, Word), &C)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut t = Self::zero();
        for ((u, v), a) in &self.terms {
            t.add_term(u.clone(), v.clone(), a.clone() * c.clone());
        }
        t
    }

    /// Componentwise product where each side uses its own bilinear product
    /// on words.
    pub fn product_with(
        &self,
        other: &Self,
        left: impl Fn(&NCPoly<C>, &NCPoly<C>) -> NCPoly<C>,
        right: impl Fn(&NCPoly<C>, &NCPoly<C>) -> NCPoly<C>,
    ) -> Self {
        let mut out = Self::zero();
        for ((u1, v1), a) in &self.terms {
            for ((u2, v2), b) in &other.terms {
                let l = left(&NCPoly::word(u1.clone()), &NCPoly::word(u2.clone()));
                let r = right(&NCPoly::word(v1.clone()), &NCPoly::word(v2.clone()));
                let ab = a.clone() * b.clone();
                for (lu, lc) in l.iter() {
                    for (rv, rc) in r.iter() {
                        out.add_term(lu.clone(), rv.clone(), ab.clone() * lc.clone() * rc.clone());
                    }
                }
            }
        }
        out
    }

    /// Concatenation on both sides.
    pub fn conc(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((u1, v1), a) in &self.terms {
            for ((u2, v2), b) in &other.terms {
                out.add_term(u1.concat(u2), v1.concat(v2), a.clone() * b.clone());
            }
        }
        out
    }

    /// Applies `f ⊗ g`.
    pub fn map_sides(&self, f: impl Fn(&Word) -> NCPoly<C>, g: impl Fn(&Word) -> NCPoly<C>) -> Self {
        let mut out = Self::zero();
        for ((u, v), c) in &self.terms {
            out = out + Self::tensor(&f(u), &g(v)).scale(c);
        }
        out
    }

    /// Keeps the terms whose grades satisfy `keep(left grade, right grade)`.
    pub fn filter_grades(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        TensorPoly {
            terms: self
                .terms
                .iter()
                .filter(|((u, v), _)| keep(u.grade(), v.grade()))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Pairs with `p ⊗ q`: `Σ <T, u⊗v> <p,u> <q,v>`.
    pub fn pair(&self, p: &NCPoly<C>, q: &NCPoly<C>) -> C {
        self.terms
            .iter()
            .map(|((u, v), c)| c.clone() * p.coeff(u) * q.coeff(v))
            .fold(C::zero(), |a, b| a + b)
    }
}

impl<C: Coeff> Add for TensorPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for ((u, v), c) in rhs.terms {
            self.add_term(u, v, c);
        }
        self
    }
}

impl<C: Coeff> Sub for TensorPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for TensorPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        TensorPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<C: Coeff> fmt::Display for TensorPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((u, v), c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.term_parts();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if let Some(m) = mag {
                write!(f, "{m}*")?;
            }
            write!(f, "{u}⊗{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoproductKind {
    /// Unshuffle: `Δ(x) = x⊗1 + 1⊗x` on letters, a concatenation morphism.
    Shuffle,
    /// `Δ(y_k) = y_k⊗1 + 1⊗y_k + Σ_{i+j=k} y_i⊗y_j`, a concatenation morphism.
    Stuffle,
    /// Deconcatenation `Δ(w) = Σ_{uv=w} u⊗v`.
    Conc,
}

fn letter_coproduct<C: Coeff>(kind: CoproductKind, l: Letter) -> TensorPoly<C> {
    let mut t = TensorPoly::zero();
    t.add_term(Word::letter(l), Word::empty(), C::one());
    t.add_term(Word::empty(), Word::letter(l), C::one());
    if let (CoproductKind::Stuffle, Letter::Y(k)) = (kind, l) {
        for i in 1..k {
            t.add_term(Word::letter(Letter::Y(i)), Word::letter(Letter::Y(k - i)), C::one());
        }
    }
    t
}

/// Coproduct of a polynomial.
pub fn coproduct<C: Coeff>(kind: CoproductKind, p: &NCPoly<C>) -> Result<TensorPoly<C>, SeriesError> {
    if kind == CoproductKind::Stuffle && !p.letters_are_y() {
        return Err(SeriesError::NotGraded);
    }
    let mut out = TensorPoly::zero();
    for (w, c) in p.iter() {
        let t = match kind {
            CoproductKind::Conc => {
                let mut t = TensorPoly::zero();
                for i in 0..=w.len() {
                    t.add_term(w.slice(0, i), w.slice(i, w.len()), C::one());
                }
                t
            }
            _ => w
                .letters()
                .iter()
                .fold(TensorPoly::one(), |acc, &l| acc.conc(&letter_coproduct(kind, l))),
        };
        out = out + t.scale(c);
    }
    Ok(out)
}
