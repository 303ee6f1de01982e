use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::products::{shuffle_words, stuffle_words};
use super::SeriesError;
use crate::alphabet::{pi_y_word, Letter, Word};
use crate::ring::{Coeff, Q};

/// A noncommutative polynomial: finitely many words with nonzero
/// coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct NCPoly<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> Default for NCPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> NCPoly<C> {
    pub fn zero() -> Self {
        NCPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(C::one(), w)
    }

    pub fn letter(x: Letter) -> Self {
        Self::word(Word::letter(x))
    }

    pub fn monomial(c: C, w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
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

    /// Adds `c·w` in place, pruning a resulting zero.
    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let sum = old.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Word::empty())
    }

    /// Terms in the internal (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    /// Terms ordered by grade, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(&Word, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.graded_cmp(b.0));
        v
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn max_grade(&self) -> Option<usize> {
        self.terms.keys().map(Word::grade).max()
    }

    /// Whether every support word uses `y` letters (the empty word counts as
    /// compatible with both alphabets).
    pub fn letters_are_y(&self) -> bool {
        self.terms.keys().all(|w| w.letters().iter().all(|l| l.is_y()))
    }

    pub fn letters_are_x(&self) -> bool {
        self.terms.keys().all(|w| w.letters().iter().all(|l| !l.is_y()))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a.clone() * c.clone())))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NCPoly<D> {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Option<Word>) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(w, c)| f(w).map(|v| (v, c.clone()))))
    }

    /// Keeps the words of grade at most `bound`.
    pub fn truncate(&self, bound: usize) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.grade() <= bound)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of grade `g`.
    pub fn component(&self, g: usize) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.grade() == g)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut grades = self.terms.keys().map(Word::grade);
        match grades.next() {
            None => true,
            Some(g) => grades.all(|h| h == g),
        }
    }

    /// Concatenation product.
    pub fn conc(&self, other: &Self) -> Self {
        self.conc_bounded(other, usize::MAX)
    }

    pub(crate) fn conc_bounded(&self, other: &Self, bound: usize) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            let gu = u.grade();
            if gu > bound {
                continue;
            }
            for (v, b) in &other.terms {
                if gu + v.grade() <= bound {
                    out.add_term(u.concat(v), a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Shuffle product.
    pub fn shuffle(&self, other: &Self) -> Self {
        self.merge_bounded(other, usize::MAX, false)
    }

    /// Quasi-shuffle product; `y_i` and `y_j` contract to `y_{i+j}`.
    /// Letters that are not `y`s are shuffled without contraction.
    pub fn stuffle(&self, other: &Self) -> Self {
        self.merge_bounded(other, usize::MAX, true)
    }

    pub(crate) fn merge_bounded(&self, other: &Self, bound: usize, contract: bool) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.grade() + v.grade() > bound {
                    continue;
                }
                let ab = a.clone() * b.clone();
                let words = if contract { stuffle_words(u, v) } else { shuffle_words(u, v) };
                for (w, n) in words {
                    out.add_term(w, ab.clone() * C::from_int(n as i64));
                }
            }
        }
        out
    }

    /// `p^n` for concatenation.
    pub fn conc_pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.conc(self))
    }

    /// `p^{⧢ n}`.
    pub fn shuffle_pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.shuffle(self))
    }

    /// `p^{⧣ n}`.
    pub fn stuffle_pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.stuffle(self))
    }

    /// Lie bracket `[p, q] = pq - qp`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.conc(other) - other.conc(self)
    }

    /// The pairing `<p, q> = Σ_w <p,w><q,w>`.
    pub fn pair(&self, other: &Self) -> C {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .terms
            .iter()
            .filter_map(|(w, a)| large.terms.get(w).map(|b| a.clone() * b.clone()))
            .fold(C::zero(), |acc, x| acc + x)
    }

    /// Extends a letter substitution to a concatenation morphism.
    pub fn substitute(&self, image: &impl Fn(Letter) -> NCPoly<C>) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut prod = Self::constant(c.clone());
            for &l in w.letters() {
                prod = prod.conc(&image(l));
            }
            out = out + prod;
        }
        out
    }
}

impl<C: Coeff> Add for NCPoly<C> {
    type Output = NCPoly<C>;
    fn add(mut self, rhs: NCPoly<C>) -> NCPoly<C> {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<C: Coeff> Sub for NCPoly<C> {
    type Output = NCPoly<C>;
    fn sub(self, rhs: NCPoly<C>) -> NCPoly<C> {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for NCPoly<C> {
    type Output = NCPoly<C>;
    fn neg(self) -> NCPoly<C> {
        NCPoly { terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect() }
    }
}

impl<C: Coeff> Mul for NCPoly<C> {
    type Output = NCPoly<C>;
    fn mul(self, rhs: NCPoly<C>) -> NCPoly<C> {
        self.conc(&rhs)
    }
}

impl<C: Coeff> fmt::Display for NCPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, mag) = c.term_parts();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = mag.unwrap_or_else(|| "1".to_string());
            if w.is_empty() {
                f.write_str(&mag)?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

fn check_same_alphabet<C: Coeff>(p: &NCPoly<C>, q: &NCPoly<C>) -> Result<(), SeriesError> {
    let all_x = p.letters_are_x() && q.letters_are_x();
    let all_y = p.letters_are_y() && q.letters_are_y();
    if all_x || all_y {
        Ok(())
    } else {
        Err(SeriesError::AlphabetMismatch)
    }
}

/// Concatenation of two polynomials over the same alphabet.
pub fn conc_product<C: Coeff>(p: &NCPoly<C>, q: &NCPoly<C>) -> Result<NCPoly<C>, SeriesError> {
    check_same_alphabet(p, q)?;
    Ok(p.conc(q))
}

/// Shuffle of two polynomials over the same alphabet.
pub fn shuffle_product<C: Coeff>(p: &NCPoly<C>, q: &NCPoly<C>) -> Result<NCPoly<C>, SeriesError> {
    check_same_alphabet(p, q)?;
    Ok(p.shuffle(q))
}

/// Quasi-shuffle of two polynomials over `Y`.
pub fn stuffle_product<C: Coeff>(p: &NCPoly<C>, q: &NCPoly<C>) -> Result<NCPoly<C>, SeriesError> {
    if !(p.letters_are_y() && q.letters_are_y()) {
        return Err(SeriesError::NotGraded);
    }
    Ok(p.stuffle(q))
}

/// Linear extension of `x0^{k-1} x1 -> y_k`; words ending in `x0` map to 0.
pub fn pi_y<C: Coeff>(p: &NCPoly<C>) -> NCPoly<C> {
    p.map_words(pi_y_word)
}

impl NCPoly<Q> {
    /// Maps rational coefficients into another ring.
    pub fn lift<D: Coeff>(&self) -> NCPoly<D> {
        self.map_coeffs(D::from_rational)
    }
}
