//! Dual PBW bases of the shuffle and quasi-shuffle bialgebras.
//!
//! `P_w`/`S_w` are built by the Lie-bracket recursion on standard
//! factorizations and divided shuffle powers. Over `Y`, `Π_w` uses the
//! eulerian projector `π_1` on letters and `Σ_w` is obtained by inverting
//! the duality matrix `<Π_v, w>` in each weight component.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::linalg::Matrix;
use crate::ring::{qi, Q};
use crate::series::{coproduct, shuffle_words, stuffle_words, CoproductKind, NCPoly, TensorPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("this basis is only defined over the graded alphabet Y")]
    RequiresY,
    #[error("word {0} is not over the alphabet")]
    ForeignWord(Word),
}

/// Memoizing builder for the bases over one alphabet.
pub struct Bases {
    alphabet: Alphabet,
    p: HashMap<Word, NCPoly<Q>>,
    s: HashMap<Word, NCPoly<Q>>,
    pi: HashMap<Word, NCPoly<Q>>,
    sigma: HashMap<Word, NCPoly<Q>>,
    pi1: HashMap<Word, NCPoly<Q>>,
    iterated: HashMap<(usize, Word), NCPoly<Q>>,
}

impl Bases {
    pub fn new(alphabet: Alphabet) -> Self {
        Bases {
            alphabet,
            p: HashMap::new(),
            s: HashMap::new(),
            pi: HashMap::new(),
            sigma: HashMap::new(),
            pi1: HashMap::new(),
            iterated: HashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn check(&self, w: &Word) -> Result<(), HopfError> {
        if w.letters().iter().all(|&l| self.alphabet.contains(l)) {
            Ok(())
        } else {
            Err(HopfError::ForeignWord(w.clone()))
        }
    }

    fn require_y(&self) -> Result<(), HopfError> {
        if self.alphabet.is_graded() {
            Ok(())
        } else {
            Err(HopfError::RequiresY)
        }
    }

    /// Groups the Lyndon factorization into `(l, multiplicity)` runs.
    fn factor_runs(&self, w: &Word) -> Vec<(Word, usize)> {
        let mut runs: Vec<(Word, usize)> = Vec::new();
        for l in self.alphabet.lyndon_factorization(w) {
            match runs.last_mut() {
                Some((m, i)) if *m == l => *i += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }

    pub fn p(&mut self, w: &Word) -> Result<NCPoly<Q>, HopfError> {
        self.check(w)?;
        Ok(self.p_rec(w, false))
    }

    /// `Π_w`; requires the alphabet `Y`.
    pub fn pi(&mut self, w: &Word) -> Result<NCPoly<Q>, HopfError> {
        self.require_y()?;
        self.check(w)?;
        Ok(self.p_rec(w, true))
    }

    /// Shared recursion of `P` (letters map to themselves) and `Π`
    /// (letters map to `π_1(y_s)`).
    fn p_rec(&mut self, w: &Word, eulerian: bool) -> NCPoly<Q> {
        let cache = if eulerian { &self.pi } else { &self.p };
        if let Some(v) = cache.get(w) {
            return v.clone();
        }
        let factors = self.alphabet.lyndon_factorization(w);
        let v = if w.is_empty() {
            NCPoly::one()
        } else if factors.len() > 1 {
            factors.iter().fold(NCPoly::one(), |acc, l| acc.conc(&self.p_rec(l, eulerian)))
        } else if w.len() == 1 {
            if eulerian {
                self.pi1_rec(w)
            } else {
                NCPoly::word(w.clone())
            }
        } else {
            let (l1, l2) = self.alphabet.standard_factorization(w).expect("w is Lyndon");
            self.p_rec(&l1, eulerian).bracket(&self.p_rec(&l2, eulerian))
        };
        let cache = if eulerian { &mut self.pi } else { &mut self.p };
        cache.insert(w.clone(), v.clone());
        v
    }

    pub fn s(&mut self, w: &Word) -> Result<NCPoly<Q>, HopfError> {
        self.check(w)?;
        Ok(self.s_rec(w))
    }

    fn s_rec(&mut self, w: &Word) -> NCPoly<Q> {
        if let Some(v) = self.s.get(w) {
            return v.clone();
        }
        let runs = self.factor_runs(w);
        let v = if w.is_empty() || w.len() == 1 {
            NCPoly::word(w.clone())
        } else if runs.len() == 1 && runs[0].1 == 1 {
            NCPoly::word(Word::letter(w.letters()[0])).conc(&self.s_rec(&w.tail()))
        } else {
            let mut acc = NCPoly::one();
            for (l, i) in runs {
                let sl = self.s_rec(&l);
                acc = acc.shuffle(&sl.shuffle_pow(i)).scale(&(qi(1) / factorial(i)));
            }
            acc
        };
        self.s.insert(w.clone(), v.clone());
        v
    }

    /// The eulerian projector on a word over `Y`.
    pub fn pi1(&mut self, w: &Word) -> Result<NCPoly<Q>, HopfError> {
        self.require_y()?;
        self.check(w)?;
        Ok(self.pi1_rec(w))
    }

    fn pi1_rec(&mut self, w: &Word) -> NCPoly<Q> {
        if let Some(v) = self.pi1.get(w) {
            return v.clone();
        }
        let mut out = NCPoly::zero();
        for k in 1..=w.grade().max(1) {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out + self.iterated_rec(k, w).scale(&(qi(sign) / qi(k as i64)));
        }
        self.pi1.insert(w.clone(), out.clone());
        out
    }

    /// `Σ_{u_1..u_k nonempty} <w, u_1 ⧣ ... ⧣ u_k> u_1...u_k`, through the
    /// reduced stuffle coproduct: `T_k(w) = Σ_{(a,b)} c · a · T_{k-1}(b)`.
    fn iterated_rec(&mut self, k: usize, w: &Word) -> NCPoly<Q> {
        if k == 1 {
            return if w.is_empty() { NCPoly::zero() } else { NCPoly::word(w.clone()) };
        }
        if let Some(v) = self.iterated.get(&(k, w.clone())) {
            return v.clone();
        }
        let mut out = NCPoly::zero();
        if w.grade() >= k {
            let delta = coproduct(CoproductKind::Stuffle, &NCPoly::word(w.clone())).expect("word over Y");
            for ((a, b), c) in delta.iter() {
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let tail = self.iterated_rec(k - 1, b);
                out = out + NCPoly::word(a.clone()).conc(&tail).scale(c);
            }
        }
        self.iterated.insert((k, w.clone()), out.clone());
        out
    }

    /// The conc-morphism `φ_{π_1}` sending `y_k` to `π_1(y_k)`.
    pub fn phi_pi1(&mut self, p: &NCPoly<Q>) -> Result<NCPoly<Q>, HopfError> {
        self.require_y()?;
        let mut images: HashMap<Letter, NCPoly<Q>> = HashMap::new();
        for w in p.support() {
            self.check(w)?;
            for &l in w.letters() {
                if !images.contains_key(&l) {
                    let v = self.pi1_rec(&Word::letter(l));
                    images.insert(l, v);
                }
            }
        }
        Ok(p.substitute(&|l| images[&l].clone()))
    }

    /// `Σ_w`, the dual of `Π` obtained from the duality system of the
    /// weight component of `w`.
    pub fn sigma(&mut self, w: &Word) -> Result<NCPoly<Q>, HopfError> {
        self.require_y()?;
        self.check(w)?;
        if !self.sigma.contains_key(w) {
            self.sigma_component(w.grade());
        }
        Ok(self.sigma[w].clone())
    }

    fn sigma_component(&mut self, g: usize) {
        let words = self.alphabet.words_of_grade(g);
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, u)| (u, i)).collect();
        let n = words.len();
        // m[v][j] = <Π_v, w_j>
        let mut m = Matrix::<Q>::zeros(n, n);
        for (i, v) in words.iter().enumerate() {
            for (u, c) in self.p_rec(v, true).iter() {
                m.set(i, index[u], c.clone());
            }
        }
        // Σ_u = Σ_j C[u][j] w_j with C · M^T = I.
        let c = m.transpose().inverse().expect("Π is a basis of each weight component");
        for (i, u) in words.iter().enumerate() {
            let poly = NCPoly::from_terms(words.iter().enumerate().map(|(j, w)| (w.clone(), c.get(i, j).clone())));
            self.sigma.insert(u.clone(), poly);
        }
    }
}

fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| acc * qi(k))
}

pub fn basis_p(alphabet: &Alphabet, w: &Word) -> Result<NCPoly<Q>, HopfError> {
    Bases::new(alphabet.clone()).p(w)
}

pub fn basis_s(alphabet: &Alphabet, w: &Word) -> Result<NCPoly<Q>, HopfError> {
    Bases::new(alphabet.clone()).s(w)
}

pub fn eulerian_pi1(w: &Word) -> Result<NCPoly<Q>, HopfError> {
    Bases::new(Alphabet::y()).pi1(w)
}

pub fn phi_pi1(p: &NCPoly<Q>) -> Result<NCPoly<Q>, HopfError> {
    Bases::new(Alphabet::y()).phi_pi1(p)
}

pub fn basis_pi(w: &Word) -> Result<NCPoly<Q>, HopfError> {
    Bases::new(Alphabet::y()).pi(w)
}

pub fn basis_sigma(w: &Word) -> Result<NCPoly<Q>, HopfError> {
    Bases::new(Alphabet::y()).sigma(w)
}

/// `π_1` extended linearly to polynomials over `Y`.
pub fn pi1_linear(bases: &mut Bases, p: &NCPoly<Q>) -> Result<NCPoly<Q>, HopfError> {
    let mut out = NCPoly::zero();
    for (w, c) in p.iter() {
        out = out + bases.pi1(w)?.scale(c);
    }
    Ok(out)
}

/// `(φ⊗φ)∘Δ_⧢ (w) - Δ_⧣∘φ (w)`; zero when the isomorphy diagram commutes on `w`.
pub fn isomorphy_defect(bases: &mut Bases, w: &Word) -> Result<TensorPoly<Q>, HopfError> {
    let word = NCPoly::word(w.clone());
    let dsh = coproduct(CoproductKind::Shuffle, &word).expect("shuffle coproduct is total");
    let mut lhs = TensorPoly::zero();
    for ((u, v), c) in dsh.iter() {
        let fu = bases.phi_pi1(&NCPoly::word(u.clone()))?;
        let fv = bases.phi_pi1(&NCPoly::word(v.clone()))?;
        lhs = lhs + TensorPoly::tensor(&fu, &fv).scale(c);
    }
    let rhs = coproduct(CoproductKind::Stuffle, &bases.phi_pi1(&word)?).map_err(|_| HopfError::RequiresY)?;
    Ok(lhs - rhs)
}

/// One row of a basis table.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisRow {
    pub word: Word,
    pub p: NCPoly<Q>,
    pub s: NCPoly<Q>,
    pub pi: Option<NCPoly<Q>>,
    pub sigma: Option<NCPoly<Q>>,
}

/// Bases for all words up to a grade bound. Over `Y` the quasi-shuffle
/// bases `Π`, `Σ` are included.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisTable {
    alphabet: Alphabet,
    bound: usize,
    rows: Vec<BasisRow>,
    index: HashMap<Word, usize>,
}

impl BasisTable {
    pub fn build(alphabet: &Alphabet, bound: usize) -> Self {
        let mut b = Bases::new(alphabet.clone());
        let graded = alphabet.is_graded();
        let rows: Vec<BasisRow> = alphabet
            .words_up_to(bound)
            .into_iter()
            .map(|w| BasisRow {
                p: b.p_rec(&w, false),
                s: b.s_rec(&w),
                pi: graded.then(|| b.p_rec(&w, true)),
                sigma: graded.then(|| b.sigma(&w).expect("graded alphabet")),
                word: w,
            })
            .collect();
        let index = rows.iter().enumerate().map(|(i, r)| (r.word.clone(), i)).collect();
        BasisTable { alphabet: alphabet.clone(), bound, rows, index }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn rows(&self) -> &[BasisRow] {
        &self.rows
    }

    pub fn row(&self, w: &Word) -> Option<&BasisRow> {
        self.index.get(w).map(|&i| &self.rows[i])
    }

    /// Mutable access, e.g. to build corrupted tables for negative controls.
    pub fn row_mut(&mut self, w: &Word) -> Option<&mut BasisRow> {
        self.index.get(w).map(|&i| &mut self.rows[i])
    }

    pub fn has_quasi_shuffle(&self) -> bool {
        self.rows.first().is_some_and(|r| r.pi.is_some())
    }

    /// Tab-separated golden-file text: word, P, S (and Π, Σ over Y).
    pub fn golden(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            write!(out, "{}\t{}\t{}", r.word, r.p, r.s).unwrap();
            if let (Some(pi), Some(sigma)) = (&r.pi, &r.sigma) {
                write!(out, "\t{pi}\t{sigma}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Which pair of dual bases an MSR check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualPair {
    /// `(S, P)`, shuffle on the left factor.
    Shuffle,
    /// `(Σ, Π)`, quasi-shuffle on the left factor.
    QuasiShuffle,
}

/// A coefficient of the diagonal series that was not reproduced.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub left: Word,
    pub right: Word,
    pub expected: Q,
    pub found: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MsrReport {
    /// `Σ_w S_w ⊗ P_w` equals the diagonal series.
    pub sum_holds: bool,
    /// The ordered exponential product equals the diagonal series.
    pub product_holds: bool,
    /// Number of mismatched coefficients over both checks.
    pub mismatches: usize,
    /// Largest absolute coefficient error over both checks.
    pub max_discrepancy: Q,
    /// First mismatch found, in word order.
    pub first: Option<Discrepancy>,
}

impl MsrReport {
    pub fn holds(&self) -> bool {
        self.sum_holds && self.product_holds
    }
}

/// Checks `Σ_w S_w ⊗ P_w = Σ_w w ⊗ w = Π↘_l exp(S_l ⊗ P_l)` up to the
/// table's grade bound.
pub fn msr_check(table: &BasisTable, pair: DualPair) -> Result<MsrReport, HopfError> {
    let contract = match pair {
        DualPair::Shuffle => false,
        DualPair::QuasiShuffle if table.has_quasi_shuffle() => true,
        DualPair::QuasiShuffle => return Err(HopfError::RequiresY),
    };
    let bound = table.bound();
    let pick = |r: &BasisRow| -> (NCPoly<Q>, NCPoly<Q>) {
        match pair {
            DualPair::Shuffle => (r.s.clone(), r.p.clone()),
            DualPair::QuasiShuffle => (r.sigma.clone().unwrap(), r.pi.clone().unwrap()),
        }
    };

    let mut diagonal = TensorPoly::zero();
    for w in table.alphabet().words_up_to(bound) {
        diagonal.add_term(w.clone(), w, qi(1));
    }

    let mut sum = TensorPoly::zero();
    for r in table.rows() {
        let (s, p) = pick(r);
        sum = sum + TensorPoly::tensor(&s, &p);
    }

    let mut product = TensorPoly::one();
    for l in table.alphabet().lyndon_words(bound).into_iter().rev() {
        let (s, p) = pick(table.row(&l).expect("Lyndon word within bound"));
        let t = TensorPoly::tensor(&s, &p);
        let mut term = TensorPoly::one();
        let mut e = TensorPoly::one();
        for n in 1..=bound / l.grade() {
            term = tensor_mul_bounded(&term, &t, bound, contract).scale(&(qi(1) / qi(n as i64)));
            e = e + term.clone();
        }
        product = tensor_mul_bounded(&product, &e, bound, contract);
    }

    let (n1, d1, f1) = compare(&diagonal, &sum);
    let (n2, d2, f2) = compare(&diagonal, &product);
    Ok(MsrReport {
        sum_holds: n1 == 0,
        product_holds: n2 == 0,
        mismatches: n1 + n2,
        max_discrepancy: d1.max(d2),
        first: f1.or(f2),
    })
}

/// Product with shuffle (or stuffle) on the left and concatenation on the
/// right, dropping terms whose left grade exceeds `bound`.
fn tensor_mul_bounded(a: &TensorPoly<Q>, b: &TensorPoly<Q>, bound: usize, contract: bool) -> TensorPoly<Q> {
    let mut out = TensorPoly::zero();
    for ((u1, v1), c1) in a.iter() {
        for ((u2, v2), c2) in b.iter() {
            if u1.grade() + u2.grade() > bound {
                continue;
            }
            let c = c1.clone() * c2.clone();
            let v = v1.concat(v2);
            let merged = if contract { stuffle_words(u1, u2) } else { shuffle_words(u1, u2) };
            for (u, n) in merged {
                out.add_term(u, v.clone(), c.clone() * qi(n as i64));
            }
        }
    }
    out
}

fn compare(expected: &TensorPoly<Q>, found: &TensorPoly<Q>) -> (usize, Q, Option<Discrepancy>) {
    let diff = found.clone() - expected.clone();
    let mut keys: Vec<&(Word, Word)> = diff.iter().map(|(k, _)| k).collect();
    keys.sort_by(|a, b| a.0.graded_cmp(&b.0).then_with(|| a.1.graded_cmp(&b.1)));
    let max = diff.iter().map(|(_, c)| c.abs()).fold(Q::zero(), |a, b| a.max(b));
    let first = keys.first().map(|(u, v)| Discrepancy {
        left: u.clone(),
        right: v.clone(),
        expected: expected.coeff(u, v),
        found: found.coeff(u, v),
    });
    (diff.len(), max, first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::w;
    use crate::ring::q;

    fn poly(terms: &[(Q, &str)]) -> NCPoly<Q> {
        NCPoly::from_terms(terms.iter().map(|(c, s)| (w(s), c.clone())))
    }

    #[test]
    fn p_and_s_examples() {
        let x = Alphabet::x(2);
        assert_eq!(basis_p(&x, &w("x0.x1")).unwrap(), poly(&[(qi(1), "x0.x1"), (qi(-1), "x1.x0")]));
        // [x0,[x0,x1]] expanded by hand.
        assert_eq!(
            basis_p(&x, &w("x0.x0.x1")).unwrap(),
            poly(&[(qi(1), "x0.x0.x1"), (qi(-2), "x0.x1.x0"), (qi(1), "x1.x0.x0")])
        );
        assert_eq!(basis_p(&x, &w("x1.x0")).unwrap(), poly(&[(qi(1), "x1.x0")]));
        assert_eq!(basis_s(&x, &w("x0.x0.x1")).unwrap(), poly(&[(qi(1), "x0.x0.x1")]));
        assert_eq!(basis_s(&x, &w("x1.x0")).unwrap(), poly(&[(qi(1), "x0.x1"), (qi(1), "x1.x0")]));
        assert_eq!(basis_s(&x, &w("x0.x0")).unwrap(), poly(&[(qi(1), "x0.x0")]));
        assert!(basis_p(&x, &w("y1")).is_err());
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian_pi1(&w("y1")).unwrap(), poly(&[(qi(1), "y1")]));
        assert_eq!(eulerian_pi1(&w("y2")).unwrap(), poly(&[(qi(1), "y2"), (q(-1, 2), "y1.y1")]));
        assert_eq!(phi_pi1(&poly(&[(qi(1), "y1")])).unwrap(), poly(&[(qi(1), "y1")]));
        assert_eq!(
            phi_pi1(&poly(&[(qi(1), "y1.y2")])).unwrap(),
            poly(&[(qi(1), "y1.y2"), (q(-1, 2), "y1.y1.y1")])
        );
        assert_eq!(basis_pi(&w("y2")).unwrap(), eulerian_pi1(&w("y2")).unwrap());
        for s in 1..=4 {
            let ys = Word::letter(Letter::Y(s));
            assert_eq!(basis_sigma(&ys).unwrap(), NCPoly::word(ys));
        }
        assert!(matches!(eulerian_pi1(&w("x0")), Err(HopfError::ForeignWord(_))));
        assert_eq!(Bases::new(Alphabet::x(2)).pi1(&w("x0")), Err(HopfError::RequiresY));
    }

    /// Independent oracle for `π_1`: enumerate all tuples of nonempty
    /// words whose weights add up to the weight of `w`, and read
    /// `<w, u_1 ⧣ ... ⧣ u_k>` off an explicit iterated stuffle product.
    fn pi1_brute(w: &Word) -> NCPoly<Q> {
        let y = Alphabet::y();
        let g = w.grade();
        let nonempty: Vec<Word> = y.words_up_to(g).into_iter().filter(|u| !u.is_empty()).collect();
        let mut out = NCPoly::word(w.clone());
        let mut tuples: Vec<Vec<Word>> = nonempty.iter().map(|u| vec![u.clone()]).collect();
        for k in 2..=g {
            let mut next = Vec::new();
            for t in &tuples {
                let used: usize = t.iter().map(Word::grade).sum();
                for u in &nonempty {
                    if used + u.grade() <= g {
                        let mut t2 = t.clone();
                        t2.push(u.clone());
                        next.push(t2);
                    }
                }
            }
            tuples = next;
            for t in tuples.iter().filter(|t| t.iter().map(Word::grade).sum::<usize>() == g) {
                let prod = t[1..].iter().fold(NCPoly::<Q>::word(t[0].clone()), |acc, u| acc.stuffle(&NCPoly::word(u.clone())));
                let c = prod.coeff(w);
                if !c.is_zero() {
                    let cat = t.iter().fold(Word::empty(), |acc, u| acc.concat(u));
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    out.add_term(cat, c * q(sign, k as i64));
                }
            }
        }
        out
    }

    #[test]
    fn pi1_matches_brute_force() {
        let mut b = Bases::new(Alphabet::y());
        for u in Alphabet::y().words_up_to(4).into_iter().skip(1) {
            assert_eq!(b.pi1(&u).unwrap(), pi1_brute(&u), "word {u}");
        }
    }

    #[test]
    fn pi1_is_primitive_and_idempotent() {
        let mut b = Bases::new(Alphabet::y());
        for u in Alphabet::y().words_up_to(5).into_iter().skip(1) {
            let p = b.pi1(&u).unwrap();
            let delta = coproduct(CoproductKind::Stuffle, &p).unwrap();
            let expected = TensorPoly::tensor(&p, &NCPoly::one()) + TensorPoly::tensor(&NCPoly::one(), &p);
            assert!((delta - expected).is_zero(), "π1({u}) not primitive");
            assert_eq!(pi1_linear(&mut b, &p).unwrap(), p, "π1 not idempotent on {u}");
        }
    }

    #[test]
    fn dualities() {
        for (alph, bound) in [(Alphabet::x(2), 5), (Alphabet::y(), 5)] {
            let table = BasisTable::build(&alph, bound);
            let graded = alph.is_graded();
            for g in 0..=bound {
                let words = alph.words_of_grade(g);
                for u in &words {
                    let ru = table.row(u).unwrap();
                    for v in &words {
                        let rv = table.row(v).unwrap();
                        let delta = if u == v { qi(1) } else { qi(0) };
                        assert_eq!(ru.s.pair(&rv.p), delta, "<S_{u}, P_{v}>");
                        if graded {
                            assert_eq!(ru.sigma.as_ref().unwrap().pair(rv.pi.as_ref().unwrap()), delta);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_agrees_with_divided_stuffle_powers() {
        let mut b = Bases::new(Alphabet::y());
        let y = Alphabet::y();
        for u in y.words_up_to(5).into_iter().skip(1) {
            let runs = b.factor_runs(&u);
            if runs.len() == 1 && runs[0].1 == 1 {
                continue;
            }
            let mut expect = NCPoly::one();
            for (l, i) in runs {
                let sl = b.sigma(&l).unwrap();
                expect = expect.stuffle(&sl.stuffle_pow(i)).scale(&(qi(1) / factorial(i)));
            }
            assert_eq!(b.sigma(&u).unwrap(), expect, "Σ_{u}");
        }
    }

    #[test]
    fn homogeneity_and_unitriangularity() {
        let x = Alphabet::x(2);
        let table = BasisTable::build(&x, 5);
        for r in table.rows() {
            assert!(r.p.support().all(|u| u.grade() == r.word.grade()));
            assert!(r.s.support().all(|u| u.grade() == r.word.grade()));
            assert_eq!(r.s.coeff(&r.word), qi(1));
            assert_eq!(r.p.coeff(&r.word), qi(1));
            // S_w = w + smaller words, P_w = w + larger words.
            for u in r.s.support() {
                assert_ne!(x.cmp_words(u, &r.word), std::cmp::Ordering::Greater);
            }
            for u in r.p.support() {
                assert_ne!(x.cmp_words(u, &r.word), std::cmp::Ordering::Less);
            }
        }
    }

    #[test]
    fn isomorphy_diagram() {
        let mut b = Bases::new(Alphabet::y());
        for u in Alphabet::y().words_up_to(4) {
            assert!(isomorphy_defect(&mut b, &u).unwrap().is_zero(), "diagram fails on {u}");
        }
    }

    #[test]
    fn msr_factorizations() {
        let table = BasisTable::build(&Alphabet::x(2), 4);
        assert!(msr_check(&table, DualPair::Shuffle).unwrap().holds());
        let ytable = BasisTable::build(&Alphabet::y(), 4);
        assert!(msr_check(&ytable, DualPair::QuasiShuffle).unwrap().holds());
        assert!(msr_check(&ytable, DualPair::Shuffle).unwrap().holds());
        assert_eq!(msr_check(&table, DualPair::QuasiShuffle), Err(HopfError::RequiresY));
    }

    #[test]
    fn corrupted_table_is_located() {
        let mut table = BasisTable::build(&Alphabet::x(2), 4);
        table.row_mut(&w("x0.x1")).unwrap().s = poly(&[(qi(1), "x0.x1"), (qi(1), "x1.x0")]);
        let report = msr_check(&table, DualPair::Shuffle).unwrap();
        assert!(!report.holds());
        assert!(!report.sum_holds);
        let first = report.first.unwrap();
        assert_eq!(first.left.grade(), 2);
        assert!(report.max_discrepancy >= qi(1));
    }

    #[test]
    fn golden_format() {
        let g = BasisTable::build(&Alphabet::x(2), 2).golden();
        let lines: Vec<&str> = g.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "1\t1\t1");
        assert!(lines.contains(&"x0.x1\t1*x0.x1 - 1*x1.x0\t1*x0.x1"));
        let y = BasisTable::build(&Alphabet::y(), 2).golden();
        assert!(y.lines().any(|l| l == "y2\t1*y2\t1*y2\t1*y2 - 1/2*y1.y1\t1*y2"));
    }
}
