//! Rational series as linear representations `(ν, μ, η)`.
//!
//! The coefficient of a word is `ν μ(w) η`. Letters missing from `μ` act as
//! the zero matrix. Constructors for sum, concatenation, star, shuffle and
//! stuffle are block/Kronecker constructions; over a field, representations
//! can be minimized and compared.

mod json;
mod lie;
mod reduce;

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use thiserror::Error;

use crate::alphabet::{Letter, Word};
use crate::linalg::{dot, Matrix};
use crate::ring::{qi, Coeff, Q};
use crate::series::{NCPoly, Truncated};

pub use json::{from_json, ring_of_json, to_json, RepFile, RingKind};
pub use lie::{
    classify, lie_closure, nilpotent_decompose, triangular_star_factorization_check, MatrixLieAlgebra, RepClass,
};
pub use reduce::{
    equal, equal_on_window, is_character, is_rationally_exchangeable, kronecker_form, minimize,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("star needs a series with zero constant term (ν η = {0})")]
    NotProper(String),
    #[error("stuffle needs letters from Y, found {0}")]
    NotGraded(Letter),
    #[error("operation needs a one-letter alphabet")]
    NotOneLetter,
    #[error("matrix of letter {0} is not of the required triangular form")]
    NotTriangular(Letter),
    #[error("representation file: {0}")]
    Format(String),
}

/// A linear representation of dimension `dim` over the letters in `mu`.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearRepresentation<C> {
    letters: BTreeSet<Letter>,
    nu: Vec<C>,
    mu: BTreeMap<Letter, Matrix<C>>,
    eta: Vec<C>,
}

impl<C: Coeff> LinearRepresentation<C> {
    /// Validates shapes. `letters` lists the alphabet; letters without a
    /// matrix act as zero.
    pub fn new(
        letters: impl IntoIterator<Item = Letter>,
        nu: Vec<C>,
        mu: BTreeMap<Letter, Matrix<C>>,
        eta: Vec<C>,
    ) -> Result<Self, AutomataError> {
        let n = nu.len();
        if eta.len() != n {
            return Err(AutomataError::Dimension(format!("ν has length {n}, η has length {}", eta.len())));
        }
        let mut letters: BTreeSet<Letter> = letters.into_iter().collect();
        for (l, m) in &mu {
            if m.rows() != n || m.cols() != n {
                return Err(AutomataError::Dimension(format!(
                    "μ({l}) is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            letters.insert(*l);
        }
        let mu = mu.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(LinearRepresentation { letters, nu, mu, eta })
    }

    /// The zero series over `letters`, of dimension 0.
    pub fn zero(letters: impl IntoIterator<Item = Letter>) -> Self {
        LinearRepresentation { letters: letters.into_iter().collect(), nu: vec![], mu: BTreeMap::new(), eta: vec![] }
    }

    /// The constant series `c`.
    pub fn constant(c: C) -> Self {
        LinearRepresentation { letters: BTreeSet::new(), nu: vec![C::one()], mu: BTreeMap::new(), eta: vec![c] }
    }

    /// Prefix-tree representation of a polynomial: one state per prefix of
    /// a support word.
    pub fn from_polynomial(p: &NCPoly<C>) -> Self {
        let mut prefixes: BTreeSet<Word> = BTreeSet::new();
        for w in p.support() {
            for i in 0..=w.len() {
                prefixes.insert(w.slice(0, i));
            }
        }
        prefixes.insert(Word::empty());
        let states: Vec<Word> = prefixes.into_iter().collect();
        let index: BTreeMap<&Word, usize> = states.iter().enumerate().map(|(i, u)| (u, i)).collect();
        let n = states.len();
        let mut mu: BTreeMap<Letter, Matrix<C>> = BTreeMap::new();
        for (i, u) in states.iter().enumerate() {
            if u.is_empty() {
                continue;
            }
            let parent = index[&u.slice(0, u.len() - 1)];
            let l = u.last().unwrap();
            mu.entry(l).or_insert_with(|| Matrix::zeros(n, n)).set(parent, i, C::one());
        }
        let mut nu = vec![C::zero(); n];
        nu[index[&Word::empty()]] = C::one();
        let eta = states.iter().map(|u| p.coeff(u)).collect();
        LinearRepresentation::new(p.support().flat_map(|w| w.letters().to_vec()).collect::<Vec<_>>(), nu, mu, eta)
            .expect("shapes are consistent")
    }

    /// The dimension-one representation `(1, c, 1)` of the character
    /// `(Σ_x c_x x)*`.
    pub fn character_star(coeffs: impl IntoIterator<Item = (Letter, C)>) -> Self {
        let mu: BTreeMap<Letter, Matrix<C>> =
            coeffs.into_iter().map(|(l, c)| (l, Matrix::from_rows(vec![vec![c]]))).collect();
        LinearRepresentation::new(mu.keys().copied().collect::<Vec<_>>(), vec![C::one()], mu, vec![C::one()])
            .expect("dimension one")
    }

    pub fn dim(&self) -> usize {
        self.nu.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().copied()
    }

    pub fn nu(&self) -> &[C] {
        &self.nu
    }

    pub fn eta(&self) -> &[C] {
        &self.eta
    }

    /// `μ(x)`, the zero matrix for inactive letters.
    pub fn mu(&self, x: Letter) -> Matrix<C> {
        self.mu.get(&x).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(), self.dim()))
    }

    /// Nonzero letter matrices.
    pub fn matrices(&self) -> impl Iterator<Item = (Letter, &Matrix<C>)> {
        self.mu.iter().map(|(l, m)| (*l, m))
    }

    /// `μ(w)`.
    pub fn mu_word(&self, w: &Word) -> Matrix<C> {
        w.letters().iter().fold(Matrix::identity(self.dim()), |acc, &l| &acc * &self.mu(l))
    }

    /// `ν μ(w)` as a row vector.
    pub fn state_after(&self, w: &Word) -> Vec<C> {
        let mut v = self.nu.clone();
        for &l in w.letters() {
            match self.mu.get(&l) {
                Some(m) => v = Matrix::vec_mul(&v, m),
                None => return vec![C::zero(); self.dim()],
            }
        }
        v
    }

    /// `<S, w> = ν μ(w) η`.
    pub fn coeff(&self, w: &Word) -> C {
        dot(&self.state_after(w), &self.eta)
    }

    /// All coefficients on words of grade at most `bound` over the active
    /// letters, computed by a depth-first walk sharing prefixes.
    pub fn expand(&self, bound: usize) -> Truncated<C> {
        let mut out = NCPoly::zero();
        let letters: Vec<(Letter, &Matrix<C>)> = self.matrices().filter(|(l, _)| l.grade() <= bound).collect();
        let mut stack = vec![(Word::empty(), self.nu.clone())];
        while let Some((w, v)) = stack.pop() {
            if v.iter().all(C::is_zero) {
                continue;
            }
            out.add_term(w.clone(), dot(&v, &self.eta));
            for &(l, m) in &letters {
                if w.grade() + l.grade() <= bound {
                    let mut u = w.clone();
                    u.push(l);
                    stack.push((u, Matrix::vec_mul(&v, m)));
                }
            }
        }
        Truncated::new(out, bound)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut r = self.clone();
        r.eta = r.eta.iter().map(|e| e.clone() * c.clone()).collect();
        r
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LinearRepresentation<D> {
        LinearRepresentation {
            letters: self.letters.clone(),
            nu: self.nu.iter().map(&f).collect(),
            mu: self.mu.iter().map(|(l, m)| (*l, m.map(&f))).filter(|(_, m)| !m.is_zero()).collect(),
            eta: self.eta.iter().map(&f).collect(),
        }
    }

    /// Transposed representation, which realizes the mirror series
    /// `w ↦ <S, reverse(w)>`.
    pub fn transpose(&self) -> Self {
        LinearRepresentation {
            letters: self.letters.clone(),
            nu: self.eta.clone(),
            mu: self.mu.iter().map(|(l, m)| (*l, m.transpose())).collect(),
            eta: self.nu.clone(),
        }
    }

    /// Similar representation `(ν P, P⁻¹ μ P, P⁻¹ η)` given `P` and `P⁻¹`.
    pub fn conjugate(&self, p: &Matrix<C>, p_inv: &Matrix<C>) -> Self {
        LinearRepresentation {
            letters: self.letters.clone(),
            nu: Matrix::vec_mul(&self.nu, p),
            mu: self.mu.iter().map(|(l, m)| (*l, &(p_inv * m) * p)).collect(),
            eta: p_inv.mul_vec(&self.eta),
        }
    }

    fn union_letters(&self, other: &Self) -> BTreeSet<Letter> {
        self.letters.union(&other.letters).copied().collect()
    }
}

/// Representation of `R1 + R2`: block diagonal.
pub fn rep_sum<C: Coeff>(r1: &LinearRepresentation<C>, r2: &LinearRepresentation<C>) -> LinearRepresentation<C> {
    let (n1, n2) = (r1.dim(), r2.dim());
    let letters = r1.union_letters(r2);
    let mu = letters
        .iter()
        .map(|&l| (l, Matrix::block(&r1.mu(l), &Matrix::zeros(n1, n2), &Matrix::zeros(n2, n1), &r2.mu(l))))
        .collect();
    let nu = r1.nu.iter().chain(&r2.nu).cloned().collect();
    let eta = r1.eta.iter().chain(&r2.eta).cloned().collect();
    LinearRepresentation::new(letters, nu, mu, eta).expect("block shapes")
}

/// Representation of `R1 - R2`.
pub fn rep_difference<C: Coeff>(
    r1: &LinearRepresentation<C>,
    r2: &LinearRepresentation<C>,
) -> LinearRepresentation<C> {
    rep_sum(r1, &r2.scale(&-C::one()))
}

/// Representation of the concatenation `R1 · R2`.
pub fn rep_conc<C: Coeff>(r1: &LinearRepresentation<C>, r2: &LinearRepresentation<C>) -> LinearRepresentation<C> {
    let (n1, n2) = (r1.dim(), r2.dim());
    let letters = r1.union_letters(r2);
    let eta1 = Matrix::col_vector(r1.eta.clone());
    let mu = letters
        .iter()
        .map(|&l| {
            let m2 = r2.mu(l);
            let nu2_m2 = Matrix::row_vector(Matrix::vec_mul(&r2.nu, &m2));
            (l, Matrix::block(&r1.mu(l), &(&eta1 * &nu2_m2), &Matrix::zeros(n2, n1), &m2))
        })
        .collect();
    let nu = r1.nu.iter().cloned().chain(std::iter::repeat(C::zero()).take(n2)).collect();
    let c = dot(&r2.nu, &r2.eta);
    let eta = r1.eta.iter().map(|e| e.clone() * c.clone()).chain(r2.eta.iter().cloned()).collect();
    LinearRepresentation::new(letters, nu, mu, eta).expect("block shapes")
}

/// Representation of `R*` for a proper `R` (dimension `n + 1`).
pub fn rep_star<C: Coeff>(r: &LinearRepresentation<C>) -> Result<LinearRepresentation<C>, AutomataError> {
    let c = dot(&r.nu, &r.eta);
    if !c.is_zero() {
        return Err(AutomataError::NotProper(c.to_string()));
    }
    let n = r.dim();
    let eta = Matrix::col_vector(r.eta.clone());
    let mu = r
        .mu
        .iter()
        .map(|(&l, m)| {
            let nu_m = Matrix::row_vector(Matrix::vec_mul(&r.nu, m));
            let top = m.clone() + &eta * &nu_m;
            (l, Matrix::block(&top, &Matrix::zeros(n, 1), &nu_m, &Matrix::zeros(1, 1)))
        })
        .collect();
    let mut nu = vec![C::zero(); n];
    nu.push(C::one());
    let mut eta = r.eta.clone();
    eta.push(C::one());
    LinearRepresentation::new(r.letters.clone(), nu, mu, eta)
}

/// Representation of `P*` for a proper polynomial `P`, with one state per
/// proper prefix of a support word: completing a support word returns to
/// the empty prefix.
pub fn rep_polynomial_star<C: Coeff>(p: &NCPoly<C>) -> Result<LinearRepresentation<C>, AutomataError> {
    let c = p.constant_term();
    if !c.is_zero() {
        return Err(AutomataError::NotProper(c.to_string()));
    }
    let mut prefixes: BTreeSet<Word> = BTreeSet::new();
    for w in p.support() {
        for i in 0..w.len() {
            prefixes.insert(w.slice(0, i));
        }
    }
    prefixes.insert(Word::empty());
    let states: Vec<Word> = prefixes.into_iter().collect();
    let index: BTreeMap<&Word, usize> = states.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let n = states.len();
    let root = index[&Word::empty()];
    let mut mu: BTreeMap<Letter, Matrix<C>> = BTreeMap::new();
    for (i, u) in states.iter().enumerate() {
        if u.is_empty() {
            continue;
        }
        let parent = index[&u.slice(0, u.len() - 1)];
        let l = u.last().unwrap();
        mu.entry(l).or_insert_with(|| Matrix::zeros(n, n)).set(parent, i, C::one());
    }
    for (w, c) in p.iter() {
        let parent = index[&w.slice(0, w.len() - 1)];
        let m = mu.entry(w.last().unwrap()).or_insert_with(|| Matrix::zeros(n, n));
        let v = m.get(parent, root).clone() + c.clone();
        m.set(parent, root, v);
    }
    let mut unit = vec![C::zero(); n];
    unit[root] = C::one();
    let letters: Vec<Letter> = p.support().flat_map(|w| w.letters().to_vec()).collect();
    LinearRepresentation::new(letters, unit.clone(), mu, unit)
}

/// Representation of `R1 ⧢ R2`: Kronecker sum.
pub fn rep_shuffle<C: Coeff>(r1: &LinearRepresentation<C>, r2: &LinearRepresentation<C>) -> LinearRepresentation<C> {
    let (i1, i2) = (Matrix::identity(r1.dim()), Matrix::identity(r2.dim()));
    let letters = r1.union_letters(r2);
    let mu = letters.iter().map(|&l| (l, r1.mu(l).kron(&i2) + i1.kron(&r2.mu(l)))).collect();
    LinearRepresentation::new(letters, kron_vec(&r1.nu, &r2.nu), mu, kron_vec(&r1.eta, &r2.eta))
        .expect("Kronecker shapes")
}

/// Representation of `R1 ⧣ R2` over `Y`: Kronecker sum plus the
/// contraction terms `Σ_{i+j=k} μ1(y_i) ⊗ μ2(y_j)`.
pub fn rep_stuffle<C: Coeff>(
    r1: &LinearRepresentation<C>,
    r2: &LinearRepresentation<C>,
) -> Result<LinearRepresentation<C>, AutomataError> {
    let mut letters = r1.union_letters(r2);
    if let Some(&l) = letters.iter().find(|l| !l.is_y()) {
        return Err(AutomataError::NotGraded(l));
    }
    for (a, _) in r1.matrices() {
        for (b, _) in r2.matrices() {
            letters.insert(Letter::Y(a.index() + b.index()));
        }
    }
    let (i1, i2) = (Matrix::identity(r1.dim()), Matrix::identity(r2.dim()));
    let mut mu = BTreeMap::new();
    for &l in &letters {
        let mut m = r1.mu(l).kron(&i2) + i1.kron(&r2.mu(l));
        for (a, ma) in r1.matrices() {
            if a.index() < l.index() {
                if let Some(mb) = r2.mu.get(&Letter::Y(l.index() - a.index())) {
                    m = m + ma.kron(mb);
                }
            }
        }
        mu.insert(l, m);
    }
    LinearRepresentation::new(letters, kron_vec(&r1.nu, &r2.nu), mu, kron_vec(&r1.eta, &r2.eta))
}

fn kron_vec<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.clone() * y.clone())).collect()
}

/// The Sweedler family `(G_i, D_i) = ((ν, μ, e_i), (e_iᵀ, μ, η))` with
/// `<S, uv> = Σ_i <G_i, u> <D_i, v>`.
pub fn sweedler_split<C: Coeff>(
    r: &LinearRepresentation<C>,
) -> Vec<(LinearRepresentation<C>, LinearRepresentation<C>)> {
    let n = r.dim();
    (0..n)
        .map(|i| {
            let e: Vec<C> = (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect();
            let mut g = r.clone();
            g.eta = e.clone();
            let mut d = r.clone();
            d.nu = e;
            (g, d)
        })
        .collect()
}

/// True when coefficients agree on all words of grade at most `bound`
/// having the same multidegree.
pub fn is_syntactically_exchangeable<C: Coeff>(s: &Truncated<C>, letters: &[Letter]) -> bool {
    let words = words_over(letters, s.bound());
    let mut classes: BTreeMap<Vec<(Letter, usize)>, C> = BTreeMap::new();
    for w in words {
        let c = s.poly().coeff(&w);
        match classes.get(&w.multidegree()) {
            Some(prev) if *prev != c => return false,
            Some(_) => {}
            None => {
                classes.insert(w.multidegree(), c);
            }
        }
    }
    true
}

/// All words of grade at most `bound` over `letters`.
pub fn words_over(letters: &[Letter], bound: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut i = 0;
    while i < out.len() {
        let w = out[i].clone();
        for &l in letters {
            if w.grade() + l.grade() <= bound {
                let mut u = w.clone();
                u.push(l);
                out.push(u);
            }
        }
        i += 1;
    }
    out
}

/// A random representation with small rational entries, about half of
/// them zero, for property tests and randomized commands.
pub fn random_rep<R: Rng>(rng: &mut R, letters: &[Letter], dim: usize) -> LinearRepresentation<Q> {
    let entry = |rng: &mut R| -> Q {
        if rng.gen_bool(0.5) {
            qi(0)
        } else {
            Q::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into())
        }
    };
    let nu = (0..dim).map(|_| entry(rng)).collect();
    let eta = (0..dim).map(|_| entry(rng)).collect();
    let mu = letters
        .iter()
        .map(|&l| (l, Matrix::from_rows((0..dim).map(|_| (0..dim).map(|_| entry(rng)).collect()).collect())))
        .collect();
    LinearRepresentation::new(letters.to_vec(), nu, mu, eta).expect("shapes")
}
