use std::collections::BTreeMap;
use std::fmt;

use super::{minimize, words_over, AutomataError, LinearRepresentation};
use crate::alphabet::{Letter, Word};
use crate::linalg::{Matrix, RowBasis};
use crate::ring::{Coeff, Field};
use crate::series::{star, NCPoly, Truncated};

/// A Lie algebra of `n x n` matrices, stored as a basis.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra<C> {
    n: usize,
    basis: Vec<Matrix<C>>,
}

fn flatten<C: Coeff>(m: &Matrix<C>) -> Vec<C> {
    m.entries().cloned().collect()
}

fn bracket<C: Coeff>(a: &Matrix<C>, b: &Matrix<C>) -> Matrix<C> {
    a * b - b * a
}

/// Basis of `span{[a, b] : a ∈ xs, b ∈ ys}`.
fn bracket_span<C: Field>(n: usize, xs: &[Matrix<C>], ys: &[Matrix<C>]) -> Vec<Matrix<C>> {
    let mut basis = RowBasis::new(n * n);
    let mut out = Vec::new();
    for a in xs {
        for b in ys {
            let c = bracket(a, b);
            if basis.insert(&flatten(&c)) {
                out.push(c);
            }
        }
    }
    out
}

impl<C: Field> MatrixLieAlgebra<C> {
    /// The Lie algebra generated by `gens`, by bracket saturation.
    pub fn generated_by(n: usize, gens: &[Matrix<C>]) -> Self {
        let mut span = RowBasis::new(n * n);
        let mut basis: Vec<Matrix<C>> = Vec::new();
        for g in gens {
            if span.insert(&flatten(g)) {
                basis.push(g.clone());
            }
        }
        let mut i = 0;
        while i < basis.len() {
            for j in 0..i {
                let c = bracket(&basis[i], &basis[j]);
                if span.insert(&flatten(&c)) {
                    basis.push(c);
                }
            }
            i += 1;
        }
        MatrixLieAlgebra { n, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<C>] {
        &self.basis
    }

    pub fn contains(&self, m: &Matrix<C>) -> bool {
        let mut span = RowBasis::new(self.n * self.n);
        for b in &self.basis {
            span.insert(&flatten(b));
        }
        span.contains(&flatten(m))
    }

    pub fn is_commutative(&self) -> bool {
        bracket_span(self.n, &self.basis, &self.basis).is_empty()
    }

    /// Dimensions of the lower central series `L ⊃ [L,L] ⊃ [L,[L,L]] ⊃ ...`
    /// until it vanishes or stabilizes.
    pub fn lower_central_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.dim()];
        let mut cur = self.basis.clone();
        loop {
            let next = bracket_span(self.n, &self.basis, &cur);
            let d = next.len();
            if d == 0 || d == cur.len() {
                dims.push(d);
                return dims;
            }
            dims.push(d);
            cur = next;
        }
    }

    /// Dimensions of the derived series `L ⊃ [L,L] ⊃ [[L,L],[L,L]] ⊃ ...`.
    pub fn derived_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.dim()];
        let mut cur = self.basis.clone();
        loop {
            let next = bracket_span(self.n, &cur, &cur);
            let d = next.len();
            if d == 0 || d == cur.len() {
                dims.push(d);
                return dims;
            }
            dims.push(d);
            cur = next;
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_dims().last() == Some(&0)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_dims().last() == Some(&0)
    }
}

/// The Lie algebra generated by the letter matrices of `r`.
pub fn lie_closure<C: Field>(r: &LinearRepresentation<C>) -> MatrixLieAlgebra<C> {
    let gens: Vec<Matrix<C>> = r.matrices().map(|(_, m)| m.clone()).collect();
    MatrixLieAlgebra::generated_by(r.dim(), &gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepClass {
    Exchangeable,
    Nilpotent,
    Solvable,
    General,
}

impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepClass::Exchangeable => "exchangeable",
            RepClass::Nilpotent => "nilpotent",
            RepClass::Solvable => "solvable",
            RepClass::General => "general",
        })
    }
}

/// Classifies a series by the Lie algebra of its minimal representation.
pub fn classify<C: Field>(r: &LinearRepresentation<C>) -> RepClass {
    let lie = lie_closure(&minimize(r));
    if lie.is_commutative() {
        RepClass::Exchangeable
    } else if lie.is_nilpotent() {
        RepClass::Nilpotent
    } else if lie.is_solvable() {
        RepClass::Solvable
    } else {
        RepClass::General
    }
}

fn strictly_upper<C: Coeff>(m: &Matrix<C>) -> bool {
    (0..m.rows()).all(|i| (0..=i).all(|j| m.get(i, j).is_zero()))
}

fn upper<C: Coeff>(m: &Matrix<C>) -> bool {
    (0..m.rows()).all(|i| (0..i).all(|j| m.get(i, j).is_zero()))
}

/// Splits `S = S1 ⧢ (Σ_x c(x) x)*` when every `μ(x) - c(x) I` is strictly
/// upper triangular; `S1` is then a polynomial of degree below `dim`.
pub fn nilpotent_decompose<C: Coeff>(
    r: &LinearRepresentation<C>,
    c: &BTreeMap<Letter, C>,
) -> Result<(NCPoly<C>, BTreeMap<Letter, C>), AutomataError> {
    let n = r.dim();
    let mut letters: Vec<Letter> = r.letters().collect();
    letters.extend(c.keys().copied());
    letters.sort();
    letters.dedup();
    let mut mu = BTreeMap::new();
    for &l in &letters {
        let cl = c.get(&l).cloned().unwrap_or_else(C::zero);
        let m = r.mu(l) - Matrix::identity(n).scale(&cl);
        if !strictly_upper(&m) {
            return Err(AutomataError::NotTriangular(l));
        }
        mu.insert(l, m);
    }
    let nil = LinearRepresentation::new(letters.clone(), r.nu().to_vec(), mu, r.eta().to_vec())?;
    let max_grade = letters.iter().map(|l| l.grade()).max().unwrap_or(0);
    let s1 = nil.expand(n.saturating_sub(1) * max_grade).into_poly();
    let c = c.iter().filter(|(_, v)| !v.is_zero()).map(|(l, v)| (*l, v.clone())).collect();
    Ok((s1, c))
}

type PolyMatrix<C> = Vec<Vec<NCPoly<C>>>;

fn poly_matrix_mul<C: Coeff>(a: &PolyMatrix<C>, b: &PolyMatrix<C>, bound: usize) -> PolyMatrix<C> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(NCPoly::zero(), |acc, k| {
                        acc + Truncated::new(a[i][k].clone(), bound)
                            .conc(&Truncated::new(b[k][j].clone(), bound))
                            .into_poly()
                    })
                })
                .collect()
        })
        .collect()
}

/// Checks `M(X*) = (D(X*) N(X))* D(X*)` entrywise up to grade `bound`,
/// where `M(X) = Σ μ(x) x = D(X) + N(X)` splits into diagonal and strictly
/// upper parts.
pub fn triangular_star_factorization_check<C: Coeff>(
    r: &LinearRepresentation<C>,
    bound: usize,
) -> Result<bool, AutomataError> {
    for (l, m) in r.matrices() {
        if !upper(m) {
            return Err(AutomataError::NotTriangular(l));
        }
    }
    let n = r.dim();
    let letters: Vec<Letter> = r.letters().collect();
    let zero_matrix = || -> PolyMatrix<C> { vec![vec![NCPoly::zero(); n]; n] };

    // M(X*) from μ(w) directly.
    let mut lhs = zero_matrix();
    for w in words_over(&letters, bound) {
        let m = r.mu_word(&w);
        for (i, row) in lhs.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                e.add_term(w.clone(), m.get(i, j).clone());
            }
        }
    }

    let mut dstar = zero_matrix();
    let mut nx = zero_matrix();
    for (i, row) in nx.iter_mut().enumerate() {
        let diag = NCPoly::from_terms(letters.iter().map(|&l| (Word::letter(l), r.mu(l).get(i, i).clone())));
        dstar[i][i] = star(&Truncated::new(diag, bound), bound).expect("letters are proper").into_poly();
        for (j, e) in row.iter_mut().enumerate().skip(i + 1) {
            *e = NCPoly::from_terms(letters.iter().map(|&l| (Word::letter(l), r.mu(l).get(i, j).clone())));
        }
    }
    let t = poly_matrix_mul(&dstar, &nx, bound);
    let mut identity = zero_matrix();
    for (i, row) in identity.iter_mut().enumerate() {
        row[i] = NCPoly::one();
    }
    let mut tstar = identity.clone();
    for _ in 0..bound {
        let next = poly_matrix_mul(&t, &tstar, bound);
        for (i, row) in tstar.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = identity[i][j].clone() + next[i][j].clone();
            }
        }
    }
    let rhs = poly_matrix_mul(&tstar, &dstar, bound);
    Ok(lhs == rhs)
}
