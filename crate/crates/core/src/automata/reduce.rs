use super::{rep_difference, AutomataError, LinearRepresentation};
use crate::alphabet::{Letter, Word};
use crate::linalg::{dot, Matrix, RowBasis};
use crate::ring::Field;
use crate::series::NCPoly;

/// Restriction to the span of the reachable row vectors `ν μ(w)`.
fn reachable_part<C: Field>(r: &LinearRepresentation<C>) -> LinearRepresentation<C> {
    let mut basis = RowBasis::new(r.dim());
    let mut vecs: Vec<Vec<C>> = Vec::new();
    if basis.insert(r.nu()) {
        vecs.push(r.nu().to_vec());
    }
    let mut i = 0;
    while i < vecs.len() {
        for (_, m) in r.matrices() {
            let v = Matrix::vec_mul(&vecs[i], m);
            if basis.insert(&v) {
                vecs.push(v);
            }
        }
        i += 1;
    }
    if vecs.is_empty() {
        return LinearRepresentation::zero(r.letters());
    }
    let coords = |v: &[C]| basis.coordinates(v).expect("the reachable space is invariant");
    let mu = r
        .matrices()
        .map(|(l, m)| (l, Matrix::from_rows(vecs.iter().map(|v| coords(&Matrix::vec_mul(v, m))).collect())))
        .collect();
    let eta = vecs.iter().map(|v| dot(v, r.eta())).collect();
    LinearRepresentation::new(r.letters(), coords(r.nu()), mu, eta).expect("reduced shapes")
}

/// An equivalent representation of minimal dimension: reachability
/// reduction followed by observability reduction (on the transpose).
pub fn minimize<C: Field>(r: &LinearRepresentation<C>) -> LinearRepresentation<C> {
    reachable_part(&reachable_part(r).transpose()).transpose()
}

/// Equality of the represented series, decided by minimizing the
/// difference.
pub fn equal<C: Field>(r1: &LinearRepresentation<C>, r2: &LinearRepresentation<C>) -> bool {
    minimize(&rep_difference(r1, r2)).dim() == 0
}

/// Equality checked on every word of length at most `dim(r1) + dim(r2)`,
/// which suffices for representations over a field.
pub fn equal_on_window<C: Field>(r1: &LinearRepresentation<C>, r2: &LinearRepresentation<C>) -> bool {
    let d = rep_difference(r1, r2);
    let window = r1.dim() + r2.dim();
    let letters: Vec<(Letter, Matrix<C>)> = d.matrices().map(|(l, m)| (l, m.clone())).collect();
    let mut stack = vec![(0usize, d.nu().to_vec())];
    while let Some((len, v)) = stack.pop() {
        if !dot(&v, d.eta()).is_zero() {
            return false;
        }
        if len < window {
            for (_, m) in &letters {
                stack.push((len + 1, Matrix::vec_mul(&v, m)));
            }
        }
    }
    true
}

/// True when the series is a conc-character: its minimal representation
/// has dimension one and constant term one.
pub fn is_character<C: Field>(r: &LinearRepresentation<C>) -> bool {
    let m = minimize(r);
    m.dim() == 1 && dot(m.nu(), m.eta()) == C::one()
}

/// True when the minimal representation has pairwise commuting letter
/// matrices.
pub fn is_rationally_exchangeable<C: Field>(r: &LinearRepresentation<C>) -> bool {
    let m = minimize(r);
    let mats: Vec<&Matrix<C>> = m.matrices().map(|(_, a)| a).collect();
    mats.iter().enumerate().all(|(i, a)| mats[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// Polynomials `P`, `Q` in the single letter `x` with `S = P (x Q)*`,
/// read off the linear recurrence satisfied by `ν μ(x)^k η`.
pub fn kronecker_form<C: Field>(r: &LinearRepresentation<C>) -> Result<(NCPoly<C>, NCPoly<C>), AutomataError> {
    let letters: Vec<Letter> = r.letters().collect();
    if letters.len() > 1 {
        return Err(AutomataError::NotOneLetter);
    }
    let m = minimize(r);
    let Some(&x) = letters.first() else {
        // No letter: S is the constant ν η.
        return Ok((NCPoly::constant(dot(m.nu(), m.eta())), NCPoly::zero()));
    };
    let a = m.mu(x);
    let mut basis = RowBasis::new(m.dim());
    let mut powers: Vec<Vec<C>> = Vec::new();
    let mut v = m.nu().to_vec();
    let recurrence = loop {
        if let Some(c) = basis.coordinates(&v) {
            break c;
        }
        basis.insert(&v);
        powers.push(v.clone());
        v = Matrix::vec_mul(&v, &a);
    };
    let k = powers.len();
    let s: Vec<C> = powers.iter().map(|p| dot(p, m.eta())).collect();
    let xpow = |e: usize| Word::power(x, e);
    // D(x) = 1 - Σ_j c_j x^{k-j};  Q(x) = Σ_j c_j x^{k-j-1}.
    let q = NCPoly::from_terms(recurrence.iter().enumerate().map(|(j, c)| (xpow(k - j - 1), c.clone())));
    let mut p = NCPoly::zero();
    for (mdeg, sm) in s.iter().enumerate() {
        let mut coeff = sm.clone();
        for (j, c) in recurrence.iter().enumerate() {
            let shift = k - j;
            if shift <= mdeg {
                coeff = coeff - c.clone() * s[mdeg - shift].clone();
            }
        }
        p.add_term(xpow(mdeg), coeff);
    }
    Ok((p, q))
}
