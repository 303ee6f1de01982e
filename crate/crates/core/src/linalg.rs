//! Dense matrices over a coefficient ring, with exact elimination over fields.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::ring::{Coeff, Field};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn row_vector(v: Vec<C>) -> Self {
        Matrix { rows: 1, cols: v.len(), data: v }
    }

    pub fn col_vector(v: Vec<C>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<C> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &C> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(C::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2).clone() * other.get(i % r2, j % c2).clone()
        })
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        Self::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| match (i < a.rows, j < a.cols) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - a.cols).clone(),
            (false, true) => c.get(i - a.rows, j).clone(),
            (false, false) => d.get(i - a.rows, j - a.cols).clone(),
        })
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { other.get(i, j - self.cols).clone() }
        })
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.clone() * other.clone() == other.clone() * self.clone()
    }

    pub fn trace(&self) -> C {
        (0..self.rows.min(self.cols)).fold(C::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::identity(self.rows), |acc, _| acc * self.clone())
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[C], m: &Self) -> Vec<C> {
        assert_eq!(v.len(), m.rows);
        (0..m.cols)
            .map(|j| v.iter().enumerate().fold(C::zero(), |acc, (i, a)| acc + a.clone() * m.get(i, j).clone()))
            .collect()
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(C::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone()))
            .collect()
    }
}

pub fn dot<C: Coeff>(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).fold(C::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Echelon<C> {
    /// Reduced row echelon form; zero rows removed.
    pub rref: Matrix<C>,
    /// Pivot column of each row of `rref`.
    pub pivots: Vec<usize>,
}

impl<C: Field> Matrix<C> {
    /// Reduced row echelon form. Pivot rows are chosen by least
    /// coefficient complexity to keep exact arithmetic small.
    pub fn echelon(&self) -> Echelon<C> {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            let best = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].complexity());
            let Some(p) = best else { continue };
            m.swap(r, p);
            let inv = m[r][c].inv();
            for x in m[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *x = x.clone() - f.clone() * p.clone();
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        let rref = if m.is_empty() { Matrix::zeros(0, self.cols) } else { Matrix::from_rows(m) };
        Echelon { rref, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let e = self.hcat(&Self::identity(n)).echelon();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| e.rref.get(i, n + j).clone()))
    }

    /// Basis of `{x : self · x = 0}`, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<C>> {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (r, &p) in e.pivots.iter().enumerate() {
                    v[p] = -e.rref.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = b` when solvable.
    pub fn solve(&self, b: &[C]) -> Option<Vec<C>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hcat(&Self::col_vector(b.to_vec()));
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![C::zero(); self.cols];
        for (r, &p) in e.pivots.iter().enumerate() {
            x[p] = e.rref.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> C {
        assert!(self.is_square());
        let mut m = self.to_rows();
        let n = self.rows;
        let mut det = C::one();
        for c in 0..n {
            let Some(p) = (c..n).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].complexity()) else {
                return C::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det = det * piv.clone();
            let inv = piv.inv();
            for i in c + 1..n {
                if !m[i][c].is_zero() {
                    let f = m[i][c].clone() * inv.clone();
                    for j in c..n {
                        let v = m[i][j].clone() - f.clone() * m[c][j].clone();
                        m[i][j] = v;
                    }
                }
            }
        }
        det
    }
}

/// Incrementally maintained echelon basis of a row space, used for
/// membership tests and coordinates of vectors in a growing family.
#[derive(Clone, Debug)]
pub struct RowBasis<C> {
    dim: usize,
    /// Reduced rows with their pivot columns (pivot entry is one).
    rows: Vec<(usize, Vec<C>)>,
    /// Expression of each reduced row in terms of the inserted vectors.
    combos: Vec<Vec<C>>,
    inserted: usize,
}

impl<C: Field> RowBasis<C> {
    pub fn new(dim: usize) -> Self {
        RowBasis { dim, rows: Vec::new(), combos: Vec::new(), inserted: 0 }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis, returning the remainder and the
    /// combination of inserted vectors that was subtracted.
    fn reduce(&self, v: &[C]) -> (Vec<C>, Vec<C>) {
        let mut v = v.to_vec();
        let mut used = vec![C::zero(); self.inserted];
        for ((p, row), combo) in self.rows.iter().zip(&self.combos) {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - f.clone() * r.clone();
                }
            }
            for (u, c) in used.iter_mut().zip(combo) {
                if !c.is_zero() {
                    *u = u.clone() + f.clone() * c.clone();
                }
            }
        }
        (v, used)
    }

    pub fn contains(&self, v: &[C]) -> bool {
        self.reduce(v).0.iter().all(C::is_zero)
    }

    /// Coefficients `c` with `v = Σ c_i inserted_i` over the accepted
    /// vectors, when `v` lies in the span.
    pub fn coordinates(&self, v: &[C]) -> Option<Vec<C>> {
        let (rem, used) = self.reduce(v);
        rem.iter().all(C::is_zero).then_some(used)
    }

    /// Inserts `v` if independent; returns whether it was accepted.
    pub fn insert(&mut self, v: &[C]) -> bool {
        assert_eq!(v.len(), self.dim);
        let (rem, used) = self.reduce(v);
        let Some(p) = (0..self.dim).filter(|&i| !rem[i].is_zero()).min_by_key(|&i| rem[i].complexity()) else {
            return false;
        };
        let inv = rem[p].inv();
        let row: Vec<C> = rem.iter().map(|x| x.clone() * inv.clone()).collect();
        // combo: row = (v - Σ used_i inserted_i) * inv
        for combo in &mut self.combos {
            combo.push(C::zero());
        }
        let mut combo: Vec<C> = used.iter().map(|u| -(u.clone() * inv.clone())).collect();
        combo.push(inv);
        self.inserted += 1;
        // Keep the basis fully reduced with respect to the new pivot.
        for ((_, r), c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
                for (x, y) in c.iter_mut().zip(&combo) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        self.rows.push((p, row));
        self.combos.push(combo);
        true
    }
}

impl<C: Coeff> Add for Matrix<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "dimension mismatch in matrix sum");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<C: Coeff> Sub for Matrix<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "dimension mismatch in matrix difference");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<C: Coeff> Mul for Matrix<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coeff> Mul for &Matrix<C> {
    type Output = Matrix<C>;
    fn mul(self, rhs: Self) -> Matrix<C> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out: Matrix<C> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
