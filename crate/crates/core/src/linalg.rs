//! Dense matrices, row reduction, kernels and determinants.
//!
//! Two independent elimination routes exist on purpose:
//! [`rref`] is textbook Gauss-Jordan over any [`Scalar`], while
//! [`rref_fraction_free`] eliminates integer matrices without leaving the
//! integers and only divides once, at the very end. Both produce the unique
//! reduced row echelon form, so their outputs are directly comparable.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Ring, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Ring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share one length;
    /// `cols` is used when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        Self::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_negligible() {
                    continue;
                }
                acc = acc + a.clone() * rhs[(k, c)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * k.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_negligible)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && self.transpose().add(self).is_zero()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reorders rows and columns simultaneously: entry `(i, j)` of the result
    /// is entry `(order[i], order[j])` of `self`.
    pub fn permute_symmetric(&self, order: &[usize]) -> Self {
        assert!(self.is_square() && order.len() == self.rows);
        Self::from_fn(self.rows, self.cols, |r, c| self[(order[r], order[c])].clone())
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Reduced row echelon form by Gauss-Jordan elimination. Returns the nonzero
/// rows and the pivot column of each.
pub fn rref<S: Scalar>(m: &Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_negligible()) else {
            continue;
        };
        swap_rows(&mut a, r, p);
        let inv = S::one() / a[(r, c)].clone();
        // the pivot row is sparse in practice; touch only its nonzero columns
        let support: Vec<usize> = (c..cols).filter(|&k| !a[(r, k)].is_zero()).collect();
        for &k in &support {
            a[(r, k)] = a[(r, k)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_negligible() {
                continue;
            }
            let f = a[(i, c)].clone();
            for &k in &support {
                let t = a[(r, k)].clone() * f.clone();
                a[(i, k)] = a[(i, k)].clone() - t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let kept: Vec<Vec<S>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    (Matrix::from_rows(kept, cols), pivots)
}

fn swap_rows<S>(a: &mut Matrix<S>, i: usize, j: usize) {
    if i == j {
        return;
    }
    let cols = a.cols;
    for k in 0..cols {
        a.data.swap(i * cols + k, j * cols + k);
    }
}

/// RREF of an integer matrix without intermediate fractions.
///
/// Rows are combined with integer multipliers and kept primitive (content
/// divided out), so entries stay small. Rationals appear only in the final
/// normalisation by the pivots.
pub fn rref_fraction_free(m: &Matrix<BigInt>) -> (Matrix<BigRational>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let cols = m.cols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // smallest nonzero pivot keeps the multipliers small
        let Some(p) = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
        else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        for (_, row) in a.iter_mut().enumerate().filter(|(i, _)| *i != r) {
            if row[c].is_zero() {
                continue;
            }
            let g = row[c].gcd(&pivot_row[c]);
            let keep = &pivot_row[c] / &g;
            let take = &row[c] / &g;
            for k in 0..cols {
                row[k] = &row[k] * &keep - &pivot_row[k] * &take;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    let rows: Vec<Vec<BigRational>> = a[..r]
        .iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let lead = row[pc].clone();
            row.iter()
                .map(|x| BigRational::new(x.clone(), lead.clone()))
                .collect()
        })
        .collect();
    (Matrix::from_rows(rows, cols), pivots)
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Basis of `{x : m x = 0}` read off the RREF. Each basis vector has a 1 in
/// exactly one free column and 0 in the others.
pub fn nullspace<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let (red, pivots) = rref(m);
    nullspace_from_rref(&red, &pivots)
}

pub fn nullspace_from_rref<S: Ring>(red: &Matrix<S>, pivots: &[usize]) -> Vec<Vec<S>> {
    let cols = red.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -red[(r, f)].clone();
            }
            v
        })
        .collect()
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    rref(m).1.len()
}

/// Determinant by Gaussian elimination with division.
pub fn det<S: Scalar>(m: &Matrix<S>) -> S {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut acc = S::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_negligible()) else {
            return S::zero();
        };
        if p != c {
            swap_rows(&mut a, p, c);
            acc = -acc;
        }
        let piv = a[(c, c)].clone();
        acc = acc * piv.clone();
        for i in c + 1..n {
            if a[(i, c)].is_negligible() {
                continue;
            }
            let f = a[(i, c)].clone() / piv.clone();
            for k in c..n {
                let t = a[(c, k)].clone() * f.clone();
                a[(i, k)] = a[(i, k)].clone() - t;
            }
        }
    }
    acc
}

/// Bareiss fraction-free determinant of an integer matrix.
pub fn det_bareiss(m: &Matrix<BigInt>) -> BigInt {
    assert!(m.is_square());
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Characteristic polynomial `det(λI − A)` by the Faddeev–LeVerrier
/// recurrence. Coefficients are in ascending order of λ; the last is 1.
pub fn char_poly<S: Scalar>(a: &Matrix<S>) -> Vec<S> {
    assert!(a.is_square());
    let n = a.rows;
    let mut coeffs = vec![S::zero(); n + 1];
    coeffs[n] = S::one();
    // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
    let mut mk = Matrix::<S>::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&mk);
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        mk = next;
        let am = a.mul(&mk);
        let tr = (0..n).fold(S::zero(), |acc, i| acc + am[(i, i)].clone());
        let kk = <S as Ring>::from_i64(k as i64);
        coeffs[n - k] = -(tr / kk);
    }
    coeffs
}

/// Evaluates an ascending-coefficient polynomial.
pub fn eval_poly<S: Ring>(coeffs: &[S], x: &S) -> S {
    coeffs
        .iter()
        .rev()
        .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
}

pub fn dot<S: Ring>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Which part of the algebra a subspace lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// span of the vertices
    Vertices,
    /// span of the edge labels
    Labels,
    /// the whole algebra, vertices first then labels
    Full,
}

/// A subspace stored as its canonical RREF basis, so equality of subspaces is
/// equality of the stored matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: Ambient,
    basis: Matrix<S>,
}

impl<S: Scalar> Subspace<S> {
    pub fn span(ambient: Ambient, dim: usize, vectors: Vec<Vec<S>>) -> Self {
        let m = Matrix::from_rows(vectors, dim);
        Subspace {
            ambient,
            basis: rref(&m).0,
        }
    }

    /// Wraps a matrix already known to be in RREF with no zero rows.
    pub fn from_rref(ambient: Ambient, basis: Matrix<S>) -> Self {
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: Ambient, dim: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, dim),
        }
    }

    pub fn whole(ambient: Ambient, dim: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(dim),
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<S>> {
        self.basis.to_rows()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.ambient_dim());
        let extended = self
            .basis
            .vstack(&Matrix::from_rows(vec![v.to_vec()], v.len()));
        rank(&extended) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// Orthogonal complement under the standard inner product.
    pub fn orthogonal_complement(&self) -> Self {
        let n = self.ambient_dim();
        if self.dim() == 0 {
            return Self::whole(self.ambient, n);
        }
        Self::span(self.ambient, n, nullspace(&self.basis))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        Subspace {
            ambient: self.ambient,
            basis: rref(&self.basis.vstack(&other.basis)).0,
        }
    }
}

/// Gram–Schmidt without normalisation. Returns mutually orthogonal vectors
/// spanning the same space together with their squared norms; dependent
/// inputs are dropped.
pub fn orthogonalize<S: Scalar>(vectors: &[Vec<S>]) -> Vec<(Vec<S>, S)> {
    let mut out: Vec<(Vec<S>, S)> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (u, nu) in &out {
            let coef = dot(&w, u) / nu.clone();
            if coef.is_negligible() {
                continue;
            }
            for (wi, ui) in w.iter_mut().zip(u).filter(|(_, ui)| !ui.is_zero()) {
                *wi = wi.clone() - coef.clone() * ui.clone();
            }
        }
        let n = dot(&w, &w);
        if !n.is_negligible() {
            out.push((w, n));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};
    use crate::Rational;

    fn rm(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(),
            cols,
        )
    }

    fn im(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rref_known_example() {
        let m = rm(&[&[2, 4, -2], &[1, 2, 3], &[3, 6, 1]]);
        let (red, piv) = rref(&m);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(red, rm(&[&[1, 2, 0], &[0, 0, 1]]));
        let ns = nullspace(&m);
        assert_eq!(ns, vec![vec![rat(-2), rat(1), rat(0)]]);
    }

    #[test]
    fn fraction_free_matches_gauss_jordan() {
        let m = im(&[&[0, 3, -6, 6], &[3, -7, 8, -5], &[3, -9, 12, -9], &[1, 1, 1, 1]]);
        let (a, pa) = rref_fraction_free(&m);
        let (b, pb) = rref(&m.map(|x| Rational::from_integer(x.clone())));
        assert_eq!(pa, pb);
        assert_eq!(a, b);
    }

    #[test]
    fn determinants_agree() {
        let m = im(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(det_bareiss(&m), BigInt::from(4));
        assert_eq!(det(&m.map(|x| Rational::from_integer(x.clone()))), rat(4));
        let singular = im(&[&[1, 2], &[2, 4]]);
        assert_eq!(det_bareiss(&singular), BigInt::zero());
        assert_eq!(det_bareiss(&Matrix::zeros(0, 0)), BigInt::one());
    }

    #[test]
    fn char_poly_of_rotation() {
        let m = rm(&[&[0, -1], &[1, 0]]);
        assert_eq!(char_poly(&m), vec![rat(1), rat(0), rat(1)]);
        let m = rm(&[&[2, 1], &[0, 3]]);
        assert_eq!(char_poly(&m), vec![rat(6), rat(-5), rat(1)]);
    }

    #[test]
    fn generic_over_floats() {
        let m = Matrix::from_rows(vec![vec![1.0f64, 2.0], vec![3.0, 4.0]], 2);
        assert!((det(&m) + 2.0).abs() < 1e-12);
        let (red, _) = rref(&m);
        assert_eq!(red, Matrix::<f64>::identity(2));
        let cp = char_poly(&m);
        assert!((cp[0] + 2.0).abs() < 1e-12 && (cp[1] + 5.0).abs() < 1e-12);
        let r64 = Matrix::from_fn(2, 2, |r, c| num_rational::Ratio::new((r + c) as i64, 2));
        assert_eq!(det(&r64), num_rational::Ratio::new(-1, 4));
    }

    #[test]
    fn subspace_canonical_equality() {
        let a = Subspace::span(Ambient::Vertices, 3, vec![vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(1), rat(1)]]);
        let b = Subspace::span(
            Ambient::Vertices,
            3,
            vec![vec![rat(1), rat(2), rat(1)], vec![rat(1), rat(0), rat(-1)]],
        );
        assert_eq!(a, b);
        assert!(a.contains(&[rat(2), rat(3), rat(1)]));
        assert!(!a.contains(&[rat(1), rat(0), rat(0)]));
        let perp = a.orthogonal_complement();
        assert_eq!(perp.dim(), 1);
        assert!(perp.contains(&[rat(1), rat(-1), rat(1)]));
    }

    #[test]
    fn gram_schmidt_is_orthogonal() {
        let vs = vec![vec![rat(1), rat(1), rat(0)], vec![rat(1), rat(0), rat(1)], vec![rat(2), rat(1), rat(1)]];
        let out = orthogonalize(&vs);
        assert_eq!(out.len(), 2);
        assert_eq!(dot(&out[0].0, &out[1].0), rat(0));
        assert_eq!(out[1].1, frac(3, 2));
    }
}
