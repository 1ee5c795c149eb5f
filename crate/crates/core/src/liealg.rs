//! The 2-step nilpotent Lie algebra attached to a labeled digraph.
//!
//! The underlying space is `𝒱 ⊕ 𝔴` where `𝒱` is spanned by the vertices and
//! `𝔴` by the labels, with vertices and labels together orthonormal. The
//! bracket of two vertices is the signed sum of the labels on the edges
//! joining them; every other bracket of basis elements vanishes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use crate::error::{Error, Result};
use crate::graph::{Label, LabeledDigraph, VertexId};
use crate::linalg::{
    dot, nullspace, nullspace_from_rref, orthogonalize, rref_fraction_free, Ambient, Matrix,
    Subspace,
};
use crate::scalar::{rat, Ring};
use crate::Rational;

/// A sparse rational vector over the full basis of one algebra: indices
/// `0..n` are vertices, `n..n+p` are labels. Zero coordinates are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatVector {
    dim: usize,
    coords: std::collections::BTreeMap<usize, Rational>,
}

impl RatVector {
    pub fn zero(dim: usize) -> Self {
        RatVector {
            dim,
            coords: Default::default(),
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.set(i, Rational::one());
        v
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        let mut v = Self::zero(values.len());
        for (i, x) in values.iter().enumerate() {
            v.set(i, x.clone());
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> Rational {
        self.coords.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, x: Rational) {
        assert!(i < self.dim);
        if x.is_zero() {
            self.coords.remove(&i);
        } else {
            self.coords.insert(i, x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().map(|(&i, x)| (i, x))
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        (0..self.dim).map(|i| self.get(i)).collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::BasisMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out = self.clone();
        for (i, x) in other.iter() {
            out.set(i, out.get(i) + x);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (i, x) in self.iter() {
            out.set(i, x * k);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilAlgebra {
    vertices: Vec<VertexId>,
    labels: Vec<Label>,
    /// `c[i][j][l]` flattened; entries in {-1, 0, 1}
    structure: Vec<i8>,
}

/// `j(Z)` for `Z = Σ a_l Z_l` as a matrix on `𝒱`.
#[derive(Clone, Debug, PartialEq)]
pub struct JOperator {
    pub label_combo: Vec<Rational>,
    pub matrix: Matrix<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedAlgebra {
    pub span: Subspace<Rational>,
    /// whether the brackets span all of `𝔴`
    pub equals_label_span: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Center {
    /// `{x : [x, 𝔫] = 0}` in the full basis
    pub subspace: Subspace<Rational>,
    /// whether the center equals derived algebra ⊕ abelian factor
    pub decomposition_holds: bool,
}

/// Orthogonal basis of the part of `𝒱` orthogonal to the abelian factor,
/// with squared norms. Vectors are primitive integer vectors whose first
/// nonzero entry is positive.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterPerp {
    pub basis: Vec<(Vec<Rational>, Rational)>,
}

/// `j(Z)` restricted to the orthogonal complement of the center, kept as the
/// pair `(M, D)`: `M[r][c] = ⟨j(Z) u_c, u_r⟩` in the unnormalised basis `u`
/// and `D = diag(|u_r|²)`. The orthonormal-basis matrix is
/// `D^{-1/2} M D^{-1/2}`, which is similar to the rational `D^{-1} M`.
#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedJ {
    pub gram: Matrix<Rational>,
    pub norms: Vec<Rational>,
}

impl RestrictedJ {
    pub fn dim(&self) -> usize {
        self.norms.len()
    }

    /// `D^{-1} M`, similar to the orthonormal-basis matrix.
    pub fn similar_form(&self) -> Matrix<Rational> {
        Matrix::from_fn(self.dim(), self.dim(), |r, c| {
            self.gram[(r, c)].clone() / self.norms[r].clone()
        })
    }
}

impl NilAlgebra {
    /// `c[i][j][l]` is +1 for an edge `v_i → v_j` labeled `Z_l`, minus one
    /// for an edge `v_j → v_i` labeled `Z_l`. Loops contribute nothing.
    pub fn build(g: &LabeledDigraph) -> Self {
        let (n, p) = (g.vertex_count(), g.label_count());
        let mut structure = vec![0i8; n * n * p];
        for e in g.edges().iter().filter(|e| !e.is_loop()) {
            structure[(e.tail * n + e.head) * p + e.label] += 1;
            structure[(e.head * n + e.tail) * p + e.label] -= 1;
        }
        NilAlgebra {
            vertices: g.vertices().to_vec(),
            labels: g.labels().to_vec(),
            structure,
        }
    }

    /// Assembles an algebra from raw structure constants without checking
    /// skew symmetry. Intended for exercising the invariant checks.
    pub fn from_structure(vertices: Vec<VertexId>, labels: Vec<Label>, structure: Vec<i8>) -> Result<Self> {
        let expected = vertices.len() * vertices.len() * labels.len();
        if structure.len() != expected {
            return Err(Error::BasisMismatch {
                expected,
                got: structure.len(),
            });
        }
        Ok(NilAlgebra {
            vertices,
            labels,
            structure,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn p(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.n() + self.p()
    }

    pub fn structure_constant(&self, i: usize, j: usize, l: usize) -> i8 {
        let (n, p) = (self.n(), self.p());
        self.structure[(i * n + j) * p + l]
    }

    pub fn vertex(&self, name: &str) -> Result<RatVector> {
        let i = self
            .vertices
            .iter()
            .position(|v| v.0 == name)
            .ok_or_else(|| Error::UnknownVertex(name.into()))?;
        Ok(RatVector::basis(self.dim(), i))
    }

    pub fn label(&self, name: &str) -> Result<RatVector> {
        let l = self
            .labels
            .iter()
            .position(|z| z.0 == name)
            .ok_or_else(|| Error::UnknownLabel(name.into()))?;
        Ok(RatVector::basis(self.dim(), self.n() + l))
    }

    /// Bilinear extension of the vertex brackets; label components of the
    /// inputs bracket to zero with everything.
    pub fn bracket(&self, x: &RatVector, y: &RatVector) -> Result<RatVector> {
        for v in [x, y] {
            if v.dim() != self.dim() {
                return Err(Error::BasisMismatch {
                    expected: self.dim(),
                    got: v.dim(),
                });
            }
        }
        let n = self.n();
        let mut acc = vec![Rational::zero(); self.p()];
        for (i, a) in x.iter().filter(|(i, _)| *i < n) {
            for (j, b) in y.iter().filter(|(j, _)| *j < n) {
                let ab = a * b;
                for (l, slot) in acc.iter_mut().enumerate() {
                    match self.structure_constant(i, j, l) {
                        0 => {}
                        c => *slot += &ab * rat(c as i64),
                    }
                }
            }
        }
        let mut out = RatVector::zero(self.dim());
        for (l, v) in acc.into_iter().enumerate() {
            out.set(n + l, v);
        }
        Ok(out)
    }

    /// Span of all vertex brackets inside `𝔴`, compared with `𝔴` itself.
    pub fn derived_algebra(&self) -> DerivedAlgebra {
        let (n, p) = (self.n(), self.p());
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let row: Vec<Rational> = (0..p)
                    .map(|l| rat(self.structure_constant(i, j, l) as i64))
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let span = Subspace::span(Ambient::Labels, p, rows);
        DerivedAlgebra {
            equals_label_span: span.dim() == p,
            span,
        }
    }

    /// Matrix of `j(Z)` on `𝒱` for `Z = Σ coeffs[l] Z_l`: the entry in row
    /// `k`, column `i` is `⟨Z, [v_i, v_k]⟩`.
    pub fn j_matrix<R: Ring>(&self, coeffs: &[R]) -> Matrix<R> {
        assert_eq!(coeffs.len(), self.p(), "one coefficient per label");
        let n = self.n();
        Matrix::from_fn(n, n, |k, i| {
            coeffs
                .iter()
                .enumerate()
                .fold(R::zero(), |acc, (l, a)| match self.structure_constant(i, k, l) {
                    0 => acc,
                    c => acc + a.clone() * R::from_i64(c as i64),
                })
        })
    }

    pub fn j_operator(&self, coeffs: &[Rational]) -> JOperator {
        JOperator {
            label_combo: coeffs.to_vec(),
            matrix: self.j_matrix(coeffs),
        }
    }

    /// Matrix of `j(Z_l)` for a single label.
    pub fn j_label(&self, l: usize) -> Matrix<BigInt> {
        let mut e = vec![BigInt::zero(); self.p()];
        e[l] = BigInt::one();
        self.j_matrix(&e)
    }

    /// `⋂_l ker j(Z_l)`, by fraction-free elimination of the stacked label
    /// matrices.
    pub fn abelian_factor(&self) -> Subspace<Rational> {
        let n = self.n();
        let mut stacked = Matrix::<BigInt>::zeros(0, n);
        for l in 0..self.p() {
            stacked = stacked.vstack(&self.j_label(l));
        }
        let (red, pivots) = rref_fraction_free(&stacked);
        Subspace::span(Ambient::Vertices, n, nullspace_from_rref(&red, &pivots))
    }

    /// The abelian factor obtained directly from its definition: solve
    /// `[X, v_j] = 0` for every vertex `v_j`, using the bracket only.
    pub fn oracle_abelian_factor(&self) -> Subspace<Rational> {
        let (n, p) = (self.n(), self.p());
        let dim = self.dim();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for j in 0..n {
            let vj = RatVector::basis(dim, j);
            let brackets: Vec<RatVector> = (0..n)
                .map(|i| {
                    self.bracket(&RatVector::basis(dim, i), &vj)
                        .expect("basis vectors match")
                })
                .collect();
            for l in 0..p {
                rows.push(brackets.iter().map(|b| b.get(n + l)).collect());
            }
        }
        if rows.is_empty() {
            return Subspace::whole(Ambient::Vertices, n);
        }
        let sys = Matrix::from_rows(rows, n);
        Subspace::span(Ambient::Vertices, n, nullspace(&sys))
    }

    /// The center, computed as `{x : [x, v_j] = 0 ∀ j}` over the full basis.
    pub fn center(&self) -> Center {
        let (n, p) = (self.n(), self.p());
        let dim = self.dim();
        let mut rows = Vec::new();
        for j in 0..n {
            for l in 0..p {
                let mut row = vec![Rational::zero(); dim];
                for (i, slot) in row.iter_mut().enumerate().take(n) {
                    *slot = rat(self.structure_constant(i, j, l) as i64);
                }
                rows.push(row);
            }
        }
        let subspace = if rows.is_empty() {
            Subspace::whole(Ambient::Full, dim)
        } else {
            Subspace::span(Ambient::Full, dim, nullspace(&Matrix::from_rows(rows, dim)))
        };
        let derived = self.derived_algebra();
        let mut parts: Vec<Vec<Rational>> = Vec::new();
        for v in derived.span.basis_vectors() {
            let mut row = vec![Rational::zero(); n];
            row.extend(v);
            parts.push(row);
        }
        for v in self.abelian_factor().basis_vectors() {
            let mut row = v;
            row.extend(vec![Rational::zero(); p]);
            parts.push(row);
        }
        let decomposition = Subspace::span(Ambient::Full, dim, parts);
        Center {
            decomposition_holds: decomposition == subspace,
            subspace,
        }
    }

    /// Orthogonal basis of `𝒵(𝔫)^⊥ ∩ 𝒱` with squared norms.
    pub fn center_perp(&self) -> CenterPerp {
        self.center_perp_from(&self.abelian_factor())
    }

    pub fn center_perp_from(&self, abelian: &Subspace<Rational>) -> CenterPerp {
        let complement = abelian.orthogonal_complement();
        let basis = orthogonalize(&complement.basis_vectors())
            .into_iter()
            .map(|(v, _)| {
                let v = primitive_integer_vector(&v);
                let norm = dot(&v, &v);
                (v, norm)
            })
            .collect();
        CenterPerp { basis }
    }

    /// `j(Z)` on `𝒵(𝔫)^⊥` in the `(M, D)` form.
    pub fn restricted_j(&self, perp: &CenterPerp, coeffs: &[Rational]) -> RestrictedJ {
        let j = self.j_matrix(coeffs);
        let d = perp.basis.len();
        let images: Vec<Vec<Rational>> = perp.basis.iter().map(|(u, _)| j.mul_vec(u)).collect();
        RestrictedJ {
            gram: Matrix::from_fn(d, d, |r, c| dot(&perp.basis[r].0, &images[c])),
            norms: perp.basis.iter().map(|(_, n)| n.clone()).collect(),
        }
    }

    /// Integer Gram matrix `U J U^T` of `j(Z)` on `𝒵(𝔫)^⊥` for integer
    /// coefficients; its determinant has the sign and zero pattern of the
    /// restricted determinant.
    pub fn restricted_gram_int(&self, perp: &CenterPerp, coeffs: &[BigInt]) -> Matrix<BigInt> {
        let j = self.j_matrix(coeffs);
        let basis: Vec<Vec<BigInt>> = perp
            .basis
            .iter()
            .map(|(u, _)| u.iter().map(|x| x.to_integer()).collect())
            .collect();
        let images: Vec<Vec<BigInt>> = basis.iter().map(|u| j.mul_vec(u)).collect();
        let d = basis.len();
        Matrix::from_fn(d, d, |r, c| dot(&basis[r], &images[c]))
    }

    /// Renders a vertex-space vector as `a*v1 + b*v2 ...` pairs.
    pub fn vertex_terms(&self, v: &[Rational]) -> Vec<(Rational, VertexId)> {
        v.iter()
            .zip(&self.vertices)
            .filter(|(x, _)| !x.is_zero())
            .map(|(x, name)| (x.clone(), name.clone()))
            .collect()
    }
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading entry.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_negative { -g } else { g };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}
