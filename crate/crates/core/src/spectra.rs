//! Characteristic polynomials of the restricted `j(Z)`, the symbolic
//! determinant, singularity classification and the block form of uniformly
//! colored graphs.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Label, LabeledDigraph, UniformParams, VertexId};
use crate::liealg::{CenterPerp, NilAlgebra};
use crate::linalg::{char_poly as faddeev_leverrier, det, eval_poly, Matrix, Subspace};
use crate::poly::{laplace_det, pfaffian, MultiPoly};
use crate::scalar::{frac, rat};
use crate::Rational;

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_EXPANSION_BOUND: usize = 10;

/// `det(λI - B)` for the restricted operator `B`, ascending in `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub coeffs: Vec<Rational>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, lambda: &Rational) -> Rational {
        eval_poly(&self.coeffs, lambda)
    }

    /// `det(B - λI) = (-1)^d det(λI - B)`.
    pub fn b_minus_lambda(&self) -> Vec<Rational> {
        if self.degree().is_multiple_of(2) {
            self.coeffs.clone()
        } else {
            self.coeffs.iter().map(|c| -c).collect()
        }
    }

    /// Nonzero roots of a real skew-symmetric matrix come in pairs `±iμ`, so
    /// only powers of the parity of the degree survive.
    pub fn has_skew_parity(&self) -> bool {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| (d - i).is_multiple_of(2) || c.is_zero())
    }
}

pub fn char_poly(a: &NilAlgebra, perp: &CenterPerp, z: &[Rational]) -> CharPoly {
    CharPoly {
        coeffs: faddeev_leverrier(&a.restricted_j(perp, z).similar_form()),
    }
}

/// `det(λI - B)` as a polynomial in the label coefficients `a_1..a_p`
/// followed by `λ`, by subset expansion.
pub fn symbolic_char_poly(a: &NilAlgebra, perp: &CenterPerp, bound: usize) -> Result<MultiPoly<Rational>> {
    let d = perp.basis.len();
    if d > bound {
        return Err(Error::DimensionTooLarge { dim: d, bound });
    }
    let p = a.p();
    let nv = p + 1;
    let layers = restricted_layers(a, perp, &identity_rows(p));
    let lambda = MultiPoly::var(nv, p);
    let m: Vec<Vec<MultiPoly<Rational>>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let mut coeffs: Vec<Rational> = layers
                        .iter()
                        .map(|l| -(l[(r, c)].clone() / perp.basis[r].1.clone()))
                        .collect();
                    coeffs.push(Rational::zero());
                    let entry = MultiPoly::linear(&coeffs);
                    if r == c {
                        &entry + &lambda
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    Ok(laplace_det(&m, nv))
}

/// Determinant of the restricted operator as a polynomial in coordinates
/// `t` with respect to `parametrization`: `Z = Σ t_s parametrization[s]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicDet {
    pub poly: MultiPoly<Rational>,
    pub parametrization: Vec<Vec<Rational>>,
}

impl SymbolicDet {
    pub fn is_identically_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn eval(&self, t: &[Rational]) -> Rational {
        self.poly.eval(t)
    }

    pub fn display(&self, names: &[String]) -> String {
        self.poly.display_with(names)
    }
}

fn identity_rows(p: usize) -> Vec<Vec<Rational>> {
    (0..p)
        .map(|i| (0..p).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect()
}

/// `M_s = U j(param_s) U^T` for each parameter direction.
fn restricted_layers(a: &NilAlgebra, perp: &CenterPerp, param: &[Vec<Rational>]) -> Vec<Matrix<Rational>> {
    param.iter().map(|z| a.restricted_j(perp, z).gram).collect()
}

fn gram_polys(a: &NilAlgebra, perp: &CenterPerp, param: &[Vec<Rational>]) -> Vec<Vec<MultiPoly<Rational>>> {
    let d = perp.basis.len();
    let layers = restricted_layers(a, perp, param);
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let coeffs: Vec<Rational> = layers.iter().map(|l| l[(r, c)].clone()).collect();
                    MultiPoly::linear(&coeffs)
                })
                .collect()
        })
        .collect()
}

fn norm_product(perp: &CenterPerp) -> Rational {
    perp.basis.iter().fold(Rational::one(), |acc, (_, n)| acc * n)
}

/// Symbolic determinant over the label coefficients, as `Pf(M)² / det D`.
pub fn symbolic_det(a: &NilAlgebra, perp: &CenterPerp, bound: usize) -> Result<SymbolicDet> {
    symbolic_det_over(a, perp, &identity_rows(a.p()), bound)
}

pub fn symbolic_det_over(
    a: &NilAlgebra,
    perp: &CenterPerp,
    parametrization: &[Vec<Rational>],
    bound: usize,
) -> Result<SymbolicDet> {
    let d = perp.basis.len();
    if d > bound {
        return Err(Error::DimensionTooLarge { dim: d, bound });
    }
    let nv = parametrization.len();
    let pf = pfaffian(&gram_polys(a, perp, parametrization), nv);
    let poly = (&pf * &pf).scale(&(Rational::one() / norm_product(perp)));
    Ok(SymbolicDet {
        poly,
        parametrization: parametrization.to_vec(),
    })
}

/// The same determinant by direct subset expansion of `D^{-1} M`, without
/// going through the Pfaffian.
pub fn symbolic_det_laplace(a: &NilAlgebra, perp: &CenterPerp, bound: usize) -> Result<SymbolicDet> {
    let d = perp.basis.len();
    if d > bound {
        return Err(Error::DimensionTooLarge { dim: d, bound });
    }
    let param = identity_rows(a.p());
    let m: Vec<Vec<MultiPoly<Rational>>> = gram_polys(a, perp, &param)
        .into_iter()
        .enumerate()
        .map(|(r, row)| {
            let inv = Rational::one() / perp.basis[r].1.clone();
            row.into_iter().map(|e| e.scale(&inv)).collect()
        })
        .collect();
    Ok(SymbolicDet {
        poly: laplace_det(&m, a.p()),
        parametrization: param,
    })
}

/// Exact determinant of the restricted operator at one label-coefficient
/// vector.
pub fn restricted_det(a: &NilAlgebra, perp: &CenterPerp, z: &[Rational]) -> Rational {
    let r = a.restricted_j(perp, z);
    det(&r.gram) / norm_product(perp)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularityStatus {
    SingularCertified,
    AlmostNonsingularCertified,
    NonsingularSampled,
    SingularitySampledInconclusive,
}

impl SingularityStatus {
    pub fn is_singular(self) -> bool {
        self == SingularityStatus::SingularCertified
    }
}

/// A label-coefficient vector and the restricted determinant there.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub coeffs: Vec<Rational>,
    pub det: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityVerdict {
    pub status: SingularityStatus,
    pub witnesses: Vec<Witness>,
    /// characteristic polynomial at `Z = Σ Z_l`
    pub char_poly: CharPoly,
    pub restricted_dim: usize,
    /// whether the symbolic determinant was expanded
    pub symbolic: bool,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub bound: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            bound: DEFAULT_EXPANSION_BOUND,
        }
    }
}

/// Sample `index` of the random search: a nonzero vector of rationals with
/// numerators in `-10..=10` and denominators in `1..=10`. Each index has its
/// own stream, so results do not depend on evaluation order.
pub fn sample_point(seed: u64, index: u64, len: usize) -> Vec<Rational> {
    assert!(len > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let v: Vec<Rational> = (0..len)
            .map(|_| frac(rng.gen_range(-10..=10), rng.gen_range(1..=10)))
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Coordinate directions, then sums of two of them in lexicographic order.
fn structured_points(r: usize) -> Vec<Vec<Rational>> {
    let unit = |i: usize| -> Vec<Rational> { (0..r).map(|j| if i == j { rat(1) } else { rat(0) }).collect() };
    let mut out: Vec<Vec<Rational>> = (0..r).map(unit).collect();
    for i in 0..r {
        for j in i + 1..r {
            out.push(unit(i).iter().zip(unit(j)).map(|(x, y)| x + y).collect());
        }
    }
    out
}

pub fn classify(a: &NilAlgebra, opts: ClassifyOptions) -> SingularityVerdict {
    let abelian = a.abelian_factor();
    let perp = a.center_perp_from(&abelian);
    classify_with(a, &abelian, &perp, opts)
}

pub fn classify_with(
    a: &NilAlgebra,
    abelian: &Subspace<Rational>,
    perp: &CenterPerp,
    opts: ClassifyOptions,
) -> SingularityVerdict {
    let d = perp.basis.len();
    let param = a.derived_algebra().span.basis_vectors();
    let r = param.len();
    let to_labels = |t: &[Rational]| -> Vec<Rational> {
        (0..a.p())
            .map(|l| t.iter().zip(&param).map(|(ts, row)| ts * &row[l]).sum())
            .collect()
    };
    let mut verdict = SingularityVerdict {
        status: SingularityStatus::SingularitySampledInconclusive,
        witnesses: Vec::new(),
        char_poly: char_poly(a, perp, &vec![rat(1); a.p()]),
        restricted_dim: d,
        symbolic: false,
        samples: 0,
        seed: opts.seed,
    };

    if r == 0 {
        // every bracket vanishes, so the complement of the center is zero
        verdict.status = SingularityStatus::AlmostNonsingularCertified;
        verdict.witnesses.push(Witness {
            coeffs: vec![rat(0); a.p()],
            det: restricted_det(a, perp, &vec![rat(0); a.p()]),
        });
        return verdict;
    }

    let symbolic = symbolic_det_over(a, perp, &param, opts.bound).ok();
    verdict.symbolic = symbolic.is_some();
    let eval = |t: &[Rational]| -> Witness {
        let coeffs = to_labels(t);
        let det = match &symbolic {
            Some(s) => s.eval(t),
            None => restricted_det(a, perp, &coeffs),
        };
        Witness { coeffs, det }
    };

    if let Some(s) = &symbolic {
        if s.is_identically_zero() {
            verdict.status = SingularityStatus::SingularCertified;
            verdict.witnesses.push(eval(&structured_points(r)[0]));
            return verdict;
        }
    }

    let mut singular: Option<Witness> = None;
    let mut regular: Option<Witness> = None;
    let note = |w: Witness, singular: &mut Option<Witness>, regular: &mut Option<Witness>| {
        let slot = if w.det.is_zero() { singular } else { regular };
        if slot.is_none() {
            *slot = Some(w);
        }
    };
    for t in structured_points(r) {
        note(eval(&t), &mut singular, &mut regular);
        if singular.is_some() && regular.is_some() {
            break;
        }
    }
    if singular.is_none() || regular.is_none() {
        let sampled: Vec<Witness> = (0..opts.samples as u64)
            .into_par_iter()
            .map(|i| eval(&sample_point(opts.seed, i, r)))
            .collect();
        verdict.samples = sampled.len();
        for w in sampled {
            note(w, &mut singular, &mut regular);
        }
    }

    verdict.status = match (&singular, &regular) {
        (Some(_), Some(_)) => SingularityStatus::AlmostNonsingularCertified,
        (None, Some(_)) if !abelian.is_trivial() => SingularityStatus::AlmostNonsingularCertified,
        (None, Some(_)) => SingularityStatus::NonsingularSampled,
        _ => SingularityStatus::SingularitySampledInconclusive,
    };
    verdict.witnesses = singular.into_iter().chain(regular).collect();
    verdict
}

/// One label's perfect matching and the vertex order that puts `j(Z)` in
/// block form.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelBlocks {
    pub label: Label,
    /// `(tail, head)` of each edge with this label
    pub matching: Vec<(VertexId, VertexId)>,
    /// vertex order: each edge contributes its tail, then its head
    pub order: Vec<VertexId>,
    pub block_diagonal: bool,
    /// `det(λI - j(Z))` equals `(λ² + 1)^r`
    pub eigenvalues_plus_minus_i: bool,
    pub nonsingular: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniformBlocks {
    pub params: UniformParams,
    pub even_vertex_count: bool,
    /// the perfect matchings force `q = 2r`
    pub q_is_twice_r: bool,
    pub labels: Vec<LabelBlocks>,
}

impl UniformBlocks {
    pub fn certified(&self) -> bool {
        self.even_vertex_count
            && self.q_is_twice_r
            && self
                .labels
                .iter()
                .all(|l| l.block_diagonal && l.eigenvalues_plus_minus_i && l.nonsingular)
    }
}

/// `(λ² + 1)^r`, ascending.
fn rotation_poly(r: usize) -> Vec<Rational> {
    let mut p = vec![rat(1)];
    for _ in 0..r {
        let mut next = vec![rat(0); p.len() + 2];
        for (i, c) in p.iter().enumerate() {
            next[i] += c;
            next[i + 2] += c;
        }
        p = next;
    }
    p
}

pub fn uniform_blocks(g: &LabeledDigraph) -> Result<UniformBlocks> {
    let params = g.uniform_coloring_check().ok_or(Error::NotUniform)?;
    if params.s != params.p {
        return Err(Error::DegreeMismatch {
            s: params.s,
            p: params.p,
        });
    }
    let a = NilAlgebra::build(g);
    let names = g.vertices();
    let mut labels = Vec::new();
    for l in 0..g.label_count() {
        let edges: Vec<_> = g.edges().iter().filter(|e| e.label == l).collect();
        let order: Vec<usize> = edges.iter().flat_map(|e| [e.tail, e.head]).collect();
        let mut coeffs = vec![rat(0); g.label_count()];
        coeffs[l] = rat(1);
        let j = a.j_matrix(&coeffs);
        let covers = {
            let mut seen = order.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == order.len() && order.len() == g.vertex_count()
        };
        let block_diagonal = covers && {
            let permuted = j.permute_symmetric(&order);
            let expected = Matrix::from_fn(order.len(), order.len(), |r, c| match (r / 2 == c / 2, r % 2, c % 2) {
                (true, 0, 1) => rat(-1),
                (true, 1, 0) => rat(1),
                _ => rat(0),
            });
            permuted == expected
        };
        labels.push(LabelBlocks {
            label: g.labels()[l].clone(),
            matching: edges
                .iter()
                .map(|e| (names[e.tail].clone(), names[e.head].clone()))
                .collect(),
            order: order.iter().map(|&v| names[v].clone()).collect(),
            block_diagonal,
            eigenvalues_plus_minus_i: faddeev_leverrier(&j) == rotation_poly(edges.len()),
            nonsingular: !det(&j).is_zero(),
        });
    }
    Ok(UniformBlocks {
        params,
        even_vertex_count: params.q % 2 == 0,
        q_is_twice_r: params.q == 2 * params.r,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_star, reduce_star, StarSpec};
    use crate::graph::parse_graph;

    const UNIFORM6: &str = "vertex v1\nvertex v2\nvertex v3\nvertex v4\nvertex v5\nvertex v6\n\
        v1 v2 Z1\nv1 v6 Z2\nv1 v4 Z3\nv3 v6 Z1\nv2 v5 Z2\nv2 v3 Z3\nv4 v5 Z1\nv3 v4 Z2\nv5 v6 Z3\n";
    const C8: &str = "v1 v2 Z1\nv2 v3 Z2\nv3 v4 Z3\nv4 v5 Z4\nv5 v6 Z1\nv6 v7 Z2\nv7 v8 Z3\nv8 v1 Z4\n";

    fn alg(text: &str) -> NilAlgebra {
        NilAlgebra::build(&parse_graph(text).unwrap())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn mixed_star_char_poly() {
        let spec = StarSpec::new(vec![3, 2, 1], vec![vec![1, -1, 1], vec![1, -1], vec![1]]).unwrap();
        let a = NilAlgebra::build(&make_star(&spec).unwrap());
        let perp = a.center_perp();
        let cp = char_poly(&a, &perp, &ints(&[1, 1, 1]));
        assert_eq!(cp.b_minus_lambda(), ints(&[0, 0, 6, 0, 1]));
        assert!(cp.has_skew_parity());
        let sym = symbolic_char_poly(&a, &perp, 10).unwrap();
        let w = reduce_star(&spec).unwrap();
        // det(λI - B) vs (-λ)^{k-1}(λ² + Σ m a²) differ by (-1)^{k+1}
        assert_eq!(sym, w.symbolic_char_poly());
    }

    #[test]
    fn zero_z_gives_pure_power() {
        let a = alg(C8);
        let perp = a.center_perp();
        let cp = char_poly(&a, &perp, &ints(&[0, 0, 0, 0]));
        let mut expect = vec![rat(0); 9];
        expect[8] = rat(1);
        assert_eq!(cp.coeffs, expect);
    }

    #[test]
    fn pfaffian_and_laplace_routes_agree() {
        for text in [UNIFORM6, C8, "a b Z1\na c Z1\na d Z2"] {
            let a = alg(text);
            let perp = a.center_perp();
            let pf = symbolic_det(&a, &perp, 10).unwrap();
            let lp = symbolic_det_laplace(&a, &perp, 10).unwrap();
            assert_eq!(pf.poly, lp.poly);
            let z = ints(&[2, -1, 3, 1][..a.p()]);
            assert_eq!(pf.eval(&z), restricted_det(&a, &perp, &z));
        }
    }

    #[test]
    fn uniform_symbolic_det_is_nonzero() {
        let a = alg(UNIFORM6);
        let s = symbolic_det(&a, &a.center_perp(), 10).unwrap();
        assert!(!s.is_identically_zero());
        assert!(s.poly.is_homogeneous());
        assert_eq!(s.poly.total_degree(), Some(6));
    }

    #[test]
    fn dimension_bound_is_enforced() {
        let a = alg(C8);
        assert_eq!(
            symbolic_det(&a, &a.center_perp(), 4).unwrap_err(),
            Error::DimensionTooLarge { dim: 8, bound: 4 }
        );
    }

    #[test]
    fn c8_is_almost_nonsingular() {
        let v = classify(&alg(C8), ClassifyOptions::default());
        assert_eq!(v.status, SingularityStatus::AlmostNonsingularCertified);
        assert_eq!(v.witnesses[0].coeffs, ints(&[1, 0, 0, 0]));
        assert!(v.witnesses[0].det.is_zero());
        assert_eq!(v.witnesses[1].coeffs, ints(&[1, 0, 1, 0]));
        assert!(!v.witnesses[1].det.is_zero());
        assert!(v.symbolic);
    }

    #[test]
    fn sampling_fallback_matches() {
        let opts = ClassifyOptions { bound: 2, ..Default::default() };
        let v = classify(&alg(C8), opts);
        assert!(!v.symbolic);
        assert_eq!(v.status, SingularityStatus::AlmostNonsingularCertified);
    }

    #[test]
    fn stars_with_two_labels_are_singular() {
        let v = classify(&alg("c a Z1\nc b Z2"), ClassifyOptions::default());
        assert_eq!(v.status, SingularityStatus::SingularCertified);
        // a single edge is a Heisenberg algebra
        let v = classify(&alg("c a Z"), ClassifyOptions::default());
        assert_eq!(v.status, SingularityStatus::NonsingularSampled);
    }

    #[test]
    fn abelian_factor_prevents_nonsingular() {
        // one-label star: j(Z) on the complement is nonsingular, but a ≠ 0
        let v = classify(&alg("c a Z\nc b Z"), ClassifyOptions::default());
        assert_eq!(v.status, SingularityStatus::AlmostNonsingularCertified);
    }

    #[test]
    fn samples_are_reproducible() {
        assert_eq!(sample_point(0, 3, 4), sample_point(0, 3, 4));
        assert_ne!(sample_point(0, 3, 4), sample_point(0, 4, 4));
        assert_ne!(sample_point(1, 3, 4), sample_point(0, 3, 4));
    }

    #[test]
    fn uniform_block_forms() {
        let b = uniform_blocks(&parse_graph(UNIFORM6).unwrap()).unwrap();
        assert_eq!(b.params, UniformParams { p: 3, q: 6, r: 3, s: 3 });
        assert_eq!(b.labels.len(), 3);
        assert!(b.labels.iter().all(|l| l.matching.len() == 3));
        assert!(b.certified());

        let single = uniform_blocks(&parse_graph("a b Z").unwrap()).unwrap();
        assert!(single.certified());

        assert_eq!(
            uniform_blocks(&parse_graph(C8).unwrap()).unwrap_err(),
            Error::DegreeMismatch { s: 2, p: 4 }
        );
        assert_eq!(
            uniform_blocks(&parse_graph("c a Z\nc b Z").unwrap()).unwrap_err(),
            Error::NotUniform
        );
    }

    #[test]
    fn rotation_polynomials() {
        assert_eq!(rotation_poly(2), ints(&[1, 0, 2, 0, 1]));
    }
}
