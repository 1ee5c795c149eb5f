//! Schreier graphs: the permutation action of the labels on the vertices,
//! the orbits of squared generators, and the resulting abelian-factor basis.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, Label, LabeledDigraph, VertexId};
use crate::linalg::Matrix;
use crate::Rational;

/// A product of labels and their inverses, applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelWord {
    pub letters: Vec<(Label, i8)>,
}

impl LabelWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Parses whitespace-separated letters such as `Z1 Z2^-1 Z1^2`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i32>()
                        .map_err(|_| Error::InvalidSpec(format!("bad exponent in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            if name.is_empty() || exp == 0 {
                return Err(Error::InvalidSpec(format!("bad letter `{tok}`")));
            }
            let sign = if exp > 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((Label::from(name), sign));
            }
        }
        Ok(LabelWord { letters })
    }

    pub fn inverse(&self) -> Self {
        LabelWord {
            letters: self.letters.iter().rev().map(|(z, e)| (z.clone(), -e)).collect(),
        }
    }

    /// `self · other`, so `other` acts first.
    pub fn then_apply(&self, other: &Self) -> Self {
        LabelWord {
            letters: self.letters.iter().chain(&other.letters).cloned().collect(),
        }
    }
}

/// `(Z_l^{±1})² ⋯ (Z_1^{±1})²`, stored left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoPathSequence {
    pub squares: Vec<(Label, i8)>,
}

impl TwoPathSequence {
    pub fn to_word(&self) -> LabelWord {
        LabelWord {
            letters: self
                .squares
                .iter()
                .flat_map(|(z, e)| [(z.clone(), *e), (z.clone(), *e)])
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPartition {
    pub classes: Vec<Vec<VertexId>>,
    pub representatives: Vec<VertexId>,
}

impl VertexPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The label permutations of a Schreier graph, as vertex indices.
#[derive(Clone, Debug)]
pub struct SchreierAction<'g> {
    graph: &'g LabeledDigraph,
    forward: Vec<Vec<usize>>,
    backward: Vec<Vec<usize>>,
}

impl<'g> SchreierAction<'g> {
    pub fn new(g: &'g LabeledDigraph) -> Result<Self> {
        if let Some(why) = g.schreier_violation() {
            return Err(Error::NotSchreier(why));
        }
        let (n, p) = (g.vertex_count(), g.label_count());
        let mut forward = vec![vec![0; n]; p];
        let mut backward = vec![vec![0; n]; p];
        for e in g.edges() {
            forward[e.label][e.tail] = e.head;
            backward[e.label][e.head] = e.tail;
        }
        Ok(SchreierAction {
            graph: g,
            forward,
            backward,
        })
    }

    pub fn graph(&self) -> &LabeledDigraph {
        self.graph
    }

    /// `α(Z^exp)` on the vertex with index `v`.
    pub fn apply(&self, label: usize, exp: i8, v: usize) -> usize {
        if exp > 0 {
            self.forward[label][v]
        } else {
            self.backward[label][v]
        }
    }

    pub fn alpha(&self, z: &str, exp: i8, v: &str) -> Result<VertexId> {
        let l = self.graph.label_index(z)?;
        let v = self.graph.vertex_index(v)?;
        Ok(self.graph.vertices()[self.apply(l, exp, v)].clone())
    }

    /// Permutation of vertex indices induced by a word; the rightmost
    /// letter acts first.
    pub fn word_permutation(&self, w: &LabelWord) -> Result<Vec<usize>> {
        let letters: Vec<(usize, i8)> = w
            .letters
            .iter()
            .map(|(z, e)| Ok((self.graph.label_index(&z.0)?, *e)))
            .collect::<Result<_>>()?;
        Ok((0..self.graph.vertex_count())
            .map(|v| letters.iter().rev().fold(v, |v, &(l, e)| self.apply(l, e, v)))
            .collect())
    }

    /// Orbits of the group generated by the squares `α(Z)²`, `α(Z⁻¹)²`.
    pub fn class_index(&self) -> Vec<usize> {
        let n = self.graph.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for l in 0..self.forward.len() {
            for v in 0..n {
                for e in [1, -1] {
                    let w = self.apply(l, e, self.apply(l, e, v));
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    // smaller root wins so roots are class minima
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    pub fn classes(&self) -> VertexPartition {
        let roots = self.class_index();
        let names = self.graph.vertices();
        let mut reps: Vec<usize> = roots.clone();
        reps.sort_unstable();
        reps.dedup();
        let classes = reps
            .iter()
            .map(|&r| {
                (0..names.len())
                    .filter(|&v| roots[v] == r)
                    .map(|v| names[v].clone())
                    .collect()
            })
            .collect();
        VertexPartition {
            classes,
            representatives: reps.iter().map(|&r| names[r].clone()).collect(),
        }
    }

    /// `ξ_i = Σ_{v ∈ [v_i]} v` over the vertex basis, in representative order.
    pub fn xi_basis(&self) -> Vec<Vec<Rational>> {
        let roots = self.class_index();
        let mut reps = roots.clone();
        reps.sort_unstable();
        reps.dedup();
        reps.iter()
            .map(|&r| {
                roots
                    .iter()
                    .map(|&x| if x == r { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect()
    }

    /// Column `v` is `α(Z)v - α(Z⁻¹)v`.
    pub fn j_via_action(&self, z: &str) -> Result<Matrix<Rational>> {
        let l = self.graph.label_index(z)?;
        let n = self.graph.vertex_count();
        let mut m = Matrix::zeros(n, n);
        for v in 0..n {
            m[(self.apply(l, 1, v), v)] += Rational::one();
            m[(self.apply(l, -1, v), v)] -= Rational::one();
        }
        Ok(m)
    }
}

pub fn alpha(g: &LabeledDigraph, z: &str, exp: i8, v: &str) -> Result<VertexId> {
    SchreierAction::new(g)?.alpha(z, exp, v)
}

pub fn alpha_word(g: &LabeledDigraph, w: &LabelWord) -> Result<Vec<VertexId>> {
    let act = SchreierAction::new(g)?;
    let perm = act.word_permutation(w)?;
    Ok(perm.into_iter().map(|v| g.vertices()[v].clone()).collect())
}

pub fn two_path_classes(g: &LabeledDigraph) -> Result<VertexPartition> {
    Ok(SchreierAction::new(g)?.classes())
}

pub fn xi_basis(g: &LabeledDigraph) -> Result<Vec<Vec<Rational>>> {
    Ok(SchreierAction::new(g)?.xi_basis())
}

pub fn j_via_action(g: &LabeledDigraph, z: &str) -> Result<Matrix<Rational>> {
    SchreierAction::new(g)?.j_via_action(z)
}

/// The Schreier graph with an edge `v → perms[l][v]` labeled `Z{l+1}` for
/// every vertex `v0..` and every permutation.
pub fn from_permutations(perms: &[Vec<usize>]) -> Result<LabeledDigraph> {
    let n = perms.first().map_or(0, |p| p.len());
    let mut b = GraphBuilder::new().nonsimple(true);
    for v in 0..n {
        b.add_vertex(&format!("v{v}"))?;
    }
    for (l, perm) in perms.iter().enumerate() {
        let mut hit = vec![false; n];
        if perm.len() != n || perm.iter().any(|&w| w >= n || std::mem::replace(&mut hit[w], true)) {
            return Err(Error::InvalidSpec(format!("generator {} is not a permutation", l + 1)));
        }
        for (v, &w) in perm.iter().enumerate() {
            b.add_edge(&format!("v{v}"), &format!("v{w}"), &format!("Z{}", l + 1))?;
        }
    }
    b.build()
}

/// A connected Schreier graph on `n` vertices from `p` uniformly random
/// permutations, resampling until connected.
pub fn random_schreier<R: Rng>(rng: &mut R, n: usize, p: usize) -> LabeledDigraph {
    assert!(n >= 1 && p >= 1);
    loop {
        let perms: Vec<Vec<usize>> = (0..p)
            .map(|_| {
                let mut v: Vec<usize> = (0..n).collect();
                v.shuffle(rng);
                v
            })
            .collect();
        if let Ok(g) = from_permutations(&perms) {
            return g;
        }
    }
}
