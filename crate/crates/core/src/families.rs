//! Stars, double stars, cycles and paths, with closed-form predictions of
//! their abelian factors and star spectra.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, LabeledDigraph};
use crate::poly::MultiPoly;
use crate::scalar::rat;
use crate::Rational;

/// A star `K_{1,n}` whose ends are grouped by label: `multiplicities[i]` ends
/// carry label `Z_{i+1}`, and `delta[i][j] = +1` when the edge to end
/// `v_{i+1,j+1}` leaves the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSpec {
    pub multiplicities: Vec<usize>,
    pub delta: Vec<Vec<i8>>,
}

impl StarSpec {
    /// All edges leaving the center.
    pub fn outward(multiplicities: &[usize]) -> Self {
        StarSpec {
            multiplicities: multiplicities.to_vec(),
            delta: multiplicities.iter().map(|&m| vec![1; m]).collect(),
        }
    }

    pub fn new(multiplicities: Vec<usize>, delta: Vec<Vec<i8>>) -> Result<Self> {
        let s = StarSpec {
            multiplicities,
            delta,
        };
        s.validate()?;
        Ok(s)
    }

    /// Non-increasing multiplicities in `1..=max_m`, `k` in `1..=max_k`, and
    /// independent random orientations.
    pub fn random<R: Rng>(rng: &mut R, max_k: usize, max_m: usize) -> Self {
        let k = rng.gen_range(1..=max_k);
        let mut ms: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_m)).collect();
        ms.sort_unstable_by(|a, b| b.cmp(a));
        let delta = ms
            .iter()
            .map(|&m| (0..m).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect())
            .collect();
        StarSpec {
            multiplicities: ms,
            delta,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSpec(m.into()));
        if self.multiplicities.is_empty() {
            return bad("a star needs at least one label");
        }
        if self.multiplicities.contains(&0) {
            return bad("multiplicities must be positive");
        }
        if self.multiplicities.windows(2).any(|w| w[0] < w[1]) {
            return bad("multiplicities must be non-increasing");
        }
        if self.delta.len() != self.k()
            || self.delta.iter().zip(&self.multiplicities).any(|(d, &m)| d.len() != m)
        {
            return bad("orientation list does not match the multiplicities");
        }
        if self.delta.iter().flatten().any(|&d| d != 1 && d != -1) {
            return bad("orientations must be +1 or -1");
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.multiplicities.len()
    }

    /// Number of ends.
    pub fn n(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Position of `v_{i+1,j+1}` among the star's vertices, the center being 0.
    pub fn end_index(&self, i: usize, j: usize) -> usize {
        1 + self.multiplicities[..i].iter().sum::<usize>() + j
    }
}

fn end_name(prefix: &str, i: usize, j: usize) -> String {
    if i < 9 && j < 9 {
        format!("{prefix}{}{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}.{}", i + 1, j + 1)
    }
}

fn add_star(b: &mut GraphBuilder, spec: &StarSpec, prefix: &str) -> Result<()> {
    let center = format!("{prefix}0");
    b.add_vertex(&center)?;
    for (i, &m) in spec.multiplicities.iter().enumerate() {
        for j in 0..m {
            b.add_vertex(&end_name(prefix, i, j))?;
        }
    }
    for (i, ds) in spec.delta.iter().enumerate() {
        let label = format!("Z{}", i + 1);
        for (j, &d) in ds.iter().enumerate() {
            let end = end_name(prefix, i, j);
            if d > 0 {
                b.add_edge(&center, &end, &label)?;
            } else {
                b.add_edge(&end, &center, &label)?;
            }
        }
    }
    Ok(())
}

pub fn make_star(spec: &StarSpec) -> Result<LabeledDigraph> {
    spec.validate()?;
    let mut b = GraphBuilder::new();
    add_star(&mut b, spec, "v")?;
    b.build()
}

/// Predicted abelian factor and center complement of a star, as vectors over
/// the vertex order of [`make_star`].
#[derive(Clone, Debug, PartialEq)]
pub struct StarPrediction {
    pub abelian_dim: usize,
    pub abelian_basis: Vec<Vec<Rational>>,
    /// unnormalised vectors with their squared norms
    pub center_perp: Vec<(Vec<Rational>, Rational)>,
}

pub fn predict_star(spec: &StarSpec) -> Result<StarPrediction> {
    spec.validate()?;
    let dim = spec.n() + 1;
    predict_star_at(spec, dim, 0)
}

fn predict_star_at(spec: &StarSpec, dim: usize, offset: usize) -> Result<StarPrediction> {
    let mut abelian_basis = Vec::new();
    let mut center = vec![Rational::zero(); dim];
    center[offset] = Rational::one();
    let mut center_perp = vec![(center, Rational::one())];
    for (i, &m) in spec.multiplicities.iter().enumerate() {
        let d = |j: usize| rat(spec.delta[i][j] as i64);
        let last = offset + spec.end_index(i, m - 1);
        for j in 0..m - 1 {
            let mut v = vec![Rational::zero(); dim];
            v[offset + spec.end_index(i, j)] = d(m - 1);
            v[last] = -d(j);
            abelian_basis.push(v);
        }
        let mut s = vec![Rational::zero(); dim];
        for j in 0..m {
            s[offset + spec.end_index(i, j)] = d(j);
        }
        center_perp.push((s, rat(m as i64)));
    }
    Ok(StarPrediction {
        abelian_dim: spec.n() - spec.k(),
        abelian_basis,
        center_perp,
    })
}

/// Two stars whose centers `v0` and `w0` are joined by one edge. The second
/// star's vertices use the prefix `w`; both stars name their labels
/// `Z1, Z2, ...`, so equal indices share a label.
pub fn make_double_star(
    first: &StarSpec,
    second: &StarSpec,
    bridge_label: &str,
    bridge_dir: i8,
) -> Result<LabeledDigraph> {
    first.validate()?;
    second.validate()?;
    if bridge_dir != 1 && bridge_dir != -1 {
        return Err(Error::InvalidSpec("bridge direction must be +1 or -1".into()));
    }
    let mut b = GraphBuilder::new();
    add_star(&mut b, first, "v")?;
    add_star(&mut b, second, "w")?;
    if bridge_dir > 0 {
        b.add_edge("v0", "w0", bridge_label)?;
    } else {
        b.add_edge("w0", "v0", bridge_label)?;
    }
    b.build()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleStarPrediction {
    pub abelian_dim: usize,
    pub abelian_basis: Vec<Vec<Rational>>,
}

pub fn predict_double_star(first: &StarSpec, second: &StarSpec) -> Result<DoubleStarPrediction> {
    first.validate()?;
    second.validate()?;
    let dim = first.n() + second.n() + 2;
    let a = predict_star_at(first, dim, 0)?;
    let b = predict_star_at(second, dim, first.n() + 1)?;
    Ok(DoubleStarPrediction {
        abelian_dim: a.abelian_dim + b.abelian_dim,
        abelian_basis: a.abelian_basis.into_iter().chain(b.abelian_basis).collect(),
    })
}

/// Cycle on `v1..vn`; edge `i` joins `v_i` and `v_{i+1}` (indices mod n) and
/// runs forward when `orientation[i] = +1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSpec {
    pub n: usize,
    pub orientation: Vec<i8>,
    pub labels: Vec<String>,
}

impl CycleSpec {
    pub fn standard(labels: &[&str]) -> Self {
        CycleSpec {
            n: labels.len(),
            orientation: vec![1; labels.len()],
            labels: labels.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn single_label(orientation: Vec<i8>) -> Self {
        CycleSpec {
            n: orientation.len(),
            labels: vec!["Z".into(); orientation.len()],
            orientation,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSpec(m.into()));
        if self.n < 3 {
            return bad("a cycle needs at least three vertices");
        }
        if self.orientation.len() != self.n || self.labels.len() != self.n {
            return bad("orientation and label lists must have one entry per edge");
        }
        if self.orientation.iter().any(|&d| d != 1 && d != -1) {
            return bad("orientations must be +1 or -1");
        }
        Ok(())
    }

    /// Number of edges against the standard orientation.
    pub fn reversed(&self) -> usize {
        self.orientation.iter().filter(|&&d| d < 0).count()
    }

    fn is_single_label(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn make_cycle(spec: &CycleSpec) -> Result<LabeledDigraph> {
    spec.validate()?;
    let n = spec.n;
    let mut b = GraphBuilder::new();
    for i in 1..=n {
        b.add_vertex(&format!("v{i}"))?;
    }
    for i in 0..n {
        let (a, c) = (format!("v{}", i + 1), format!("v{}", (i + 1) % n + 1));
        if spec.orientation[i] > 0 {
            b.add_edge(&a, &c, &spec.labels[i])?;
        } else {
            b.add_edge(&c, &a, &spec.labels[i])?;
        }
    }
    b.build()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclePrediction {
    pub abelian_dim: usize,
    pub abelian_basis: Vec<Vec<Rational>>,
}

/// Abelian factor of a one-label cycle. Vanishing of `[X, v_k]` forces
/// `a_{k+1} = δ_{k-1} δ_k a_{k-1}`; following this step of two around the
/// cycle either closes up consistently, giving one basis vector per orbit,
/// or forces the orbit to vanish.
pub fn predict_cycle_single_label(spec: &CycleSpec) -> Result<CyclePrediction> {
    spec.validate()?;
    if !spec.is_single_label() {
        return Err(Error::InvalidSpec("cycle carries more than one label".into()));
    }
    let n = spec.n;
    let d = |i: usize| spec.orientation[i % n] as i64;
    let mut seen = vec![false; n];
    let mut basis = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut coeff = vec![0i64; n];
        let mut i = start;
        coeff[i] = 1;
        seen[i] = true;
        let consistent = loop {
            // edge i joins v_i, v_{i+1}; edge i+1 joins v_{i+1}, v_{i+2}
            let next = (i + 2) % n;
            let value = d(i) * d(i + 1) * coeff[i];
            if seen[next] {
                break coeff[next] == value;
            }
            coeff[next] = value;
            seen[next] = true;
            i = next;
        };
        if consistent {
            basis.push(coeff.into_iter().map(rat).collect());
        }
    }
    Ok(CyclePrediction {
        abelian_dim: basis.len(),
        abelian_basis: basis,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiLabelPrediction {
    pub nontrivial: bool,
    /// a nonzero element of the abelian factor when nontrivial
    pub witness: Option<Vec<Rational>>,
    /// true when at most one same-labeled path has two or more edges, which
    /// alone forces a trivial abelian factor
    pub shortcut_trivial: bool,
}

/// Standard-orientation cycle with at least two labels: the abelian factor
/// is nontrivial exactly when every label induces a union of paths of even
/// edge length.
pub fn predict_cycle_multi_label(spec: &CycleSpec) -> Result<MultiLabelPrediction> {
    spec.validate()?;
    if spec.is_single_label() {
        return Err(Error::InvalidSpec("need at least two distinct labels".into()));
    }
    if spec.orientation.iter().any(|&d| d != 1) {
        return Err(Error::InvalidSpec("cycle must carry the standard orientation".into()));
    }
    let n = spec.n;
    // vertex v_k (0-based k) is a path endpoint when its two edges differ
    let boundary: Vec<usize> = (0..n)
        .filter(|&k| spec.labels[(k + n - 1) % n] != spec.labels[k])
        .collect();
    let lengths: Vec<usize> = (0..boundary.len())
        .map(|t| (boundary[(t + 1) % boundary.len()] + n - boundary[t]) % n)
        .map(|len| if len == 0 { n } else { len })
        .collect();
    let nontrivial = lengths.iter().all(|len| len % 2 == 0);
    let witness = nontrivial.then(|| {
        let parity = boundary[0] % 2;
        (0..n)
            .map(|k| if k % 2 == parity { Rational::one() } else { Rational::zero() })
            .collect()
    });
    Ok(MultiLabelPrediction {
        nontrivial,
        witness,
        shortcut_trivial: lengths.iter().filter(|&&len| len >= 2).count() <= 1,
    })
}

/// Directed path `v1 → v2 → ... → vn` with a single label.
pub fn make_path(n: usize, label: &str) -> Result<LabeledDigraph> {
    if n < 2 {
        return Err(Error::InvalidSpec("a path needs at least two vertices".into()));
    }
    let mut b = GraphBuilder::new();
    for i in 1..=n {
        b.add_vertex(&format!("v{i}"))?;
    }
    for i in 1..n {
        b.add_edge(&format!("v{i}"), &format!("v{}", i + 1), label)?;
    }
    b.build()
}

/// A connected `(p, 2r, r)` uniformly colored graph: each label is a random
/// perfect matching on `v1..v{2r}` with random edge directions, and no two
/// labels share a vertex pair. Resamples until the matchings are disjoint and
/// the union is connected.
pub fn random_uniform<R: Rng>(rng: &mut R, p: usize, r: usize) -> Result<LabeledDigraph> {
    let q = 2 * r;
    if p == 0 || p >= q {
        return Err(Error::InvalidSpec(format!("{p} disjoint perfect matchings do not fit on {q} vertices")));
    }
    'retry: loop {
        let mut used = std::collections::HashSet::new();
        let mut b = GraphBuilder::new();
        for i in 1..=q {
            b.add_vertex(&format!("v{i}"))?;
        }
        for l in 1..=p {
            let mut order: Vec<usize> = (1..=q).collect();
            order.shuffle(rng);
            for pair in order.chunks(2) {
                let (x, y) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                if !used.insert((x, y)) {
                    continue 'retry;
                }
                let (t, h) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
                b.add_edge(&format!("v{t}"), &format!("v{h}"), &format!("Z{l}"))?;
            }
        }
        if let Ok(g) = b.build() {
            return Ok(g);
        }
    }
}

/// Star `K_{1,k}` with edge `i` weighted by `√weights[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedStar {
    pub k: usize,
    pub weights: Vec<Rational>,
}

impl WeightedStar {
    /// `det(j(Z) - λ)` on the complement of the center for `Z = Σ a_i Z_i`,
    /// ascending in `λ`: `(-λ)^{k-1} (λ² + Σ m_i a_i²)`.
    pub fn char_poly(&self, a: &[Rational]) -> Vec<Rational> {
        assert_eq!(a.len(), self.k);
        let s: Rational = self.weights.iter().zip(a).map(|(m, x)| m * x * x).sum();
        let mut p = vec![Rational::zero(); self.k + 2];
        let sign = if (self.k - 1).is_multiple_of(2) { rat(1) } else { rat(-1) };
        p[self.k - 1] = &sign * s;
        p[self.k + 1] = sign;
        p
    }

    /// The same polynomial with `a_1..a_k` and then `λ` as indeterminates.
    pub fn symbolic_char_poly(&self) -> MultiPoly<Rational> {
        let nv = self.k + 1;
        let lambda = MultiPoly::var(nv, self.k);
        let mut inner = lambda.pow(2);
        for (i, m) in self.weights.iter().enumerate() {
            let ai = MultiPoly::var(nv, i);
            inner = &inner + &(&ai * &ai).scale(m);
        }
        let neg_lambda = lambda.scale(&rat(-1));
        &neg_lambda.pow(self.k as u32 - 1) * &inner
    }
}

pub fn reduce_star(spec: &StarSpec) -> Result<WeightedStar> {
    spec.validate()?;
    Ok(WeightedStar {
        k: spec.k(),
        weights: spec.multiplicities.iter().map(|&m| rat(m as i64)).collect(),
    })
}

/// A family member described as a JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Star(StarSpec),
    Cycle(CycleSpec),
    DoubleStar {
        first: StarSpec,
        second: StarSpec,
        #[serde(default = "default_bridge_label")]
        bridge_label: String,
        #[serde(default = "default_bridge_dir")]
        bridge_dir: i8,
    },
    Path {
        n: usize,
        #[serde(default = "default_path_label")]
        label: String,
    },
}

fn default_bridge_label() -> String {
    "Z1".into()
}

fn default_bridge_dir() -> i8 {
    1
}

fn default_path_label() -> String {
    "Z".into()
}

impl FamilySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn build(&self) -> Result<LabeledDigraph> {
        match self {
            FamilySpec::Star(s) => make_star(s),
            FamilySpec::Cycle(c) => make_cycle(c),
            FamilySpec::DoubleStar {
                first,
                second,
                bridge_label,
                bridge_dir,
            } => make_double_star(first, second, bridge_label, *bridge_dir),
            FamilySpec::Path { n, label } => make_path(*n, label),
        }
    }

    /// Predicted abelian-factor basis in the vertex order of [`Self::build`],
    /// when the family has a closed form.
    pub fn predicted_abelian_basis(&self) -> Result<Option<Vec<Vec<Rational>>>> {
        Ok(match self {
            FamilySpec::Star(s) => Some(predict_star(s)?.abelian_basis),
            FamilySpec::DoubleStar { first, second, .. } => {
                Some(predict_double_star(first, second)?.abelian_basis)
            }
            FamilySpec::Cycle(c) if c.is_single_label() => {
                Some(predict_cycle_single_label(c)?.abelian_basis)
            }
            _ => None,
        })
    }
}
