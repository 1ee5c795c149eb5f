//! Exhaustive enumeration of family members, comparing each closed-form
//! prediction with the computed abelian factor.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{
    make_cycle, make_double_star, make_star, predict_cycle_multi_label, predict_cycle_single_label,
    predict_double_star, predict_star, CycleSpec, StarSpec,
};
use crate::graph::LabeledDigraph;
use crate::liealg::NilAlgebra;
use crate::linalg::{Ambient, Subspace};
use crate::spectra::{classify_with, ClassifyOptions, SingularityStatus};
use crate::verify::verify_algebra;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusFamily {
    /// stars with non-increasing multiplicities and every orientation
    Star,
    /// one-label cycles in every orientation
    Cycle,
    /// standard-orientation cycles over several labels, up to rotation
    MultiCycle,
    /// pairs of stars joined at their centers
    DoubleStar,
}

impl std::str::FromStr for CensusFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(CensusFamily::Star),
            "cycle" => Ok(CensusFamily::Cycle),
            "multi-cycle" | "multicycle" => Ok(CensusFamily::MultiCycle),
            "double-star" => Ok(CensusFamily::DoubleStar),
            other => Err(Error::InvalidSpec(format!("unknown census family `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub family: CensusFamily,
    /// largest cycle length; for stars the default bound on `k` and `m_i`
    pub max_n: usize,
    pub max_k: Option<usize>,
    pub max_m: Option<usize>,
    /// labels available to multi-label cycles
    pub max_labels: usize,
    pub classify: bool,
    pub classify_opts: ClassifyOptions,
    /// refuse enumerations with more members than this
    pub limit: usize,
}

impl CensusOptions {
    pub fn new(family: CensusFamily, max_n: usize) -> Self {
        CensusOptions {
            family,
            max_n,
            max_k: None,
            max_m: None,
            max_labels: 3,
            classify: true,
            classify_opts: ClassifyOptions {
                bound: 12,
                ..ClassifyOptions::default()
            },
            limit: 250_000,
        }
    }

    fn star_bounds(&self) -> (usize, usize) {
        (self.max_k.unwrap_or(self.max_n), self.max_m.unwrap_or(self.max_n))
    }
}

/// One enumerated graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CensusSpec {
    Star(StarSpec),
    Cycle(CycleSpec),
    DoubleStar {
        first: StarSpec,
        second: StarSpec,
        bridge_label: String,
        bridge_dir: i8,
    },
}

impl CensusSpec {
    pub fn build(&self) -> Result<LabeledDigraph> {
        match self {
            CensusSpec::Star(s) => make_star(s),
            CensusSpec::Cycle(c) => make_cycle(c),
            CensusSpec::DoubleStar {
                first,
                second,
                bridge_label,
                bridge_dir,
            } => make_double_star(first, second, bridge_label, *bridge_dir),
        }
    }

    pub fn describe(&self) -> String {
        fn signs(d: &[i8]) -> String {
            d.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect()
        }
        fn star(s: &StarSpec) -> String {
            let m: Vec<String> = s.multiplicities.iter().map(|m| m.to_string()).collect();
            let d: Vec<String> = s.delta.iter().map(|d| signs(d)).collect();
            format!("star m={} d={}", m.join(","), d.join(","))
        }
        match self {
            CensusSpec::Star(s) => star(s),
            CensusSpec::Cycle(c) => format!("cycle n={} d={} labels={}", c.n, signs(&c.orientation), c.labels.join(",")),
            CensusSpec::DoubleStar {
                first,
                second,
                bridge_label,
                bridge_dir,
            } => format!(
                "{} | {} bridge={}{}",
                star(first),
                star(second),
                if *bridge_dir > 0 { '+' } else { '-' },
                bridge_label
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub spec: String,
    pub vertices: usize,
    pub abelian_dim: usize,
    pub predicted_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<SingularityStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub script_a_size: Option<usize>,
    /// prediction equals the computed abelian factor
    pub agree: bool,
    /// every invariant check passed
    pub invariants: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failed_checks: Vec<&'static str>,
}

impl CensusRow {
    pub fn ok(&self) -> bool {
        self.agree && self.invariants
    }
}

/// Every non-increasing sequence with entries in `1..=max_m` and length in
/// `1..=max_k`.
pub fn multiplicity_sequences(max_k: usize, max_m: usize) -> Vec<Vec<usize>> {
    fn extend(cur: &mut Vec<usize>, cap: usize, max_k: usize, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_k {
            return;
        }
        for m in (1..=cap).rev() {
            cur.push(m);
            extend(cur, m, max_k, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_m, max_k, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)));
    out
}

fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<i8>> {
    (0..1u64 << n).map(move |bits| (0..n).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect())
}

/// Every orientation of every multiplicity sequence.
pub fn star_specs(max_k: usize, max_m: usize) -> Vec<StarSpec> {
    let mut out = Vec::new();
    for ms in multiplicity_sequences(max_k, max_m) {
        let n: usize = ms.iter().sum();
        for flat in sign_vectors(n) {
            let mut it = flat.into_iter();
            let delta = ms.iter().map(|&m| it.by_ref().take(m).collect()).collect();
            out.push(StarSpec {
                multiplicities: ms.clone(),
                delta,
            });
        }
    }
    out
}

/// Bridges tried for every pair: a shared label in both directions, and a
/// label of its own.
const BRIDGES: [(&str, i8); 3] = [("Z1", 1), ("Z1", -1), ("B", 1)];

/// Random orientation draws per pair and bridge, on top of all-outward.
const DOUBLE_STAR_ORIENTATIONS: usize = 4;

/// Every pair of multiplicity sequences with every bridge, once with all
/// edges outward and then with seeded random orientations. Reversing the
/// edge at an end vertex only changes the sign of that basis vector, so the
/// random draws sample a redundant dimension.
pub fn double_star_specs(max_k: usize, max_m: usize) -> Vec<CensusSpec> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let mut random_delta = |ms: &[usize]| -> Vec<Vec<i8>> {
        ms.iter()
            .map(|&m| (0..m).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect())
            .collect()
    };
    let seqs = multiplicity_sequences(max_k, max_m);
    let mut out = Vec::new();
    for a in &seqs {
        for b in &seqs {
            for (label, dir) in BRIDGES {
                for draw in 0..=DOUBLE_STAR_ORIENTATIONS {
                    let (first, second) = if draw == 0 {
                        (StarSpec::outward(a), StarSpec::outward(b))
                    } else {
                        (
                            StarSpec { multiplicities: a.clone(), delta: random_delta(a) },
                            StarSpec { multiplicities: b.clone(), delta: random_delta(b) },
                        )
                    };
                    out.push(CensusSpec::DoubleStar {
                        first,
                        second,
                        bridge_label: label.into(),
                        bridge_dir: dir,
                    });
                }
            }
        }
    }
    out
}

fn star_count(max_k: usize, max_m: usize) -> u128 {
    multiplicity_sequences(max_k.min(12), max_m.min(12))
        .iter()
        .map(|ms| 1u128 << ms.iter().sum::<usize>().min(100))
        .sum()
}

/// Label sequences over `Z1..Z{labels}` using at least two labels, keeping
/// only the lexicographically least rotation of each.
pub fn necklace_label_sequences(n: usize, labels: usize) -> Vec<Vec<usize>> {
    let total = labels.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut seq = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            seq.push(c % labels);
            c /= labels;
        }
        seq.reverse();
        if seq.iter().all(|&x| x == seq[0]) {
            continue;
        }
        let least = (1..n).all(|r| {
            let rotated = seq[r..].iter().chain(&seq[..r]);
            seq.iter().le(rotated)
        });
        if least {
            out.push(seq);
        }
    }
    out
}

pub fn enumerate(opts: &CensusOptions) -> Result<Vec<CensusSpec>> {
    let estimate: u128 = match opts.family {
        CensusFamily::Star => {
            let (k, m) = opts.star_bounds();
            star_count(k, m)
        }
        CensusFamily::Cycle => (3..=opts.max_n.min(120)).map(|n| 1u128 << n).sum(),
        CensusFamily::MultiCycle => (3..=opts.max_n.min(60))
            .map(|n| (opts.max_labels as u128).saturating_pow(n as u32))
            .sum(),
        CensusFamily::DoubleStar => {
            let (k, m) = opts.star_bounds();
            let seqs = multiplicity_sequences(k.min(12), m.min(12)).len() as u128;
            seqs * seqs * (BRIDGES.len() * (1 + DOUBLE_STAR_ORIENTATIONS)) as u128
        }
    };
    if estimate > opts.limit as u128 {
        return Err(Error::InvalidSpec(format!(
            "census would enumerate about {estimate} graphs, above the limit of {}",
            opts.limit
        )));
    }
    Ok(match opts.family {
        CensusFamily::Star => {
            let (k, m) = opts.star_bounds();
            star_specs(k, m).into_iter().map(CensusSpec::Star).collect()
        }
        CensusFamily::Cycle => (3..=opts.max_n)
            .flat_map(|n| sign_vectors(n).map(|d| CensusSpec::Cycle(CycleSpec::single_label(d))))
            .collect(),
        CensusFamily::MultiCycle => (3..=opts.max_n)
            .flat_map(|n| {
                necklace_label_sequences(n, opts.max_labels).into_iter().map(move |seq| {
                    CensusSpec::Cycle(CycleSpec {
                        n,
                        orientation: vec![1; n],
                        labels: seq.iter().map(|l| format!("Z{}", l + 1)).collect(),
                    })
                })
            })
            .collect(),
        CensusFamily::DoubleStar => {
            let (k, m) = opts.star_bounds();
            double_star_specs(k, m)
        }
    })
}

fn same_span(n: usize, basis: Vec<Vec<Rational>>, computed: &Subspace<Rational>) -> bool {
    Subspace::span(Ambient::Vertices, n, basis) == *computed
}

/// Prediction, oracle and invariants for one spec.
pub fn evaluate(spec: &CensusSpec, opts: &CensusOptions) -> Result<CensusRow> {
    let g = spec.build()?;
    let a = NilAlgebra::build(&g);
    let n = a.n();
    let abelian = a.abelian_factor();
    let (predicted_dim, agree) = match spec {
        CensusSpec::Star(s) => {
            let p = predict_star(s)?;
            let perp = a.center_perp_from(&abelian);
            let perp_match = Subspace::span(
                Ambient::Vertices,
                n,
                p.center_perp.iter().map(|(v, _)| v.clone()).collect(),
            ) == Subspace::span(Ambient::Vertices, n, perp.basis.iter().map(|(v, _)| v.clone()).collect());
            (p.abelian_dim, p.abelian_dim == abelian.dim() && same_span(n, p.abelian_basis, &abelian) && perp_match)
        }
        CensusSpec::DoubleStar { first, second, .. } => {
            let p = predict_double_star(first, second)?;
            (p.abelian_dim, p.abelian_dim == abelian.dim() && same_span(n, p.abelian_basis, &abelian))
        }
        CensusSpec::Cycle(c) if c.labels.iter().all(|l| *l == c.labels[0]) => {
            let p = predict_cycle_single_label(c)?;
            let m = c.reversed();
            let trichotomy = match (c.n % 2, m % 2) {
                (1, _) => 1,
                (0, 0) => 2,
                _ => 0,
            };
            (
                p.abelian_dim,
                p.abelian_dim == trichotomy && same_span(n, p.abelian_basis, &abelian),
            )
        }
        CensusSpec::Cycle(c) => {
            let p = predict_cycle_multi_label(c)?;
            let witness_ok = match &p.witness {
                Some(w) => abelian.contains(w),
                None => true,
            };
            let shortcut_ok = !p.shortcut_trivial || abelian.is_trivial();
            let odd_ok = c.n % 2 == 0 || abelian.is_trivial();
            (
                usize::from(p.nontrivial),
                p.nontrivial == !abelian.is_trivial() && witness_ok && shortcut_ok && odd_ok,
            )
        }
    };
    let checks = verify_algebra(&g, &a);
    let status = opts.classify.then(|| {
        let perp = a.center_perp_from(&abelian);
        classify_with(&a, &abelian, &perp, opts.classify_opts).status
    });
    Ok(CensusRow {
        spec: spec.describe(),
        vertices: n,
        abelian_dim: abelian.dim(),
        predicted_dim,
        status,
        script_a_size: g.script_a_idx().ok().map(|s| s.len()),
        agree,
        invariants: checks.passed(),
        failed_checks: checks.failures(),
    })
}

/// Rows in enumeration order, computed in parallel.
pub fn run(opts: &CensusOptions) -> Result<Vec<CensusRow>> {
    let specs = enumerate(opts)?;
    specs.par_iter().map(|s| evaluate(s, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_sequences_are_non_increasing() {
        let seqs = multiplicity_sequences(2, 2);
        assert_eq!(seqs, vec![vec![2], vec![1], vec![2, 2], vec![2, 1], vec![1, 1]]);
        assert_eq!(multiplicity_sequences(3, 3).len(), 19);
    }

    #[test]
    fn star_enumeration_counts_orientations() {
        let specs = star_specs(1, 2);
        // (1): 2 orientations, (2): 4 orientations
        assert_eq!(specs.len(), 6);
        assert!(specs.iter().all(|s| s.validate().is_ok()));
    }

    #[test]
    fn necklaces_up_to_rotation() {
        let seqs = necklace_label_sequences(4, 2);
        // binary necklaces of length 4 minus the two constant ones
        assert_eq!(seqs.len(), 4);
        assert!(necklace_label_sequences(3, 3).contains(&vec![0, 1, 2]));
        assert!(!necklace_label_sequences(3, 3).contains(&vec![1, 2, 0]));
    }

    #[test]
    fn small_cycle_census() {
        let mut opts = CensusOptions::new(CensusFamily::Cycle, 4);
        opts.classify = false;
        let rows = run(&opts).unwrap();
        assert_eq!(rows.len(), 8 + 16);
        assert!(rows.iter().all(|r| r.ok()));
        let four: Vec<_> = rows.iter().filter(|r| r.vertices == 4).collect();
        assert!(four.iter().all(|r| r.abelian_dim == 0 || r.abelian_dim == 2));
    }

    #[test]
    fn oversize_requests_are_refused() {
        let opts = CensusOptions::new(CensusFamily::Star, 6);
        assert!(matches!(enumerate(&opts), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn families_parse() {
        assert_eq!("double-star".parse::<CensusFamily>().unwrap(), CensusFamily::DoubleStar);
        assert!("wheel".parse::<CensusFamily>().is_err());
    }
}
