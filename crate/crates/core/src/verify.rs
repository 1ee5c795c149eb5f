//! Invariant checks run on a single graph and its algebra.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::LabeledDigraph;
use crate::liealg::{NilAlgebra, RatVector};
use crate::linalg::{dot, Ambient, Subspace};
use crate::scalar::frac;
use crate::schreier::SchreierAction;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, result: std::result::Result<(), String>) {
        let (passed, detail) = match result {
            Ok(()) => (true, None),
            Err(e) => (false, Some(e)),
        };
        self.checks.push(Check { name, passed, detail });
    }
}

pub fn verify(g: &LabeledDigraph) -> VerifyReport {
    verify_algebra(g, &NilAlgebra::build(g))
}

/// Runs every applicable invariant on `a`, which normally is the algebra of
/// `g` but may be supplied separately to test the checks themselves.
pub fn verify_algebra(g: &LabeledDigraph, a: &NilAlgebra) -> VerifyReport {
    let mut report = VerifyReport::default();
    let (n, p, dim) = (a.n(), a.p(), a.dim());
    let basis = |i: usize| RatVector::basis(dim, i);

    let table: Vec<Vec<RatVector>> = (0..n)
        .map(|i| (0..n).map(|j| a.bracket(&basis(i), &basis(j)).unwrap()).collect())
        .collect();

    report.push("skew_symmetry", {
        let mut r = Ok(());
        'outer: for (i, row) in table.iter().enumerate() {
            for (j, ij) in row.iter().enumerate().skip(i) {
                if *ij != table[j][i].scale(&frac(-1, 1)) {
                    r = Err(format!("[{0}, {1}] != -[{1}, {0}]", a.vertices()[i], a.vertices()[j]));
                    break 'outer;
                }
            }
        }
        if r.is_ok() {
            if let Some(l) = (0..p).find(|&l| !a.j_label(l).is_skew_symmetric()) {
                r = Err(format!("j({}) is not skew-symmetric", a.labels()[l]));
            }
        }
        r
    });

    report.push("two_step", {
        // brackets land in the label span and labels bracket to zero with
        // everything, which by bilinearity gives [x, [y, z]] = 0
        if table.iter().flatten().any(|b| b.iter().any(|(k, _)| k < n)) {
            Err("a bracket has a vertex component".to_string())
        } else {
            match (0..dim).find_map(|k| (0..p).find(|&l| !a.bracket(&basis(k), &basis(n + l)).unwrap().is_zero()).map(|l| (k, l))) {
                None => Ok(()),
                Some((k, l)) => Err(format!("basis element {k} does not commute with {}", a.labels()[l])),
            }
        }
    });

    report.push("jz_identity", {
        let mut r = Ok(());
        'outer: for l in 0..p {
            let j = a.j_label(l);
            for i in 0..n {
                for k in 0..n {
                    if Rational::from_integer(j[(k, i)].clone()) != table[i][k].get(n + l) {
                        r = Err(format!(
                            "<j({}) {}, {}> differs from <{0}, [{1}, {2}]>",
                            a.labels()[l],
                            a.vertices()[i],
                            a.vertices()[k]
                        ));
                        break 'outer;
                    }
                }
            }
        }
        r
    });

    report.push("j_linearity", {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6a);
        let mut draw = |len: usize| -> Vec<Rational> {
            (0..len).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect()
        };
        let (z, w, s) = (draw(p), draw(p), draw(2));
        let combo: Vec<Rational> = z.iter().zip(&w).map(|(x, y)| &s[0] * x + &s[1] * y).collect();
        let lhs = a.j_matrix(&combo);
        let rhs = a.j_matrix(&z).scale(&s[0]).add(&a.j_matrix(&w).scale(&s[1]));
        if lhs == rhs {
            Ok(())
        } else {
            Err("j(aZ + bW) != a j(Z) + b j(W)".into())
        }
    });

    let abelian = a.abelian_factor();
    report.push("oracle_equivalence", {
        let oracle = a.oracle_abelian_factor();
        if oracle == abelian {
            Ok(())
        } else {
            Err(format!("elimination gives dim {}, bracket oracle dim {}", abelian.dim(), oracle.dim()))
        }
    });

    report.push("center", {
        let center = a.center().subspace;
        let mut parts: Vec<Vec<Rational>> = abelian
            .basis_vectors()
            .into_iter()
            .map(|mut v| {
                v.resize(dim, Rational::zero());
                v
            })
            .collect();
        for l in 0..p {
            let mut v = vec![Rational::zero(); dim];
            v[n + l] = frac(1, 1);
            parts.push(v);
        }
        if Subspace::span(Ambient::Full, dim, parts) == center {
            Ok(())
        } else {
            Err("center differs from label span plus abelian factor".into())
        }
    });

    let perp = a.center_perp_from(&abelian);
    report.push("center_perp", {
        let vs = &perp.basis;
        let orthogonal = (0..vs.len()).all(|i| {
            (i + 1..vs.len()).all(|j| dot(&vs[i].0, &vs[j].0).is_zero())
                && abelian.basis_vectors().iter().all(|x| dot(x, &vs[i].0).is_zero())
                && dot(&vs[i].0, &vs[i].0) == vs[i].1
        });
        if !orthogonal {
            Err("complement basis is not orthogonal to itself and the abelian factor".into())
        } else if vs.len() + abelian.dim() != n {
            Err(format!("dimensions {} + {} do not add up to {n}", vs.len(), abelian.dim()))
        } else {
            Ok(())
        }
    });

    if g.is_simple() {
        if n % 2 == 1 && p == 1 {
            report.push(
                "odd_single_label",
                if abelian.is_trivial() {
                    Err("odd vertex count with one label but trivial abelian factor".into())
                } else {
                    Ok(())
                },
            );
        }
        let script_a = g.script_a_idx().expect("simple graph");
        let span_a = Subspace::span(
            Ambient::Vertices,
            n,
            script_a
                .iter()
                .map(|&v| (0..n).map(|i| frac((i == v) as i64, 1)).collect())
                .collect(),
        );
        report.push(
            "script_a_span",
            if abelian.is_subspace_of(&span_a) {
                Ok(())
            } else {
                Err("abelian factor leaves the span of script A".into())
            },
        );
        if script_a.len() <= 1 {
            report.push(
                "script_a_small",
                if abelian.is_trivial() {
                    Ok(())
                } else {
                    Err("script A has at most one vertex but the abelian factor is nontrivial".into())
                },
            );
        }
        if g.is_proper_coloring().expect("simple graph") {
            report.push(
                "proper_coloring",
                if abelian.is_trivial() {
                    Ok(())
                } else {
                    Err("properly colored graph with nontrivial abelian factor".into())
                },
            );
        }
    }

    if let Ok(act) = SchreierAction::new(g) {
        report.push("xi_basis", {
            if Subspace::span(Ambient::Vertices, n, act.xi_basis()) == abelian {
                Ok(())
            } else {
                Err("class sums do not span the abelian factor".into())
            }
        });
        report.push("j_via_action", {
            let bad = (0..p).find(|&l| {
                let mut e = vec![Rational::zero(); p];
                e[l] = frac(1, 1);
                act.j_via_action(&a.labels()[l].0).unwrap() != a.j_matrix(&e)
            });
            match bad {
                None => Ok(()),
                Some(l) => Err(format!("action formula disagrees for {}", a.labels()[l])),
            }
        });
    }
    report
}
