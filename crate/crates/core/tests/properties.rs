use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nilgraph::families::{make_star, predict_star, StarSpec};
use nilgraph::graph::{parse_graph, GraphBuilder, LabeledDigraph};
use nilgraph::liealg::{NilAlgebra, RatVector};
use nilgraph::linalg::{self, rank, Ambient, Subspace};
use nilgraph::schreier::{random_schreier, SchreierAction};
use nilgraph::spectra::{char_poly, symbolic_det, symbolic_det_laplace};
use nilgraph::verify::verify;
use nilgraph::{RatMatrix, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Connected simple-or-multi graphs on up to 7 vertices: a random spanning
/// tree plus extra edges, random directions, up to 3 labels.
fn arb_graph() -> impl Strategy<Value = LabeledDigraph> {
    (2usize..=7, 1usize..=3)
        .prop_flat_map(|(n, p)| {
            let tree = proptest::collection::vec((any::<prop::sample::Index>(), 0..p, any::<bool>()), n - 1);
            let extra = proptest::collection::vec((0..n, 0..n, 0..p, any::<bool>()), 0..=n + 2);
            (Just(n), tree, extra)
        })
        .prop_map(|(n, tree, extra)| {
            let mut triples = Vec::new();
            for (i, (parent, label, flip)) in tree.into_iter().enumerate() {
                let child = i + 1;
                let parent = parent.index(child);
                triples.push(if flip { (child, parent, label) } else { (parent, child, label) });
            }
            for (x, y, label, flip) in extra {
                if x != y {
                    triples.push(if flip { (y, x, label) } else { (x, y, label) });
                }
            }
            triples.sort_unstable();
            triples.dedup();
            let mut b = GraphBuilder::new();
            for v in 0..n {
                b.add_vertex(&format!("x{v}")).unwrap();
            }
            for (t, h, l) in triples {
                b.add_edge(&format!("x{t}"), &format!("x{h}"), &format!("Z{}", l + 1)).unwrap();
            }
            b.build().unwrap()
        })
}

fn arb_vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-6i64..=6, 1i64..=4), len).prop_map(|v| v.into_iter().map(|(n, d)| r(n, d)).collect())
}

fn arb_star() -> impl Strategy<Value = StarSpec> {
    any::<u64>().prop_map(|seed| StarSpec::random(&mut ChaCha8Rng::seed_from_u64(seed), 4, 4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn every_invariant_holds(g in arb_graph()) {
        let report = verify(&g);
        prop_assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn serialization_round_trips(g in arb_graph()) {
        let text = g.serialize();
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn bracket_is_bilinear_and_skew(
        g in arb_graph(),
        seed in any::<u64>(),
    ) {
        let a = NilAlgebra::build(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let mut draw = || RatVector::from_dense(&(0..a.dim()).map(|_| r(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect::<Vec<_>>());
        let (x, y, w) = (draw(), draw(), draw());
        let s = r(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let xy = a.bracket(&x, &y).unwrap();
        prop_assert_eq!(a.bracket(&y, &x).unwrap(), xy.scale(&r(-1, 1)));
        let lhs = a.bracket(&x.scale(&s).add(&w).unwrap(), &y).unwrap();
        let rhs = xy.scale(&s).add(&a.bracket(&w, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.bracket(&xy, &x).unwrap().is_zero());
    }

    #[test]
    fn j_is_linear_and_skew(g in arb_graph(), z in arb_vector(3), w in arb_vector(3)) {
        let a = NilAlgebra::build(&g);
        let p = a.p();
        let (z, w) = (&z[..p], &w[..p]);
        let sum: Vec<Rational> = z.iter().zip(w).map(|(x, y)| x + y).collect();
        let jz = a.j_matrix(z);
        prop_assert!(jz.is_skew_symmetric());
        prop_assert_eq!(a.j_matrix(&sum), jz.add(&a.j_matrix(w)));
    }

    #[test]
    fn abelian_factor_routes_agree(g in arb_graph()) {
        let a = NilAlgebra::build(&g);
        let main = a.abelian_factor();
        prop_assert_eq!(&main, &a.oracle_abelian_factor());
        // kernel of the stacked label operators, computed a third way
        let n = a.n();
        let mut rows = Vec::new();
        for l in 0..a.p() {
            let j: RatMatrix = a.j_label(l).map(|x| Rational::from_integer(x.clone()));
            rows.extend(j.to_rows());
        }
        let stacked = RatMatrix::from_rows(rows, n);
        prop_assert_eq!(main.dim(), n - rank(&stacked));
    }

    #[test]
    fn odd_single_label_graphs_have_abelian_factor(g in arb_graph()) {
        if g.label_count() == 1 && g.vertex_count() % 2 == 1 {
            prop_assert!(!NilAlgebra::build(&g).abelian_factor().is_trivial());
        }
    }

    #[test]
    fn char_poly_has_skew_parity(g in arb_graph(), z in arb_vector(3)) {
        let a = NilAlgebra::build(&g);
        let perp = a.center_perp();
        let cp = char_poly(&a, &perp, &z[..a.p()]);
        prop_assert!(cp.has_skew_parity());
        prop_assert_eq!(cp.degree(), perp.basis.len());
    }

    #[test]
    fn symbolic_determinant_routes_agree(g in arb_graph()) {
        let a = NilAlgebra::build(&g);
        let perp = a.center_perp();
        prop_assume!(perp.basis.len() <= 6);
        let pf = symbolic_det(&a, &perp, 6).unwrap();
        let lp = symbolic_det_laplace(&a, &perp, 6).unwrap();
        prop_assert_eq!(pf.poly, lp.poly);
    }

    #[test]
    fn float_and_exact_char_polys_match(g in arb_graph(), z in arb_vector(3)) {
        let a = NilAlgebra::build(&g);
        let exact = linalg::char_poly(&a.j_matrix(&z[..a.p()]));
        let zf: Vec<f64> = z[..a.p()].iter().map(|x| x.to_f64().unwrap()).collect();
        let float = linalg::char_poly(&a.j_matrix(&zf));
        for (e, f) in exact.iter().zip(&float) {
            let e = e.to_f64().unwrap();
            prop_assert!((e - f).abs() <= 1e-6 * (1.0 + e.abs()), "{} vs {}", e, f);
        }
    }

    #[test]
    fn random_stars_match_prediction(spec in arb_star()) {
        let g = make_star(&spec).unwrap();
        let a = NilAlgebra::build(&g);
        let p = predict_star(&spec).unwrap();
        let n = g.vertex_count();
        let abelian = a.abelian_factor();
        prop_assert_eq!(abelian.dim(), spec.n() - spec.k());
        prop_assert_eq!(&abelian, &Subspace::span(Ambient::Vertices, n, p.abelian_basis));
        let perp = a.center_perp_from(&abelian);
        let computed: Vec<Vec<Rational>> = perp.basis.into_iter().map(|(v, _)| v).collect();
        let predicted: Vec<Vec<Rational>> = p.center_perp.into_iter().map(|(v, _)| v).collect();
        prop_assert_eq!(Subspace::span(Ambient::Vertices, n, computed), Subspace::span(Ambient::Vertices, n, predicted));
    }

    #[test]
    fn schreier_class_sums_span_abelian_factor(seed in any::<u64>(), n in 1usize..=8, p in 1usize..=3) {
        let g = random_schreier(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let act = SchreierAction::new(&g).unwrap();
        let a = NilAlgebra::build(&g);
        prop_assert_eq!(Subspace::span(Ambient::Vertices, n, act.xi_basis()), a.abelian_factor());
        for l in 0..p {
            let mut e = vec![r(0, 1); p];
            e[l] = r(1, 1);
            prop_assert_eq!(act.j_via_action(&g.labels()[l].0).unwrap(), a.j_matrix(&e));
        }
    }
}
