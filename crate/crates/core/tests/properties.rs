//! Property tests for the exact-arithmetic substrate and the matrix layer.

use proptest::prelude::*;
use riordan_core::graph::{build_graph, RiordanGraphSpec};
use riordan_core::matrix::{riordan_multiply, BinaryRiordanMatrix};
use riordan_core::series::BitSeries;
use riordan_core::spec_lang::SeriesSpec;

const TRUNC: usize = 24;

fn series_strategy() -> impl Strategy<Value = BitSeries> {
    prop::collection::vec(any::<bool>(), 0..=12).prop_map(|bits| {
        let sup: Vec<usize> = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        BitSeries::from_support(TRUNC, &sup)
    })
}

/// f with f(0) = 0 and f'(0) = 1.
fn proper_f_strategy() -> impl Strategy<Value = BitSeries> {
    prop::collection::vec(any::<bool>(), 0..=10).prop_map(|bits| {
        let mut sup = vec![1usize];
        sup.extend(
            bits.iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i + 2)),
        );
        BitSeries::from_support(TRUNC, &sup)
    })
}

proptest! {
    #[test]
    fn mul_commutes_and_associates(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn add_is_self_inverse(a in series_strategy(), b in series_strategy()) {
        prop_assert_eq!(a.add(&b).add(&b), a);
    }

    #[test]
    fn frobenius_composition(g in series_strategy(), f in proper_f_strategy()) {
        let lhs = g.compose(&f).unwrap().square();
        let rhs = g.compose(&f.square()).unwrap();
        let w = lhs.trunc().min(rhs.trunc());
        prop_assert!(lhs.eq_window(&rhs, w));
    }

    #[test]
    fn compositional_inverse_roundtrip(f in proper_f_strategy()) {
        let fbar = f.comp_inverse().unwrap();
        let t = BitSeries::t(TRUNC);
        prop_assert_eq!(f.compose(&fbar).unwrap(), t.clone());
        prop_assert_eq!(fbar.compose(&f).unwrap(), t);
    }

    #[test]
    fn leibniz_rule(a in series_strategy(), b in series_strategy()) {
        let left = a.mul(&b).derivative();
        let right = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        let w = left.trunc().min(right.trunc());
        prop_assert!(left.eq_window(&right, w));
    }

    #[test]
    fn squaring_is_substitution(g in series_strategy()) {
        let t2 = BitSeries::from_support(TRUNC, &[2]);
        let subst = g.compose(&t2).unwrap();
        let sq = g.square();
        let w = subst.trunc().min(sq.trunc());
        prop_assert!(subst.eq_window(&sq, w));
    }

    #[test]
    fn division_inverts_multiplication(a in series_strategy(), b in series_strategy()) {
        let mut d = b.clone();
        if !d.coeff(0) {
            d = d.add(&BitSeries::one(TRUNC));
        }
        let q = a.div(&d).unwrap();
        prop_assert_eq!(q.mul(&d), a.restrict(q.trunc()));
    }

    #[test]
    fn multiply_homomorphism(g in series_strategy(), f in proper_f_strategy(),
                             h in series_strategy(), l in proper_f_strategy()) {
        let n = 10usize;
        let (rg, rf) = riordan_multiply(&g, &f, &h, &l).unwrap();
        let lhs = BinaryRiordanMatrix::build(&rg, &rf, n).unwrap();
        let rhs = BinaryRiordanMatrix::build(&g, &f, n)
            .unwrap()
            .multiply(&BinaryRiordanMatrix::build(&h, &l, n).unwrap());
        prop_assert_eq!(lhs.rows(), rhs.rows());
    }

    #[test]
    fn graphs_are_symmetric_zero_diagonal(gbits in prop::collection::vec(any::<bool>(), 0..=8),
                                          fbits in prop::collection::vec(any::<bool>(), 0..=8),
                                          n in 1usize..=24) {
        let g: Vec<usize> = gbits.iter().enumerate().filter_map(|(i, &b)| b.then_some(i)).collect();
        let f: Vec<usize> = fbits.iter().enumerate().filter_map(|(i, &b)| b.then_some(i + 1)).collect();
        let spec = RiordanGraphSpec::new(
            SeriesSpec::polynomial(&g),
            SeriesSpec::polynomial(&f),
            n,
        );
        let graph = build_graph(&spec).unwrap();
        for u in 1..=n {
            prop_assert!(!graph.has_edge(u, u));
            for v in 1..=n {
                prop_assert_eq!(graph.has_edge(u, v), graph.has_edge(v, u));
            }
        }
    }

    #[test]
    fn proper_specs_have_consecutive_path(gbits in prop::collection::vec(any::<bool>(), 0..=8),
                                          n in 2usize..=32) {
        let mut g = vec![0usize];
        g.extend(gbits.iter().enumerate().filter_map(|(i, &b)| b.then_some(i + 1)));
        let f: Vec<usize> = g.iter().map(|&i| i + 1).collect();
        let spec = RiordanGraphSpec::new(
            SeriesSpec::polynomial(&g),
            SeriesSpec::polynomial(&f),
            n,
        );
        let graph = build_graph(&spec).unwrap();
        for i in 1..n {
            prop_assert!(graph.has_edge(i, i + 1));
        }
    }
}
