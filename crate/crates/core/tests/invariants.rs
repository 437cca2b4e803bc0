use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use matroid_thrackles::groebner::{
    generate_cg, in_kernel, is_standard_in, reduce, support_is_thrackle, walk_binomial, Monomial,
};
use matroid_thrackles::lattice::{
    count_lattice_points, ehrhart_fit, normalized_simplex_volume, normalized_simplex_volume_with,
    Chart,
};
use matroid_thrackles::matroid::{
    adjacent_bases, incidence_vector, tangent_subgraph, uniform_bases, validate_bases,
    MatroidBases,
};
use matroid_thrackles::thrackle::{enumerate_spanning_thrackles, is_thrackle, maximal_thrackles};
use matroid_thrackles::triangulation::{build_triangulation, covering_check, locate_point};
use matroid_thrackles::{Edge, EmbeddedBipartite};

fn monomial_strategy(r: usize, n: usize, max_deg: usize) -> impl Strategy<Value = Monomial> {
    let edges = EmbeddedBipartite::for_matroid(r, n).unwrap().all_edges();
    prop::collection::vec(prop::sample::select(edges), 0..=max_deg).prop_map(|es| {
        let mut exps = std::collections::BTreeMap::new();
        for e in es {
            *exps.entry(e).or_insert(0u32) += 1;
        }
        Monomial::from_exponents(exps)
    })
}

fn rank_and_size() -> impl Strategy<Value = (usize, usize)> {
    (3usize..=7).prop_flat_map(|n| (1..n, Just(n)))
}

proptest! {
    #[test]
    fn reduction_stays_in_the_fibre_and_ends_standard(
        (r, n, m) in rank_and_size()
            .prop_flat_map(|(r, n)| (Just(r), Just(n), monomial_strategy(r, n, 6)))
    ) {
        let cg = generate_cg(r, n).unwrap();
        let nf = reduce(&m, &cg);
        prop_assert_eq!(nf.image(), m.image());
        prop_assert_eq!(nf.degree(), m.degree());
        prop_assert!(is_standard_in(&nf, &cg));
        prop_assert!(support_is_thrackle(&nf));
    }

    #[test]
    fn standard_iff_thrackle_support_with_multiplicity(m in monomial_strategy(3, 7, 5)) {
        let cg = generate_cg(3, 7).unwrap();
        prop_assert_eq!(is_standard_in(&m, &cg), support_is_thrackle(&m));
    }

    #[test]
    fn normal_form_is_unique_per_fibre(a in monomial_strategy(2, 6, 4), b in monomial_strategy(2, 6, 4)) {
        let cg = generate_cg(2, 6).unwrap();
        let same_fibre = a.image() == b.image();
        prop_assert_eq!(same_fibre, reduce(&a, &cg) == reduce(&b, &cg));
    }
}

#[test]
fn every_cg_element_lies_in_the_toric_ideal() {
    for n in 2..=9 {
        for r in 1..n {
            for b in generate_cg(r, n).unwrap() {
                assert!(in_kernel(&b), "{b}");
            }
        }
    }
}

#[test]
fn closed_walks_give_kernel_binomials() {
    let b = walk_binomial(&[1, 4, 2, 5, 1], 2, 5).unwrap();
    assert!(in_kernel(&b));
    let six = walk_binomial(&[1, 4, 2, 5, 3, 6, 1], 3, 6).unwrap();
    assert!(in_kernel(&six));
    assert_eq!(six.plus.degree(), 3);
    assert!(walk_binomial(&[1, 4, 2, 1], 2, 5).is_err());
    assert!(walk_binomial(&[1, 2, 1], 2, 5).is_err());
}

#[test]
fn standard_monomials_count_lattice_points_of_dilates() {
    for (r, n, kmax) in [(1, 4, 4), (2, 4, 4), (2, 5, 4), (2, 6, 3), (3, 6, 3)] {
        let cg = generate_cg(r, n).unwrap();
        let edges = EmbeddedBipartite::for_matroid(r, n).unwrap().all_edges();
        for k in 0..=kmax {
            let standard = edges
                .iter()
                .combinations_with_replacement(k)
                .filter(|c| is_standard_in(&Monomial::from_edges(c.iter().copied()), &cg))
                .count();
            assert_eq!(
                BigUint::from(standard),
                count_lattice_points(r, n, k).unwrap(),
                "(r,n,k)=({r},{n},{k})"
            );
        }
    }
}

#[test]
fn volume_does_not_depend_on_the_chart() {
    for n in 3..=9 {
        for r in 1..n {
            let t = build_triangulation(r, n).unwrap();
            let other = Chart { drop_left: r, drop_right: n };
            for sx in &t.simplices {
                assert_eq!(
                    normalized_simplex_volume(sx, r, n).unwrap(),
                    normalized_simplex_volume_with(sx, r, n, other).unwrap()
                );
            }
        }
    }
}

#[test]
fn ehrhart_fit_predicts_unseen_dilations() {
    for n in 3..=7 {
        for r in 1..n {
            let poly = ehrhart_fit(r, n).unwrap();
            for k in n - 1..=n + 1 {
                let counted = count_lattice_points(r, n, k).unwrap();
                assert_eq!(
                    poly.evaluate(k as i64),
                    BigRational::from_integer(BigInt::from(counted)),
                    "(r,n,k)=({r},{n},{k})"
                );
            }
        }
    }
}

#[test]
fn random_interior_points_are_covered_once() {
    for (r, n, seed) in [(2, 5, 0), (2, 6, 1), (3, 6, 2), (3, 7, 3), (4, 8, 4)] {
        let t = build_triangulation(r, n).unwrap();
        let rep = covering_check(&t, 120, seed).unwrap();
        assert!(rep.ok(), "(r,n)=({r},{n}) {rep:?}");
        assert_eq!(rep.samples, 120);
        assert_eq!(rep.uncovered, 0);
    }
}

#[test]
fn barycentre_of_a_simplex_is_located_in_it_alone() {
    let (r, n) = (3, 7);
    let t = build_triangulation(r, n).unwrap();
    for (idx, sx) in t.simplices.iter().enumerate() {
        let d = BigInt::from(sx.vertices.len());
        let q: Vec<BigRational> = (0..n)
            .map(|c| {
                let sum: i64 = sx.vertices.iter().map(|v| v.coords()[c]).sum();
                BigRational::new(BigInt::from(sum), d.clone())
            })
            .collect();
        assert_eq!(locate_point(&q, &t).unwrap(), vec![idx]);
    }
}

#[test]
fn spanning_thrackles_are_maximal_thrackles_of_the_full_graph() {
    for (s, t) in [(2, 2), (2, 3), (3, 3), (2, 5), (3, 4)] {
        let g = EmbeddedBipartite::new(s, t).unwrap();
        let maxes: BTreeSet<Vec<Edge>> = maximal_thrackles(&g, &g.all_edges()).unwrap().into_iter().collect();
        let spanning: BTreeSet<Vec<Edge>> = enumerate_spanning_thrackles(s, t)
            .unwrap()
            .map(|h| h.edges().to_vec())
            .collect();
        assert_eq!(maxes, spanning, "(s,t)=({s},{t})");
        assert!(maxes.iter().all(|m| is_thrackle(m)));
    }
}

#[test]
fn adjacency_is_symmetric() {
    let cycle = MatroidBases::new(4, 3, (1..=4).map(|x| (1..=4).filter(|&y| y != x).collect())).unwrap();
    let partial = MatroidBases::new(
        4,
        2,
        [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]].map(|b| b.to_vec()),
    )
    .unwrap();
    for m in [uniform_bases(2, 5).unwrap(), uniform_bases(3, 6).unwrap(), cycle, partial] {
        for b1 in m.bases() {
            for b2 in adjacent_bases(b1, &m).unwrap() {
                assert!(adjacent_bases(&b2, &m).unwrap().contains(b1), "{b1:?} ~ {b2:?}");
            }
        }
    }
}

#[test]
fn incidence_vectors_are_injective_on_the_rank_hyperplane() {
    let m = uniform_bases(3, 7).unwrap();
    let vectors: BTreeSet<Vec<i64>> = m
        .bases()
        .map(|b| {
            let v = incidence_vector(b, 7);
            assert_eq!(v.coords().iter().sum::<i64>(), 3);
            v.coords().to_vec()
        })
        .collect();
    assert_eq!(vectors.len(), m.len());
}

#[test]
fn exchange_axiom_examples() {
    assert!(validate_bases(&uniform_bases(2, 4).unwrap()));
    let broken = MatroidBases::from_raw(4, 2, [vec![1, 2], vec![3, 4]]).unwrap();
    assert!(!validate_bases(&broken));
    assert!(MatroidBases::new(4, 2, [vec![1, 2], vec![3, 4]]).is_err());
}

#[test]
fn missing_exchange_removes_one_tangent_edge() {
    let m = MatroidBases::new(
        4,
        2,
        [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]].map(|b| b.to_vec()),
    )
    .unwrap();
    let sub = tangent_subgraph(&[1, 3], &m).unwrap();
    assert_eq!(sub.edges.len(), 3);
    assert!(!sub.is_complete());
    for b in uniform_bases(3, 6).unwrap().bases() {
        assert!(tangent_subgraph(b, &uniform_bases(3, 6).unwrap()).unwrap().is_complete());
    }
}

#[test]
fn weight_order_marks_cg_like_lex() {
    use matroid_thrackles::groebner::{check_basis, TermOrder};
    for n in 3..=8 {
        for r in 1..n {
            let g = EmbeddedBipartite::for_matroid(r, n).unwrap();
            let cg = generate_cg(r, n).unwrap();
            let order = TermOrder::WeightLex(g);
            assert!(cg.iter().all(|b| b.marked_consistently(&order)), "(r,n)=({r},{n})");
            if g.edge_count() <= 16 {
                assert!(check_basis(&cg, &order).passed(), "(r,n)=({r},{n})");
            }
        }
    }
}
