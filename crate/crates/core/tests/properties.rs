use std::sync::OnceLock;

use nglab_core::aut::{apply, compose, identity, inverse, make_aut, AutMap};
use nglab_core::charsum::quadratic_root_identity;
use nglab_core::ff::{FieldCtx, Poly};
use nglab_core::k46::{make_env, mobius_c, mobius_c_inv, translate, CubicEnv};
use nglab_core::neighborhoods::{common_neighborhood_bruteforce, reduce, triple_degree};
use nglab_core::normgraph::{classify_set, GraphCtx, Vertex};
use nglab_core::subgraphs::{count_in_matrix, PatternGraph};
use nglab_core::bitset::BitMatrix;
use proptest::prelude::*;

fn f5_6() -> &'static FieldCtx {
    static F: OnceLock<FieldCtx> = OnceLock::new();
    F.get_or_init(|| FieldCtx::new(5, 6, None).unwrap())
}

fn f7() -> &'static FieldCtx {
    static F: OnceLock<FieldCtx> = OnceLock::new();
    F.get_or_init(|| FieldCtx::prime(7).unwrap())
}

fn gc54() -> &'static GraphCtx {
    static G: OnceLock<GraphCtx> = OnceLock::new();
    G.get_or_init(|| GraphCtx::from_q(5, 4).unwrap())
}

fn gc93() -> &'static GraphCtx {
    static G: OnceLock<GraphCtx> = OnceLock::new();
    G.get_or_init(|| GraphCtx::from_q(9, 3).unwrap())
}

fn env5() -> &'static CubicEnv {
    static E: OnceLock<CubicEnv> = OnceLock::new();
    E.get_or_init(|| make_env(5, 1).unwrap())
}

fn host33() -> &'static BitMatrix {
    static M: OnceLock<BitMatrix> = OnceLock::new();
    M.get_or_init(|| GraphCtx::from_q(3, 3).unwrap().adjacency(true, 1000).unwrap())
}

/// Generic vertex sets of the given size as raw indices, first coordinates distinct.
fn generic_set(gc: &GraphCtx, idx: &[usize]) -> Option<Vec<Vertex>> {
    let vs: Vec<Vertex> = idx.iter().map(|&i| gc.vertex_at(i % gc.n_vertices() as usize)).collect();
    classify_set(&vs).generic.then_some(vs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn frobenius_is_a_ring_map(x in 0u64..15625, y in 0u64..15625, i in 0u64..6) {
        let f = f5_6();
        let (x, y) = (f.elem(x).unwrap(), f.elem(y).unwrap());
        prop_assert_eq!(f.frobenius(f.add(x, y), i), f.add(f.frobenius(x, i), f.frobenius(y, i)));
        prop_assert_eq!(f.frobenius(f.mul(x, y), i), f.mul(f.frobenius(x, i), f.frobenius(y, i)));
    }

    #[test]
    fn quadratic_root_count(a2 in 1i64..7, a1 in 0i64..7, a0 in 0i64..7) {
        let f = f7();
        prop_assert!(quadratic_root_identity(f, f.from_int(a2), f.from_int(a1), f.from_int(a0)).unwrap());
    }

    #[test]
    fn quadratic_root_count_large(a2 in 1u64..15625, a1 in 0u64..15625, a0 in 0u64..15625) {
        let f = f5_6();
        let r = quadratic_root_identity(f, f.elem(a2).unwrap(), f.elem(a1).unwrap(), f.elem(a0).unwrap());
        prop_assert!(r.unwrap());
    }

    #[test]
    fn poly_division_identity(a in prop::collection::vec(0u64..49, 1..8), b in prop::collection::vec(0u64..49, 1..5)) {
        let f = FieldCtx::new(7, 2, None).unwrap();
        let pa = Poly::new(&f, a.iter().map(|&v| f.elem(v).unwrap()).collect());
        let pb = Poly::new(&f, b.iter().map(|&v| f.elem(v).unwrap()).collect());
        prop_assume!(!pb.is_zero());
        let (quo, rem) = pa.divrem(&pb).unwrap();
        prop_assert_eq!(quo.mul(&pb).add(&rem), pa);
        prop_assert!(rem.degree().is_none_or(|d| d < pb.degree().unwrap()));
    }

    #[test]
    fn lemma1_reduction(idx in prop::collection::vec(0usize..500, 2..5)) {
        let gc = gc54();
        let Some(vs) = generic_set(gc, &idx) else { return Ok(()) };
        let sys = reduce(gc, &vs).unwrap();
        let h = sys.solutions(gc);
        let oracle = common_neighborhood_bruteforce(gc, &vs);
        let nonzero = h.iter().filter(|y| !y.is_zero()).count();
        prop_assert_eq!(nonzero, oracle.len());
        prop_assert_eq!(h.len() - nonzero, classify_set(&vs).xi() as usize);
        let mut lifted: Vec<Vertex> = h.iter().filter(|y| !y.is_zero()).map(|&y| sys.lift(gc, y)).collect();
        lifted.sort_by_key(|v| gc.vertex_index(v));
        prop_assert_eq!(lifted, oracle);
    }

    #[test]
    fn triple_degree_ignores_listing_order(idx in prop::collection::vec(0usize..500, 3), rot in 0usize..6) {
        let gc = gc54();
        let Some(vs) = generic_set(gc, &idx) else { return Ok(()) };
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let permuted: Vec<Vertex> = perms[rot].iter().map(|&i| vs[i]).collect();
        let d1 = triple_degree(gc, &vs).unwrap().degree;
        prop_assert_eq!(d1, triple_degree(gc, &permuted).unwrap().degree);
        prop_assert_eq!(d1 as usize, common_neighborhood_bruteforce(gc, &vs).len());
    }

    #[test]
    fn mobius_round_trip(z in 0u64..15625) {
        let env = env5();
        let o = env.over();
        let z = o.elem(z).unwrap();
        prop_assume!(z != env.a());
        let w = mobius_c(env, z).unwrap();
        prop_assume!(w != o.one());
        prop_assert_eq!(mobius_c_inv(env, w).unwrap(), z);
    }

    #[test]
    fn translation_preserves_common_degree(
        idx in prop::collection::vec(0usize..500, 4),
        alpha in 0u64..125,
        beta in 1u64..125,
        c in 1i64..5,
    ) {
        let gc = gc54();
        let Some(vs) = generic_set(gc, &idx) else { return Ok(()) };
        let f = gc.big();
        let moved = translate(gc, &vs, f.elem(alpha).unwrap(), f.elem(beta).unwrap(), f.from_int(c)).unwrap();
        prop_assert_eq!(
            common_neighborhood_bruteforce(gc, &vs).len(),
            common_neighborhood_bruteforce(gc, &moved.vertices).len()
        );
    }

    #[test]
    fn aut_group_laws(
        params in prop::collection::vec((1u64..81, 0u32..4, prop::bool::ANY), 3),
        probe in 0usize..648,
    ) {
        let gc = gc93();
        let f = gc.big();
        let maps: Vec<AutMap> = params
            .iter()
            .map(|&(c, i, s)| make_aut(gc, f.elem(c).unwrap(), i, if s { 1 } else { -1 }, f.zero()).unwrap())
            .collect();
        let (m1, m2, m3) = (&maps[0], &maps[1], &maps[2]);
        let left = compose(gc, &compose(gc, m1, m2), m3);
        let right = compose(gc, m1, &compose(gc, m2, m3));
        prop_assert_eq!(left, right);
        prop_assert_eq!(compose(gc, m1, &inverse(gc, m1)), identity(gc));
        prop_assert_eq!(compose(gc, &identity(gc), m2), *m2);
        let v = gc.vertex_at(probe);
        prop_assert_eq!(apply(gc, &compose(gc, m1, m2), &v), apply(gc, m1, &apply(gc, m2, &v)));
    }

    #[test]
    fn subgraph_count_relabel_invariant(
        pattern in 0usize..5,
        perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let h = [
            PatternGraph::path(4).unwrap(),
            PatternGraph::cycle(4).unwrap(),
            PatternGraph::complete(3).unwrap(),
            PatternGraph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap(),
            PatternGraph::complete_bipartite(2, 3).unwrap(),
        ][pattern].clone();
        let perm: Vec<usize> = perm.into_iter().filter(|&x| x < h.v()).collect();
        let moved = h.relabel(&perm).unwrap();
        let host = host33();
        prop_assert_eq!(count_in_matrix(host, &h, u64::MAX).unwrap(), count_in_matrix(host, &moved, u64::MAX).unwrap());
    }

    #[test]
    fn subgraph_count_matches_naive_on_random_hosts(
        n in 5usize..9,
        bits in prop::collection::vec(prop::bool::ANY, 36),
        pattern in prop::collection::vec((0usize..4, 0usize..4), 1..6),
    ) {
        let mut host = BitMatrix::new(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k % bits.len()] {
                    host.set(i, j);
                    host.set(j, i);
                }
                k += 1;
            }
        }
        let mut edges: Vec<(usize, usize)> = pattern.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort();
        edges.dedup();
        let h = PatternGraph::new(4, &edges).unwrap();
        let mut naive = 0u128;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let img = [a, b, c, d];
                        let distinct = (0..4).all(|i| (0..i).all(|j| img[i] != img[j]));
                        if distinct && edges.iter().all(|&(x, y)| host.get(img[x], img[y])) {
                            naive += 1;
                        }
                    }
                }
            }
        }
        prop_assert_eq!(count_in_matrix(&host, &h, u64::MAX).unwrap(), naive);
    }
}
