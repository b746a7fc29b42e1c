//! Exhaustive invariant sweeps at small field sizes, each checked against an
//! enumeration oracle.

use std::collections::{BTreeMap, VecDeque};

use nglab_core::aut::{brute_force_aut, aut_order, enumerate_aut, preserves_adjacency};
use nglab_core::charsum::{claim9_check, l_poly, s4_three_way, square_part, weil_check};
use nglab_core::ff::{FieldCtx, Subfield};
use nglab_core::k46::{
    bijection_check, frobenius_identity_check, make_env, s4_nonrational, special_set_report, special_solve,
    square_transfer, third_root_exclusion_check,
};
use nglab_core::neighborhoods::{
    base_pairs, common_neighborhood_bruteforce, f_poly, lemma3ii_check, pair_degree, st_enumerate, st_size,
};
use nglab_core::normgraph::{classify_set, GraphCtx, Vertex};
use nglab_core::resultants::{build_gtilde, quadruple_degree, QuadSystem};
use nglab_core::subgraphs::{count_labeled, quasirandom_ratio, Band, PatternGraph, DEFAULT_BUDGET};

#[test]
fn modulus_is_deterministic() {
    for (p, m) in [(2, 8), (3, 5), (5, 4), (7, 3)] {
        let a = FieldCtx::new(p, m, None).unwrap();
        let b = FieldCtx::new(p, m, None).unwrap();
        assert_eq!(a.modulus(), b.modulus());
    }
}

#[test]
fn frobenius_exhaustive_small_fields() {
    for (p, m) in [(2, 4), (3, 4), (5, 2), (2, 6)] {
        let f = FieldCtx::new(p, m, None).unwrap();
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(f.frobenius(f.add(x, y), 1), f.add(f.frobenius(x, 1), f.frobenius(y, 1)));
                assert_eq!(f.frobenius(f.mul(x, y), 1), f.mul(f.frobenius(x, 1), f.frobenius(y, 1)));
            }
        }
    }
}

#[test]
fn norm_is_galois_invariant() {
    for t in [3, 4] {
        let gc = GraphCtx::from_q(3, t).unwrap();
        let f = gc.big();
        for x in f.elements() {
            assert_eq!(gc.norm(f.frobenius(x, 1)), gc.norm(x));
        }
    }
}

#[test]
fn norm_fibres_are_uniform() {
    for q in [3, 4, 5] {
        for t in [2, 3] {
            let gc = GraphCtx::from_q(q, t).unwrap();
            let mut fibres: BTreeMap<u64, u64> = BTreeMap::new();
            for x in gc.big().nonzero() {
                *fibres.entry(gc.norm(x).value()).or_default() += 1;
            }
            assert_eq!(fibres.len() as u64, q - 1);
            assert!(fibres.values().all(|&c| c == gc.norm_exponent()), "q={q} t={t}");
        }
    }
}

#[test]
fn quadratic_character_is_multiplicative_on_f25() {
    let f = FieldCtx::new(5, 2, None).unwrap();
    for x in f.nonzero() {
        for y in f.nonzero() {
            let lhs = f.quad_char(f.mul(x, y)).unwrap();
            assert_eq!(lhs, f.quad_char(x).unwrap() * f.quad_char(y).unwrap());
        }
    }
}

fn stream_total_and_connected(gc: &GraphCtx) -> (u64, u64, bool) {
    let n = gc.n_vertices() as usize;
    let census = gc.census();
    let mut total = 0u64;
    for v in gc.vertices() {
        total += gc.neighbors(&v, false).count() as u64;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for w in gc.neighbors(&gc.vertex_at(i), true) {
            let j = gc.vertex_index(&w);
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    (total, 2 * census.edges + census.loops, seen.iter().all(|&s| s))
}

#[test]
fn handshake_and_connectivity() {
    for (q, t) in [(3, 2), (4, 2), (5, 2), (7, 2), (8, 2), (9, 2), (3, 3), (4, 3), (5, 3), (7, 3), (3, 4), (4, 4), (3, 5)] {
        let gc = GraphCtx::from_q(q, t).unwrap();
        assert!(gc.n_vertices() <= 2000);
        let (total, handshake, connected) = stream_total_and_connected(&gc);
        assert_eq!(total, gc.n_vertices() * (gc.big_order() - 1), "q={q} t={t}");
        assert_eq!(total, handshake, "q={q} t={t}");
        assert!(connected, "q={q} t={t}");
    }
}

#[test]
fn pair_degree_depends_only_on_alignment() {
    for (q, t) in [(3, 2), (4, 2), (5, 2), (3, 3), (4, 3)] {
        let gc = GraphCtx::from_q(q, t).unwrap();
        let vs: Vec<Vertex> = gc.vertices().collect();
        for (i, u) in vs.iter().enumerate() {
            for v in &vs[i + 1..] {
                let pair = [*u, *v];
                if !classify_set(&pair).generic {
                    assert!(common_neighborhood_bruteforce(&gc, &pair).is_empty());
                    continue;
                }
                let oracle = common_neighborhood_bruteforce(&gc, &pair).len() as u64;
                assert_eq!(pair_degree(&gc, &pair).unwrap(), oracle);
            }
        }
    }
}

#[test]
fn s_t_sets_partition_the_field() {
    for t in [3, 4] {
        let gc = GraphCtx::from_q(3, t).unwrap();
        let mut seen = 0usize;
        for (c1, c2) in base_pairs(&gc) {
            let s = st_enumerate(&gc, t, c1, c2).unwrap();
            let poly = f_poly(&gc, t, c1, c2).unwrap();
            assert!(s.iter().all(|&x| poly.eval(x).is_zero()));
            assert_eq!(st_size(&gc, t, c1, c2).unwrap(), s.len() as i64);
            seen += s.len();
        }
        assert_eq!(seen as u64, gc.big_order() - 2);
    }
}

#[test]
fn multiple_roots_are_rational_solutions() {
    let gc = GraphCtx::from_q(5, 4).unwrap();
    for (c1, c2) in base_pairs(&gc) {
        assert!(lemma3ii_check(&gc, c1, c2).unwrap());
    }
}

#[test]
fn st_recursion_at_t5() {
    let gc = GraphCtx::from_q(3, 5).unwrap();
    for (c1, c2) in base_pairs(&gc) {
        assert_eq!(st_size(&gc, 5, c1, c2).unwrap(), st_enumerate(&gc, 5, c1, c2).unwrap().len() as i64);
    }
}

#[test]
fn s4_deviation_band() {
    for q in [5, 7, 9] {
        let gc = GraphCtx::from_q(q, 4).unwrap();
        let f = gc.big();
        let special = (f.one(), f.from_int(-1));
        let bound = 2.0 + 3.0 * (q as f64).sqrt();
        for (c1, c2) in base_pairs(&gc) {
            if (c1, c2) == special {
                continue;
            }
            let s = st_size(&gc, 4, c1, c2).unwrap();
            assert!(((s - q as i64).abs() as f64) <= bound, "q={q}");
        }
    }
}

#[test]
fn max_triple_degree_at_q7_t4_comes_from_the_special_pair() {
    let gc = GraphCtx::from_q(7, 4).unwrap();
    let f = gc.big();
    let sizes: Vec<_> = base_pairs(&gc).into_iter().map(|(a, b)| ((a, b), st_size(&gc, 4, a, b).unwrap())).collect();
    let max = sizes.iter().map(|s| s.1).max().unwrap();
    let argmax: Vec<_> = sizes.iter().filter(|s| s.1 == max).map(|s| s.0).collect();
    assert_eq!(max, 14);
    assert_eq!(argmax, vec![(f.one(), f.from_int(-1))]);
}

#[test]
fn elimination_contains_every_common_neighbour_q7() {
    let gc = GraphCtx::from_q(7, 4).unwrap();
    let picks = [[1usize, 400, 900, 1500], [7, 77, 777, 1777], [10, 300, 1200, 2000], [0, 1000, 1500, 2050]];
    for idx in picks {
        let quad: Vec<Vertex> = idx.iter().map(|&i| gc.vertex_at(i)).collect();
        if !classify_set(&quad).generic {
            continue;
        }
        let elim = build_gtilde(&gc, &quad).unwrap();
        assert!(elim.g_max_degree <= 7);
        let sys = QuadSystem::new(&gc, &quad).unwrap();
        for w in common_neighborhood_bruteforce(&gc, &quad) {
            let f = gc.big();
            let y = f.inv(f.add(w.first, sys.reduced.anchor.first));
            assert!(elim.g_tilde.eval(y).is_zero());
        }
        let d = quadruple_degree(&gc, &quad).unwrap();
        assert!(d.exact <= 6);
    }
}

#[test]
fn fixed_triple_extensions_stay_below_seven() {
    let gc = GraphCtx::from_q(5, 4).unwrap();
    let triple = [gc.vertex_at(0), gc.vertex_at(37), gc.vertex_at(222)];
    assert!(classify_set(&triple).generic);
    let mut max = 0;
    for v in gc.vertices() {
        let quad = [triple[0], triple[1], triple[2], v];
        if !classify_set(&quad).generic {
            continue;
        }
        let d = quadruple_degree(&gc, &quad).unwrap();
        max = max.max(d.exact);
    }
    assert!(max <= 6);
}

#[test]
fn elimination_degree_vanishes_at_t5() {
    let gc = GraphCtx::from_q(3, 5).unwrap();
    let quad = [gc.vertex_at(0), gc.vertex_at(50), gc.vertex_at(100), gc.vertex_at(151)];
    assert!(classify_set(&quad).generic);
    let elim = build_gtilde(&gc, &quad).unwrap();
    assert!(elim.g_max_degree <= 7);
    let d = quadruple_degree(&gc, &quad).unwrap();
    assert_eq!(d.exact as usize, common_neighborhood_bruteforce(&gc, &quad).len());
}

#[test]
fn special_set_structure() {
    for (p, k) in [(5, 1), (7, 1), (11, 1), (13, 1)] {
        let env = make_env(p, k).unwrap();
        let r = special_set_report(&env).unwrap();
        assert!(r.holds(env.e_q()), "q={}", env.q());
    }
    for (p, k) in [(5, 1), (7, 1), (13, 1)] {
        let env = make_env(p, k).unwrap();
        assert!(bijection_check(&env).unwrap());
        assert!(third_root_exclusion_check(&env));
    }
    for p in [5, 7] {
        let env = make_env(p, 1).unwrap();
        assert!(frobenius_identity_check(&env).unwrap());
        for d in s4_nonrational(&env) {
            assert!(square_transfer(&env, d).unwrap());
        }
    }
}

#[test]
fn solver_counts_for_all_candidates() {
    for p in [5, 7] {
        let env = make_env(p, 1).unwrap();
        let gc = env.gc();
        let f = gc.big();
        for a in s4_nonrational(&env) {
            let sol = special_solve(&env, a, f.one()).unwrap();
            let oracle: Vec<_> = f
                .elements()
                .filter(|&y| {
                    gc.norm(y) == f.one()
                        && gc.norm(f.add(y, a)) == f.from_int(-1)
                        && gc.norm(f.add(y, f.one())) == f.from_int(-1)
                })
                .collect();
            assert_eq!(sol.solutions, oracle);
            let eta = f.quad_char(f.add(f.add(f.mul(a, a), a), f.one())).unwrap();
            assert_eq!(sol.solutions.len() as i64, 5 + i64::from(eta));
        }
    }
}

#[test]
fn weil_bound_over_all_pairs() {
    for q in [5u64, 7, 9, 11, 13] {
        let gc = GraphCtx::from_q(q, 2).unwrap();
        let base = Subfield::new(gc.big(), gc.big().degree()).unwrap();
        let f = base.field();
        let mut special = Vec::new();
        for &c1 in base.nonzero() {
            for &c2 in base.nonzero() {
                let l = l_poly(f, c1, c2);
                let r = weil_check(f, &l).unwrap();
                assert!(r.ok, "q={q}");
                if square_part(&l).unwrap().is_some() {
                    special.push((c1, c2));
                } else {
                    assert!(r.sum.pow(2) <= 9 * q as i64);
                }
                assert_eq!(claim9_check(f, c1, c2).is_some(), square_part(&l).unwrap().is_some());
            }
        }
        if q % 2 == 1 {
            assert_eq!(special, vec![(f.one(), f.from_int(-1))], "q={q}");
        }
    }
}

#[test]
fn s4_three_way_agreement() {
    for q in [5, 7] {
        let gc = GraphCtx::from_q(q, 4).unwrap();
        for (c1, c2) in base_pairs(&gc) {
            let (a, b, c) = s4_three_way(&gc, c1, c2).unwrap();
            assert!(a == b && b == c, "q={q}");
        }
    }
}

#[test]
fn automorphism_counts_against_search() {
    for (q, t) in [(3, 2), (4, 2), (3, 3), (5, 2)] {
        let gc = GraphCtx::from_q(q, t).unwrap();
        let order = aut_order(&gc).unwrap();
        assert_eq!(u128::from(brute_force_aut(&gc, true).unwrap()), order, "q={q} t={t}");
        let maps = enumerate_aut(&gc).unwrap();
        assert_eq!(maps.len() as u128, order);
        let adj = gc.adjacency(false, 1 << 12).unwrap();
        assert!(maps.iter().all(|m| preserves_adjacency(&gc, &adj, m)));
    }
    // Forgetting loops can only enlarge the group.
    for (q, t) in [(3, 2), (3, 3)] {
        let gc = GraphCtx::from_q(q, t).unwrap();
        assert!(brute_force_aut(&gc, false).unwrap() >= brute_force_aut(&gc, true).unwrap());
    }
}

#[test]
fn generated_maps_preserve_adjacency_at_moderate_size() {
    for (q, t) in [(7, 2), (9, 2), (5, 3), (8, 2)] {
        let gc = GraphCtx::from_q(q, t).unwrap();
        let adj = gc.adjacency(false, 1 << 12).unwrap();
        let maps = enumerate_aut(&gc).unwrap();
        assert!(maps.iter().all(|m| preserves_adjacency(&gc, &adj, m)), "q={q} t={t}");
    }
}

#[test]
fn labeled_counts_are_multiples_of_pattern_symmetry() {
    for (q, t) in [(3, 3), (4, 3), (5, 3)] {
        let gc = GraphCtx::from_q(q, t).unwrap();
        for name in ["K2", "P3", "C4", "K3", "K4"] {
            let h = PatternGraph::named(name).unwrap();
            let x = count_labeled(&gc, &h, DEFAULT_BUDGET).unwrap();
            assert_eq!(x % u128::from(h.automorphism_count()), 0, "{name} q={q}");
        }
        let k3 = count_labeled(&gc, &PatternGraph::complete(3).unwrap(), DEFAULT_BUDGET).unwrap();
        let k33 = count_labeled(&gc, &PatternGraph::complete_bipartite(3, 3).unwrap(), DEFAULT_BUDGET).unwrap();
        assert!(k3 > 0 && k33 == 0, "q={q}");
    }
}

#[test]
fn removing_an_edge_never_loses_copies() {
    let gc = GraphCtx::from_q(4, 3).unwrap();
    let n = gc.n_vertices() as u128;
    for name in ["C4", "K4", "C5"] {
        let h = PatternGraph::named(name).unwrap();
        let x = count_labeled(&gc, &h, DEFAULT_BUDGET).unwrap();
        for e in 0..h.e() {
            let smaller = count_labeled(&gc, &h.remove_edge(e).unwrap(), DEFAULT_BUDGET).unwrap();
            assert!(x <= smaller * n);
            assert!(x <= smaller);
        }
    }
}

#[test]
fn clique_window_at_t4() {
    let gc = GraphCtx::from_q(5, 4).unwrap();
    let r = quasirandom_ratio(&gc, &PatternGraph::complete(4).unwrap(), DEFAULT_BUDGET).unwrap();
    assert!(matches!(r.band, Band::Theta { c_h: 1, .. }));
    assert!((0.5..=4.0).contains(&r.ratio), "ratio {}", r.ratio);
}
