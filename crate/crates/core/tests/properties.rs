use proptest::prelude::*;

use medcons_core::consensus::{canonical_profiles, l6_eval, profile_count, C6Profile};
use medcons_core::graph::generators::*;
use medcons_core::graph::io::{parse_graph, write_graph};
use medcons_core::hypergraph::{dual_hypergraph, helly_brute_force, incidence_graph, is_helly_hypergraph, Hypergraph};
use medcons_core::lp::rat;
use medcons_core::median::median_set;
use medcons_core::pairing::polytope::{in_ma, in_me, ma_violation_search, PolytopeOptions};
use medcons_core::pairing::{has_perfect_pairing, maximum_pairing, AuxiliaryGraph, DEFAULT_STABLE_SET_CAP};
use medcons_core::{Exec, Graph, Profile, Vertex};

/// Connected graph on `2..=max_n` vertices: a random tree plus extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            (Just(n), parents, prop::collection::vec(any::<bool>(), n * (n - 1) / 2))
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(Vertex, Vertex)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if extra[k] && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
}

fn hypergraph(max_ground: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_ground, 1..=max_edges).prop_flat_map(|(ground, m)| {
        prop::collection::vec(prop::collection::vec(0..ground, 1..=ground), m)
            .prop_map(move |edges| Hypergraph::new(ground, edges).unwrap())
    })
}

fn profile_on(n: usize, max_total: usize) -> impl Strategy<Value = Profile> {
    prop::collection::vec(0..n, 0..=max_total).prop_map(move |vs| Profile::from_vertices(n, vs))
}

fn floyd_warshall(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

/// Largest total pair distance over every way of splitting `seq` into pairs.
fn brute_max_pairing(d: &[Vec<u64>], seq: &mut Vec<Vertex>) -> u64 {
    let Some(a) = seq.pop() else { return 0 };
    let mut best = 0;
    for i in 0..seq.len() {
        let b = seq.remove(i);
        best = best.max(d[a][b] + brute_max_pairing(d, seq));
        seq.insert(i, b);
    }
    seq.push(a);
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn median_set_matches_floyd_warshall(
        (g, pi) in connected_graph(8).prop_flat_map(|g| { let n = g.vertex_count(); (Just(g), profile_on(n, 6)) })
    ) {
        let d = floyd_warshall(&g);
        let f: Vec<u64> = (0..g.vertex_count())
            .map(|v| pi.canonical().iter().map(|&(x, k)| k as u64 * d[v][x]).sum())
            .collect();
        let best = *f.iter().min().unwrap();
        let expected: Vec<Vertex> = (0..f.len()).filter(|&v| f[v] == best).collect();
        prop_assert_eq!(median_set(&g, &pi).to_vec(), expected);
    }

    #[test]
    fn maximum_pairing_matches_enumeration(
        (g, pi) in connected_graph(7).prop_flat_map(|g| { let n = g.vertex_count(); (Just(g), profile_on(n, 4)) })
    ) {
        let mut pi = pi;
        if !pi.is_even() {
            pi.add(0, 1);
        }
        let d = floyd_warshall(&g);
        let brute = brute_max_pairing(&d, &mut pi.to_sequence());
        let (p, cost) = maximum_pairing(&g, &pi).unwrap();
        prop_assert_eq!(cost, brute);
        prop_assert_eq!(p.covers(g.vertex_count()), pi.clone());
        // a perfect pairing exists exactly when the best pairing reaches min F
        let min_f: u64 = (0..g.vertex_count())
            .map(|v| pi.canonical().iter().map(|&(x, k)| k as u64 * d[v][x]).sum())
            .min()
            .unwrap();
        prop_assert_eq!(has_perfect_pairing(&g, &pi).unwrap().is_some(), brute == min_f);
    }

    #[test]
    fn helly_triple_criterion_matches_brute_force(h in hypergraph(5, 12)) {
        let fast = is_helly_hypergraph(&h, Exec::Sequential);
        let brute = helly_brute_force(&h);
        prop_assert_eq!(fast.helly, brute.is_none());
        if let Some(w) = fast.witness {
            // pairwise intersecting with empty total intersection
            let e = h.edges();
            for (i, &a) in w.iter().enumerate() {
                for &b in &w[i + 1..] {
                    prop_assert!(e[a].iter().any(|x| e[b].contains(x)));
                }
            }
            prop_assert!((0..h.ground_size()).all(|x| w.iter().any(|&j| !e[j].contains(&x))));
        }
    }

    #[test]
    fn dual_of_dual_is_identity(h in hypergraph(5, 6)) {
        prop_assume!((0..h.ground_size()).all(|x| h.edges().iter().any(|e| e.contains(&x))));
        let back = dual_hypergraph(&dual_hypergraph(&h).unwrap()).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn incidence_graph_is_bipartite_with_small_diameter(h in hypergraph(5, 6)) {
        prop_assume!((0..h.ground_size()).all(|x| h.edges().iter().any(|e| e.contains(&x))));
        let (g, layout) = incidence_graph(&h).unwrap();
        prop_assert!(g.is_bipartite());
        prop_assert!(g.diameter() <= 4);
        prop_assert_eq!(g.vertex_count(), 1 + h.ground_size() + h.edge_count());
        for (j, e) in h.edges().iter().enumerate() {
            for x in 0..h.ground_size() {
                prop_assert_eq!(g.is_adjacent(layout.point(x), layout.edge(j)), e.contains(&x));
            }
        }
    }

    #[test]
    fn hexagon_reduction_identity(a in prop::array::uniform6(0u32..4), b in prop::array::uniform6(0u32..4)) {
        let (p, q) = (C6Profile::new(a), C6Profile::new(b));
        prop_assert_eq!(p.concat(&q).reduced(), p.reduced().concat(&q.reduced()).reduced());
        let r = p.reduced().counts;
        prop_assert!((0..3).all(|i| r[i] == 0 || r[i + 3] == 0));
    }

    #[test]
    fn l6_is_median_off_alternate_profiles(a in prop::array::uniform6(0u32..3)) {
        let p = C6Profile::new(a);
        prop_assume!(!p.is_empty());
        let l6 = l6_eval(&p).unwrap();
        if p.is_alternate() {
            prop_assert_eq!(l6.len(), 1);
        } else {
            prop_assert_eq!(l6, median_set(&cycle(6).unwrap(), &p.to_profile()));
        }
    }

    #[test]
    fn closed_stable_sets_reach_the_same_hall_minimum(
        (g, u, b) in connected_graph(7).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), 0..n, prop::collection::vec(0u64..5, n))
        })
    ) {
        let a = AuxiliaryGraph::new(&g, u);
        let n = g.vertex_count();
        let mut allowed = vec![true; n];
        allowed[u] = false;
        let deficiency = |s: &Vec<Vertex>| {
            let nb: u64 = a.graph().neighborhood(s).iter().map(|&v| b[v]).sum();
            s.iter().map(|&v| b[v]).sum::<u64>() as i64 - nb as i64
        };
        let all = a.graph().stable_sets(&allowed, DEFAULT_STABLE_SET_CAP).unwrap();
        let closed: Vec<_> = all.iter().filter(|s| a.graph().is_closed_stable(s, &allowed)).collect();
        prop_assert!(!closed.is_empty() || all.is_empty());
        prop_assert_eq!(all.iter().map(deficiency).max(), closed.into_iter().map(deficiency).max());
    }

    #[test]
    fn ma_violations_lie_in_me_and_outside_ma(
        (g, u) in connected_graph(7).prop_flat_map(|g| { let n = g.vertex_count(); (Just(g), 0..n) })
    ) {
        let opts = PolytopeOptions { exec: Exec::Sequential, ..PolytopeOptions::default() };
        if let Some(v) = ma_violation_search(&g, u, opts).unwrap() {
            prop_assert!(in_me(&g, u, &v.point));
            prop_assert!(!in_ma(&g, u, &v.point, DEFAULT_STABLE_SET_CAP).unwrap());
            prop_assert!(v.neighborhood.contains(&u));
        }
        // the base vertex as a unit point is always in Me(u)
        let mut unit = vec![rat(0); g.vertex_count()];
        unit[u] = rat(1);
        prop_assert!(in_me(&g, u, &unit));
    }

    #[test]
    fn graph_text_round_trip(g in connected_graph(9)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn profile_text_round_trip(pi in profile_on(6, 8)) {
        prop_assert_eq!(Profile::parse(&pi.to_string(), 6).unwrap(), pi);
    }
}

#[test]
fn b3_is_the_hexagon() {
    let b3 = bn(3).unwrap();
    assert_eq!(b3.vertex_count(), 6);
    assert_eq!(b3.edge_count(), 6);
    assert!(b3.vertices().all(|v| b3.neighbors(v).len() == 2));
    assert_eq!(b3.topology().components().len(), 1);
    assert_eq!(b3.diameter(), 3);
}

#[test]
fn hypercube_distance_is_hamming() {
    for d in 1..=4 {
        let q = hypercube(d).unwrap();
        for u in q.vertices() {
            for v in q.vertices() {
                assert_eq!(q.d(u, v), (u ^ v).count_ones());
            }
        }
    }
}

#[test]
fn canonical_profile_count() {
    for n in 1..=5 {
        for l in 0..=4 {
            let ps = canonical_profiles(n, l, u128::MAX).unwrap();
            assert_eq!(ps.len() as u128, profile_count(n, l));
            let mut seen = std::collections::HashSet::new();
            assert!(ps.iter().all(|p| seen.insert(p.clone())));
        }
    }
}
