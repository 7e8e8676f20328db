mod common;

use std::collections::BTreeSet;

use common::*;
use lpa_core::graph::VertexId;
use lpa_core::{Graph, VertexClass};
use proptest::prelude::*;

/// Every graph on `n` vertices with at most `max_edges` edges, as edge
/// multisets over `(source, range)` pairs.
fn small_graphs(n: usize, max_edges: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |r| (s, r))).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((chosen, from)) = stack.pop() {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String, String)> = chosen
            .iter()
            .enumerate()
            .map(|(k, &p)| (format!("e{k}"), names[pairs[p].0].clone(), names[pairs[p].1].clone()))
            .collect();
        out.push(Graph::new(names, edges).unwrap());
        if chosen.len() < max_edges {
            for p in from..pairs.len() {
                let mut next = chosen.clone();
                next.push(p);
                stack.push((next, p));
            }
        }
    }
    out
}

/// Closed paths at `v` not revisiting `v`, of length at most `bound`,
/// counted up to 2 by plain DFS over edges.
fn count_csps(g: &Graph, v: VertexId, bound: usize) -> usize {
    fn walk(g: &Graph, v: VertexId, at: VertexId, depth: usize, bound: usize, found: &mut usize) {
        if *found >= 2 || depth == bound {
            return;
        }
        for e in g.edges().filter(|&e| g.src(e) == at) {
            if g.rng(e) == v {
                *found += 1;
            } else {
                walk(g, v, g.rng(e), depth + 1, bound, found);
            }
            if *found >= 2 {
                return;
            }
        }
    }
    let mut found = 0;
    walk(g, v, v, 0, bound, &mut found);
    found
}

#[test]
fn classification_matches_bounded_enumeration() {
    let mut checked = 0;
    for n in 1..=3 {
        for g in small_graphs(n, 4) {
            for v in g.vertices() {
                let count = count_csps(&g, v, 2 * g.edge_count());
                let class = g.classify_vertex(v);
                let expected = match count {
                    0 => "K0",
                    1 => "K1",
                    _ => "K2",
                };
                assert_eq!(class.label(), expected, "{} at {}", g.to_text(), g.vertex_name(v));
                checked += 1;
            }
        }
    }
    assert!(checked > 2000);
}

#[test]
fn classification_examples() {
    let g = graph(&["u", "v"], &[("a", "u", "v"), ("b", "v", "u"), ("c", "v", "v")]);
    assert_eq!(g.classify_vertex(g.vertex("u").unwrap()), VertexClass::K2);
    let paths: Vec<String> = g
        .closed_simple_paths(g.vertex("u").unwrap(), 4, 3)
        .iter()
        .map(|p| g.display_path(p))
        .collect();
    assert_eq!(paths, vec!["a.b", "a.c.b", "a.c.c.b"]);
    let r = r1();
    assert!(matches!(r.classify_vertex(r.vertex("v").unwrap()), VertexClass::K1(_)));
    let k = r1().condition_k();
    assert!(!k.holds);
    assert!(canon(4).condition_k().holds);
    assert!(l2().condition_k().holds);
}

#[test]
fn k1_cycles_are_simple_and_unique() {
    for (name, g) in all_fixtures() {
        for v in g.vertices() {
            let VertexClass::K1(cycle) = g.classify_vertex(v) else { continue };
            let sources = cycle.sources(&g);
            let distinct: BTreeSet<_> = sources.iter().collect();
            assert_eq!(distinct.len(), sources.len(), "{name}");
            let n = cycle.len();
            let base = cycle.base(&g);
            for &s in &sources {
                let rotation = cycle.rotation_at(&g, s).unwrap();
                assert_eq!(closed_simple_paths_oracle(&g, s, 3 * n + 2), vec![rotation], "{name}");
                assert!(matches!(g.classify_vertex(s), VertexClass::K1(ref c) if *c == cycle));
            }
            let lambda = cycle.rotation_at(&g, base).unwrap();
            for p in all_paths(&g, 3 * n) {
                if !p.is_vertex() && p.source() == base && p.range() == base {
                    let k = p.degree() / n;
                    assert_eq!(p.degree() % n, 0, "{name}");
                    assert_eq!(p, lambda.power(k), "{name}");
                }
            }
        }
    }
}

#[test]
fn closure_is_a_closure_operator() {
    for (name, g) in all_fixtures() {
        let sets = subsets(&g);
        for x in &sets {
            let t = g.hereditary_saturated_closure(x.iter().copied()).unwrap();
            let t_set: BTreeSet<VertexId> = t.iter().collect();
            assert!(x.is_subset(&t_set), "{name}: extensive");
            assert_eq!(t_set, closure_oracle(&g, x), "{name}: least fixed point");
            let tt = g.hereditary_saturated_closure(t.iter()).unwrap();
            assert_eq!(tt, t, "{name}: idempotent");
            for y in &sets {
                if x.is_subset(y) {
                    let ty = g.hereditary_saturated_closure(y.iter().copied()).unwrap();
                    assert!(t.is_subset(&ty), "{name}: monotone");
                }
            }
        }
    }
}

#[test]
fn hereditary_saturated_sets_match_brute_force() {
    for (name, g) in all_fixtures() {
        let listed = g.all_hereditary_saturated_sets();
        let brute: Vec<BTreeSet<VertexId>> = subsets(&g)
            .into_iter()
            .filter(|s| is_hereditary_oracle(&g, s) && is_saturated_oracle(&g, s))
            .collect();
        assert_eq!(listed.len(), brute.len(), "{name}");
        for h in &listed {
            let set: BTreeSet<VertexId> = h.iter().collect();
            assert!(brute.contains(&set), "{name}");
        }
        for a in &listed {
            for b in &listed {
                let meet: BTreeSet<VertexId> = a.members().intersection(b.members()).copied().collect();
                assert!(listed.iter().any(|h| *h.members() == meet), "{name}: intersections");
            }
        }
    }
}

#[test]
fn closure_examples() {
    let g = tri();
    let t = g.hereditary_saturated_closure([g.vertex("v").unwrap()]).unwrap();
    assert_eq!(t.display(&g), "{u,v,w}");
    let g = l2();
    let t = g.hereditary_saturated_closure([g.vertex("u").unwrap()]).unwrap();
    assert_eq!(t.display(&g), "{u,v}");
    let names: Vec<String> = g.all_hereditary_saturated_sets().iter().map(|h| h.display(&g)).collect();
    assert_eq!(names, vec!["{}", "{u,v}"]);
}

#[test]
fn exit_ranges() {
    for (name, g) in all_fixtures() {
        for c in g.k1_cycles() {
            let exits = g.exit_range(&c).unwrap();
            for v in exits {
                assert!(!c.contains_vertex(&g, v), "{name}");
            }
        }
    }
    let g = g6();
    let c = g.cycle_from_names(&["e"]).unwrap();
    assert_eq!(g.vertex_names_of(g.exit_range(&c).unwrap()), vec!["v"]);
    let g = tri();
    let c = g.cycle_from_names(&["e"]).unwrap();
    assert_eq!(g.vertex_names_of(g.exit_range(&c).unwrap()), vec!["w"]);
    let g = g5();
    let c = g.cycle_from_names(&["e"]).unwrap();
    assert!(g.exit_range(&c).unwrap().is_empty());
}

#[test]
fn k1_cycle_sets() {
    assert_eq!(r1().k1_cycles().len(), 1);
    assert!(r2().k1_cycles().is_empty());
    let g = c2();
    let cycles: Vec<String> = g.k1_cycles().iter().map(|c| c.display(&g)).collect();
    assert_eq!(cycles, vec!["<g,h>"]);
}

proptest! {
    #[test]
    fn text_round_trip(edges in prop::collection::vec((0usize..3, 0usize..3), 0..6)) {
        let names = ["p", "q", "r"];
        let es: Vec<(String, String, String)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(s, r))| (format!("x{i}"), names[s].to_string(), names[r].to_string()))
            .collect();
        let g = Graph::new(names.map(String::from), es).unwrap();
        let text = g.to_text();
        let back: Graph = text.parse().unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert!(back == g);
    }
}
