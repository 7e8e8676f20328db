//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use lpa_core::element::scalar;
use lpa_core::graph::{EdgeId, VertexId};
use lpa_core::two_vertex::CanonicalForm16;
use lpa_core::{Element, Graph, Monomial, Path};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Arc<Graph> {
    Arc::new(Graph::from_lists(vs, es).unwrap())
}

pub fn r1() -> Arc<Graph> {
    graph(&["v"], &[("e", "v", "v")])
}

pub fn r2() -> Arc<Graph> {
    graph(&["v"], &[("e", "v", "v"), ("f", "v", "v")])
}

pub fn l2() -> Arc<Graph> {
    graph(&["u", "v"], &[("a", "u", "v")])
}

pub fn c2() -> Arc<Graph> {
    graph(&["u", "v"], &[("g", "u", "v"), ("h", "v", "u")])
}

pub fn g5() -> Arc<Graph> {
    graph(&["u", "v"], &[("e", "u", "u")])
}

pub fn g6() -> Arc<Graph> {
    graph(&["u", "v"], &[("e", "u", "u"), ("a", "u", "v")])
}

pub fn g7() -> Arc<Graph> {
    graph(&["u", "v", "w"], &[("g", "u", "v"), ("h", "v", "u"), ("x", "v", "w")])
}

pub fn tri() -> Arc<Graph> {
    graph(
        &["u", "v", "w"],
        &[("e", "v", "v"), ("f", "w", "w"), ("a", "u", "v"), ("b", "u", "w"), ("c", "v", "w")],
    )
}

/// Canonical two-vertex graph `[id]`.
pub fn canon(id: u8) -> Arc<Graph> {
    Arc::new(CanonicalForm16::from_id(id).unwrap().graph())
}

pub fn all_fixtures() -> Vec<(&'static str, Arc<Graph>)> {
    vec![
        ("R1", r1()),
        ("R2", r2()),
        ("L2", l2()),
        ("C2", c2()),
        ("G5", g5()),
        ("G6", g6()),
        ("G7", g7()),
        ("TRI", tri()),
        ("[2]", canon(2)),
        ("[4]", canon(4)),
        ("[8]", canon(8)),
        ("[9]", canon(9)),
        ("[14]", canon(14)),
    ]
}

/// Every path of length at most `max_len`, vertices included, built from
/// the raw edge lists.
pub fn all_paths(g: &Graph, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = g.vertices().map(Path::vertex).collect();
    let mut frontier: Vec<Vec<EdgeId>> = g.edges().map(|e| vec![e]).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for es in frontier {
            out.push(g.edge_path(&es).unwrap());
            let end = g.rng(*es.last().unwrap());
            for f in g.edges().filter(|&f| g.src(f) == end) {
                let mut longer = es.clone();
                longer.push(f);
                next.push(longer);
            }
        }
        frontier = next;
    }
    out
}

/// Closed paths at `v` that do not revisit `v`, up to `max_len` edges.
pub fn closed_simple_paths_oracle(g: &Graph, v: VertexId, max_len: usize) -> Vec<Path> {
    all_paths(g, max_len)
        .into_iter()
        .filter(|p| {
            !p.is_vertex()
                && p.source() == v
                && p.range() == v
                && p.edges()[..p.degree() - 1].iter().all(|&e| g.rng(e) != v)
        })
        .collect()
}

/// Number of closed simple paths at `v`, capped at 2. Any second closed
/// simple path can be taken of length at most `2|E⁰|`.
pub fn csp_count_oracle(g: &Graph, v: VertexId) -> usize {
    closed_simple_paths_oracle(g, v, 2 * g.vertex_count()).len().min(2)
}

pub fn is_hereditary_oracle(g: &Graph, s: &BTreeSet<VertexId>) -> bool {
    g.edges().all(|e| !s.contains(&g.src(e)) || s.contains(&g.rng(e)))
}

pub fn is_saturated_oracle(g: &Graph, s: &BTreeSet<VertexId>) -> bool {
    g.vertices().all(|v| {
        let out: Vec<EdgeId> = g.edges().filter(|&e| g.src(e) == v).collect();
        out.is_empty() || s.contains(&v) || !out.iter().all(|&e| s.contains(&g.rng(e)))
    })
}

pub fn subsets(g: &Graph) -> Vec<BTreeSet<VertexId>> {
    let vs: Vec<VertexId> = g.vertices().collect();
    (0u32..1 << vs.len())
        .map(|m| vs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| *v).collect())
        .collect()
}

/// Smallest hereditary saturated superset, by exhaustive search.
pub fn closure_oracle(g: &Graph, x: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    subsets(g)
        .into_iter()
        .filter(|s| x.is_subset(s) && is_hereditary_oracle(g, s) && is_saturated_oracle(g, s))
        .min_by_key(|s| s.len())
        .unwrap()
}

/// Monomials `αβ*` with `|α|, |β| ≤ max_len`.
pub fn all_monomials(g: &Graph, max_len: usize) -> Vec<Monomial> {
    let paths = all_paths(g, max_len);
    let mut out = Vec::new();
    for a in &paths {
        for b in &paths {
            if a.range() == b.range() {
                out.push(Monomial::new(a.clone(), b.clone()).unwrap());
            }
        }
    }
    out
}

/// A random combination of up to `terms` monomials with small integer
/// coefficients; may normalize to zero.
pub fn random_element(rng: &mut impl Rng, g: &Arc<Graph>, monos: &[Monomial], terms: usize) -> Element {
    let n = rng.gen_range(1..=terms);
    Element::from_terms(
        g,
        (0..n).map(|_| {
            let m = monos.choose(rng).unwrap().clone();
            let mut c = rng.gen_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            (m, scalar(c))
        }),
    )
}

pub fn random_nonzero(rng: &mut impl Rng, g: &Arc<Graph>, monos: &[Monomial], terms: usize) -> Element {
    loop {
        let x = random_element(rng, g, monos, terms);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random homogeneous element of a random degree.
pub fn random_homogeneous(rng: &mut impl Rng, g: &Arc<Graph>, monos: &[Monomial], terms: usize) -> Element {
    let d = monos.choose(rng).unwrap().degree();
    let same: Vec<Monomial> = monos.iter().filter(|m| m.degree() == d).cloned().collect();
    random_element(rng, g, &same, terms)
}
