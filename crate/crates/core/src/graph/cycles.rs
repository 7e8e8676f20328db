use std::collections::BTreeSet;

use super::{EdgeId, Graph, Path, VertexId};
use crate::error::GraphError;

/// A cycle stored in its canonical rotation: the lexicographically least
/// rotation of its edge sequence under the graph's edge order.
///
/// Two rotations of the same cycle therefore compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    edges: Vec<EdgeId>,
}

impl Cycle {
    fn canonical(edges: &[EdgeId]) -> Cycle {
        let best = (0..edges.len())
            .min_by(|&i, &j| {
                let a = edges[i..].iter().chain(&edges[..i]);
                let b = edges[j..].iter().chain(&edges[..j]);
                a.cmp(b)
            })
            .unwrap_or(0);
        let mut rotated = edges[best..].to_vec();
        rotated.extend_from_slice(&edges[..best]);
        Cycle { edges: rotated }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Source of the first edge of the canonical rotation.
    pub fn base(&self, g: &Graph) -> VertexId {
        g.src(self.edges[0])
    }

    /// Sources of the edges, in canonical rotation order.
    pub fn sources(&self, g: &Graph) -> Vec<VertexId> {
        self.edges.iter().map(|&e| g.src(e)).collect()
    }

    pub fn contains_vertex(&self, g: &Graph, v: VertexId) -> bool {
        self.edges.iter().any(|&e| g.src(e) == v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// The rotation of the cycle based at `v`, as a closed path.
    pub fn rotation_at(&self, g: &Graph, v: VertexId) -> Option<Path> {
        let i = self.edges.iter().position(|&e| g.src(e) == v)?;
        let mut edges = self.edges[i..].to_vec();
        edges.extend_from_slice(&self.edges[..i]);
        Some(g.path(v, &edges).expect("rotation of a cycle is a path"))
    }

    pub fn display(&self, g: &Graph) -> String {
        let names: Vec<&str> = self.edges.iter().map(|&e| g.edge_name(e)).collect();
        format!("<{}>", names.join(","))
    }
}

/// How many closed simple paths are based at a vertex: none, exactly one
/// (then it is a cycle, carried here), or at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexClass {
    K0,
    K1(Cycle),
    K2,
}

impl VertexClass {
    pub fn label(&self) -> &'static str {
        match self {
            VertexClass::K0 => "K0",
            VertexClass::K1(_) => "K1",
            VertexClass::K2 => "K2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionK {
    pub holds: bool,
    /// Vertices with exactly one closed simple path, in graph order.
    pub k1_vertices: Vec<VertexId>,
}

impl Graph {
    /// Validates a closed edge sequence with pairwise distinct sources and
    /// returns it in canonical rotation.
    pub fn cycle(&self, edges: &[EdgeId]) -> Result<Cycle, GraphError> {
        let names = || {
            edges
                .iter()
                .map(|&e| self.edge_name(e))
                .collect::<Vec<_>>()
                .join(".")
        };
        let path = self
            .edge_path(edges)
            .map_err(|_| GraphError::NotACycle(names()))?;
        if path.source() != path.range() {
            return Err(GraphError::NotACycle(format!("{} is not closed", names())));
        }
        let mut sources = BTreeSet::new();
        if !edges.iter().all(|&e| sources.insert(self.src(e))) {
            return Err(GraphError::NotACycle(format!("{} repeats a source", names())));
        }
        Ok(Cycle::canonical(edges))
    }

    pub fn cycle_from_names(&self, names: &[&str]) -> Result<Cycle, GraphError> {
        let edges = names
            .iter()
            .map(|n| self.edge(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.cycle(&edges)
    }

    pub fn is_cycle(&self, c: &Cycle) -> bool {
        c.edges.iter().all(|e| e.0 < self.edge_count())
            && self.cycle(&c.edges).is_ok_and(|d| &d == c)
    }

    /// All cycles through `v`. Found by depth-first search from `v` over
    /// vertex-simple paths, so the result follows the lexicographic order of
    /// the rotations based at `v`.
    pub fn simple_cycles_through(&self, v: VertexId) -> Vec<Cycle> {
        let mut found = Vec::new();
        let mut on_path = vec![false; self.vertex_count()];
        let mut edges = Vec::new();
        on_path[v.0] = true;
        self.cycle_dfs(v, v, &mut on_path, &mut edges, &mut found, usize::MAX);
        found
    }

    fn cycle_dfs(
        &self,
        target: VertexId,
        at: VertexId,
        on_path: &mut [bool],
        edges: &mut Vec<EdgeId>,
        found: &mut Vec<Cycle>,
        limit: usize,
    ) {
        for &e in self.out_edges(at) {
            if found.len() >= limit {
                return;
            }
            let w = self.rng(e);
            edges.push(e);
            if w == target {
                found.push(Cycle::canonical(edges));
            } else if !on_path[w.0] {
                on_path[w.0] = true;
                self.cycle_dfs(target, w, on_path, edges, found, limit);
                on_path[w.0] = false;
            }
            edges.pop();
        }
    }

    /// Classifies `v` by its number of closed simple paths without
    /// enumerating them (there may be infinitely many).
    ///
    /// No cycle through `v` means no closed path at all. Two cycles are two
    /// closed simple paths. With a single cycle `C`, a second closed simple
    /// path exists exactly when some edge leaves a vertex of `C`, is not on
    /// `C`, and has a range from which `v` is reachable.
    pub fn classify_vertex(&self, v: VertexId) -> VertexClass {
        let mut found = Vec::new();
        let mut on_path = vec![false; self.vertex_count()];
        on_path[v.0] = true;
        self.cycle_dfs(v, v, &mut on_path, &mut Vec::new(), &mut found, 2);
        match found.len() {
            0 => VertexClass::K0,
            1 => {
                let cycle = found.pop().unwrap();
                let returning_exit = cycle.sources(self).into_iter().any(|x| {
                    self.out_edges(x)
                        .iter()
                        .any(|&f| !cycle.contains_edge(f) && self.reaches(self.rng(f), v))
                });
                if returning_exit {
                    VertexClass::K2
                } else {
                    VertexClass::K1(cycle)
                }
            }
            _ => VertexClass::K2,
        }
    }

    pub fn condition_k(&self) -> ConditionK {
        let k1_vertices: Vec<VertexId> = self
            .vertices()
            .filter(|&v| matches!(self.classify_vertex(v), VertexClass::K1(_)))
            .collect();
        ConditionK {
            holds: k1_vertices.is_empty(),
            k1_vertices,
        }
    }

    /// Distinct cycles that are the unique closed simple path of some K1 vertex.
    pub fn k1_cycles(&self) -> BTreeSet<Cycle> {
        self.vertices()
            .filter_map(|v| match self.classify_vertex(v) {
                VertexClass::K1(c) => Some(c),
                _ => None,
            })
            .collect()
    }

    /// Ranges of the exits of `c`: edges not on `c` whose source lies on `c`.
    pub fn exit_range(&self, c: &Cycle) -> Result<BTreeSet<VertexId>, GraphError> {
        if !self.is_cycle(c) {
            return Err(GraphError::NotACycle(c.display(self)));
        }
        Ok(c.sources(self)
            .into_iter()
            .flat_map(|x| self.out_edges(x).iter().copied())
            .filter(|&f| !c.contains_edge(f))
            .map(|f| self.rng(f))
            .collect())
    }

    /// Closed simple paths based at `v` (closed paths that never pass through
    /// `v` before their last edge), shortest first and lexicographic within
    /// a length, stopping after `limit` paths or at length `max_len`.
    pub fn closed_simple_paths(&self, v: VertexId, max_len: usize, limit: usize) -> Vec<Path> {
        let mut found = Vec::new();
        for len in 1..=max_len {
            let mut edges = Vec::with_capacity(len);
            self.csp_exact(v, v, len, &mut edges, &mut found, limit);
            if found.len() >= limit {
                break;
            }
        }
        found
    }

    fn csp_exact(
        &self,
        base: VertexId,
        at: VertexId,
        remaining: usize,
        edges: &mut Vec<EdgeId>,
        found: &mut Vec<Path>,
        limit: usize,
    ) {
        for &e in self.out_edges(at) {
            if found.len() >= limit {
                return;
            }
            let w = self.rng(e);
            edges.push(e);
            if remaining == 1 {
                if w == base {
                    found.push(self.path(base, edges).expect("closed walk is a path"));
                }
            } else if w != base {
                self.csp_exact(base, w, remaining - 1, edges, found, limit);
            }
            edges.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r1() -> Graph {
        Graph::from_lists(&["v"], &[("e", "v", "v")]).unwrap()
    }

    fn c2() -> Graph {
        Graph::from_lists(&["u", "v"], &[("g", "u", "v"), ("h", "v", "u")]).unwrap()
    }

    #[test]
    fn cycles_through_vertex() {
        let g = r1();
        let v = g.vertex("v").unwrap();
        assert_eq!(g.simple_cycles_through(v), vec![g.cycle_from_names(&["e"]).unwrap()]);

        let l2 = Graph::from_lists(&["u", "v"], &[("a", "u", "v")]).unwrap();
        assert!(l2.simple_cycles_through(l2.vertex("u").unwrap()).is_empty());

        let g = c2();
        let u = g.vertex("u").unwrap();
        let cycles = g.simple_cycles_through(u);
        assert_eq!(cycles, vec![g.cycle_from_names(&["g", "h"]).unwrap()]);
    }

    #[test]
    fn rotations_share_a_key() {
        let g = c2();
        let a = g.cycle_from_names(&["g", "h"]).unwrap();
        let b = g.cycle_from_names(&["h", "g"]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges(), &[g.edge("g").unwrap(), g.edge("h").unwrap()]);
        let v = g.vertex("v").unwrap();
        assert_eq!(g.display_path(&a.rotation_at(&g, v).unwrap()), "h.g");
    }

    #[test]
    fn cycle_validation() {
        let g = Graph::from_lists(
            &["u", "v"],
            &[("a", "u", "v"), ("b", "v", "u"), ("c", "v", "v")],
        )
        .unwrap();
        assert!(g.cycle_from_names(&["a"]).is_err());
        assert!(g.cycle_from_names(&["a", "c", "b"]).is_err());
        assert!(g.cycle_from_names(&["a", "b"]).is_ok());
    }

    #[test]
    fn classification_examples() {
        let g = r1();
        let v = g.vertex("v").unwrap();
        assert_eq!(
            g.classify_vertex(v),
            VertexClass::K1(g.cycle_from_names(&["e"]).unwrap())
        );

        let r2 = Graph::from_lists(&["v"], &[("e", "v", "v"), ("f", "v", "v")]).unwrap();
        assert_eq!(r2.classify_vertex(v), VertexClass::K2);

        let detour = Graph::from_lists(
            &["u", "v"],
            &[("a", "u", "v"), ("b", "v", "u"), ("c", "v", "v")],
        )
        .unwrap();
        assert_eq!(detour.classify_vertex(detour.vertex("u").unwrap()), VertexClass::K2);
        assert_eq!(detour.classify_vertex(detour.vertex("v").unwrap()), VertexClass::K2);
    }

    #[test]
    fn condition_k_examples() {
        let l2 = Graph::from_lists(&["u", "v"], &[("a", "u", "v")]).unwrap();
        assert_eq!(
            l2.condition_k(),
            ConditionK {
                holds: true,
                k1_vertices: vec![]
            }
        );
        let g = r1();
        let ck = g.condition_k();
        assert!(!ck.holds);
        assert_eq!(ck.k1_vertices, vec![g.vertex("v").unwrap()]);
        let g4 = Graph::from_lists(
            &["u", "v"],
            &[("a", "u", "v"), ("b", "u", "v"), ("c", "v", "u")],
        )
        .unwrap();
        assert!(g4.condition_k().holds);
    }

    #[test]
    fn k1_cycle_examples() {
        let g = r1();
        assert_eq!(
            g.k1_cycles().into_iter().collect::<Vec<_>>(),
            vec![g.cycle_from_names(&["e"]).unwrap()]
        );
        let r2 = Graph::from_lists(&["v"], &[("e", "v", "v"), ("f", "v", "v")]).unwrap();
        assert!(r2.k1_cycles().is_empty());
        let g = c2();
        let cycles = g.k1_cycles();
        assert_eq!(cycles.len(), 1);
        assert!(cycles.contains(&g.cycle_from_names(&["h", "g"]).unwrap()));
    }

    #[test]
    fn exit_range_examples() {
        let g5 = Graph::from_lists(&["u", "v"], &[("e", "u", "u")]).unwrap();
        let e = g5.cycle_from_names(&["e"]).unwrap();
        assert!(g5.exit_range(&e).unwrap().is_empty());

        let g6 = Graph::from_lists(&["u", "v"], &[("e", "u", "u"), ("a", "u", "v")]).unwrap();
        let e = g6.cycle_from_names(&["e"]).unwrap();
        let v = g6.vertex("v").unwrap();
        assert_eq!(g6.exit_range(&e).unwrap(), BTreeSet::from([v]));

        let foreign = Graph::from_lists(&["u"], &[("x", "u", "u"), ("y", "u", "u")])
            .unwrap()
            .cycle_from_names(&["y"])
            .unwrap();
        assert!(g6.exit_range(&foreign).is_err());
    }

    #[test]
    fn closed_simple_paths_shortest_first() {
        let g = Graph::from_lists(
            &["u", "v"],
            &[("a", "u", "v"), ("b", "v", "u"), ("c", "v", "v")],
        )
        .unwrap();
        let u = g.vertex("u").unwrap();
        let paths = g.closed_simple_paths(u, 4, 3);
        let shown: Vec<String> = paths.iter().map(|p| g.display_path(p)).collect();
        assert_eq!(shown, vec!["a.b", "a.c.b", "a.c.c.b"]);
    }
}
