//! Finite directed multigraphs and the graph-side notions the algebra needs:
//! paths, cycles, the K0/K1/K2 vertex classification, Condition (K),
//! hereditary saturated vertex sets and exit ranges.

mod cycles;
mod hereditary;
mod text;

use std::collections::HashMap;
use std::fmt;

pub use cycles::{ConditionK, Cycle, VertexClass};
pub use hereditary::HeredSatSet;

use crate::error::GraphError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ident {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// A finite directed multigraph with named vertices and edges.
///
/// Vertices and edges keep the order in which they were given; that order is
/// the graph's fixed order used for canonical cycle rotations, the special
/// edge of each vertex, and every deterministic listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    src: Vec<VertexId>,
    rng: Vec<VertexId>,
    out: Vec<Vec<EdgeId>>,
    names: HashMap<String, Ident>,
}

/// Identifiers double as tokens in the element grammar.
pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Graph {
    /// Builds a graph from a vertex listing and `(name, source, range)` edge triples.
    ///
    /// Vertex and edge identifiers share one namespace and must be unique.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator,
        V::Item: AsRef<str>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut names = HashMap::new();
        let mut vertex_names = Vec::new();
        for name in vertices {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(GraphError::InvalidIdentifier(name.to_string()));
            }
            let id = VertexId(vertex_names.len());
            if names.insert(name.to_string(), Ident::Vertex(id)).is_some() {
                return Err(GraphError::DuplicateIdentifier(name.to_string()));
            }
            vertex_names.push(name.to_string());
        }
        if vertex_names.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }

        let mut edge_names = Vec::new();
        let mut src = Vec::new();
        let mut rng = Vec::new();
        let mut out = vec![Vec::new(); vertex_names.len()];
        for (name, s, r) in edges {
            if !is_identifier(&name) {
                return Err(GraphError::InvalidIdentifier(name));
            }
            let lookup = |v: &str| match names.get(v) {
                Some(Ident::Vertex(id)) => Ok(*id),
                _ => Err(GraphError::UnknownVertex(v.to_string())),
            };
            let (s, r) = (lookup(&s)?, lookup(&r)?);
            let id = EdgeId(edge_names.len());
            if names.insert(name.clone(), Ident::Edge(id)).is_some() {
                return Err(GraphError::DuplicateIdentifier(name));
            }
            edge_names.push(name);
            src.push(s);
            rng.push(r);
            out[s.0].push(id);
        }

        Ok(Graph {
            vertex_names,
            edge_names,
            src,
            rng,
            out,
            names,
        })
    }

    /// Convenience constructor for string literals, mainly for fixtures.
    pub fn from_lists(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph, GraphError> {
        Graph::new(
            vertices.iter().copied(),
            edges
                .iter()
                .map(|(e, s, r)| (e.to_string(), s.to_string(), r.to_string())),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edge_names.len()).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        match self.names.get(name) {
            Some(Ident::Vertex(v)) => Ok(*v),
            _ => Err(GraphError::UnknownVertex(name.to_string())),
        }
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId, GraphError> {
        match self.names.get(name) {
            Some(Ident::Edge(e)) => Ok(*e),
            _ => Err(GraphError::UnknownEdge(name.to_string())),
        }
    }

    pub(crate) fn lookup(&self, name: &str) -> Option<Result<VertexId, EdgeId>> {
        self.names.get(name).map(|id| match id {
            Ident::Vertex(v) => Ok(*v),
            Ident::Edge(e) => Err(*e),
        })
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.0]
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.src[e.0]
    }

    pub fn rng(&self, e: EdgeId) -> VertexId {
        self.rng[e.0]
    }

    /// Edges with source `v`, in graph order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out[v.0].is_empty()
    }

    /// The least outgoing edge of `v`; `None` for sinks.
    ///
    /// The normal form of algebra elements forbids this edge followed by its
    /// own ghost at the turn of a monomial.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.out[v.0].first().copied()
    }

    /// Whether a (possibly empty) path leads from `from` to `to`.
    pub fn reaches(&self, from: VertexId, to: VertexId) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![from];
        seen[from.0] = true;
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            for &e in &self.out[v.0] {
                let w = self.rng(e);
                if !seen[w.0] {
                    seen[w.0] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Validates an edge sequence as a path. An empty sequence needs `base`.
    pub fn path(&self, base: VertexId, edges: &[EdgeId]) -> Result<Path, GraphError> {
        if let Some(&first) = edges.first() {
            if self.src(first) != base {
                return Err(GraphError::NotComposable(format!(
                    "{} does not start at {}",
                    self.edge_name(first),
                    self.vertex_name(base)
                )));
            }
        }
        for pair in edges.windows(2) {
            if self.rng(pair[0]) != self.src(pair[1]) {
                return Err(GraphError::NotComposable(format!(
                    "r({}) = {} but s({}) = {}",
                    self.edge_name(pair[0]),
                    self.vertex_name(self.rng(pair[0])),
                    self.edge_name(pair[1]),
                    self.vertex_name(self.src(pair[1]))
                )));
            }
        }
        let end = edges.last().map_or(base, |&e| self.rng(e));
        Ok(Path {
            start: base,
            edges: edges.to_vec(),
            end,
        })
    }

    /// Path through a nonempty edge sequence.
    pub fn edge_path(&self, edges: &[EdgeId]) -> Result<Path, GraphError> {
        let first = edges
            .first()
            .ok_or_else(|| GraphError::NotComposable("empty edge sequence".into()))?;
        self.path(self.src(*first), edges)
    }

    pub fn path_names(&self, p: &Path) -> Vec<&str> {
        p.edges.iter().map(|&e| self.edge_name(e)).collect()
    }

    /// Renders a path as `e.f.g`, or the vertex name for a trivial path.
    pub fn display_path(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.start).to_string()
        } else {
            self.path_names(p).join(".")
        }
    }

    pub fn vertex_names_of<'a>(&'a self, vs: impl IntoIterator<Item = VertexId> + 'a) -> Vec<String> {
        vs.into_iter().map(|v| self.vertex_name(v).to_string()).collect()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A path `e₁…eₙ`, or the trivial path at a vertex when no edges are present.
///
/// The endpoints are cached so monomial arithmetic never needs the graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: VertexId,
    edges: Vec<EdgeId>,
    end: VertexId,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            start: v,
            edges: Vec::new(),
            end: v,
        }
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self) -> VertexId {
        self.end
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn degree(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.start != prefix.start || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            start: prefix.end,
            edges: self.edges[prefix.edges.len()..].to_vec(),
            end: self.end,
        })
    }

    /// Concatenation; the caller guarantees `self.range() == next.source()`.
    pub fn concat(&self, next: &Path) -> Path {
        debug_assert_eq!(self.end, next.start);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&next.edges);
        Path {
            start: self.start,
            edges,
            end: next.end,
        }
    }

    /// The path with its last edge removed.
    pub(crate) fn pop(&self, g: &Graph) -> Path {
        let mut edges = self.edges.clone();
        let last = edges.pop().expect("pop on trivial path");
        Path {
            start: self.start,
            edges,
            end: g.src(last),
        }
    }

    pub(crate) fn push(&self, g: &Graph, e: EdgeId) -> Path {
        debug_assert_eq!(g.src(e), self.end);
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            start: self.start,
            edges,
            end: g.rng(e),
        }
    }

    /// `self` repeated `k` times; `k = 0` gives the trivial path at the source.
    pub fn power(&self, k: usize) -> Path {
        debug_assert!(k <= 1 || self.start == self.end);
        let mut edges = Vec::with_capacity(self.edges.len() * k);
        for _ in 0..k {
            edges.extend_from_slice(&self.edges);
        }
        Path {
            start: self.start,
            end: if k == 0 { self.start } else { self.end },
            edges,
        }
    }
}
