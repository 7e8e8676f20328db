//! Line-oriented graph files:
//!
//! ```text
//! # comment
//! vertices: u v w
//! edge e: u -> v
//! ```

use std::str::FromStr;

use super::Graph;
use crate::error::GraphError;

impl Graph {
    pub fn parse_text(input: &str) -> Result<Graph, GraphError> {
        let mut vertices: Vec<String> = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in input.lines().enumerate() {
            let line = raw.trim();
            let syntax = |message: &str| GraphError::Syntax {
                line: i + 1,
                message: message.to_string(),
            };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                vertices.extend(rest.split_whitespace().map(str::to_string));
            } else if let Some(rest) = line.strip_prefix("edge ") {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax("expected `edge NAME: SRC -> RNG`"))?;
                let (s, r) = ends
                    .split_once("->")
                    .ok_or_else(|| syntax("expected `->` between edge endpoints"))?;
                let (name, s, r) = (name.trim(), s.trim(), r.trim());
                if name.is_empty() || s.is_empty() || r.is_empty() {
                    return Err(syntax("edge needs a name, a source and a range"));
                }
                edges.push((name.to_string(), s.to_string(), r.to_string()));
            } else {
                return Err(syntax("expected `vertices:`, `edge` or a comment"));
            }
        }
        Graph::new(vertices, edges)
    }

    /// Serializes in the text format; `parse_text` inverts it exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.vertex_names.join(" "));
        for e in self.edges() {
            out.push_str(&format!(
                "edge {}: {} -> {}\n",
                self.edge_name(e),
                self.vertex_name(self.src(e)),
                self.vertex_name(self.rng(e))
            ));
        }
        out
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse_text(s)
    }
}
