use std::collections::BTreeSet;

use super::{Graph, VertexId};
use crate::error::GraphError;

/// A hereditary and saturated set of vertices.
///
/// Only [`Graph::hereditary_saturated_closure`] and
/// [`Graph::all_hereditary_saturated_sets`] produce values, so every
/// `HeredSatSet` satisfies both closure rules in the graph it came from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HeredSatSet {
    members: BTreeSet<VertexId>,
}

impl HeredSatSet {
    pub fn members(&self) -> &BTreeSet<VertexId> {
        &self.members
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &HeredSatSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn display(&self, g: &Graph) -> String {
        format!("{{{}}}", g.vertex_names_of(self.iter()).join(","))
    }
}

/// Order by size, then lexicographically by sorted member lists.
impl Ord for HeredSatSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.iter().cmp(other.members.iter()))
    }
}

impl PartialOrd for HeredSatSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Graph {
    pub fn is_hereditary(&self, set: &BTreeSet<VertexId>) -> bool {
        set.iter()
            .all(|&v| self.out_edges(v).iter().all(|&e| set.contains(&self.rng(e))))
    }

    /// Sinks are exempt: a vertex enters by saturation only if it emits an edge.
    pub fn is_saturated(&self, set: &BTreeSet<VertexId>) -> bool {
        self.vertices().all(|v| {
            set.contains(&v)
                || self.is_sink(v)
                || !self.out_edges(v).iter().all(|&e| set.contains(&self.rng(e)))
        })
    }

    /// The least hereditary saturated superset `T(x)`, computed by
    /// alternating the hereditary and saturation rules until neither adds a
    /// vertex.
    pub fn hereditary_saturated_closure(
        &self,
        x: impl IntoIterator<Item = VertexId>,
    ) -> Result<HeredSatSet, GraphError> {
        let mut members = BTreeSet::new();
        for v in x {
            if v.0 >= self.vertex_count() {
                return Err(GraphError::UnknownVertex(format!("#{}", v.0)));
            }
            members.insert(v);
        }
        loop {
            let before = members.len();
            let mut stack: Vec<VertexId> = members.iter().copied().collect();
            while let Some(v) = stack.pop() {
                for &e in self.out_edges(v) {
                    if members.insert(self.rng(e)) {
                        stack.push(self.rng(e));
                    }
                }
            }
            for v in self.vertices() {
                if !members.contains(&v)
                    && !self.is_sink(v)
                    && self.out_edges(v).iter().all(|&e| members.contains(&self.rng(e)))
                {
                    members.insert(v);
                }
            }
            if members.len() == before {
                return Ok(HeredSatSet { members });
            }
        }
    }

    /// Every hereditary saturated vertex set, ordered by size then
    /// lexicographically. Brute force over all `2^|E⁰|` subsets.
    pub fn all_hereditary_saturated_sets(&self) -> Vec<HeredSatSet> {
        let n = self.vertex_count();
        assert!(n < 32, "brute-force subset search needs fewer than 32 vertices");
        let mut out: Vec<HeredSatSet> = (0u64..1 << n)
            .map(|mask| {
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(VertexId)
                    .collect::<BTreeSet<_>>()
            })
            .filter(|s| self.is_hereditary(s) && self.is_saturated(s))
            .map(|members| HeredSatSet { members })
            .collect();
        out.sort();
        out
    }
}
