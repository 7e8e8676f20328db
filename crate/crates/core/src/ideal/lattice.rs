use crate::graph::{Graph, HeredSatSet};

/// Graded ideals ordered by inclusion, one node per hereditary saturated set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLattice {
    pub nodes: Vec<HeredSatSet>,
    /// Covering pairs `(i, j)`: `nodes[i] ⊂ nodes[j]` with nothing between.
    pub covers: Vec<(usize, usize)>,
}

impl GradedLattice {
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.nodes[i].is_subset(&self.nodes[j])
    }

    pub fn bottom(&self) -> &HeredSatSet {
        &self.nodes[0]
    }

    pub fn top(&self) -> &HeredSatSet {
        self.nodes.last().expect("lattice has a top")
    }

    pub fn is_chain(&self) -> bool {
        (0..self.nodes.len()).all(|i| (0..self.nodes.len()).all(|j| self.leq(i, j) || self.leq(j, i)))
    }

    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("digraph graded_ideals {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{} [label=\"{}\"];\n", i, n.display(g)));
        }
        for (i, j) in &self.covers {
            out.push_str(&format!("  n{i} -> n{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn graded_lattice(g: &Graph) -> GradedLattice {
    let nodes = g.all_hereditary_saturated_sets();
    let n = nodes.len();
    let below = |i: usize, j: usize| i != j && nodes[i].is_subset(&nodes[j]);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)) {
                covers.push((i, j));
            }
        }
    }
    GradedLattice { nodes, covers }
}
