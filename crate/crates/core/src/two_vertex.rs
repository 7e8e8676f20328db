//! Two-vertex graphs: counting up to isomorphism, reduction to the sixteen
//! canonical graphs, and the lattice classes of their λ-reducible ideals.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::TwoVertexError;
use crate::graph::{Cycle, Graph, HeredSatSet};
use crate::ideal::graded_lattice;

/// Largest edge budget `enumerate_up_to_iso` accepts.
pub const ENUMERATION_GUARD: u32 = 12;

/// Edge counts of a graph on `{u, v}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwoVertexShape {
    pub loops_u: u32,
    pub loops_v: u32,
    pub edges_uv: u32,
    pub edges_vu: u32,
}

impl TwoVertexShape {
    pub const fn new(loops_u: u32, loops_v: u32, edges_uv: u32, edges_vu: u32) -> Self {
        TwoVertexShape {
            loops_u,
            loops_v,
            edges_uv,
            edges_vu,
        }
    }

    pub fn tuple(&self) -> (u32, u32, u32, u32) {
        (self.loops_u, self.loops_v, self.edges_uv, self.edges_vu)
    }

    pub fn total(&self) -> u32 {
        self.loops_u + self.loops_v + self.edges_uv + self.edges_vu
    }

    /// The same graph with `u` and `v` exchanged.
    pub fn swapped(&self) -> Self {
        TwoVertexShape::new(self.loops_v, self.loops_u, self.edges_vu, self.edges_uv)
    }

    /// The larger of the shape and its swap.
    pub fn canonical(&self) -> Self {
        (*self).max(self.swapped())
    }

    pub fn is_canonical(&self) -> bool {
        *self >= self.swapped()
    }

    /// Reads the shape off a two-vertex graph, taking `u` to be its first
    /// vertex.
    pub fn of_graph(g: &Graph) -> Result<Self, TwoVertexError> {
        if g.vertex_count() != 2 {
            return Err(TwoVertexError::WrongVertexCount(g.vertex_count()));
        }
        let mut s = TwoVertexShape::new(0, 0, 0, 0);
        for e in g.edges() {
            match (g.src(e).index(), g.rng(e).index()) {
                (0, 0) => s.loops_u += 1,
                (1, 1) => s.loops_v += 1,
                (0, 1) => s.edges_uv += 1,
                _ => s.edges_vu += 1,
            }
        }
        Ok(s)
    }

    /// Loops on `u` are `e, e2, ...`, on `v` are `f, f2, ...`; edges `u → v`
    /// are `a, a2, ...` and `v → u` are `b, b2, ...`.
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for (prefix, count, s, r) in [
            ("e", self.loops_u, "u", "u"),
            ("f", self.loops_v, "v", "v"),
            ("a", self.edges_uv, "u", "v"),
            ("b", self.edges_vu, "v", "u"),
        ] {
            for i in 1..=count {
                let name = if i == 1 { prefix.to_string() } else { format!("{prefix}{i}") };
                edges.push((name, s.to_string(), r.to_string()));
            }
        }
        Graph::new(["u", "v"].map(String::from), edges).expect("shape names are distinct")
    }
}

impl fmt::Display for TwoVertexShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.loops_u, self.loops_v, self.edges_uv, self.edges_vu)
    }
}

/// Number of two-vertex graphs with `k` edges up to isomorphism:
/// `n(n+1)(3k-4n+1)/3 + (n+1)⌈(k+1)/2⌉` with `n = ⌈k/2⌉`.
pub fn count_closed_form(k: u64) -> u128 {
    let k = k as i128;
    let n = (k + 1) / 2;
    let first = n * (n + 1) * (3 * k - 4 * n + 1);
    debug_assert_eq!(first % 3, 0);
    (first / 3 + (n + 1) * ((k + 2) / 2)) as u128
}

/// All swap-canonical shapes with `k` edges, in descending order.
pub fn enumerate_up_to_iso(k: u32) -> Result<Vec<TwoVertexShape>, TwoVertexError> {
    if k > ENUMERATION_GUARD {
        return Err(TwoVertexError::OverGuard(k));
    }
    let mut out = BTreeSet::new();
    for lu in 0..=k {
        for lv in 0..=k - lu {
            for uv in 0..=k - lu - lv {
                out.insert(TwoVertexShape::new(lu, lv, uv, k - lu - lv - uv).canonical());
            }
        }
    }
    Ok(out.into_iter().rev().collect())
}

/// The sixteen canonical two-vertex graphs, indexed from 1.
pub const CANONICAL_SHAPES: [TwoVertexShape; 16] = [
    TwoVertexShape::new(0, 0, 0, 0),
    TwoVertexShape::new(0, 0, 1, 0),
    TwoVertexShape::new(0, 0, 1, 1),
    TwoVertexShape::new(0, 0, 2, 1),
    TwoVertexShape::new(1, 0, 0, 0),
    TwoVertexShape::new(1, 0, 1, 0),
    TwoVertexShape::new(1, 0, 0, 1),
    TwoVertexShape::new(1, 0, 1, 1),
    TwoVertexShape::new(1, 1, 0, 0),
    TwoVertexShape::new(1, 1, 1, 0),
    TwoVertexShape::new(2, 0, 0, 0),
    TwoVertexShape::new(2, 0, 1, 0),
    TwoVertexShape::new(2, 0, 0, 1),
    TwoVertexShape::new(2, 1, 1, 0),
    TwoVertexShape::new(2, 1, 0, 1),
    TwoVertexShape::new(2, 2, 1, 0),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalForm16 {
    pub id: u8,
    pub shape: TwoVertexShape,
}

impl CanonicalForm16 {
    pub fn from_id(id: u8) -> Option<Self> {
        let shape = *CANONICAL_SHAPES.get((id as usize).checked_sub(1)?)?;
        Some(CanonicalForm16 { id, shape })
    }

    pub fn all() -> impl Iterator<Item = CanonicalForm16> {
        (1..=16).map(|id| CanonicalForm16::from_id(id).unwrap())
    }

    pub fn graph(&self) -> Graph {
        self.shape.graph()
    }
}

/// Reduces a shape to the canonical graph with the same ideal lattice.
///
/// More than two loops at a vertex act like two, and several parallel
/// edges in one direction act like one. With edges both ways the graph is
/// elementary unless it is the bare two-cycle.
pub fn canonicalize_shape(s: TwoVertexShape) -> CanonicalForm16 {
    let s = TwoVertexShape::new(s.loops_u.min(2), s.loops_v.min(2), s.edges_uv, s.edges_vu).canonical();
    let both_ways = s.edges_uv > 0 && s.edges_vu > 0;
    let id = match ((s.loops_u, s.loops_v), both_ways) {
        ((0, 0), true) if s.edges_uv + s.edges_vu >= 3 => 4,
        ((0, 0), true) => 3,
        (_, true) => 8,
        ((lu, lv), false) => {
            let dir = match (s.edges_uv > 0, s.edges_vu > 0) {
                (false, false) => 0,
                (true, _) => 1,
                (_, true) => 2,
            };
            match (lu, lv, dir) {
                (0, 0, 0) => 1,
                (0, 0, _) => 2,
                (1, 0, 0) => 5,
                (1, 0, 1) => 6,
                (1, 0, _) => 7,
                (1, 1, 0) => 9,
                (1, 1, _) => 10,
                (2, 0, 0) => 11,
                (2, 0, 1) => 12,
                (2, 0, _) => 13,
                (2, 1, 0) => 5,
                (2, 1, 1) => 14,
                (2, 1, _) => 15,
                (2, 2, 0) => 1,
                (2, 2, _) => 16,
                _ => unreachable!("loops are capped and swap-canonical"),
            }
        }
    };
    CanonicalForm16::from_id(id).unwrap()
}

pub fn canonicalize16(g: &Graph) -> Result<CanonicalForm16, TwoVertexError> {
    TwoVertexShape::of_graph(g).map(canonicalize_shape)
}

/// Node of a lattice skeleton: a graded ideal, or the family of ideals with
/// a fixed vertex part and polynomials on exactly the given K1 cycles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SkeletonNode {
    Graded(HeredSatSet),
    Family(HeredSatSet, BTreeSet<Cycle>),
}

impl SkeletonNode {
    fn color(&self) -> usize {
        match self {
            SkeletonNode::Graded(_) => 0,
            SkeletonNode::Family(_, s) => s.len(),
        }
    }

    fn parts(&self) -> (&HeredSatSet, Option<&BTreeSet<Cycle>>) {
        match self {
            SkeletonNode::Graded(h) => (h, None),
            SkeletonNode::Family(h, s) => (h, Some(s)),
        }
    }

    pub fn label(&self, g: &Graph) -> String {
        match self {
            SkeletonNode::Graded(h) => h.display(g),
            SkeletonNode::Family(h, s) => {
                let cycles: Vec<String> = s.iter().map(|c| format!("P{}", c.display(g))).collect();
                format!("{} + {}", h.display(g), cycles.join(" + "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arc {
    /// Every ideal of the source lies in every ideal of the target.
    Contained = 1,
    /// Some ideal of the source lies in some ideal of the target.
    Partial = 2,
}

/// Structural summary of the lattice of λ-reducible ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSkeleton {
    pub nodes: Vec<SkeletonNode>,
    pub arcs: Vec<(usize, usize, Arc)>,
}

impl LatticeSkeleton {
    pub fn build(g: &Graph) -> LatticeSkeleton {
        let hs = graded_lattice(g).nodes;
        let cycles: Vec<Cycle> = g.k1_cycles().into_iter().collect();
        let mut nodes: Vec<SkeletonNode> = hs.iter().cloned().map(SkeletonNode::Graded).collect();
        for h in &hs {
            let allowed: Vec<&Cycle> = cycles
                .iter()
                .filter(|c| {
                    !c.sources(g).iter().any(|&v| h.contains(v))
                        && g.hereditary_saturated_closure(g.exit_range(c).expect("K1 cycle"))
                            .expect("vertices of g")
                            .is_subset(h)
                })
                .collect();
            for mask in 1u32..1 << allowed.len() {
                let s: BTreeSet<Cycle> = allowed
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, c)| (*c).clone())
                    .collect();
                nodes.push(SkeletonNode::Family(h.clone(), s));
            }
        }

        let swallowed = |c: &Cycle, h: &HeredSatSet| c.sources(g).iter().any(|&v| h.contains(v));
        let mut arcs = Vec::new();
        for (i, a) in nodes.iter().enumerate() {
            for (j, b) in nodes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let ((ha, sa), (hb, sb)) = (a.parts(), b.parts());
                if !ha.is_subset(hb) {
                    continue;
                }
                let sa = sa.map(|s| s.iter().collect::<Vec<_>>()).unwrap_or_default();
                if sa.iter().all(|c| swallowed(c, hb)) {
                    arcs.push((i, j, Arc::Contained));
                } else if let Some(sb) = sb {
                    if sa.iter().all(|c| swallowed(c, hb) || sb.contains(*c)) {
                        arcs.push((i, j, Arc::Partial));
                    }
                }
            }
        }
        LatticeSkeleton { nodes, arcs }
    }

    /// Minimal encoding over all relabelings that keep node colors sorted.
    /// Two skeletons are isomorphic exactly when these agree.
    pub fn canonical_form(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.nodes[i].color());
        let colors: Vec<usize> = order.iter().map(|&i| self.nodes[i].color()).collect();
        let mut matrix = vec![0usize; n * n];
        for &(i, j, kind) in &self.arcs {
            matrix[i * n + j] = kind as usize;
        }
        let groups: Vec<std::ops::Range<usize>> = {
            let mut out = Vec::new();
            let mut start = 0;
            for k in 1..=n {
                if k == n || colors[k] != colors[start] {
                    out.push(start..k);
                    start = k;
                }
            }
            out
        };
        let matrix = &matrix;
        let mut best: Option<Vec<usize>> = None;
        let mut perm = order.clone();
        permute_groups(&groups, 0, &mut perm, &mut |p| {
            let mut code = colors.clone();
            code.extend(p.iter().flat_map(|&i| p.iter().map(move |&j| matrix[i * n + j])));
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &LatticeSkeleton) -> bool {
        self.nodes.len() == other.nodes.len()
            && self.arcs.len() == other.arcs.len()
            && self.canonical_form() == other.canonical_form()
    }

    pub fn family_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, SkeletonNode::Family(..))).count()
    }

    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("digraph skeleton {\n  rankdir=BT;\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let shape = match node {
                SkeletonNode::Graded(_) => "ellipse",
                SkeletonNode::Family(..) => "box",
            };
            out.push_str(&format!("  n{i} [label=\"{}\", shape={shape}];\n", node.label(g)));
        }
        for (i, j, kind) in &self.arcs {
            match kind {
                Arc::Contained => out.push_str(&format!("  n{i} -> n{j};\n")),
                Arc::Partial => out.push_str(&format!("  n{i} -> n{j} [style=dotted];\n")),
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Runs `f` on every arrangement of `perm` that permutes each group
/// in place.
fn permute_groups(
    groups: &[std::ops::Range<usize>],
    at: usize,
    perm: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    let Some(range) = groups.get(at) else {
        f(perm);
        return;
    };
    fn heap(
        k: usize,
        range: &std::ops::Range<usize>,
        groups: &[std::ops::Range<usize>],
        at: usize,
        perm: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if k <= 1 {
            permute_groups(groups, at + 1, perm, f);
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, range, groups, at, perm, f);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(range.start + j, range.start + k - 1);
        }
        heap(k - 1, range, groups, at, perm, f);
    }
    heap(range.len(), range, groups, at, perm, f);
}

pub const CLASS_LABELS: [&str; 9] = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"];

/// Canonical graph whose skeleton defines each class, in label order.
pub const CLASS_ANCHORS: [u8; 9] = [2, 3, 6, 10, 12, 14, 1, 5, 9];

fn anchor_forms() -> &'static Vec<Vec<usize>> {
    static FORMS: OnceLock<Vec<Vec<usize>>> = OnceLock::new();
    FORMS.get_or_init(|| {
        CLASS_ANCHORS
            .iter()
            .map(|&id| {
                let g = CanonicalForm16::from_id(id).unwrap().graph();
                LatticeSkeleton::build(&g).canonical_form()
            })
            .collect()
    })
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub class: &'static str,
    pub canonical: CanonicalForm16,
    pub skeleton: LatticeSkeleton,
    pub notes: Vec<String>,
}

/// Labels the ideal lattice of a two-vertex graph by matching its skeleton
/// against the class anchors.
pub fn classify(g: &Graph) -> Result<Classification, TwoVertexError> {
    let canonical = canonicalize16(g)?;
    let skeleton = LatticeSkeleton::build(g);
    let form = skeleton.canonical_form();
    let index = anchor_forms()
        .iter()
        .position(|f| *f == form)
        .ok_or(TwoVertexError::Unmatched)?;
    let class = CLASS_LABELS[index];
    let mut notes = Vec::new();
    if canonical.id == 7 {
        notes.push(format!(
            "canonical graph 7 joins class {class} (same skeleton as canonical graph 3); it does not realize class IX"
        ));
    }
    if class == "IX" {
        notes.push("class IX is realized by canonical graph 9 (a loop on each of two unconnected vertices)".into());
    }
    Ok(Classification {
        class,
        canonical,
        skeleton,
        notes,
    })
}

/// Class of each of the sixteen canonical graphs, by id.
pub fn class_table() -> Vec<(CanonicalForm16, &'static str)> {
    CanonicalForm16::all()
        .map(|c| {
            let label = classify(&c.graph()).expect("canonical graphs classify").class;
            (c, label)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shapes(k: u32) -> Vec<(u32, u32, u32, u32)> {
        enumerate_up_to_iso(k).unwrap().iter().map(|s| s.tuple()).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(shapes(0), vec![(0, 0, 0, 0)]);
        assert_eq!(shapes(1), vec![(1, 0, 0, 0), (0, 0, 1, 0)]);
        assert_eq!(
            shapes(2),
            vec![(2, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (0, 0, 2, 0), (0, 0, 1, 1)]
        );
        assert_eq!(enumerate_up_to_iso(13), Err(TwoVertexError::OverGuard(13)));
    }

    #[test]
    fn closed_form_values() {
        let got: Vec<u128> = (0..6).map(count_closed_form).collect();
        assert_eq!(got, vec![1, 2, 6, 10, 19, 28]);
    }

    #[test]
    fn shape_round_trip() {
        let s = TwoVertexShape::new(3, 1, 2, 1);
        assert_eq!(TwoVertexShape::of_graph(&s.graph()).unwrap(), s);
        let g = Graph::from_lists(&["v"], &[]).unwrap();
        assert_eq!(TwoVertexShape::of_graph(&g), Err(TwoVertexError::WrongVertexCount(1)));
    }

    #[test]
    fn canonicalization_examples() {
        assert_eq!(canonicalize_shape(TwoVertexShape::new(3, 0, 1, 0)).id, 12);
        assert_eq!(canonicalize_shape(TwoVertexShape::new(0, 0, 3, 1)).id, 4);
        assert_eq!(canonicalize_shape(TwoVertexShape::new(0, 0, 1, 3)).id, 4);
        assert_eq!(canonicalize_shape(TwoVertexShape::new(0, 0, 0, 0)).id, 1);
        for c in CanonicalForm16::all() {
            assert_eq!(canonicalize_shape(c.shape), c);
        }
    }

    #[test]
    fn simple_classes() {
        let class = |id| classify(&CanonicalForm16::from_id(id).unwrap().graph()).unwrap().class;
        assert_eq!(class(2), "I");
        assert_eq!(class(1), "VII");
        assert_eq!(class(10), "IV");
        let c7 = classify(&CanonicalForm16::from_id(7).unwrap().graph()).unwrap();
        assert_eq!(c7.class, "II");
        assert_eq!(c7.notes.len(), 1);
    }

    #[test]
    fn canonical_form_ignores_node_order() {
        let g = CanonicalForm16::from_id(9).unwrap().graph();
        let s = LatticeSkeleton::build(&g);
        let n = s.nodes.len();
        let mut rev = s.clone();
        rev.nodes.reverse();
        rev.arcs = s.arcs.iter().map(|&(i, j, k)| (n - 1 - i, n - 1 - j, k)).collect();
        assert!(s.is_isomorphic(&rev));
    }
}
