use std::sync::Arc;

use num_traits::Zero;

use crate::element::{Element, Monomial, Scalar};
use crate::error::IdealError;
use crate::graph::{Graph, Path, VertexClass, VertexId};

/// Factors with `left[0]⋯left[k]· a ·right[0]⋯right[m] = scalar · vertex`.
///
/// Both lists are in product order, so the factor applied last on the left
/// comes first in `left`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionWitness {
    pub left: Vec<Monomial>,
    pub right: Vec<Monomial>,
    pub vertex: VertexId,
    pub scalar: Scalar,
}

impl ExtractionWitness {
    pub fn apply(&self, a: &Element) -> Element {
        let g = a.graph();
        let mut x = a.clone();
        for m in self.left.iter().rev() {
            x = &Element::monomial(g, m.clone()) * &x;
        }
        for m in &self.right {
            x = &x * &Element::monomial(g, m.clone());
        }
        x
    }

    pub fn verify(&self, a: &Element) -> bool {
        !self.scalar.is_zero()
            && self.apply(a) == Element::vertex(a.graph(), self.vertex).scale(&self.scalar)
    }

    pub fn display(&self, g: &Graph) -> String {
        let show = |ms: &[Monomial]| -> String {
            ms.iter().map(|m| format!("[{}]", m.display(g))).collect::<Vec<_>>().join("")
        };
        format!(
            "{} (a) {} = {}*{}",
            show(&self.left),
            show(&self.right),
            self.scalar,
            g.vertex_name(self.vertex)
        )
    }
}

struct Trace<'a> {
    g: &'a Arc<Graph>,
    x: Element,
    left: Vec<Monomial>,
    right: Vec<Monomial>,
}

impl<'a> Trace<'a> {
    fn times_left(&mut self, m: Monomial) {
        self.x = &Element::monomial(self.g, m.clone()) * &self.x;
        self.left.insert(0, m);
    }

    fn times_right(&mut self, m: Monomial) {
        self.x = &self.x * &Element::monomial(self.g, m.clone());
        self.right.push(m);
    }

    fn try_right(&self, p: &Path) -> Element {
        &self.x * &Element::real(self.g, p.clone())
    }

    /// `Some((w, c))` when the element is `c·w`.
    fn as_vertex_multiple(&self) -> Option<(VertexId, Scalar)> {
        if self.x.len() != 1 {
            return None;
        }
        let (m, c) = self.x.terms().next()?;
        (m.alpha().is_vertex() && m.beta().is_vertex()).then(|| (m.left_vertex(), c.clone()))
    }
}

/// Multiplies a nonzero element down to a nonzero multiple of a vertex.
///
/// 1. With terms ordered by descending ghost degree, right-multiply by the
///    ghost path `β₁` of the first term (by `r(α₁)` when there are no
///    ghosts). Should this annihilate the element part way, (CK2) at the
///    vertex reached guarantees a sibling edge that does not, and the walk
///    continues from there. The result is a combination of real paths
///    ending at one vertex `w`.
/// 2. Left-multiply by `ν₁*` for the shortest such path `ν₁`, leaving
///    `c₁w` plus closed paths at `w`.
/// 3. If closed paths remain, take the two shortest closed simple paths
///    `η₁ ≠ η₂` at `w`. Conjugating by `η₁` removes every term not starting
///    with `η₁`; if none is removed, `η₂*` kills them all at once and
///    right multiplication by `η₂` restores `c₁w`.
///
/// Fails when step 3 meets a K1 vertex, where no second closed simple path
/// exists.
pub fn extract_vertex(a: &Element) -> Result<ExtractionWitness, IdealError> {
    let g = a.graph();
    if a.is_zero() {
        return Err(IdealError::Extraction("zero element".into()));
    }
    let mut t = Trace {
        g,
        x: a.clone(),
        left: Vec::new(),
        right: Vec::new(),
    };
    if let Some((vertex, scalar)) = t.as_vertex_multiple() {
        return Ok(ExtractionWitness {
            left: Vec::new(),
            right: Vec::new(),
            vertex,
            scalar,
        });
    }

    // Step 1: clear ghost parts.
    let first = t.x.terms().next().map(|(m, _)| m.clone()).unwrap();
    if first.ghost_degree() == 0 {
        t.times_right(Monomial::vertex(first.alpha().range()));
    } else if !t.try_right(first.beta()).is_zero() {
        t.times_right(Monomial::real(first.beta().clone()));
    } else {
        while t.x.gdeg().map_err(IdealError::from)? > 0 {
            let lead = t.x.terms().next().map(|(m, _)| m.clone()).unwrap();
            let e = lead.beta().edges()[0];
            let w = g.src(e);
            let mut candidates = vec![e];
            candidates.extend(g.out_edges(w).iter().copied().filter(|&f| f != e));
            let step = candidates
                .into_iter()
                .map(|f| g.edge_path(&[f]).expect("single edge is a path"))
                .find(|p| !t.try_right(p).is_zero())
                .ok_or_else(|| IdealError::Extraction("every edge out of a vertex annihilated the element".into()))?;
            t.times_right(Monomial::real(step));
        }
    }

    // Step 2: left-multiply by the ghost of the shortest path.
    let shortest = t
        .x
        .terms()
        .map(|(m, _)| m.alpha().clone())
        .min_by(|p, q| p.degree().cmp(&q.degree()).then_with(|| p.cmp(q)))
        .unwrap();
    let w = shortest.range();
    t.times_left(Monomial::ghost(shortest));
    let c1 = t.x.coefficient(&Monomial::vertex(w));
    debug_assert!(!c1.is_zero());

    // Step 3: strip closed paths at w.
    if t.as_vertex_multiple().is_none() {
        match g.classify_vertex(w) {
            VertexClass::K2 => {}
            VertexClass::K1(_) => {
                return Err(IdealError::K1Encountered(g.vertex_name(w).to_string()))
            }
            VertexClass::K0 => {
                return Err(IdealError::Extraction(format!(
                    "closed paths at K0 vertex {}",
                    g.vertex_name(w)
                )))
            }
        }
        let bound = g.edge_count() * (g.vertex_count() + 1);
        let etas = g.closed_simple_paths(w, bound, 2);
        let [eta1, eta2] = <[Path; 2]>::try_from(etas).map_err(|_| {
            IdealError::Extraction(format!(
                "fewer than two closed simple paths at {} within length {}",
                g.vertex_name(w),
                bound
            ))
        })?;
        while t.as_vertex_multiple().is_none() {
            let conj = &Element::ghost(g, eta1.clone()) * &t.x;
            if conj.len() == t.x.len() {
                t.times_left(Monomial::ghost(eta2.clone()));
                t.times_right(Monomial::real(eta2.clone()));
                break;
            }
            t.times_left(Monomial::ghost(eta1.clone()));
            t.times_right(Monomial::real(eta1.clone()));
        }
    }

    let (vertex, scalar) = t
        .as_vertex_multiple()
        .ok_or_else(|| IdealError::Extraction(format!("stuck at {}", t.x)))?;
    let witness = ExtractionWitness {
        left: t.left,
        right: t.right,
        vertex,
        scalar,
    };
    if !witness.verify(a) {
        return Err(IdealError::Extraction("witness failed to verify".into()));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::scalar;

    fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Arc<Graph> {
        Arc::new(Graph::from_lists(vs, es).unwrap())
    }

    #[test]
    fn two_petal_rose_follows_the_eta_branch() {
        let g = graph(&["v"], &[("e", "v", "v"), ("f", "v", "v")]);
        let a = Element::parse(&g, "v + e").unwrap();
        let w = extract_vertex(&a).unwrap();
        assert_eq!(w.vertex, g.vertex("v").unwrap());
        assert_eq!(w.scalar, scalar(1));
        let f = g.edge_path(&[g.edge("f").unwrap()]).unwrap();
        assert_eq!(w.left.first(), Some(&Monomial::ghost(f.clone())));
        assert_eq!(w.right.last(), Some(&Monomial::real(f)));
        assert!(w.verify(&a));
    }

    #[test]
    fn vertex_multiples_are_trivial() {
        let g = graph(&["u", "v"], &[("a", "u", "v")]);
        let a = Element::parse(&g, "-7/2*v").unwrap();
        let w = extract_vertex(&a).unwrap();
        assert!(w.left.is_empty() && w.right.is_empty());
        assert_eq!(w.scalar, crate::element::ratio(-7, 2));
        assert_eq!(w.vertex, g.vertex("v").unwrap());
    }

    #[test]
    fn single_ck1_step() {
        let g = graph(&["u", "v"], &[("a", "u", "v"), ("b", "u", "v"), ("c", "v", "u")]);
        let a = Element::parse(&g, "a").unwrap();
        let w = extract_vertex(&a).unwrap();
        let ap = g.edge_path(&[g.edge("a").unwrap()]).unwrap();
        assert_eq!(w.left, vec![Monomial::ghost(ap)]);
        assert_eq!(w.vertex, g.vertex("v").unwrap());
        assert_eq!(w.scalar, scalar(1));
    }

    #[test]
    fn annihilating_ghost_walk_recovers() {
        // a·β₁ = ef − ef = 0, so the walk has to branch.
        let g = graph(&["v"], &[("e", "v", "v"), ("f", "v", "v")]);
        let a = Element::parse(&g, "e.f.f*'.e*' - v").unwrap();
        assert!((&a * &Element::parse(&g, "e.f").unwrap()).is_zero());
        let w = extract_vertex(&a).unwrap();
        assert!(w.verify(&a));
    }

    #[test]
    fn errors() {
        let g = graph(&["v"], &[("e", "v", "v")]);
        assert!(matches!(
            extract_vertex(&Element::zero(&g)),
            Err(IdealError::Extraction(_))
        ));
        let a = Element::parse(&g, "v + e").unwrap();
        assert_eq!(extract_vertex(&a), Err(IdealError::K1Encountered("v".into())));
    }
}
