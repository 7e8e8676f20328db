//! Elements of the Leavitt path algebra `L(E)` over the rationals.
//!
//! Every element is a finite combination of monomials `αβ*` with
//! `r(α) = r(β)`. Elements are kept in a normal form: for each non-sink
//! vertex `w` the least outgoing edge `γ(w)` is *special*, and no monomial
//! may end in `γ(w)` on both sides (`…γ(w)γ(w)*…`). The (CK2) relation
//! `w = Σ ee*`, oriented as
//!
//! ```text
//! α'γ(w)γ(w)*β'*  →  α'β'* − Σ_{f ≠ γ(w), s(f) = w} α'f f*β'*
//! ```
//!
//! removes every such turn; each step shortens both paths at the turn, so
//! rewriting terminates. The relations (V), (E1), (E2) and (CK1) are built
//! into monomial multiplication.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ElementError;
use crate::graph::{Graph, Path, VertexId};

pub use parse::parse_rational;

/// Exact rational coefficients.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The monomial `αβ*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: Path,
    beta: Path,
}

impl Monomial {
    pub fn new(alpha: Path, beta: Path) -> Result<Monomial, ElementError> {
        if alpha.range() != beta.range() {
            return Err(crate::error::GraphError::NotComposable(
                "r(α) ≠ r(β) in αβ*".to_string(),
            )
            .into());
        }
        Ok(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            alpha: Path::vertex(v),
            beta: Path::vertex(v),
        }
    }

    /// The real path `p`, i.e. `p · r(p)*`.
    pub fn real(p: Path) -> Monomial {
        let beta = Path::vertex(p.range());
        Monomial { alpha: p, beta }
    }

    /// The ghost path `p*`.
    pub fn ghost(p: Path) -> Monomial {
        let alpha = Path::vertex(p.range());
        Monomial { alpha, beta: p }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    /// `deg(α) − deg(β)`, the grading degree.
    pub fn degree(&self) -> i64 {
        self.alpha.degree() as i64 - self.beta.degree() as i64
    }

    pub fn ghost_degree(&self) -> usize {
        self.beta.degree()
    }

    /// `(αβ*)* = βα*`.
    pub fn star(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// Source on the left, `s(α)`.
    pub fn left_vertex(&self) -> VertexId {
        self.alpha.source()
    }

    /// Source on the right, `s(β)`.
    pub fn right_vertex(&self) -> VertexId {
        self.beta.source()
    }

    /// The product `(αβ*)(γδ*)` as a single monomial, or `None` when (CK1)
    /// or (V) makes it vanish. The result may still need normalizing.
    pub(crate) fn raw_product(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(rest) = other.alpha.strip_prefix(&self.beta) {
            Some(Monomial {
                alpha: self.alpha.concat(&rest),
                beta: other.beta.clone(),
            })
        } else {
            self.beta.strip_prefix(&other.alpha).map(|rest| Monomial {
                alpha: self.alpha.clone(),
                beta: other.beta.concat(&rest),
            })
        }
    }

    /// Whether the turn `…γ(w)γ(w)*…` is present.
    fn reducible_turn(&self, g: &Graph) -> bool {
        match (self.alpha.last_edge(), self.beta.last_edge()) {
            (Some(a), Some(b)) => a == b && g.special_edge(g.src(a)) == Some(a),
            _ => false,
        }
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.alpha.is_vertex() && self.beta.is_vertex() {
            return g.vertex_name(self.alpha.source()).to_string();
        }
        let mut parts: Vec<String> = self
            .alpha
            .edges()
            .iter()
            .map(|&e| g.edge_name(e).to_string())
            .collect();
        parts.extend(
            self.beta
                .edges()
                .iter()
                .rev()
                .map(|&e| format!("{}*'", g.edge_name(e))),
        );
        parts.join(".")
    }
}

/// Terms are listed by descending ghost degree, then ascending degree, then
/// lexicographically by paths.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .ghost_degree()
            .cmp(&self.ghost_degree())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `L(E)` in normal form.
#[derive(Clone)]
pub struct Element {
    graph: Arc<Graph>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self)
    }
}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn accumulate(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// Rewrites `m` with the oriented (CK2) rule until no special turn remains
/// and adds the result, times `c`, into `terms`.
fn reduce_into(g: &Graph, terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    let mut stack = vec![(m, c)];
    while let Some((m, c)) = stack.pop() {
        if !m.reducible_turn(g) {
            accumulate(terms, m, c);
            continue;
        }
        let special = m.alpha.last_edge().unwrap();
        let w = g.src(special);
        let alpha = m.alpha.pop(g);
        let beta = m.beta.pop(g);
        for &f in g.out_edges(w).iter().filter(|&&f| f != special) {
            stack.push((
                Monomial {
                    alpha: alpha.push(g, f),
                    beta: beta.push(g, f),
                },
                -c.clone(),
            ));
        }
        stack.push((Monomial { alpha, beta }, c));
    }
}

impl Element {
    pub fn zero(graph: &Arc<Graph>) -> Element {
        Element {
            graph: Arc::clone(graph),
            terms: BTreeMap::new(),
        }
    }

    /// Sums arbitrary monomials and brings the result into normal form.
    pub fn from_terms(
        graph: &Arc<Graph>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Element {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            reduce_into(graph, &mut out, m, c);
        }
        Element {
            graph: Arc::clone(graph),
            terms: out,
        }
    }

    pub fn monomial(graph: &Arc<Graph>, m: Monomial) -> Element {
        Element::from_terms(graph, [(m, Scalar::one())])
    }

    pub fn vertex(graph: &Arc<Graph>, v: VertexId) -> Element {
        Element::monomial(graph, Monomial::vertex(v))
    }

    pub fn real(graph: &Arc<Graph>, p: Path) -> Element {
        Element::monomial(graph, Monomial::real(p))
    }

    pub fn ghost(graph: &Arc<Graph>, p: Path) -> Element {
        Element::monomial(graph, Monomial::ghost(p))
    }

    /// `1 = Σ_v v`.
    pub fn unit(graph: &Arc<Graph>) -> Element {
        Element::from_terms(
            graph,
            graph.vertices().map(|v| (Monomial::vertex(v), Scalar::one())),
        )
    }

    pub fn parse(graph: &Arc<Graph>, text: &str) -> Result<Element, ElementError> {
        parse::parse_element(graph, text)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// Terms in normal form, in term order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-applies the rewrite system. Elements are always stored in normal
    /// form, so this is the identity; it exists for callers that build raw
    /// term lists through [`Element::from_terms`] and want to assert it.
    pub fn normalize(&self) -> Element {
        Element::from_terms(
            &self.graph,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn check(&self, other: &Element) -> Result<(), ElementError> {
        if same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(ElementError::MixedGraphs)
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element, ElementError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Element {
            graph: Arc::clone(&self.graph),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element, ElementError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element, ElementError> {
        self.check(other)?;
        let g = &self.graph;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = m1.raw_product(m2) {
                    reduce_into(g, &mut terms, m, c1 * c2);
                }
            }
        }
        Ok(Element {
            graph: Arc::clone(g),
            terms,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(&self.graph);
        }
        Element {
            graph: Arc::clone(&self.graph),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn neg_ref(&self) -> Element {
        Element {
            graph: Arc::clone(&self.graph),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), -x)).collect(),
        }
    }

    /// `x*`, the involution fixing vertices and swapping edges with ghosts.
    pub fn star(&self) -> Element {
        Element::from_terms(
            &self.graph,
            self.terms.iter().map(|(m, c)| (m.star(), c.clone())),
        )
    }

    /// Splits by `deg(α) − deg(β)`.
    pub fn graded_components(&self) -> GradedDecomposition {
        let mut components: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            components
                .entry(m.degree())
                .or_insert_with(|| Element::zero(&self.graph))
                .terms
                .insert(m.clone(), c.clone());
        }
        GradedDecomposition { components }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// The degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.terms.keys().next().map(Monomial::degree)
        }
    }

    /// Degree in ghost edges: the longest `β` among normal-form terms.
    pub fn gdeg(&self) -> Result<usize, ElementError> {
        self.terms
            .keys()
            .map(Monomial::ghost_degree)
            .max()
            .ok_or(ElementError::ZeroElement)
    }

    /// `x · v` for each vertex `v`, as used to restrict an element on the right.
    pub fn right_vertex(&self, v: VertexId) -> Element {
        self * &Element::vertex(&self.graph, v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                write!(f, "{}*", magnitude)?;
            }
            f.write_str(&m.display(&self.graph))?;
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Element> for &Element {
            type Output = Element;

            /// Panics if the operands belong to different graphs; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs).expect("operands over different graphs")
            }
        }

        impl $trait<Element> for Element {
            type Output = Element;

            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.neg_ref()
    }
}

impl Neg for Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.neg_ref()
    }
}

/// Product of two monomials, normalized.
pub fn mul_monomials(graph: &Arc<Graph>, a: &Monomial, b: &Monomial) -> Element {
    match a.raw_product(b) {
        Some(m) => Element::monomial(graph, m),
        None => Element::zero(graph),
    }
}

/// Homogeneous components keyed by degree; zero components are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub components: BTreeMap<i64, Element>,
}

impl GradedDecomposition {
    pub fn sum(&self, graph: &Arc<Graph>) -> Element {
        self.components
            .values()
            .fold(Element::zero(graph), |acc, x| &acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Arc<Graph> {
        Arc::new(Graph::from_lists(vs, es).unwrap())
    }

    fn r1() -> Arc<Graph> {
        graph(&["v"], &[("e", "v", "v")])
    }

    fn r2() -> Arc<Graph> {
        graph(&["v"], &[("e", "v", "v"), ("f", "v", "v")])
    }

    fn el(g: &Arc<Graph>, s: &str) -> Element {
        Element::parse(g, s).unwrap()
    }

    #[test]
    fn ck1_products() {
        let g = r1();
        assert_eq!(el(&g, "e*'") * el(&g, "e"), el(&g, "v"));
        let g = r2();
        assert!((el(&g, "e*'") * el(&g, "f")).is_zero());
    }

    #[test]
    fn ck2_with_single_edge_collapses() {
        let g = r1();
        let prod = el(&g, "e") * el(&g, "e*'");
        assert_eq!(prod.to_string(), "v");
    }

    #[test]
    fn ck2_rewrite_in_two_petal_rose() {
        let g = r2();
        let x = el(&g, "e") * el(&g, "e*'");
        assert_eq!(x.to_string(), "-f.f*' + v");
        assert_eq!(x, el(&g, "v - f.f*'"));
        let sum = &(&el(&g, "e.e*'") + &el(&g, "f.f*'")) - &el(&g, "v");
        assert!(sum.is_zero());
        let n = el(&g, "v + 3*e.f*'");
        assert_eq!(n.normalize(), n);
    }

    #[test]
    fn vertex_relations() {
        let g = r1();
        assert_eq!(el(&g, "v") * el(&g, "v"), el(&g, "v"));
        let l2 = graph(&["u", "v"], &[("a", "u", "v")]);
        assert!((el(&l2, "u") * el(&l2, "v")).is_zero());
        assert_eq!(el(&l2, "u") * el(&l2, "a"), el(&l2, "a"));
        assert!((el(&l2, "v") * el(&l2, "a")).is_zero());
    }

    #[test]
    fn distributes_over_sums() {
        let g = r2();
        assert_eq!(el(&g, "v + e") * el(&g, "f"), el(&g, "f + e.f"));
    }

    #[test]
    fn grading() {
        let g = r1();
        let x = el(&g, "v + e");
        let parts = x.graded_components();
        assert_eq!(parts.components.len(), 2);
        assert_eq!(parts.components[&0], el(&g, "v"));
        assert_eq!(parts.components[&1], el(&g, "e"));
        assert_eq!(parts.sum(&g), x);
        assert!(Element::zero(&g).graded_components().components.is_empty());
        assert_eq!(el(&g, "e.e").graded_components().components.len(), 1);
    }

    #[test]
    fn ghost_degree() {
        let g = r1();
        assert_eq!(el(&g, "v").gdeg(), Ok(0));
        assert_eq!(el(&g, "e*'").gdeg(), Ok(1));
        let x = el(&g, "e.e*'.e*'.e*'.e");
        assert_eq!(x, el(&g, "e*'"));
        assert_eq!(x.gdeg(), Ok(1));
        assert_eq!(Element::zero(&g).gdeg(), Err(ElementError::ZeroElement));
    }

    #[test]
    fn term_order_is_ghost_degree_descending() {
        let g = r2();
        let x = el(&g, "v + e + f*' + e.f*'.e*'");
        let ghost: Vec<usize> = x.terms().map(|(m, _)| m.ghost_degree()).collect();
        assert_eq!(ghost, vec![2, 1, 0, 0]);
        assert_eq!(x.to_string(), "e.f*'.e*' + f*' + v + e");
    }

    #[test]
    fn mixed_graphs_are_rejected() {
        let a = el(&r1(), "v");
        let b = el(&r2(), "v");
        assert_eq!(a.checked_mul(&b), Err(ElementError::MixedGraphs));
        assert_eq!(a.checked_add(&b), Err(ElementError::MixedGraphs));
    }

    #[test]
    fn star_is_an_anti_involution() {
        let g = r2();
        let x = el(&g, "2*e.f*' + v");
        let y = el(&g, "f - e*'");
        assert_eq!(x.star().star(), x);
        assert_eq!((&x * &y).star(), &y.star() * &x.star());
    }
}
