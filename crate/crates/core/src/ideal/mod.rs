//! Ideals of `L(E)`: the graded-ideal lattice of hereditary saturated sets,
//! vertex extraction for graphs with Condition (K), non-graded witnesses for
//! graphs without it, and canonical forms of λ-reducible ideals.
//!
//! A λ-reducible ideal is generated by vertices together with polynomials
//! `p(λ)` in K1 cycles `λ` (`λ⁰` is the base vertex, `λ⁻¹ = λ*`). Its
//! canonical form keeps `I ∩ E⁰` plus one monic polynomial per K1 cycle
//! that is not based inside `I ∩ E⁰`.

mod extract;
mod json;
mod lattice;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

pub use extract::{extract_vertex, ExtractionWitness};
pub use json::{IdealJson, PolyJson};
pub use lattice::{graded_lattice, GradedLattice};

use crate::element::{Element, Monomial, Scalar};
use crate::error::IdealError;
use crate::graph::{Cycle, Graph, HeredSatSet, Path, VertexClass, VertexId};
use crate::poly::Poly;

/// A generator `p(λ)` as supplied by a caller: any nonzero polynomial on a
/// K1 cycle, with the rotation of the cycle fixed by `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleGenerator {
    pub cycle: Cycle,
    pub base: VertexId,
    pub poly: Poly,
}

impl CycleGenerator {
    pub fn new(g: &Graph, cycle: Cycle, base: VertexId, poly: Poly) -> Result<Self, IdealError> {
        check_k1(g, &cycle)?;
        if !cycle.contains_vertex(g, base) {
            return Err(IdealError::NotCyclePolynomial(format!(
                "base {} is not on {}",
                g.vertex_name(base),
                cycle.display(g)
            )));
        }
        if poly.is_zero() {
            return Err(IdealError::ZeroPolynomial(cycle.display(g)));
        }
        Ok(CycleGenerator { cycle, base, poly })
    }

    /// Recognizes an element of the form `Σ cₖ λᵏ` (negative `k` meaning
    /// powers of `λ*`) for the K1 cycle through the vertex where its terms
    /// start, and shifts it to an ordinary polynomial generating the same
    /// ideal.
    pub fn from_element(x: &Element) -> Result<Self, IdealError> {
        let g = x.graph();
        let reject = || IdealError::NotCyclePolynomial(x.to_string());
        let (first, _) = x.terms().next().ok_or_else(reject)?;
        let base = first.left_vertex();
        let cycle = match g.classify_vertex(base) {
            VertexClass::K1(c) => c,
            _ => return Err(reject()),
        };
        let lambda = cycle.rotation_at(g, base).expect("K1 vertex lies on its cycle");
        let n = lambda.degree();
        let mut exponents: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (m, c) in x.terms() {
            let k = match (m.alpha().is_vertex(), m.beta().is_vertex()) {
                (_, true) => power_of(&lambda, m.alpha(), base).map(|k| k as i64),
                (true, false) => power_of(&lambda, m.beta(), base).map(|k| -(k as i64)),
                _ => None,
            }
            .ok_or_else(reject)?;
            debug_assert!(n > 0);
            exponents.insert(k, c.clone());
        }
        let low = *exponents.keys().next().unwrap();
        let high = *exponents.keys().last().unwrap();
        let mut coeffs = vec![Scalar::zero(); (high - low + 1) as usize];
        for (k, c) in exponents {
            coeffs[(k - low) as usize] = c;
        }
        CycleGenerator::new(g, cycle, base, Poly::new(coeffs))
    }

    /// `Σ cₖ λᵏ` as an algebra element.
    pub fn to_element(&self, g: &Arc<Graph>) -> Element {
        cycle_poly_element(g, &self.cycle, self.base, &self.poly)
    }
}

/// `p` with `p = λᵏ` at `base`, if any.
fn power_of(lambda: &Path, p: &Path, base: VertexId) -> Option<usize> {
    if p.source() != base || !p.degree().is_multiple_of(lambda.degree()) {
        return None;
    }
    let k = p.degree() / lambda.degree();
    (lambda.power(k) == *p).then_some(k)
}

fn cycle_poly_element(g: &Arc<Graph>, cycle: &Cycle, base: VertexId, poly: &Poly) -> Element {
    let lambda = cycle.rotation_at(g, base).expect("base lies on the cycle");
    Element::from_terms(
        g,
        poly.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Monomial::real(lambda.power(k)), c.clone())),
    )
}

fn check_k1(g: &Graph, cycle: &Cycle) -> Result<(), IdealError> {
    if !g.is_cycle(cycle) {
        return Err(IdealError::NotK1Cycle(format!("{:?}", cycle.edges())));
    }
    match g.classify_vertex(cycle.base(g)) {
        VertexClass::K1(c) if &c == cycle => Ok(()),
        _ => Err(IdealError::NotK1Cycle(cycle.display(g))),
    }
}

/// A canonical λ-polynomial: monic, degree at least one, nonzero constant
/// term, on a K1 cycle and based at the cycle's canonical base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclePolynomial {
    cycle: Cycle,
    base: VertexId,
    poly: Poly,
}

impl CyclePolynomial {
    pub fn new(g: &Graph, cycle: Cycle, poly: Poly) -> Result<Self, IdealError> {
        check_k1(g, &cycle)?;
        let ok = poly.is_monic()
            && poly.degree().is_some_and(|d| d >= 1)
            && !poly.coeffs()[0].is_zero();
        if !ok {
            return Err(IdealError::NotCyclePolynomial(format!(
                "{} is not monic with nonzero constant term and positive degree",
                poly
            )));
        }
        let base = cycle.base(g);
        Ok(CyclePolynomial { cycle, base, poly })
    }

    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn to_element(&self, g: &Arc<Graph>) -> Element {
        cycle_poly_element(g, &self.cycle, self.base, &self.poly)
    }
}

/// Generators of a λ-reducible ideal, before canonicalization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LambdaGeneratorSet {
    pub polys: Vec<CycleGenerator>,
    pub vertices: BTreeSet<VertexId>,
}

impl LambdaGeneratorSet {
    /// Sorts elements into vertex generators and cycle polynomials. An
    /// element whose terms are all vertices contributes each vertex, since
    /// `u·(Σ cᵥ v) = cᵤ u`.
    pub fn from_elements<'a>(xs: impl IntoIterator<Item = &'a Element>) -> Result<Self, IdealError> {
        let mut gens = LambdaGeneratorSet::default();
        for x in xs {
            if x.is_zero() {
                continue;
            }
            let vertices: Option<Vec<VertexId>> = x
                .terms()
                .map(|(m, _)| {
                    (m.alpha().is_vertex() && m.beta().is_vertex()).then(|| m.left_vertex())
                })
                .collect();
            match vertices {
                Some(vs) => gens.vertices.extend(vs),
                None => gens.polys.push(CycleGenerator::from_element(x)?),
            }
        }
        Ok(gens)
    }
}

/// The canonical generating set `Λ(I)` of a λ-reducible ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaReduction {
    vertex_part: HeredSatSet,
    polys: BTreeMap<Cycle, CyclePolynomial>,
}

impl LambdaReduction {
    /// The zero ideal.
    pub fn zero() -> LambdaReduction {
        LambdaReduction {
            vertex_part: HeredSatSet::default(),
            polys: BTreeMap::new(),
        }
    }

    /// The graded ideal generated by a hereditary saturated set.
    pub fn graded(h: HeredSatSet) -> LambdaReduction {
        LambdaReduction {
            vertex_part: h,
            polys: BTreeMap::new(),
        }
    }

    /// Assembles a reduction from already-canonical parts, checking that no
    /// polynomial's cycle meets the vertex part and that every exit range
    /// closure is present.
    pub fn from_parts(
        g: &Graph,
        vertex_part: HeredSatSet,
        polys: impl IntoIterator<Item = CyclePolynomial>,
    ) -> Result<Self, IdealError> {
        let mut map = BTreeMap::new();
        for p in polys {
            let c = p.cycle.clone();
            if c.sources(g).iter().any(|&v| vertex_part.contains(v)) {
                return Err(IdealError::NotCyclePolynomial(format!(
                    "{} is based inside the vertex part",
                    c.display(g)
                )));
            }
            let exits = g.hereditary_saturated_closure(g.exit_range(&c)?)?;
            if !exits.is_subset(&vertex_part) {
                return Err(IdealError::NotCyclePolynomial(format!(
                    "vertex part misses the exit range of {}",
                    c.display(g)
                )));
            }
            if map.insert(c.clone(), p).is_some() {
                return Err(IdealError::NotCyclePolynomial(format!(
                    "two polynomials on {}",
                    c.display(g)
                )));
            }
        }
        Ok(LambdaReduction {
            vertex_part,
            polys: map,
        })
    }

    pub fn vertex_part(&self) -> &HeredSatSet {
        &self.vertex_part
    }

    pub fn polys(&self) -> &BTreeMap<Cycle, CyclePolynomial> {
        &self.polys
    }

    /// Graded exactly when no polynomial survives.
    pub fn is_graded(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn generating_set(&self) -> LambdaGeneratorSet {
        LambdaGeneratorSet {
            polys: self
                .polys
                .values()
                .map(|p| CycleGenerator {
                    cycle: p.cycle.clone(),
                    base: p.base,
                    poly: p.poly.clone(),
                })
                .collect(),
            vertices: self.vertex_part.members().clone(),
        }
    }

    pub fn display(&self, g: &Graph) -> String {
        let mut parts: Vec<String> = g.vertex_names_of(self.vertex_part.iter());
        for p in self.polys.values() {
            parts.push(format!("({})[{}]", p.poly, p.cycle.display(g)));
        }
        format!("<{}>", parts.join(", "))
    }

    fn belongs_to(&self, g: &Graph) -> bool {
        self.vertex_part.iter().all(|v| v.index() < g.vertex_count())
            && self.polys.keys().all(|c| check_k1(g, c).is_ok())
    }
}

/// Computes `Λ(I)` for the ideal generated by `gens`.
///
/// Polynomials are grouped by cycle (rotations coincide), replaced by their
/// monic gcd in `K[x, x⁻¹]`, and a unit gcd turns into the cycle's base
/// vertex. The vertex part is the hereditary saturated closure of the
/// vertex generators, those base vertices, and the exit ranges of every
/// cycle still carrying a polynomial (an ideal containing `p(λ)` contains
/// the exit range of `λ`). Polynomials on cycles that meet the vertex part
/// are dropped; the last two steps repeat until stable.
pub fn lambda_reduce(g: &Graph, gens: &LambdaGeneratorSet) -> Result<LambdaReduction, IdealError> {
    let mut per_cycle: BTreeMap<Cycle, Poly> = BTreeMap::new();
    for p in &gens.polys {
        check_k1(g, &p.cycle)?;
        if p.poly.is_zero() {
            return Err(IdealError::ZeroPolynomial(p.cycle.display(g)));
        }
        let stripped = p.poly.strip_x_power();
        let entry = per_cycle.entry(p.cycle.clone()).or_insert_with(Poly::zero);
        *entry = entry.gcd(&stripped);
    }
    for &v in &gens.vertices {
        if v.index() >= g.vertex_count() {
            return Err(crate::error::GraphError::UnknownVertex(format!("#{}", v.index())).into());
        }
    }

    let mut seeds: BTreeSet<VertexId> = gens.vertices.clone();
    per_cycle.retain(|c, p| {
        if p.degree() == Some(0) {
            seeds.insert(c.base(g));
            false
        } else {
            true
        }
    });

    let mut vertex_part;
    loop {
        let mut all = seeds.clone();
        for c in per_cycle.keys() {
            all.extend(g.exit_range(c)?);
        }
        vertex_part = g.hereditary_saturated_closure(all)?;
        let before = per_cycle.len();
        per_cycle.retain(|c, _| !c.sources(g).iter().any(|&v| vertex_part.contains(v)));
        if per_cycle.len() == before {
            break;
        }
    }

    let polys = per_cycle
        .into_iter()
        .map(|(c, p)| {
            let base = c.base(g);
            (c.clone(), CyclePolynomial { cycle: c, base, poly: p })
        })
        .collect();
    Ok(LambdaReduction { vertex_part, polys })
}

/// Whether the ideal with reduction `a` is contained in the one with
/// reduction `b`.
///
/// With equal vertex parts this is polynomial divisibility cycle by cycle,
/// an absent polynomial being zero. Across different vertex parts the rule
/// used is: `a`'s vertex part lies in `b`'s, and each polynomial of `a` is
/// either swallowed by a vertex of `b` on its cycle or divisible by `b`'s
/// polynomial on the same cycle.
pub fn contains(g: &Graph, a: &LambdaReduction, b: &LambdaReduction) -> Result<bool, IdealError> {
    if !a.belongs_to(g) || !b.belongs_to(g) {
        return Err(IdealError::MixedGraphs);
    }
    if !a.vertex_part.is_subset(&b.vertex_part) {
        return Ok(false);
    }
    Ok(a.polys.iter().all(|(c, p)| {
        c.sources(g).iter().any(|&v| b.vertex_part.contains(v))
            || b.polys.get(c).is_some_and(|q| q.poly.divides(&p.poly))
    }))
}

/// `v ∈ I`, read off the canonical vertex part `I ∩ E⁰`.
pub fn vertex_membership(g: &Graph, v: VertexId, i: &LambdaReduction) -> Result<bool, IdealError> {
    if v.index() >= g.vertex_count() {
        return Err(crate::error::GraphError::UnknownVertex(format!("#{}", v.index())).into());
    }
    Ok(i.vertex_part.contains(v))
}

/// A K1 vertex `v`, its cycle `λ`, and the generator `v + λ` of a
/// non-graded ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NongradedWitness {
    pub vertex: VertexId,
    pub cycle: Cycle,
    pub generator: Element,
}

impl NongradedWitness {
    /// `{1 + x}` on the witness cycle, based at the witness vertex.
    pub fn generator_set(&self) -> LambdaGeneratorSet {
        LambdaGeneratorSet {
            polys: vec![CycleGenerator {
                cycle: self.cycle.clone(),
                base: self.vertex,
                poly: Poly::new(vec![Scalar::one(), Scalar::one()]),
            }],
            vertices: BTreeSet::new(),
        }
    }
}

/// `None` when the graph satisfies Condition (K); otherwise the first K1
/// vertex in graph order with its cycle and `v + λ`.
pub fn nongraded_witness(g: &Arc<Graph>) -> Option<NongradedWitness> {
    g.vertices().find_map(|v| match g.classify_vertex(v) {
        VertexClass::K1(cycle) => {
            let lambda = cycle.rotation_at(g, v).expect("K1 vertex lies on its cycle");
            let generator = &Element::vertex(g, v) + &Element::real(g, lambda);
            Some(NongradedWitness {
                vertex: v,
                cycle,
                generator,
            })
        }
        _ => None,
    })
}
