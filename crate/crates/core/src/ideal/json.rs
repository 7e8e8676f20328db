use serde::{Deserialize, Serialize};

use super::{CycleGenerator, LambdaGeneratorSet, LambdaReduction};
use crate::element::parse_rational;
use crate::error::IdealError;
use crate::graph::Graph;
use crate::poly::Poly;

/// Wire form of an ideal: vertex generators and cycle polynomials.
///
/// ```json
/// {"vertices": ["u"], "polys": [{"cycle": ["e"], "base": "v", "coeffs": ["1", "0", "1"]}]}
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default)]
    pub polys: Vec<PolyJson>,
}

/// Coefficients ascend in degree and are written as rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub cycle: Vec<String>,
    pub base: String,
    pub coeffs: Vec<String>,
}

impl IdealJson {
    pub fn parse(text: &str) -> Result<IdealJson, IdealError> {
        serde_json::from_str(text).map_err(|e| IdealError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn to_generators(&self, g: &Graph) -> Result<LambdaGeneratorSet, IdealError> {
        let mut gens = LambdaGeneratorSet::default();
        for v in &self.vertices {
            gens.vertices.insert(g.vertex(v)?);
        }
        for p in &self.polys {
            let names: Vec<&str> = p.cycle.iter().map(String::as_str).collect();
            let cycle = g.cycle_from_names(&names)?;
            let base = g.vertex(&p.base)?;
            let coeffs = p
                .coeffs
                .iter()
                .map(|c| parse_rational(c).ok_or_else(|| IdealError::BadRational(c.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            gens.polys.push(CycleGenerator::new(g, cycle, base, Poly::new(coeffs))?);
        }
        Ok(gens)
    }

    pub fn from_generators(g: &Graph, gens: &LambdaGeneratorSet) -> IdealJson {
        IdealJson {
            vertices: g.vertex_names_of(gens.vertices.iter().copied()),
            polys: gens
                .polys
                .iter()
                .map(|p| {
                    let rotation = p.cycle.rotation_at(g, p.base).expect("base lies on the cycle");
                    PolyJson {
                        cycle: g.path_names(&rotation).into_iter().map(String::from).collect(),
                        base: g.vertex_name(p.base).to_string(),
                        coeffs: p.poly.coeffs().iter().map(|c| c.to_string()).collect(),
                    }
                })
                .collect(),
        }
    }

    pub fn from_reduction(g: &Graph, r: &LambdaReduction) -> IdealJson {
        IdealJson::from_generators(g, &r.generating_set())
    }
}
