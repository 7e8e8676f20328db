use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use lpa_core::ideal::{self, IdealJson, LambdaGeneratorSet, LambdaReduction};
use lpa_core::two_vertex::{self, SkeletonNode};
use lpa_core::{Element, Graph, HeredSatSet, VertexClass};
use serde_json::{json, Value};

use crate::{Format, GraphArg, UsageError};

fn load_graph(arg: &GraphArg) -> Result<Arc<Graph>> {
    let text = fs::read_to_string(&arg.graph).with_context(|| format!("reading {}", arg.graph.display()))?;
    let g = Graph::parse_text(&text).with_context(|| format!("parsing {}", arg.graph.display()))?;
    Ok(Arc::new(g))
}

fn load_ideal(g: &Graph, path: &Path) -> Result<LambdaGeneratorSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let gens = IdealJson::parse(&text)
        .and_then(|j| j.to_generators(g))
        .with_context(|| format!("reading ideal {}", path.display()))?;
    Ok(gens)
}

fn parse(g: &Arc<Graph>, text: &str) -> Result<Element> {
    Element::parse(g, text).with_context(|| format!("parsing element `{text}`"))
}

fn no_dot(fmt: Format, command: &str) -> Result<()> {
    if fmt == Format::Dot {
        return Err(UsageError(format!("{command} has no dot output")).into());
    }
    Ok(())
}

fn to_json(v: Value) -> Result<String> {
    Ok(serde_json::to_string(&v)?)
}

fn names(g: &Graph, h: &HeredSatSet) -> Vec<String> {
    g.vertex_names_of(h.iter())
}

pub fn check_k(arg: &GraphArg, fmt: Format) -> Result<String> {
    no_dot(fmt, "check-k")?;
    let g = load_graph(arg)?;
    let k = g.condition_k();
    let k1 = g.vertex_names_of(k.k1_vertices.iter().copied());
    match fmt {
        Format::Json => to_json(json!({"condition_k": k.holds, "k1_vertices": k1})),
        _ if k.holds => Ok("true".into()),
        _ => Ok(format!("false: K1 vertices [{}]", k1.join(", "))),
    }
}

pub fn classify_vertex(arg: &GraphArg, vertex: &str, fmt: Format) -> Result<String> {
    no_dot(fmt, "classify-vertex")?;
    let g = load_graph(arg)?;
    let v = g.vertex(vertex)?;
    let class = g.classify_vertex(v);
    let cycle = match &class {
        VertexClass::K1(c) => {
            let rotation = c.rotation_at(&g, v).expect("K1 vertex lies on its cycle");
            Some(g.path_names(&rotation).into_iter().map(String::from).collect::<Vec<_>>())
        }
        _ => None,
    };
    match fmt {
        Format::Json => to_json(json!({"vertex": vertex, "class": class.label(), "cycle": cycle})),
        _ => Ok(match cycle {
            Some(c) => format!("{} <{}>", class.label(), c.join(",")),
            None => class.label().to_string(),
        }),
    }
}

pub fn closure(arg: &GraphArg, vertices: &str, fmt: Format) -> Result<String> {
    no_dot(fmt, "closure")?;
    let g = load_graph(arg)?;
    let xs = vertices
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| g.vertex(s))
        .collect::<Result<Vec<_>, _>>()?;
    let t = g.hereditary_saturated_closure(xs)?;
    match fmt {
        Format::Json => to_json(json!({"closure": names(&g, &t)})),
        _ => Ok(t.display(&g)),
    }
}

pub fn hs_sets(arg: &GraphArg, fmt: Format) -> Result<String> {
    no_dot(fmt, "hs-sets")?;
    let g = load_graph(arg)?;
    let sets = g.all_hereditary_saturated_sets();
    match fmt {
        Format::Json => to_json(json!(sets.iter().map(|h| names(&g, h)).collect::<Vec<_>>())),
        _ => Ok(sets.iter().map(|h| h.display(&g) + "\n").collect()),
    }
}

pub fn graded_lattice(arg: &GraphArg, fmt: Format) -> Result<String> {
    let g = load_graph(arg)?;
    let l = ideal::graded_lattice(&g);
    match fmt {
        Format::Dot => Ok(l.to_dot(&g)),
        Format::Json => to_json(json!({
            "nodes": l.nodes.iter().map(|h| names(&g, h)).collect::<Vec<_>>(),
            "covers": l.covers,
        })),
        Format::Text => {
            let mut out = String::new();
            for (i, j) in &l.covers {
                out.push_str(&format!("{} < {}\n", l.nodes[*i].display(&g), l.nodes[*j].display(&g)));
            }
            if l.covers.is_empty() {
                out.push_str(&l.nodes[0].display(&g));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

pub fn normalize(arg: &GraphArg, element: &str, fmt: Format) -> Result<String> {
    no_dot(fmt, "normalize")?;
    let g = load_graph(arg)?;
    let x = parse(&g, element)?;
    match fmt {
        Format::Json => to_json(json!({"normal_form": x.to_string(), "gdeg": x.gdeg().ok()})),
        _ => Ok(x.to_string()),
    }
}

pub fn mul(arg: &GraphArg, left: &str, right: &str, fmt: Format) -> Result<String> {
    no_dot(fmt, "mul")?;
    let g = load_graph(arg)?;
    let x = &parse(&g, left)? * &parse(&g, right)?;
    match fmt {
        Format::Json => to_json(json!({"product": x.to_string()})),
        _ => Ok(x.to_string()),
    }
}

pub fn grade(arg: &GraphArg, element: &str, fmt: Format) -> Result<String> {
    no_dot(fmt, "grade")?;
    let g = load_graph(arg)?;
    let x = parse(&g, element)?;
    let parts = x.graded_components().components;
    match fmt {
        Format::Json => {
            let map: serde_json::Map<String, Value> =
                parts.iter().map(|(d, c)| (d.to_string(), json!(c.to_string()))).collect();
            to_json(json!({"components": map, "homogeneous": x.is_homogeneous()}))
        }
        _ => Ok(parts.iter().map(|(d, c)| format!("{d}: {c}\n")).collect()),
    }
}

fn reduction_json(g: &Graph, r: &LambdaReduction) -> Value {
    let j = IdealJson::from_reduction(g, r);
    json!({"vertices": j.vertices, "polys": j.polys, "graded": r.is_graded()})
}

pub fn lambda_reduce(arg: &GraphArg, ideal_file: Option<&Path>, elements: &[String], fmt: Format) -> Result<String> {
    no_dot(fmt, "lambda-reduce")?;
    let g = load_graph(arg)?;
    let mut gens = match ideal_file {
        Some(p) => load_ideal(&g, p)?,
        None => LambdaGeneratorSet::default(),
    };
    if ideal_file.is_none() && elements.is_empty() {
        return Err(UsageError("lambda-reduce needs --ideal or elements".into()).into());
    }
    let xs = elements.iter().map(|s| parse(&g, s)).collect::<Result<Vec<_>>>()?;
    let more = LambdaGeneratorSet::from_elements(&xs)?;
    gens.vertices.extend(more.vertices);
    gens.polys.extend(more.polys);
    let r = ideal::lambda_reduce(&g, &gens)?;
    match fmt {
        Format::Json => to_json(reduction_json(&g, &r)),
        _ => Ok(format!("{}{}", r.display(&g), if r.is_graded() { " graded" } else { "" })),
    }
}

pub fn contains(arg: &GraphArg, files: &[PathBuf], fmt: Format) -> Result<String> {
    no_dot(fmt, "contains")?;
    if files.len() != 2 {
        return Err(UsageError(format!("contains takes two --ideal files, got {}", files.len())).into());
    }
    let g = load_graph(arg)?;
    let a = ideal::lambda_reduce(&g, &load_ideal(&g, &files[0])?)?;
    let b = ideal::lambda_reduce(&g, &load_ideal(&g, &files[1])?)?;
    let answer = ideal::contains(&g, &a, &b)?;
    match fmt {
        Format::Json => to_json(json!({"contains": answer, "left": reduction_json(&g, &a), "right": reduction_json(&g, &b)})),
        _ => Ok(answer.to_string()),
    }
}

pub fn extract_vertex(arg: &GraphArg, element: &str, fmt: Format) -> Result<String> {
    no_dot(fmt, "extract-vertex")?;
    let g = load_graph(arg)?;
    let a = parse(&g, element)?;
    let w = ideal::extract_vertex(&a)?;
    let show = |ms: &[lpa_core::Monomial]| ms.iter().map(|m| m.display(&g)).collect::<Vec<_>>();
    match fmt {
        Format::Json => to_json(json!({
            "left": show(&w.left),
            "right": show(&w.right),
            "vertex": g.vertex_name(w.vertex),
            "scalar": w.scalar.to_string(),
        })),
        _ => Ok(format!(
            "left [{}] right [{}] gives {}*{}",
            show(&w.left).join(", "),
            show(&w.right).join(", "),
            w.scalar,
            g.vertex_name(w.vertex)
        )),
    }
}

pub fn nongraded_witness(arg: &GraphArg, fmt: Format) -> Result<String> {
    no_dot(fmt, "nongraded-witness")?;
    let g = load_graph(arg)?;
    let w = ideal::nongraded_witness(&g);
    match (fmt, w) {
        (Format::Json, None) => to_json(Value::Null),
        (_, None) => Ok("none: every ideal is graded".into()),
        (Format::Json, Some(w)) => to_json(json!({
            "vertex": g.vertex_name(w.vertex),
            "cycle": w.cycle.display(&g),
            "generator": w.generator.to_string(),
        })),
        (_, Some(w)) => Ok(format!(
            "{} on {}: {}",
            g.vertex_name(w.vertex),
            w.cycle.display(&g),
            w.generator
        )),
    }
}

pub fn count2(edges: u32, verify: bool, fmt: Format) -> Result<String> {
    no_dot(fmt, "count2")?;
    let formula = two_vertex::count_closed_form(edges as u64);
    let listed = if verify {
        Some(two_vertex::enumerate_up_to_iso(edges)?.len() as u128)
    } else {
        None
    };
    if let Some(n) = listed {
        if n != formula {
            bail!("{formula} (formula) != {n} (enumeration)");
        }
    }
    match (fmt, listed) {
        (Format::Json, _) => to_json(json!({"edges": edges, "formula": formula as u64, "enumeration": listed.map(|n| n as u64)})),
        (_, Some(n)) => Ok(format!("{formula} (formula) == {n} (enumeration)")),
        (_, None) => Ok(formula.to_string()),
    }
}

pub fn enum2(edges: u32, fmt: Format) -> Result<String> {
    no_dot(fmt, "enum2")?;
    let shapes = two_vertex::enumerate_up_to_iso(edges)?;
    match fmt {
        Format::Json => to_json(json!(shapes.iter().map(|s| s.tuple()).collect::<Vec<_>>())),
        _ => Ok(shapes.iter().map(|s| format!("{s}\n")).collect()),
    }
}

pub fn classify2(arg: &GraphArg, fmt: Format) -> Result<String> {
    let g = load_graph(arg)?;
    let c = two_vertex::classify(&g)?;
    match fmt {
        Format::Dot => Ok(c.skeleton.to_dot(&g)),
        Format::Json => {
            let nodes: Vec<Value> = c
                .skeleton
                .nodes
                .iter()
                .map(|n| match n {
                    SkeletonNode::Graded(h) => json!({"vertices": names(&g, h)}),
                    SkeletonNode::Family(h, s) => json!({
                        "vertices": names(&g, h),
                        "cycles": s.iter().map(|c| c.display(&g)).collect::<Vec<_>>(),
                    }),
                })
                .collect();
            let arcs: Vec<Value> = c
                .skeleton
                .arcs
                .iter()
                .map(|(i, j, k)| json!([i, j, matches!(k, two_vertex::Arc::Partial)]))
                .collect();
            to_json(json!({
                "class": c.class,
                "canonical_id": c.canonical.id,
                "shape": c.canonical.shape.tuple(),
                "notes": c.notes,
                "skeleton": {"nodes": nodes, "arcs": arcs},
            }))
        }
        Format::Text => {
            let mut out = format!("class {} (canonical graph {} {})\n", c.class, c.canonical.id, c.canonical.shape);
            for n in &c.notes {
                out.push_str(&format!("note: {n}\n"));
            }
            Ok(out)
        }
    }
}
