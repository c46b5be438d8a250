use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Value};

use super::{render_fan_svg, CliError, Command, Outcome, Status};
use crate::algebra::{Lambda, Vertex};
use crate::complexes::{g_vector, hom_dim, k0_class, GVector, ProjComplex};
use crate::endo::{end_algebra, present};
use crate::equiv::reduce_to_two_term;
use crate::silting::{
    closed_form_nodes, fan_report, flags, mutate, mutation_walk, negative_space, FanReport,
    HomTable, SiltingNode, Summands,
};

pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Algebra { p, q } => algebra(*p, *q).map(ok),
        Command::Check { file } => check(&load(file)?).map(ok),
        Command::Mutate { file, summand, dir } => {
            mutate_cmd(&load(file)?, *summand, (*dir).into()).map(ok)
        }
        Command::Walk { p, q, depth } => walk(*p, *q, *depth).map(ok),
        Command::FanSvg { file } => {
            let text = read(file)?;
            let report: FanReport = serde_json::from_str(&text).map_err(|e| {
                CliError::new(Status::InvalidInput, "malformed_json", e.to_string())
            })?;
            Ok(Outcome {
                document: render_fan_svg(&report),
                violation: None,
            })
        }
        Command::Endo { file } => endo(&load(file)?).map(ok),
        Command::Reduce { file, max_steps } => reduce(&load(file)?, *max_steps).map(ok),
        Command::Classify {
            p,
            q,
            depth,
            bound,
            seed,
            samples,
        } => classify(*p, *q, *depth, *bound, *seed, *samples),
    }
}

fn ok(v: Value) -> Outcome {
    Outcome {
        document: pretty(&v),
        violation: None,
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(Status::Failure, "io", format!("{}: {e}", path.display())))
}

/// Reads a complex; `d ∘ d = 0` and the block shapes are checked on load.
pub fn load(path: &Path) -> Result<ProjComplex, CliError> {
    Ok(ProjComplex::from_json(&read(path)?)?)
}

fn lambda(p: usize, q: usize) -> Result<Lambda, CliError> {
    Ok(Lambda::new(p, q)?)
}

pub fn algebra(p: usize, q: usize) -> Result<Value, CliError> {
    let l = lambda(p, q)?;
    let qh = l.quasi_hereditary_data();
    Ok(json!({
        "p": p,
        "q": q,
        "dim": l.dim(),
        "basis": l.basis_labels(),
        "cartan": l.cartan_matrix(),
        "projectives": [l.projective_dims(Vertex::One), l.projective_dims(Vertex::Two)],
        "standard": qh.standard,
        "costandard": qh.costandard,
    }))
}

/// Summand classes with multiplicities, or an error when only their number
/// is known.
fn known_summands(x: &ProjComplex) -> Result<Vec<(ProjComplex, usize)>, CliError> {
    match crate::silting::summands(x, 0)? {
        Summands::Known(v) => Ok(v),
        Summands::Count(n) => Err(CliError::new(
            Status::InvalidInput,
            "summands",
            format!("could not split the complex into indecomposables ({n} classes)"),
        )),
    }
}

pub fn check(x: &ProjComplex) -> Result<Value, CliError> {
    let (f, s) = flags(x)?;
    let mut out = json!({
        "algebra": { "p": x.lambda().p, "q": x.lambda().q },
        "degrees": if x.is_zero() { Value::Null } else { json!([x.lo(), x.hi()]) },
        "k0": k0_class(x),
        "flags": f,
        "classes": s.count(),
    });
    if let Summands::Known(classes) = &s {
        let parts: Vec<&ProjComplex> = classes.iter().map(|(c, _)| c).collect();
        out["summands"] = classes
            .iter()
            .map(|(c, k)| {
                json!({
                    "multiplicity": k,
                    "k0": k0_class(c),
                    "g": g_vector(c).ok(),
                    "terms": c.terms_map().into_iter().map(|(n, t)| (n.to_string(), json!(t))).collect::<serde_json::Map<_, _>>(),
                })
            })
            .collect();
        out["homs"] =
            serde_json::to_value(HomTable::of(&parts, &[-1, 0, 1])?).expect("table serializes");
    }
    if !x.is_zero() {
        out["end_dim"] = json!(hom_dim(x, x, 0)?);
    }
    Ok(out)
}

fn node_of(x: &ProjComplex) -> Result<SiltingNode, CliError> {
    let classes = known_summands(x)?;
    if classes.len() != 2 || classes.iter().any(|(_, k)| *k != 1) {
        return Err(CliError::new(
            Status::InvalidInput,
            "not_basic",
            "expected a basic complex with two indecomposable summands",
        ));
    }
    Ok(SiltingNode::new(&classes[0].0, &classes[1].0)?)
}

fn node_json(n: &SiltingNode) -> Value {
    json!({
        "g": n.g,
        "flags": n.flags,
        "homs": n.homs,
        "summands": [n.summands[0].to_json_value(), n.summands[1].to_json_value()],
        "complex": n.complex().to_json_value(),
    })
}

pub fn mutate_cmd(
    x: &ProjComplex,
    k: usize,
    dir: crate::silting::Direction,
) -> Result<Value, CliError> {
    if k > 1 {
        return Err(CliError::new(
            Status::InvalidInput,
            "summand",
            format!("summand index {k} must be 0 or 1"),
        ));
    }
    let node = node_of(x)?;
    let m = mutate(&node, k, dir)?;
    Ok(json!({
        "input_g": node.g,
        "summand": k,
        "direction": dir,
        "result": node_json(&m),
    }))
}

pub fn walk(p: usize, q: usize, depth: usize) -> Result<Value, CliError> {
    let l = lambda(p, q)?;
    let w = mutation_walk(l, depth)?;
    let report = fan_report(l, &w, depth)?;
    Ok(serde_json::to_value(report).expect("fan report serializes"))
}

pub fn endo(x: &ProjComplex) -> Result<Value, CliError> {
    let classes: Vec<ProjComplex> = known_summands(x)?.into_iter().map(|(c, _)| c).collect();
    let e = end_algebra(&classes)?;
    let pr = present(&e.algebra)?;
    Ok(json!({
        "summand_k0": classes.iter().map(k0_class).collect::<Vec<_>>(),
        "dims": e.dims,
        "total": e.total(),
        "presilting": e.presilting,
        "arrow_counts": pr.arrow_counts(),
        "relation_dim": pr.relation_dim(),
        "presentation": pr,
    }))
}

pub fn reduce(x: &ProjComplex, max_steps: usize) -> Result<Value, CliError> {
    let r = reduce_to_two_term(x, max_steps)?;
    Ok(json!({
        "m": r.m,
        "trajectory": r.trajectory,
        "k0": k0_class(&r.complex),
        "complex": r.complex.to_json_value(),
    }))
}

fn key_json(k: &[GVector; 2]) -> Value {
    json!(k)
}

pub fn classify(
    p: usize,
    q: usize,
    depth: usize,
    bound: usize,
    seed: u64,
    samples: usize,
) -> Result<Outcome, CliError> {
    let l = lambda(p, q)?;
    let w = mutation_walk(l, depth)?;
    let closed = closed_form_nodes(l, depth)?;
    let walk_keys: BTreeSet<[GVector; 2]> = w.iter().map(|n| n.node.key()).collect();
    let closed_keys: BTreeSet<[GVector; 2]> = closed.iter().map(|n| n.key()).collect();
    let missing: Vec<Value> = closed_keys.difference(&walk_keys).map(key_json).collect();
    let extra: Vec<Value> = walk_keys.difference(&closed_keys).map(key_json).collect();
    let not_tilting: Vec<Value> = w
        .iter()
        .filter(|n| n.node.flags.silting && !n.node.flags.tilting)
        .map(|n| json!({ "g": n.node.g, "homs": n.node.homs }))
        .collect();
    let nodes: Vec<Value> = closed
        .iter()
        .map(|c| json!({ "g": c.g, "names": c.names, "algebra": c.algebra.to_string(), "depth": c.depth() }))
        .collect();
    let fan = fan_report(l, &w, depth);
    let neg = negative_space(l, bound, samples, seed)?;
    let hits: usize = neg.iter().map(|s| s.presilting).sum();
    let bound_ok = neg.iter().all(|s| s.max_null_homotopic <= s.null_bound);
    let agree = missing.is_empty() && extra.is_empty();

    let mut violations = Vec::new();
    if !agree {
        violations.push("walk and closed-form lists differ".to_string());
    }
    if let Err(e) = &fan {
        violations.push(e.to_string());
    }
    if hits > 0 {
        violations.push(format!("{hits} presilting samples in the gray region"));
    }
    if !bound_ok {
        violations.push("null-homotopic bound exceeded".to_string());
    }
    let doc = json!({
        "p": p,
        "q": q,
        "positive": {
            "depth": depth,
            "walk_nodes": w.len(),
            "closed_nodes": nodes,
            "agree": agree,
            "missing_from_walk": missing,
            "extra_in_walk": extra,
            "silting_not_tilting": not_tilting,
            "fan_disjoint": fan.is_ok(),
        },
        "negative": {
            "evidence": "sampling",
            "bound": bound,
            "seed": seed,
            "samples_per_shape": samples,
            "presilting_hits": hits,
            "null_bound_holds": bound_ok,
            "shapes": neg,
        },
    });
    Ok(Outcome {
        document: pretty(&doc),
        violation: (!violations.is_empty()).then(|| violations.join("; ")),
    })
}
