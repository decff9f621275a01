//! JSON reports. Every top-level object carries `"schema": 1`; subsets are
//! little-endian hex masks over the universe order.

use serde_json::{json, Value};

use crate::branchdec::{Decomposition, DirectedDecomposition, UndirectedDecomposition, WidthCertificate};
use crate::canonical::CanonicalDecomposition;
use crate::duality::{DualityVerdict, DualityWitness};
use crate::error::{Error, Result};
use crate::graphbridge::GraphTreeDecomposition;
use crate::instances::Graph;
use crate::props::PropertyReport;
use crate::subset::{elements, hex, parse_hex, Mask, Universe};
use crate::system::Evaluate;
use crate::tangles::Tangle;

pub const SCHEMA: u64 = 1;

fn labels(u: &Universe, x: Mask) -> Vec<&str> {
    elements(x).map(|i| u.label(i)).collect()
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse { line: 0, msg: msg.into() }
}

pub fn property_report_json<S: Evaluate + ?Sized>(sys: &S, r: &PropertyReport) -> Value {
    let u = sys.universe();
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "property": v.property,
                "x": hex(v.x),
                "x_labels": labels(u, v.x),
                "y": v.y.map(hex),
                "y_labels": v.y.map(|y| labels(u, y)),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "kind": "property_report",
        "universe": u.labels(),
        "normalised": r.normalised,
        "nonnegative": r.nonnegative,
        "symmetric": r.symmetric,
        "submodular": r.submodular,
        "posimodular": r.posimodular,
        "connectivity_function": r.is_connectivity_function(),
        "valence": r.valence,
        "violations": violations,
    })
}

fn directed_body<S: Evaluate + ?Sized>(sys: &S, d: &DirectedDecomposition) -> Value {
    let u = sys.universe();
    let nodes: Vec<Value> = (0..d.len())
        .map(|t| {
            json!({
                "id": t,
                "parent": d.parent(t),
                "children": d.children(t).map(|(a, b)| vec![a, b]),
                "cone": hex(d.cone(t)),
                "order": sys.eval(d.cone(t)),
                "elements": labels(u, d.cone(t)),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "kind": "directed_decomposition",
        "universe": u.labels(),
        "root": d.root(),
        "width": d.width(sys),
        "nodes": nodes,
    })
}

pub fn decomposition_json<S: Evaluate + ?Sized>(sys: &S, d: &DirectedDecomposition) -> Value {
    directed_body(sys, d)
}

pub fn undirected_json<S: Evaluate + ?Sized>(sys: &S, d: &UndirectedDecomposition) -> Value {
    let u = sys.universe();
    let edges: Vec<Value> = d
        .edges()
        .iter()
        .map(|&(a, b)| {
            let c = d.cone(a, b);
            json!({ "ends": [a, b], "cone": hex(c), "order": sys.eval(c) })
        })
        .collect();
    let leaves: Vec<Value> =
        d.leaves().into_iter().map(|t| json!({ "node": t, "atom": hex(d.atom(t)), "elements": labels(u, d.atom(t)) })).collect();
    json!({
        "schema": SCHEMA,
        "kind": "undirected_decomposition",
        "universe": u.labels(),
        "nodes": d.node_count(),
        "width": d.width(sys),
        "edges": edges,
        "leaves": leaves,
    })
}

pub fn width_json<S: Evaluate + ?Sized>(sys: &S, c: &WidthCertificate) -> Value {
    let witness = match &c.witness {
        Decomposition::Directed(d) => directed_body(sys, d),
        Decomposition::Undirected(d) => undirected_json(sys, d),
    };
    json!({ "schema": SCHEMA, "kind": "width", "value": c.value, "witness": witness })
}

/// Rebuild a directed decomposition from [`decomposition_json`] output.
pub fn decomposition_from_json(v: &Value) -> Result<DirectedDecomposition> {
    if v["schema"].as_u64() != Some(SCHEMA) {
        return Err(bad("missing or unsupported schema"));
    }
    let n = v["universe"].as_array().ok_or_else(|| bad("missing universe"))?.len();
    let nodes = v["nodes"].as_array().ok_or_else(|| bad("missing nodes"))?;
    let root = v["root"].as_u64().ok_or_else(|| bad("missing root"))? as usize;
    let mut children = Vec::with_capacity(nodes.len());
    let mut cones = Vec::with_capacity(nodes.len());
    for (i, node) in nodes.iter().enumerate() {
        if node["id"].as_u64() != Some(i as u64) {
            return Err(bad(format!("node {i} is out of order")));
        }
        cones.push(parse_hex(node["cone"].as_str().ok_or_else(|| bad(format!("node {i} has no cone")))?)?);
        children.push(match &node["children"] {
            Value::Null => None,
            Value::Array(c) if c.len() == 2 => {
                let idx = |x: &Value| x.as_u64().map(|a| a as usize).ok_or_else(|| bad(format!("node {i}: bad child")));
                Some((idx(&c[0])?, idx(&c[1])?))
            }
            _ => return Err(bad(format!("node {i}: bad children"))),
        });
    }
    DirectedDecomposition::from_parts(crate::subset::full(n), root, children, cones)
}

fn tangle_value<S: Evaluate + ?Sized>(sys: &S, t: &Tangle) -> Value {
    let members: Vec<String> = t.members().iter().map(|&x| hex(x)).collect();
    let minimal: Vec<Vec<&str>> = t.minimal_members().into_iter().map(|x| labels(sys.universe(), x)).collect();
    json!({ "order": t.order(), "size": t.len(), "members": members, "minimal_members": minimal })
}

pub fn tangles_json<S: Evaluate + ?Sized>(sys: &S, k: i64, ts: &[Tangle]) -> Value {
    let list: Vec<Value> = ts.iter().map(|t| tangle_value(sys, t)).collect();
    json!({ "schema": SCHEMA, "kind": "tangles", "universe": sys.universe().labels(), "k": k, "count": ts.len(), "tangles": list })
}

/// A tangle from one entry of the `tangles` array.
pub fn tangle_from_json(v: &Value) -> Result<Tangle> {
    let order = v["order"].as_i64().ok_or_else(|| bad("tangle without order"))?;
    let members = v["members"]
        .as_array()
        .ok_or_else(|| bad("tangle without members"))?
        .iter()
        .map(|m| m.as_str().ok_or_else(|| bad("member is not a string")).and_then(parse_hex))
        .collect::<Result<Vec<Mask>>>()?;
    Ok(Tangle::new(order, members))
}

pub fn duality_json<S: Evaluate + ?Sized>(sys: &S, v: &DualityVerdict) -> Value {
    let witness = match &v.witness {
        DualityWitness::Decomposition(d) => json!({ "type": "decomposition", "decomposition": directed_body(sys, d) }),
        DualityWitness::Tangle(t) => json!({ "type": "tangle", "tangle": tangle_value(sys, t) }),
    };
    json!({ "schema": SCHEMA, "kind": "duality", "k": v.k, "family": v.family, "has_tangle": v.has_tangle(), "witness": witness })
}

pub fn graph_treedec_json(g: &Graph, td: &GraphTreeDecomposition) -> Value {
    let u = g.vertex_universe();
    let bags: Vec<Vec<&str>> = td.bags().iter().map(|&b| labels(u, b)).collect();
    json!({
        "schema": SCHEMA,
        "kind": "graph_tree_decomposition",
        "vertices": u.labels(),
        "width": td.width(),
        "tree_edges": td.tree_edges(),
        "bags": bags,
    })
}

pub fn canonical_json<S: Evaluate + ?Sized>(sys: &S, c: &CanonicalDecomposition) -> Value {
    let u = sys.universe();
    let tr = &c.tree;
    let nodes: Vec<Value> = (0..tr.tree.len())
        .map(|t| {
            let tangle = tr.tangle_at(t).map(|i| json!({ "index": i, "order": tr.tangles[i].order(), "members": tr.tangles[i].len() }));
            json!({
                "id": t,
                "parent": tr.tree.parent(t),
                "bag": hex(tr.tree.bag(t)),
                "elements": labels(u, tr.tree.bag(t)),
                "hub": tr.is_hub(t),
                "tangle": tangle,
            })
        })
        .collect();
    let nested: Vec<String> = c.nested.members().iter().map(|&x| hex(x)).collect();
    json!({
        "schema": SCHEMA,
        "kind": "canonical_decomposition",
        "universe": u.labels(),
        "nested": nested,
        "parents": tr.tree.parents(),
        "nodes": nodes,
        "tangles": tr.tangles.iter().map(|t| tangle_value(sys, t)).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branchdec::branch_width;
    use crate::fixtures::{cycle_graph, rankdec_decomposition};
    use crate::instances::matching_connectivity;
    use crate::system::ConnectivitySystem;
    use crate::tangles::{enumerate_tangles, is_tangle};

    #[test]
    fn decomposition_round_trip() {
        let d = rankdec_decomposition();
        let sys = ConnectivitySystem::new(Universe::indexed(7), |x| crate::subset::size(x).min(7 - crate::subset::size(x)) as i64);
        let v = decomposition_json(&sys, &d);
        let back: Value = serde_json::from_str(&v.to_string()).unwrap();
        assert_eq!(decomposition_from_json(&back).unwrap(), d);
        let sys = matching_connectivity(&cycle_graph(5));
        let cert = branch_width(&sys, 14).unwrap();
        let v = width_json(&sys, &cert);
        assert_eq!(v["value"], 2);
        if let Decomposition::Directed(d) = &cert.witness {
            assert_eq!(decomposition_from_json(&v["witness"]).unwrap(), *d);
        }
    }

    #[test]
    fn tangles_round_trip() {
        let sys = matching_connectivity(&cycle_graph(5));
        let ts = enumerate_tangles(&sys, 2).unwrap();
        let v = tangles_json(&sys, 2, &ts);
        assert_eq!(v["schema"], 1);
        for (t, tv) in ts.iter().zip(v["tangles"].as_array().unwrap()) {
            let back = tangle_from_json(tv).unwrap();
            assert_eq!(&back, t);
            assert!(is_tangle(&sys, &back).unwrap());
        }
    }
}
