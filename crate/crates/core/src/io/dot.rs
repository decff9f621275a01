//! Graphviz output. Advisory only: JSON is the stable format.

use std::fmt::Write;

use crate::branchdec::{DirectedDecomposition, UndirectedDecomposition};
use crate::canonical::CanonicalDecomposition;
use crate::graphbridge::GraphTreeDecomposition;
use crate::instances::Graph;
use crate::subset::{elements, size, Universe};
use crate::system::Evaluate;

const PALETTE: [&str; 6] = ["lightgrey", "palegreen", "lightcoral", "lightblue", "khaki", "plum"];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn set_label(u: &Universe, x: crate::subset::Mask) -> String {
    elements(x).map(|i| u.label(i)).collect::<Vec<_>>().join(",")
}

/// Leaves are labelled by their elements, edges by the order of the cone below.
pub fn decomposition_dot<S: Evaluate + ?Sized>(sys: &S, d: &DirectedDecomposition) -> String {
    let u = sys.universe();
    let mut s = String::from("digraph decomposition {\n  node [shape=circle, label=\"\"];\n");
    for t in 0..d.len() {
        if d.is_leaf(t) {
            let _ = writeln!(s, "  n{t} [shape=box, label={}];", quote(&set_label(u, d.cone(t))));
        } else {
            let _ = writeln!(s, "  n{t};");
        }
    }
    for t in 0..d.len() {
        if let Some((a, b)) = d.children(t) {
            for c in [a, b] {
                let _ = writeln!(s, "  n{t} -> n{c} [label=\"{}\"];", sys.eval(d.cone(c)));
            }
        }
    }
    s.push_str("}\n");
    s
}

pub fn undirected_dot<S: Evaluate + ?Sized>(sys: &S, d: &UndirectedDecomposition) -> String {
    let u = sys.universe();
    let mut s = String::from("graph decomposition {\n  node [shape=circle, label=\"\"];\n");
    let leaves = d.leaves();
    for t in 0..d.node_count() {
        if leaves.contains(&t) {
            let _ = writeln!(s, "  n{t} [shape=box, label={}];", quote(&set_label(u, d.atom(t))));
        } else {
            let _ = writeln!(s, "  n{t};");
        }
    }
    for &(a, b) in d.edges() {
        let _ = writeln!(s, "  n{a} -- n{b} [label=\"{}\"];", sys.eval(d.cone(a, b)));
    }
    s.push_str("}\n");
    s
}

pub fn graph_treedec_dot(g: &Graph, td: &GraphTreeDecomposition) -> String {
    let u = g.vertex_universe();
    let mut s = String::from("graph treedec {\n  node [shape=box];\n");
    for (t, &b) in td.bags().iter().enumerate() {
        let _ = writeln!(s, "  n{t} [label={}];", quote(&format!("{{{}}}", set_label(u, b))));
    }
    for &(a, b) in td.tree_edges() {
        let _ = writeln!(s, "  n{a} -- n{b};");
    }
    s.push_str("}\n");
    s
}

/// Tangle nodes are filled by order; hubs are dashed.
pub fn canonical_dot<S: Evaluate + ?Sized>(sys: &S, c: &CanonicalDecomposition) -> String {
    let u = sys.universe();
    let tr = &c.tree;
    let mut s = String::from("graph canonical {\n  node [shape=box];\n");
    for t in 0..tr.tree.len() {
        let bag = tr.tree.bag(t);
        let text = if size(bag) == 0 { "∅".to_string() } else { set_label(u, bag) };
        match tr.tangle_at(t) {
            Some(i) => {
                let k = tr.tangles[i].order();
                let colour = PALETTE[(k as usize).min(PALETTE.len() - 1)];
                let _ = writeln!(s, "  n{t} [label={}, style=filled, fillcolor={colour}];", quote(&format!("{text}\\nord {k}")));
            }
            None => {
                let _ = writeln!(s, "  n{t} [label={}, style=dashed];", quote(&format!("{text}\\nhub")));
            }
        }
    }
    for (a, b) in tr.tree.tree_edges() {
        let _ = writeln!(s, "  n{a} -- n{b} [label=\"{}\"];", sys.eval(tr.tree.cone(a, b)));
    }
    s.push_str("}\n");
    s
}
