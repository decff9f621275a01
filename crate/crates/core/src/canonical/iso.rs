//! Canonicity check: relabel, decompose again, and look for a tree
//! isomorphism that matches bags and tangle positions.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::subset::Mask;
use crate::system::{map_mask, ConnectivitySystem};
use crate::tangles::Tangle;

use super::{canonical_decomposition, TangleTreeDecomposition};

/// Whether decomposing `sys` and its relabelling by `perm` (element `i`
/// becomes `perm[i]`) gives isomorphic tangle trees.
pub fn canonicity_test(sys: &ConnectivitySystem, perm: &[usize], k_max: Option<i64>) -> Result<bool> {
    let other = sys.permuted(perm)?;
    let a = canonical_decomposition(sys, k_max)?.tree;
    let b = canonical_decomposition(&other, k_max)?.tree;
    Ok(isomorphic(&a, &b, perm))
}

/// Node labels: the bag and the tangles placed there, both in `b`'s labels.
fn labels(d: &TangleTreeDecomposition, map: &dyn Fn(Mask) -> Mask, ids: &BTreeMap<Vec<Mask>, usize>) -> Option<Vec<String>> {
    let mut out = Vec::with_capacity(d.tree.len());
    for t in 0..d.tree.len() {
        let tangle = match d.tangle_at(t) {
            Some(i) => {
                let mapped = relabel(&d.tangles[i], map);
                Some(*ids.get(&mapped)?)
            }
            None => None,
        };
        out.push(format!("{:x}:{tangle:?}", map(d.tree.bag(t))));
    }
    Some(out)
}

fn relabel(t: &Tangle, map: &dyn Fn(Mask) -> Mask) -> Vec<Mask> {
    let mut m: Vec<Mask> = t.members().iter().map(|&x| map(x)).collect();
    m.sort_unstable();
    m.push(t.order() as Mask);
    m
}

/// Whether there is a tree isomorphism `g` with `f(β(t)) = β′(g(t))` that
/// carries the tangle placement of `a` onto that of `b`.
pub fn isomorphic(a: &TangleTreeDecomposition, b: &TangleTreeDecomposition, perm: &[usize]) -> bool {
    if a.tree.len() != b.tree.len() || a.tangles.len() != b.tangles.len() {
        return false;
    }
    let ident = |x: Mask| x;
    let f = |x: Mask| map_mask(x, perm);
    let ids: BTreeMap<Vec<Mask>, usize> = b.tangles.iter().enumerate().map(|(i, t)| (relabel(t, &ident), i)).collect();
    let (Some(la), Some(lb)) = (labels(a, &f, &ids), labels(b, &ident, &ids)) else {
        return false;
    };
    let adj = |d: &TangleTreeDecomposition| (0..d.tree.len()).map(|t| d.tree.neighbours(t)).collect::<Vec<_>>();
    let (adj_a, adj_b) = (adj(a), adj(b));
    let target = encode(&adj_a, &la, 0, usize::MAX);
    (0..b.tree.len()).any(|r| encode(&adj_b, &lb, r, usize::MAX) == target)
}

/// Canonical string of the tree rooted at `v`.
fn encode(adj: &[Vec<usize>], label: &[String], v: usize, from: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&u| u != from).map(|&u| encode(adj, label, u, v)).collect();
    kids.sort();
    format!("({}{})", label[v], kids.concat())
}
