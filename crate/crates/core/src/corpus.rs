//! Small graph corpora: all graphs up to isomorphism on few vertices.

use std::collections::BTreeSet;

use crate::instances::Graph;

/// Bit index of the pair `u < v` among all pairs of `n` vertices.
fn pair(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(&mut p, n, &mut out);
    out
}

fn heap(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(p, k - 1, out);
        let j = if k % 2 == 0 { i } else { 0 };
        p.swap(j, k - 1);
    }
}

/// Smallest pair mask over all relabellings.
fn canonical_form(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u32 {
    perms
        .iter()
        .map(|p| edges.iter().fold(0u32, |acc, &(u, v)| acc | 1 << pair(n, p[u], p[v])))
        .min()
        .unwrap_or(0)
}

fn decode(n: usize, code: u32) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if code >> pair(n, u, v) & 1 == 1 {
                out.push((u, v));
            }
        }
    }
    out
}

/// Edge lists of all graphs on exactly `n` vertices, one per isomorphism
/// class, in increasing canonical code order.
fn classes(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n <= 1 {
        return vec![Vec::new()];
    }
    let perms = permutations(n);
    let mut codes: BTreeSet<u32> = BTreeSet::new();
    for base in classes(n - 1) {
        for nbrs in 0u32..1 << (n - 1) {
            let mut es = base.clone();
            es.extend((0..n - 1).filter(|&u| nbrs >> u & 1 == 1).map(|u| (u, n - 1)));
            codes.insert(canonical_form(n, &es, &perms));
        }
    }
    codes.into_iter().map(|c| decode(n, c)).collect()
}

/// All graphs on `1..=max_n` vertices up to isomorphism.
pub fn graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(|n| classes(n).into_iter().map(move |es| Graph::indexed(n, &es).expect("simple graph"))).collect()
}

/// Connected graphs on `1..=max_n` vertices up to isomorphism.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    graphs_up_to(max_n).into_iter().filter(|g| g.is_connected()).collect()
}
