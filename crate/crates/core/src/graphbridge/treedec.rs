//! Graph tree decompositions, exact tree width, and the conversions to and
//! from branch decompositions of `κ_G`.

use std::collections::HashMap;

use crate::branchdec::UndirectedDecomposition;
use crate::error::{check_limit, Error, Result};
use crate::instances::Graph;
use crate::subset::{bit, elements, size, Mask};

/// Tree decomposition `(T, β)` of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphTreeDecomposition {
    pub(crate) edges: Vec<(usize, usize)>,
    pub(crate) bags: Vec<Mask>,
}

impl GraphTreeDecomposition {
    pub fn new(edges: Vec<(usize, usize)>, bags: Vec<Mask>) -> Self {
        GraphTreeDecomposition { edges, bags }
    }

    pub fn bags(&self) -> &[Mask] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|&b| size(b) as i64).max().unwrap_or(0) - 1
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Tree shape, edge coverage, and connected vertex traces.
    ///
    /// Isolated vertices of `g` may be missing from all bags; every other
    /// vertex must occur somewhere.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |c: String| Err(Error::invalid("tree decomposition", c));
        let n = self.bags.len();
        if n == 0 {
            return bad("no nodes".into());
        }
        if self.edges.len() + 1 != n || self.edges.iter().any(|&(a, b)| a >= n || b >= n) {
            return bad("not a tree".into());
        }
        let adj = self.adjacency();
        if component_of(&adj, 0, |_| true).len() != n {
            return bad("not connected".into());
        }
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if !self.bags.iter().any(|&b| b & bit(u) != 0 && b & bit(v) != 0) {
                return bad(format!("edge {} lies in no bag", g.edge_label(i)));
            }
        }
        for v in 0..g.n() {
            let holders: Vec<usize> = (0..n).filter(|&t| self.bags[t] & bit(v) != 0).collect();
            if holders.is_empty() {
                if g.degree(v) > 0 {
                    return bad(format!("vertex {} lies in no bag", g.label(v)));
                }
                continue;
            }
            let reach = component_of(&adj, holders[0], |t| self.bags[t] & bit(v) != 0);
            if reach.len() != holders.len() {
                return bad(format!("bags containing {} are not connected", g.label(v)));
            }
        }
        Ok(())
    }
}

fn component_of(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut out = vec![start];
    seen[start] = true;
    let mut i = 0;
    while i < out.len() {
        let t = out[i];
        i += 1;
        for &u in &adj[t] {
            if !seen[u] && allowed(u) {
                seen[u] = true;
                out.push(u);
            }
        }
    }
    out
}

/// Vertices outside `s ∪ {v}` reachable from `v` through `s`.
fn reach_through(g: &Graph, s: Mask, v: usize) -> Mask {
    let mut inside = bit(v);
    let mut frontier = bit(v);
    let mut out = 0;
    while frontier != 0 {
        let mut next = 0;
        for u in elements(frontier) {
            next |= g.neighbours(u);
        }
        next &= !inside;
        out |= next & !s;
        let cont = next & s;
        inside |= cont;
        frontier = cont;
        out &= !inside;
    }
    out & !bit(v)
}

/// Exact tree width by dynamic programming over elimination prefixes.
pub fn treewidth(g: &Graph, limit: usize) -> Result<(i64, GraphTreeDecomposition)> {
    let n = g.n();
    check_limit("treewidth", n, limit)?;
    if n == 0 {
        return Ok((-1, GraphTreeDecomposition::new(vec![], vec![0])));
    }
    let full = g.all_vertices();
    let mut best = vec![i64::MAX; 1usize << n];
    let mut last = vec![usize::MAX; 1usize << n];
    best[0] = -1;
    for s in 1..=full {
        for v in elements(s) {
            let rest = s & !bit(v);
            let cost = best[rest as usize].max(size(reach_through(g, rest, v)) as i64);
            if cost < best[s as usize] {
                best[s as usize] = cost;
                last[s as usize] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize];
        order.push(v);
        s &= !bit(v);
    }
    order.reverse();
    let td = from_elimination_order(g, &order);
    td.validate(g)?;
    debug_assert_eq!(td.width(), best[full as usize].max(0));
    Ok((best[full as usize].max(0), td))
}

/// Tree decomposition induced by eliminating vertices in `order`.
pub fn from_elimination_order(g: &Graph, order: &[usize]) -> GraphTreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut eliminated = 0;
    for &v in order {
        bags.push(bit(v) | reach_through(g, eliminated, v));
        eliminated |= bit(v);
    }
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later = bags[i] & !bit(v);
        match elements(later).min_by_key(|&u| pos[u]) {
            Some(u) => edges.push((i, pos[u])),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    GraphTreeDecomposition::new(edges, bags)
}

/// Branch decomposition of `κ_G` of width at most `width(td) + 1`.
pub fn treedec_to_branchdec(g: &Graph, td: &GraphTreeDecomposition) -> Result<UndirectedDecomposition> {
    td.validate(g)?;
    if g.m() == 0 {
        return Err(Error::pre("graph has no edges"));
    }
    let mut adj: Vec<Vec<usize>> = td.adjacency();
    let mut bag = td.bags.clone();
    let mut edge_at: Vec<Option<usize>> = vec![None; bag.len()];
    let mut alive = vec![true; bag.len()];

    // One new leaf per edge, at the first node covering it.
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let host = (0..td.bags.len()).find(|&t| td.bags[t] & bit(u) != 0 && td.bags[t] & bit(v) != 0).expect("valid td");
        let leaf = bag.len();
        bag.push(bit(u) | bit(v));
        adj.push(vec![host]);
        adj[host].push(leaf);
        edge_at.push(Some(i));
        alive.push(true);
    }

    // Drop leaves that carry no edge until none remain.
    loop {
        let victim = (0..bag.len()).find(|&t| alive[t] && edge_at[t].is_none() && adj[t].len() <= 1);
        let Some(t) = victim else { break };
        alive[t] = false;
        for u in std::mem::take(&mut adj[t]) {
            adj[u].retain(|&x| x != t);
        }
    }

    // Split nodes of degree above three into cubic trees.
    for t in 0..bag.len() {
        if !alive[t] || adj[t].len() <= 3 {
            continue;
        }
        let nbrs = std::mem::take(&mut adj[t]);
        let l = nbrs.len();
        let mut chain = vec![t];
        for _ in 1..l - 2 {
            chain.push(bag.len());
            bag.push(bag[t]);
            adj.push(Vec::new());
            edge_at.push(None);
            alive.push(true);
        }
        let link = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
            adj[a].push(b);
            adj[b].push(a);
        };
        for &x in &nbrs {
            adj[x].retain(|&y| y != t);
        }
        link(chain[0], nbrs[0], &mut adj);
        link(chain[0], nbrs[1], &mut adj);
        for i in 1..chain.len() {
            link(chain[i - 1], chain[i], &mut adj);
            link(chain[i], nbrs[i + 1], &mut adj);
        }
        link(*chain.last().expect("chain"), nbrs[l - 1], &mut adj);
    }

    // Suppress nodes of degree two.
    for t in 0..bag.len() {
        if alive[t] && adj[t].len() == 2 && edge_at[t].is_none() {
            let (a, b) = (adj[t][0], adj[t][1]);
            adj[a].retain(|&x| x != t);
            adj[b].retain(|&x| x != t);
            adj[a].push(b);
            adj[b].push(a);
            adj[t].clear();
            alive[t] = false;
        }
    }

    let ids: Vec<usize> = (0..bag.len()).filter(|&t| alive[t]).collect();
    let new_id: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut edges = Vec::new();
    for &t in &ids {
        for &u in &adj[t] {
            if t < u {
                edges.push((new_id[&t], new_id[&u]));
            }
        }
    }
    let leaf_set: Vec<Mask> = ids.iter().map(|&t| edge_at[t].map_or(0, bit)).collect();
    let bd = UndirectedDecomposition::from_leaf_sets(g.all_edges(), ids.len(), edges, &leaf_set)?;
    for ((s, t), cone) in bd.oriented() {
        let _ = s;
        if g.boundary(cone) & !bag[ids[t]] != 0 {
            return Err(Error::Inconsistent(format!("boundary of a cone escapes the bag at node {t}")));
        }
    }
    Ok(bd)
}

/// Tree decomposition from a branch decomposition of `κ_G`.
pub fn branchdec_to_treedec(g: &Graph, bd: &UndirectedDecomposition) -> Result<GraphTreeDecomposition> {
    bd.validate()?;
    if g.m() == 0 {
        return Err(Error::pre("graph has no edges"));
    }
    if bd.universe_mask() != g.all_edges() || !bd.is_branch_decomposition() {
        return Err(Error::pre("not a branch decomposition of the edge set"));
    }
    let adj = bd.adjacency();
    let bags: Vec<Mask> = (0..bd.node_count())
        .map(|t| match adj[t].len() {
            0 | 1 => g.vertices_of(bd.atom(t)),
            _ => adj[t].iter().fold(0, |acc, &u| acc | g.boundary(bd.cone(t, u))),
        })
        .collect();
    let td = GraphTreeDecomposition::new(bd.edges().to_vec(), bags);
    td.validate(g)?;
    Ok(td)
}
