//! Tangles of graphs in terms of separations `(A, B)`, and touching families.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{vertex_connectivity, Graph};
use crate::subset::{bit, elements, full, is_subset, size, submasks, submasks_of_size, Mask};

use super::Tangle;

/// A separation `(A, B)` of a graph, by vertex and edge sets of both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GSeparation {
    pub a_vertices: Mask,
    pub a_edges: Mask,
    pub b_vertices: Mask,
    pub b_edges: Mask,
}

impl GSeparation {
    pub fn order(&self) -> i64 {
        size(self.a_vertices & self.b_vertices) as i64
    }

    pub fn reversed(&self) -> GSeparation {
        GSeparation {
            a_vertices: self.b_vertices,
            a_edges: self.b_edges,
            b_vertices: self.a_vertices,
            b_edges: self.a_edges,
        }
    }

    fn a_contains(&self, other: &GSeparation) -> bool {
        is_subset(other.a_vertices, self.a_vertices) && is_subset(other.a_edges, self.a_edges)
    }
}

/// All separations of `g` of order below `k`, sorted.
pub fn all_graph_separations(g: &Graph, k: i64) -> Result<Vec<GSeparation>> {
    let kappa = vertex_connectivity(g);
    let all_v = g.all_vertices();
    let all_e = g.all_edges();
    let mut out = Vec::new();
    for eb in kappa.separations_below(k)? {
        let ea = all_e & !eb;
        let va0 = g.vertices_of(ea);
        let vb0 = g.vertices_of(eb);
        let both = va0 & vb0;
        let isolated = all_v & !(va0 | vb0);
        // Vertices outside the forced intersection may still sit on both sides.
        let optional = all_v & !both;
        let room = k - size(both) as i64;
        for d in submasks(optional) {
            if size(d) as i64 >= room {
                continue;
            }
            let free = isolated & !d;
            for to_b in submasks(free) {
                let to_a = free & !to_b;
                out.push(GSeparation {
                    a_vertices: va0 | d | to_a,
                    a_edges: ea,
                    b_vertices: vb0 | d | to_b,
                    b_edges: eb,
                });
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A tangle of a graph: oriented separations `(A, B)` of order below `order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GTangle {
    order: i64,
    members: Vec<GSeparation>,
}

impl GTangle {
    pub fn new(order: i64, mut members: Vec<GSeparation>) -> GTangle {
        members.sort_unstable();
        members.dedup();
        GTangle { order, members }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn members(&self) -> &[GSeparation] {
        &self.members
    }

    pub fn contains(&self, s: &GSeparation) -> bool {
        self.members.binary_search(s).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GTangleViolation {
    Order(GSeparation),
    Unoriented(GSeparation),
    Covering(GSeparation, GSeparation, GSeparation),
    FullSide(GSeparation),
}

impl fmt::Display for GTangleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GTangleViolation::Order(s) => write!(f, "GT0: separation of order {} is too large", s.order()),
            GTangleViolation::Unoriented(_) => write!(f, "GT1: a separation is oriented neither way"),
            GTangleViolation::Covering(..) => write!(f, "GT2: three small sides cover the graph"),
            GTangleViolation::FullSide(_) => write!(f, "GT3: a small side contains every vertex"),
        }
    }
}

/// First violated axiom of a graph tangle, or `None`.
pub fn is_g_tangle(g: &Graph, s: &GTangle) -> Result<Option<GTangleViolation>> {
    let k = s.order;
    if let Some(m) = s.members.iter().find(|m| m.order() >= k) {
        return Ok(Some(GTangleViolation::Order(*m)));
    }
    for sep in all_graph_separations(g, k)? {
        if !s.contains(&sep) && !s.contains(&sep.reversed()) {
            return Ok(Some(GTangleViolation::Unoriented(sep)));
        }
    }
    // A covering triple stays covering when each small side grows.
    let mut maximal: Vec<GSeparation> = Vec::new();
    for m in &s.members {
        if !s.members.iter().any(|o| o != m && o.a_contains(m) && !m.a_contains(o)) && !maximal.iter().any(|o| o.a_contains(m)) {
            maximal.push(*m);
        }
    }
    let (all_v, all_e) = (g.all_vertices(), g.all_edges());
    for (i, a) in maximal.iter().enumerate() {
        for (j, b) in maximal.iter().enumerate().skip(i) {
            for c in &maximal[j..] {
                let v = a.a_vertices | b.a_vertices | c.a_vertices;
                let e = a.a_edges | b.a_edges | c.a_edges;
                if v == all_v && e == all_e {
                    return Ok(Some(GTangleViolation::Covering(*a, *b, *c)));
                }
            }
        }
    }
    if let Some(m) = s.members.iter().find(|m| m.a_vertices == all_v) {
        return Ok(Some(GTangleViolation::FullSide(*m)));
    }
    Ok(None)
}

/// `{(A, B) : ord < k, E(B) ∈ T}` for a `κ_G`-tangle `T` of order `k`.
pub fn g_tangle_from_kappa(g: &Graph, t: &Tangle) -> Result<GTangle> {
    let members = all_graph_separations(g, t.order())?.into_iter().filter(|s| t.contains(s.b_edges)).collect();
    Ok(GTangle::new(t.order(), members))
}

/// The situations in which a graph tangle has no matching `κ_G`-tangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExceptionCase {
    /// Order 1, pointing at an isolated vertex.
    IsolatedVertex(usize),
    /// Order 1, pointing at an isolated edge.
    IsolatedEdge(usize),
    /// Order 2, pointing at an isolated or pendant edge.
    ShortEdge(usize),
}

/// `{E(B) : (A, B) ∈ S}`, unless `S` is one of the exceptional tangles.
pub fn kappa_tangle_from_g(g: &Graph, s: &GTangle) -> Result<std::result::Result<Tangle, ExceptionCase>> {
    let k = s.order;
    if k == 1 || k == 2 {
        let seps = all_graph_separations(g, k)?;
        let matches = |pred: &dyn Fn(&GSeparation) -> bool| {
            let want: Vec<GSeparation> = seps.iter().copied().filter(|x| pred(x)).collect();
            want == s.members
        };
        if k == 1 {
            for v in (0..g.n()).filter(|&v| g.degree(v) == 0) {
                if matches(&|x| x.b_vertices & !x.a_vertices & bit(v) != 0) {
                    return Ok(Err(ExceptionCase::IsolatedVertex(v)));
                }
            }
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let (du, dv) = (g.degree(u), g.degree(v));
            let isolated = du == 1 && dv == 1;
            let pendant = !isolated && (du == 1 || dv == 1);
            let applies = (k == 1 && isolated) || (k == 2 && (isolated || pendant));
            if applies && matches(&|x| x.b_edges & bit(e) != 0) {
                return Ok(Err(if k == 1 { ExceptionCase::IsolatedEdge(e) } else { ExceptionCase::ShortEdge(e) }));
            }
        }
    }
    Ok(Ok(Tangle::new(k, s.members.iter().map(|m| m.b_edges).collect())))
}

/// `T_e`: separations of order below 2 with `e` on the big side.
pub fn g_tangle_of_edge(g: &Graph, e: usize) -> Result<GTangle> {
    if e >= g.m() {
        return Err(Error::pre("edge index out of range"));
    }
    let members = all_graph_separations(g, 2)?.into_iter().filter(|s| s.b_edges & bit(e) != 0).collect();
    Ok(GTangle::new(2, members))
}

/// A subgraph given by its vertex and edge sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: Mask,
    pub edges: Mask,
}

impl Subgraph {
    pub fn is_connected(&self, g: &Graph) -> bool {
        if self.vertices == 0 || !is_subset(g.vertices_of(self.edges), self.vertices) {
            return false;
        }
        let start = self.vertices & self.vertices.wrapping_neg();
        let mut seen = start;
        loop {
            let mut grow = seen;
            for e in elements(self.edges) {
                let (u, v) = g.edge(e);
                if seen & (bit(u) | bit(v)) != 0 {
                    grow |= bit(u) | bit(v);
                }
            }
            if grow == seen {
                return seen == self.vertices;
            }
            seen = grow;
        }
    }
}

/// A family of connected subgraphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TouchingFamily {
    pub members: Vec<Subgraph>,
}

/// Whether the subgraphs share a vertex or all meet the ends of one edge.
pub fn touches(g: &Graph, hs: &[Subgraph]) -> bool {
    let common = hs.iter().fold(g.all_vertices(), |acc, h| acc & h.vertices);
    common != 0
        || g.edges().iter().any(|&(u, v)| hs.iter().all(|h| h.vertices & (bit(u) | bit(v)) != 0))
}

fn small_sets(g: &Graph, k: i64) -> impl Iterator<Item = Mask> + '_ {
    let top = if k <= 0 { None } else { Some(((k - 1) as usize).min(g.n())) };
    top.into_iter().flat_map(move |t| (0..=t).flat_map(move |c| submasks_of_size(g.all_vertices(), c)))
}

/// `{C_S : |S| < k}` where `C_S` is the component of `G − S` the tangle points to.
pub fn touching_from_g_tangle(g: &Graph, s: &GTangle) -> Result<TouchingFamily> {
    let all_v = g.all_vertices();
    let all_e = g.all_edges();
    let mut out: Vec<Subgraph> = Vec::new();
    for sep in small_sets(g, s.order).collect::<Vec<_>>() {
        let comps = g.components(all_v & !sep);
        let m = comps.len();
        let side = |pick: Mask| {
            let vs = elements(pick).fold(0, |acc, i| acc | comps[i]);
            let eb = g.edges_touching(vs);
            GSeparation { a_vertices: all_v & !vs, a_edges: all_e & !eb, b_vertices: vs | sep, b_edges: eb }
        };
        if m == 0 {
            return Err(Error::pre("the graph tangle orients a separation with no component"));
        }
        // Halve the index range, keeping the half the tangle points into.
        let (mut lo, mut hi) = (0, m);
        if !s.contains(&side(full(m))) {
            return Err(Error::Inconsistent("tangle does not point into G − S".into()));
        }
        while hi - lo > 1 {
            let mid = (lo + hi).div_ceil(2);
            let first = full(mid) & !full(lo);
            if s.contains(&side(first)) {
                hi = mid;
            } else if s.contains(&side(full(hi) & !full(mid))) {
                lo = mid;
            } else {
                return Err(Error::Inconsistent("interval halving lost the tangle".into()));
            }
        }
        let hits: Vec<usize> = (0..m).filter(|&i| s.contains(&side(bit(i)))).collect();
        if hits != vec![lo] {
            return Err(Error::Inconsistent(format!("{} components receive the tangle", hits.len())));
        }
        let c = comps[lo];
        out.push(Subgraph { vertices: c, edges: g.edges_within(c) });
    }
    out.sort_unstable();
    out.dedup();
    Ok(TouchingFamily { members: out })
}

/// Separations of order below `k` with some member inside `B − V(A)`.
pub fn g_tangle_from_touching(g: &Graph, h: &TouchingFamily, k: i64) -> Result<GTangle> {
    let hs = &h.members;
    if let Some(bad) = hs.iter().find(|x| !x.is_connected(g)) {
        return Err(Error::pre(format!("member with vertices {:#x} is not connected", bad.vertices)));
    }
    for (i, a) in hs.iter().enumerate() {
        for (j, b) in hs.iter().enumerate().skip(i) {
            if let Some(c) = hs[j..].iter().find(|c| !touches(g, &[*a, *b, **c])) {
                return Err(Error::pre(format!(
                    "members {:#x}, {:#x}, {:#x} do not touch",
                    a.vertices, b.vertices, c.vertices
                )));
            }
        }
    }
    if let Some(cover) = small_sets(g, k).find(|&c| hs.iter().all(|x| x.vertices & c != 0)) {
        return Err(Error::pre(format!("vertex cover {cover:#x} has fewer than {k} vertices")));
    }
    let members = all_graph_separations(g, k)?
        .into_iter()
        .filter(|sep| {
            hs.iter().any(|x| is_subset(x.vertices, sep.b_vertices & !sep.a_vertices) && is_subset(x.edges, sep.b_edges))
        })
        .collect();
    Ok(GTangle::new(k, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete_graph, path_graph, star_graph};
    use crate::tangles::enumerate_tangles;

    #[test]
    fn edge_tangle_is_g_tangle() {
        let g = complete_graph(4);
        let t = g_tangle_of_edge(&g, 0).unwrap();
        assert_eq!(is_g_tangle(&g, &t).unwrap(), None);
    }

    #[test]
    fn single_edge_is_exceptional() {
        let g = path_graph(2);
        let t = g_tangle_of_edge(&g, 0).unwrap();
        assert_eq!(is_g_tangle(&g, &t).unwrap(), None);
        assert_eq!(kappa_tangle_from_g(&g, &t).unwrap(), Err(ExceptionCase::ShortEdge(0)));
    }

    #[test]
    fn star_has_only_exceptional_order_two_tangles() {
        let g = star_graph(3);
        assert!(enumerate_tangles(&vertex_connectivity(&g), 2).unwrap().is_empty());
        let t = g_tangle_of_edge(&g, 1).unwrap();
        assert_eq!(kappa_tangle_from_g(&g, &t).unwrap(), Err(ExceptionCase::ShortEdge(1)));
    }

    #[test]
    fn reed_round_trip_on_k4() {
        let g = complete_graph(4);
        let t = g_tangle_of_edge(&g, 0).unwrap();
        let h = touching_from_g_tangle(&g, &t).unwrap();
        let back = g_tangle_from_touching(&g, &h, 2).unwrap();
        assert_eq!(back, t);
    }
}
