//! Simple graphs and their four connectivity functions.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::{bit, elements, full, size, submasks, Mask, Universe};
use crate::system::ConnectivitySystem;

/// Simple undirected graph on at most 64 vertices and 64 edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Universe,
    edges: Vec<(usize, usize)>,
    adj: Vec<Mask>,
    inc: Vec<Mask>,
}

impl Graph {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = Universe::new(labels)?;
        let n = vertices.len();
        if edges.len() > crate::subset::MAX_ELEMENTS {
            return Err(Error::SizeLimit { op: "graph edges", n: edges.len(), limit: crate::subset::MAX_ELEMENTS });
        }
        let mut adj = vec![0; n];
        let mut inc = vec![0; n];
        let mut norm = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::invalid("graph", format!("edge {i} has an unknown endpoint")));
            }
            if u == v {
                return Err(Error::invalid("graph", format!("self-loop at {}", vertices.label(u))));
            }
            if adj[u] & bit(v) != 0 {
                return Err(Error::invalid(
                    "graph",
                    format!("duplicate edge {}-{}", vertices.label(u), vertices.label(v)),
                ));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
            inc[u] |= bit(i);
            inc[v] |= bit(i);
            norm.push((u.min(v), u.max(v)));
        }
        Ok(Graph { vertices, edges: norm, adj, inc })
    }

    /// Graph on `0..n`.
    pub fn indexed(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new((0..n).map(|i| i.to_string()), edges)
    }

    /// Build from labels, e.g. `from_labels(&["a","b"], &[("a","b")])`.
    pub fn from_labels(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let u = Universe::new(vertices.iter().copied())?;
        let mut idx = Vec::new();
        for (a, b) in edges {
            let ia = u.index_of(a).ok_or_else(|| Error::pre(format!("unknown vertex {a}")))?;
            let ib = u.index_of(b).ok_or_else(|| Error::pre(format!("unknown vertex {b}")))?;
            idx.push((ia, ib));
        }
        Graph::new(vertices.iter().copied(), &idx)
    }

    /// Single-character vertex names, edges as whitespace-separated pairs: `"ab bc"`.
    pub fn from_compact(vertices: &str, edges: &str) -> Result<Self> {
        let vs: Vec<String> = vertices.chars().filter(|c| !c.is_whitespace()).map(String::from).collect();
        let refs: Vec<&str> = vs.iter().map(String::as_str).collect();
        let es: Vec<(String, String)> = edges
            .split_whitespace()
            .map(|e| {
                let mut c = e.chars();
                (c.next().unwrap_or(' ').to_string(), c.next().unwrap_or(' ').to_string())
            })
            .collect();
        let erefs: Vec<(&str, &str)> = es.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Graph::from_labels(&refs, &erefs)
    }

    pub fn vertex_universe(&self) -> &Universe {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn label(&self, v: usize) -> &str {
        self.vertices.label(v)
    }

    pub fn edge_label(&self, i: usize) -> String {
        let (u, v) = self.edges[i];
        let (a, b) = (self.label(u), self.label(v));
        if a.chars().count() == 1 && b.chars().count() == 1 {
            format!("{a}{b}")
        } else {
            format!("{a}-{b}")
        }
    }

    pub fn edge_universe(&self) -> Universe {
        Universe::new((0..self.m()).map(|i| self.edge_label(i))).expect("edge labels are distinct")
    }

    pub fn all_vertices(&self) -> Mask {
        full(self.n())
    }

    pub fn all_edges(&self) -> Mask {
        full(self.m())
    }

    pub fn neighbours(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn incident(&self, v: usize) -> Mask {
        self.inc[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        size(self.adj[v])
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let m = self.inc[u] & self.inc[v];
        if u != v && m != 0 {
            Some(m.trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// `V(Y)`: vertices incident with an edge of `Y`.
    pub fn vertices_of(&self, y: Mask) -> Mask {
        elements(y).fold(0, |acc, i| {
            let (u, v) = self.edges[i];
            acc | bit(u) | bit(v)
        })
    }

    /// `∂(Y)`: vertices incident with an edge in `Y` and an edge outside `Y`.
    pub fn boundary(&self, y: Mask) -> Mask {
        let rest = self.all_edges() & !y;
        (0..self.n()).filter(|&v| self.inc[v] & y != 0 && self.inc[v] & rest != 0).fold(0, |a, v| a | bit(v))
    }

    /// `E(X)`: edges with both ends in `X`.
    pub fn edges_within(&self, x: Mask) -> Mask {
        self.edges_between(x, x)
    }

    /// `E(X,Y)`: edges with one end in `X` and the other in `Y`.
    pub fn edges_between(&self, x: Mask, y: Mask) -> Mask {
        self.edges.iter().enumerate().fold(0, |acc, (i, &(u, v))| {
            let hit = (x & bit(u) != 0 && y & bit(v) != 0) || (x & bit(v) != 0 && y & bit(u) != 0);
            if hit {
                acc | bit(i)
            } else {
                acc
            }
        })
    }

    /// Edges with at least one end in `X`.
    pub fn edges_touching(&self, x: Mask) -> Mask {
        elements(x).fold(0, |acc, v| acc | self.inc[v])
    }

    /// Connected components of the subgraph induced by `x`, by smallest vertex.
    pub fn components(&self, x: Mask) -> Vec<Mask> {
        let mut left = x;
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in elements(frontier) {
                    next |= self.adj[v] & x;
                }
                frontier = next & !comp;
                comp |= next;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.all_vertices()).len() <= 1
    }

    /// Connected components as (vertex set, edge set) pairs; isolated vertices included.
    pub fn components_with_edges(&self) -> Vec<(Mask, Mask)> {
        self.components(self.all_vertices()).into_iter().map(|c| (c, self.edges_within(c))).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// The graph with the edges outside `keep` removed (vertices unchanged).
    pub fn edge_subgraph(&self, keep: Mask) -> Graph {
        let es: Vec<(usize, usize)> = elements(keep).map(|i| self.edges[i]).collect();
        Graph::new(self.vertices.labels().iter().cloned(), &es).expect("subgraph of a valid graph")
    }

    /// The subgraph induced by `keep`, vertex order preserved.
    pub fn induced(&self, keep: Mask) -> Graph {
        let old: Vec<usize> = elements(keep).collect();
        let mut new_index = vec![usize::MAX; self.n()];
        for (j, &v) in old.iter().enumerate() {
            new_index[v] = j;
        }
        let es: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep & bit(u) != 0 && keep & bit(v) != 0)
            .map(|&(u, v)| (new_index[u], new_index[v]))
            .collect();
        Graph::new(old.iter().map(|&v| self.label(v).to_string()), &es).expect("induced subgraph")
    }

    /// Relabel: vertex `i` becomes vertex `perm[i]`; edges keep their order.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.label(i).to_string();
        }
        let es: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::new(labels, &es)
    }
}

/// `ν_G(X) = |E(X, X̄)|` on `V(G)`.
pub fn edge_connectivity(g: &Graph) -> ConnectivitySystem {
    let adj = g.adj.clone();
    let all = g.all_vertices();
    ConnectivitySystem::new(g.vertices.clone(), move |x| {
        elements(x).map(|v| size(adj[v] & all & !x) as i64).sum()
    })
    .named("nu")
}

/// `κ_G(Y) = |∂(Y)|` on `E(G)`, with a structural enumerator of low-order separations.
pub fn vertex_connectivity(g: &Graph) -> ConnectivitySystem {
    let inc = g.inc.clone();
    let all_e = g.all_edges();
    let graph = Arc::new(g.clone());
    ConnectivitySystem::new(g.edge_universe(), move |y| {
        let rest = all_e & !y;
        inc.iter().filter(|&&m| m & y != 0 && m & rest != 0).count() as i64
    })
    .named("kappa")
    .with_separations(Arc::new(move |k| kappa_separations(&graph, k)))
}

/// All `Y ⊆ E(G)` with `|∂(Y)| < k` (a superset list, possibly with repeats).
///
/// For `S = ∂(Y)`, every component of `G − S` has all its incident edges on
/// one side, and edges inside `S` are free.
fn kappa_separations(g: &Graph, k: i64) -> Vec<Mask> {
    let n = g.n();
    if k <= 0 {
        return Vec::new();
    }
    let max_s = ((k - 1) as usize).min(n);
    let mut seen = HashSet::new();
    for s_size in 0..=max_s {
        for s in crate::subset::submasks_of_size(g.all_vertices(), s_size) {
            let mut groups: Vec<Mask> = g
                .components(g.all_vertices() & !s)
                .into_iter()
                .map(|c| g.edges_touching(c))
                .filter(|&e| e != 0)
                .collect();
            groups.extend(elements(g.edges_within(s)).map(bit));
            let gmask = full(groups.len());
            for pick in submasks(gmask) {
                let y = elements(pick).fold(0, |acc, i| acc | groups[i]);
                seen.insert(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Maximum matching between `X` and `X̄` by augmenting paths.
pub fn matching_size(g: &Graph, x: Mask) -> usize {
    let other = g.all_vertices() & !x;
    let mut mate: Vec<Option<usize>> = vec![None; g.n()];
    let mut count = 0;
    for u in elements(x) {
        let mut visited = 0;
        if augment(g, u, other, &mut mate, &mut visited) {
            count += 1;
        }
    }
    count
}

fn augment(g: &Graph, u: usize, other: Mask, mate: &mut [Option<usize>], visited: &mut Mask) -> bool {
    for w in elements(g.adj[u] & other) {
        if *visited & bit(w) != 0 {
            continue;
        }
        *visited |= bit(w);
        let free = match mate[w] {
            None => true,
            Some(p) => augment(g, p, other, mate, visited),
        };
        if free {
            mate[w] = Some(u);
            return true;
        }
    }
    false
}

/// `μ_G(X)`: maximum matching of the bipartite graph of `X`–`X̄` edges.
pub fn matching_connectivity(g: &Graph) -> ConnectivitySystem {
    let graph = g.clone();
    ConnectivitySystem::new(g.vertices.clone(), move |x| matching_size(&graph, x) as i64).named("mu")
}

/// Adjacency submatrix `M_G(X, X̄)` (rows `X`, columns `X̄`, both ascending).
pub fn cut_matrix(g: &Graph, x: Mask) -> super::linear::Gf2Matrix {
    let cols: Vec<usize> = elements(g.all_vertices() & !x).collect();
    let rows: Vec<Mask> = elements(x)
        .map(|v| cols.iter().enumerate().fold(0, |acc, (j, &w)| if g.adj[v] & bit(w) != 0 { acc | bit(j) } else { acc }))
        .collect();
    super::linear::Gf2Matrix::from_rows(cols.len(), rows)
}

/// `ρ_G(X) = rk₂ M_G(X, X̄)`.
pub fn cut_rank(g: &Graph) -> ConnectivitySystem {
    let adj = g.adj.clone();
    let all = g.all_vertices();
    ConnectivitySystem::new(g.vertices.clone(), move |x| {
        super::linear::gf2_rank(elements(x).map(|v| adj[v] & all & !x)) as i64
    })
    .named("rho")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Evaluate;

    fn complete(n: usize) -> Graph {
        let mut es = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                es.push((i, j));
            }
        }
        Graph::indexed(n, &es).unwrap()
    }

    #[test]
    fn closed_forms_on_k5() {
        let g = complete(5);
        let (nu, mu, rho) = (edge_connectivity(&g), matching_connectivity(&g), cut_rank(&g));
        for x in 0..32u64 {
            let s = size(x) as i64;
            assert_eq!(nu.eval(x), s * (5 - s));
            assert_eq!(mu.eval(x), s.min(5 - s));
            assert_eq!(rho.eval(x), i64::from(s != 0 && s != 5));
        }
    }

    #[test]
    fn path_boundary() {
        let g = Graph::from_compact("abc", "ab bc").unwrap();
        let k = vertex_connectivity(&g);
        assert_eq!(k.eval(0b01), 1);
        assert_eq!(k.eval(0), 0);
    }

    #[test]
    fn structural_separations_match_scan() {
        let g = Graph::from_compact("abcdef", "ab bc ca cd de ef fd").unwrap();
        let k = vertex_connectivity(&g);
        for ord in 0..5 {
            let fast = k.separations_below(ord).unwrap();
            let slow: Vec<Mask> = (0..=g.all_edges()).filter(|&y| k.eval(y) < ord).collect();
            assert_eq!(fast, slow, "order {ord}");
        }
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Graph::indexed(2, &[(0, 0)]).is_err());
        assert!(Graph::indexed(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::indexed(2, &[(0, 2)]).is_err());
    }
}
