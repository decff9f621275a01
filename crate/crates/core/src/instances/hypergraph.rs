//! Hypergraphs: the two connectivity functions and the cover function.

use crate::error::{Error, Result};
use crate::subset::{bit, elements, full, size, submasks_of_size, Mask, Universe};
use crate::system::{ConnectivitySystem, SetFunction};

use super::graph::Graph;

/// Hypergraph; edges may repeat, which the dual construction needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: Universe,
    edge_labels: Universe,
    edges: Vec<Mask>,
}

impl Hypergraph {
    pub fn new(vertices: Universe, edge_labels: Universe, edges: Vec<Mask>) -> Result<Self> {
        if edge_labels.len() != edges.len() {
            return Err(Error::invalid("hypergraph", "edge label count differs from edge count"));
        }
        let all = vertices.full();
        if let Some(i) = edges.iter().position(|&e| e & !all != 0) {
            return Err(Error::invalid("hypergraph", format!("edge {} uses an unknown vertex", edge_labels.label(i))));
        }
        Ok(Hypergraph { vertices, edge_labels, edges })
    }

    /// Edges given as lists of vertex labels; edge labels default to `e0, e1, ...`.
    pub fn from_labels(vertices: &[&str], edges: &[(&str, &[&str])]) -> Result<Self> {
        let v = Universe::new(vertices.iter().copied())?;
        let mut masks = Vec::new();
        for (_, members) in edges {
            masks.push(v.mask_of(members)?);
        }
        let e = Universe::new(edges.iter().map(|(l, _)| *l))?;
        Hypergraph::new(v, e, masks)
    }

    pub fn from_graph(g: &Graph) -> Hypergraph {
        let edges = g.edges().iter().map(|&(u, v)| bit(u) | bit(v)).collect();
        Hypergraph::new(g.vertex_universe().clone(), g.edge_universe(), edges).expect("graph edges are valid")
    }

    pub fn vertices(&self) -> &Universe {
        &self.vertices
    }

    pub fn edge_universe(&self) -> &Universe {
        &self.edge_labels
    }

    pub fn edges(&self) -> &[Mask] {
        &self.edges
    }

    /// Edges containing vertex `v`, as a mask over edges.
    pub fn incident(&self, v: usize) -> Mask {
        self.edges.iter().enumerate().fold(0, |acc, (i, &e)| if e & bit(v) != 0 { acc | bit(i) } else { acc })
    }

    /// The dual: vertices and edges swap roles.
    pub fn dual(&self) -> Hypergraph {
        let edges = (0..self.vertices.len()).map(|v| self.incident(v)).collect();
        Hypergraph::new(self.edge_labels.clone(), self.vertices.clone(), edges).expect("dual is valid")
    }

    /// Edges meeting both `X` and `X̄`, as an edge mask.
    pub fn split_edges(&self, x: Mask) -> Mask {
        let rest = self.vertices.full() & !x;
        self.edges
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &e)| if e & x != 0 && e & rest != 0 { acc | bit(i) } else { acc })
    }
}

/// `(ν_H, κ_H)`: split edges on `V(H)` and boundary vertices on `E(H)`.
pub fn hypergraph_connectivities(h: &Hypergraph) -> (ConnectivitySystem, ConnectivitySystem) {
    let hh = h.clone();
    let nu = ConnectivitySystem::new(h.vertices.clone(), move |x| size(hh.split_edges(x)) as i64).named("hypergraph-nu");
    let inc: Vec<Mask> = (0..h.vertices.len()).map(|v| h.incident(v)).collect();
    let all_e = full(h.edges.len());
    let kappa = ConnectivitySystem::new(h.edge_labels.clone(), move |y| {
        let rest = all_e & !y;
        inc.iter().filter(|&&m| m & y != 0 && m & rest != 0).count() as i64
    })
    .named("hypergraph-kappa");
    (nu, kappa)
}

/// Minimum number of vertices meeting every edge of `edges`.
pub fn min_vertex_cover(h: &Hypergraph, edges: Mask) -> usize {
    let es: Vec<Mask> = elements(edges).map(|i| h.edges[i]).collect();
    let all = h.vertices.full();
    for k in 0..=h.vertices.len() {
        if submasks_of_size(all, k).into_iter().any(|c| es.iter().all(|&e| e & c != 0)) {
            return k;
        }
    }
    // Only reachable when some edge is empty.
    usize::MAX
}

/// `μ_H(X)`: minimum vertex cover of the edges split by `X`. Not submodular in general.
pub fn hypergraph_cover_function(h: &Hypergraph) -> SetFunction {
    let hh = h.clone();
    SetFunction::new(h.vertices.clone(), move |x| {
        let c = min_vertex_cover(&hh, hh.split_edges(x));
        if c == usize::MAX {
            i64::MAX
        } else {
            c as i64
        }
    })
}
