//! Directed and undirected decompositions, exactification and branch width.

mod dp;
mod exact;

pub use dp::{blockwise_decomposition, branch_width, decompose_over, trisection_upper_bound, AtomFamily};
pub use exact::{exactify, exactify_traced, prune_empty_leaves, ExactifyStep};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::subset::{bit, elements, size, Mask};
use crate::system::Evaluate;

/// Leaf-labelled binary tree, used to write decompositions down by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Leaf(Mask),
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    /// Leaf holding element `i`.
    pub fn elem(i: usize) -> Shape {
        Shape::Leaf(bit(i))
    }

    pub fn node(a: Shape, b: Shape) -> Shape {
        Shape::Node(Box::new(a), Box::new(b))
    }

    pub fn cone(&self) -> Mask {
        match self {
            Shape::Leaf(m) => *m,
            Shape::Node(a, b) => a.cone() | b.cone(),
        }
    }
}

/// Rooted binary tree with a cone at every node. Node `root` has no parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedDecomposition {
    pub(crate) full: Mask,
    pub(crate) root: usize,
    pub(crate) parent: Vec<Option<usize>>,
    pub(crate) children: Vec<Option<(usize, usize)>>,
    pub(crate) cone: Vec<Mask>,
}

impl DirectedDecomposition {
    /// One-node decomposition of the universe `full`.
    pub fn single(full: Mask) -> Self {
        DirectedDecomposition { full, root: 0, parent: vec![None], children: vec![None], cone: vec![full] }
    }

    /// Exact decomposition from a shape; the shape's leaves must partition `full`.
    pub fn from_shape(shape: &Shape, full: Mask) -> Result<Self> {
        let mut d = DirectedDecomposition { full, root: 0, parent: vec![], children: vec![], cone: vec![] };
        d.push_shape(shape, None);
        d.validate()?;
        Ok(d)
    }

    fn push_shape(&mut self, s: &Shape, parent: Option<usize>) -> usize {
        let id = self.parent.len();
        self.parent.push(parent);
        self.children.push(None);
        self.cone.push(s.cone());
        if let Shape::Node(a, b) = s {
            let l = self.push_shape(a, Some(id));
            let r = self.push_shape(b, Some(id));
            self.children[id] = Some((l, r));
        }
        id
    }

    /// Build from raw parts; validated as a pre-decomposition.
    pub fn from_parts(full: Mask, root: usize, children: Vec<Option<(usize, usize)>>, cone: Vec<Mask>) -> Result<Self> {
        let mut parent = vec![None; children.len()];
        for (i, c) in children.iter().enumerate() {
            if let Some((a, b)) = *c {
                for ch in [a, b] {
                    if ch >= children.len() || parent[ch].is_some() || ch == root {
                        return Err(Error::invalid("directed decomposition", format!("node {ch} has a bad parent link")));
                    }
                    parent[ch] = Some(i);
                }
            }
        }
        let d = DirectedDecomposition { full, root, parent, children, cone };
        d.validate()?;
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.cone.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cone.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn universe_mask(&self) -> Mask {
        self.full
    }

    pub fn cone(&self, t: usize) -> Mask {
        self.cone[t]
    }

    pub fn cones(&self) -> &[Mask] {
        &self.cone
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn children(&self, t: usize) -> Option<(usize, usize)> {
        self.children[t]
    }

    pub fn is_leaf(&self, t: usize) -> bool {
        self.children[t].is_none()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.is_leaf(t)).collect()
    }

    /// Nodes in preorder from the root.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(t) = stack.pop() {
            out.push(t);
            if let Some((a, b)) = self.children[t] {
                stack.push(b);
                stack.push(a);
            }
        }
        out
    }

    /// Pre-decomposition checks: tree shape, `γ(r) = U`, `γ(t) ⊆ γ(u₁) ∪ γ(u₂)`.
    pub fn validate(&self) -> Result<()> {
        let bad = |c: String| Err(Error::invalid("directed decomposition", c));
        let n = self.len();
        if n == 0 || self.root >= n {
            return bad("missing root".into());
        }
        if self.parent[self.root].is_some() {
            return bad("root has a parent".into());
        }
        let order = self.preorder();
        if order.len() != n || order.iter().collect::<BTreeSet<_>>().len() != n {
            return bad("nodes are not a single tree under the root".into());
        }
        if self.cone[self.root] != self.full {
            return bad("root cone is not the universe".into());
        }
        for t in 0..n {
            if self.cone[t] & !self.full != 0 {
                return bad(format!("cone at node {t} leaves the universe"));
            }
            if let Some((a, b)) = self.children[t] {
                if self.parent[a] != Some(t) || self.parent[b] != Some(t) {
                    return bad(format!("inconsistent parent links below node {t}"));
                }
                if self.cone[t] & !(self.cone[a] | self.cone[b]) != 0 {
                    return bad(format!("cone at node {t} is not covered by its children"));
                }
            }
        }
        Ok(())
    }

    pub fn is_exact_at(&self, t: usize) -> bool {
        match self.children[t] {
            None => true,
            Some((a, b)) => self.cone[a] & self.cone[b] == 0 && self.cone[a] | self.cone[b] == self.cone[t],
        }
    }

    pub fn is_exact(&self) -> bool {
        (0..self.len()).all(|t| self.is_exact_at(t))
    }

    pub fn is_complete(&self) -> bool {
        self.leaves().iter().all(|&t| size(self.cone[t]) == 1)
    }

    /// Exact and complete.
    pub fn is_branch_decomposition(&self) -> bool {
        self.is_exact() && self.is_complete()
    }

    pub fn width<S: Evaluate + ?Sized>(&self, sys: &S) -> i64 {
        self.cone.iter().map(|&c| sys.eval(c)).max().unwrap_or(0)
    }

    pub fn cone_orders<S: Evaluate + ?Sized>(&self, sys: &S) -> Vec<i64> {
        self.cone.iter().map(|&c| sys.eval(c)).collect()
    }

    /// `Sep(T,γ)`: cones of non-root nodes and their complements.
    pub fn separations(&self) -> BTreeSet<Mask> {
        (0..self.len())
            .filter(|&t| t != self.root)
            .flat_map(|t| [self.cone[t], self.full ^ self.cone[t]])
            .collect()
    }

    /// `At(T,γ)`: the leaf cones.
    pub fn atoms(&self) -> BTreeSet<Mask> {
        self.leaves().into_iter().map(|t| self.cone[t]).collect()
    }

    /// Undirected decomposition obtained by suppressing the root.
    pub fn to_undirected(&self) -> Result<UndirectedDecomposition> {
        if !self.is_exact_at(self.root) {
            return Err(Error::pre("directed decomposition is not exact at the root"));
        }
        let Some((s0, s1)) = self.children[self.root] else {
            return Ok(UndirectedDecomposition { full: self.full, nodes: 1, edges: vec![], cones: vec![] });
        };
        let ids: Vec<usize> = (0..self.len()).filter(|&t| t != self.root).collect();
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, &t) in ids.iter().enumerate() {
            new_id[t] = i;
        }
        let mut edges = vec![(new_id[s0], new_id[s1])];
        let mut cones = vec![self.cone[s1]];
        for &t in &ids {
            if let Some(p) = self.parent[t] {
                if p != self.root {
                    edges.push((new_id[p], new_id[t]));
                    cones.push(self.cone[t]);
                }
            }
        }
        Ok(UndirectedDecomposition { full: self.full, nodes: ids.len(), edges, cones })
    }
}

/// Tree with a cone on every oriented edge; `γ(u,t)` is the complement of `γ(t,u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedDecomposition {
    pub(crate) full: Mask,
    pub(crate) nodes: usize,
    /// Undirected edges `(t,u)`; `cones[i] = γ(t,u)`.
    pub(crate) edges: Vec<(usize, usize)>,
    pub(crate) cones: Vec<Mask>,
}

impl UndirectedDecomposition {
    pub fn from_parts(full: Mask, nodes: usize, edges: Vec<(usize, usize)>, cones: Vec<Mask>) -> Result<Self> {
        if edges.len() != cones.len() {
            return Err(Error::invalid("undirected decomposition", "edge and cone counts differ"));
        }
        let d = UndirectedDecomposition { full, nodes, edges, cones };
        d.validate()?;
        Ok(d)
    }

    /// Cones from a leaf assignment: `γ(t,u)` is the union of the leaf sets on `u`'s side.
    pub fn from_leaf_sets(full: Mask, nodes: usize, edges: Vec<(usize, usize)>, leaf_set: &[Mask]) -> Result<Self> {
        let mut d = UndirectedDecomposition { full, nodes, edges, cones: vec![] };
        let adj = d.adjacency();
        let cones = d
            .edges
            .iter()
            .map(|&(t, u)| side_union(&adj, u, t, leaf_set))
            .collect();
        d.cones = cones;
        d.validate()?;
        Ok(d)
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn universe_mask(&self) -> Mask {
        self.full
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, t: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == t || b == t).count()
    }

    /// `γ(t,u)`; panics if `tu` is not an edge.
    pub fn cone(&self, t: usize, u: usize) -> Mask {
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if (a, b) == (t, u) {
                return self.cones[i];
            }
            if (a, b) == (u, t) {
                return self.full ^ self.cones[i];
            }
        }
        panic!("{t}-{u} is not an edge of the decomposition tree");
    }

    /// All oriented edges with their cones.
    pub fn oriented(&self) -> Vec<((usize, usize), Mask)> {
        self.edges
            .iter()
            .zip(&self.cones)
            .flat_map(|(&(a, b), &c)| [((a, b), c), ((b, a), self.full ^ c)])
            .collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes).filter(|&t| self.degree(t) <= 1).collect()
    }

    /// Atom at a leaf: `γ(s,t)` for its neighbour `s`, or `U` for a one-node tree.
    pub fn atom(&self, t: usize) -> Mask {
        let adj = self.adjacency();
        match adj[t].as_slice() {
            [] => self.full,
            [s] => self.cone(*s, t),
            _ => panic!("node {t} is not a leaf"),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Mask> {
        self.leaves().into_iter().map(|t| self.atom(t)).collect()
    }

    pub fn separations(&self) -> BTreeSet<Mask> {
        self.oriented().into_iter().map(|(_, c)| c).collect()
    }

    pub fn width<S: Evaluate + ?Sized>(&self, sys: &S) -> i64 {
        self.oriented().into_iter().map(|(_, c)| sys.eval(c)).max().unwrap_or(0)
    }

    /// Tree, cubic shape, and `⋃ γ(t,uᵢ) = U` at internal nodes.
    pub fn validate(&self) -> Result<()> {
        let bad = |c: String| Err(Error::invalid("undirected decomposition", c));
        if self.nodes == 0 {
            return bad("empty tree".into());
        }
        if self.edges.len() + 1 != self.nodes {
            return bad("edge count is not node count minus one".into());
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("tree is not connected".into());
        }
        for (t, nb) in adj.iter().enumerate() {
            match nb.len() {
                0 | 1 => {}
                3 => {
                    let u = nb.iter().fold(0, |acc, &x| acc | self.cone(t, x));
                    if u != self.full {
                        return bad(format!("cones at node {t} do not cover the universe"));
                    }
                }
                d => return bad(format!("node {t} has degree {d}")),
            }
        }
        if self.cones.iter().any(|&c| c & !self.full != 0) {
            return bad("cone leaves the universe".into());
        }
        Ok(())
    }

    pub fn is_exact(&self) -> bool {
        let adj = self.adjacency();
        adj.iter().enumerate().all(|(t, nb)| {
            if nb.len() != 3 {
                return true;
            }
            let c: Vec<Mask> = nb.iter().map(|&u| self.cone(t, u)).collect();
            c[0] & c[1] == 0 && c[0] & c[2] == 0 && c[1] & c[2] == 0
        })
    }

    pub fn is_complete(&self) -> bool {
        self.leaves().into_iter().all(|t| size(self.atom(t)) == 1)
    }

    pub fn is_branch_decomposition(&self) -> bool {
        self.is_exact() && self.is_complete()
    }

    /// Directed decomposition rooted at a new node subdividing edge `edge`.
    ///
    /// The one-node tree maps to the one-node directed tree and takes no edge.
    pub fn to_directed(&self, edge: Option<usize>) -> Result<DirectedDecomposition> {
        if self.edges.is_empty() {
            return Ok(DirectedDecomposition::single(self.full));
        }
        let e = edge.ok_or_else(|| Error::pre("an edge to subdivide must be chosen"))?;
        if e >= self.edges.len() {
            return Err(Error::pre("edge index out of range"));
        }
        let (s0, s1) = self.edges[e];
        let adj = self.adjacency();
        let root = self.nodes;
        let mut parent = vec![None; self.nodes + 1];
        let mut children: Vec<Option<(usize, usize)>> = vec![None; self.nodes + 1];
        let mut cone = vec![0; self.nodes + 1];
        cone[root] = self.full;
        children[root] = Some((s0, s1));
        parent[s0] = Some(root);
        parent[s1] = Some(root);
        cone[s0] = self.cone(s1, s0);
        cone[s1] = self.cone(s0, s1);
        let mut stack = vec![(s0, s1), (s1, s0)];
        while let Some((t, from)) = stack.pop() {
            let kids: Vec<usize> = adj[t].iter().copied().filter(|&u| u != from).collect();
            match kids.as_slice() {
                [] => {}
                [a, b] => {
                    children[t] = Some((*a, *b));
                    for &c in &[*a, *b] {
                        parent[c] = Some(t);
                        cone[c] = self.cone(t, c);
                        stack.push((c, t));
                    }
                }
                _ => return Err(Error::invalid("undirected decomposition", format!("node {t} is not cubic"))),
            }
        }
        let d = DirectedDecomposition { full: self.full, root, parent, children, cone };
        d.validate()?;
        Ok(d)
    }
}

fn side_union(adj: &[Vec<usize>], start: usize, avoid: usize, leaf_set: &[Mask]) -> Mask {
    let mut acc = 0;
    let mut stack = vec![(start, avoid)];
    while let Some((t, from)) = stack.pop() {
        acc |= leaf_set.get(t).copied().unwrap_or(0);
        for &u in &adj[t] {
            if u != from {
                stack.push((u, t));
            }
        }
    }
    acc
}

/// Either kind of decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Directed(DirectedDecomposition),
    Undirected(UndirectedDecomposition),
}

impl Decomposition {
    pub fn width<S: Evaluate + ?Sized>(&self, sys: &S) -> i64 {
        match self {
            Decomposition::Directed(d) => d.width(sys),
            Decomposition::Undirected(d) => d.width(sys),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Decomposition::Directed(d) => d.validate(),
            Decomposition::Undirected(d) => d.validate(),
        }
    }

    pub fn separations(&self) -> BTreeSet<Mask> {
        match self {
            Decomposition::Directed(d) => d.separations(),
            Decomposition::Undirected(d) => d.separations(),
        }
    }
}

/// A width value together with a decomposition attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthCertificate {
    pub value: i64,
    pub witness: Decomposition,
}

impl WidthCertificate {
    /// Recompute the witness width and compare.
    pub fn check<S: Evaluate + ?Sized>(&self, sys: &S) -> Result<()> {
        self.witness.validate()?;
        let w = self.witness.width(sys);
        if w != self.value {
            return Err(Error::Inconsistent(format!("certificate claims {} but witness has width {w}", self.value)));
        }
        Ok(())
    }
}

/// Cones `{x}` for every element, in order: handy for leaf assignments.
pub fn singleton_leaves(full: Mask) -> Vec<Mask> {
    elements(full).map(bit).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DirectedDecomposition {
        let s = Shape::node(Shape::node(Shape::elem(0), Shape::elem(1)), Shape::node(Shape::elem(2), Shape::elem(3)));
        DirectedDecomposition::from_shape(&s, 0b1111).unwrap()
    }

    #[test]
    fn shape_builds_exact_complete() {
        let d = sample();
        assert_eq!(d.len(), 7);
        assert!(d.is_branch_decomposition());
        assert_eq!(d.atoms().len(), 4);
    }

    #[test]
    fn round_trip_preserves_separations() {
        let d = sample();
        let u = d.to_undirected().unwrap();
        u.validate().unwrap();
        assert!(u.is_branch_decomposition());
        assert_eq!(u.separations(), d.separations());
        assert_eq!(u.atoms(), d.atoms());
        for e in 0..u.edges().len() {
            let back = u.to_directed(Some(e)).unwrap();
            assert_eq!(back.separations(), d.separations());
            assert_eq!(back.atoms(), d.atoms());
        }
    }

    #[test]
    fn bad_cover_detected() {
        let r = DirectedDecomposition::from_parts(0b11, 0, vec![Some((1, 2)), None, None], vec![0b11, 0b01, 0b00]);
        assert!(matches!(r, Err(Error::Invalid { .. })));
    }
}
