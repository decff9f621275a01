use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{check_limit, Error, Result};
use crate::subset::{bit, elements, size, submasks, Mask};
use crate::system::{ConnectivitySystem, Evaluate};

use super::{Decomposition, Shape, DirectedDecomposition, UndirectedDecomposition, WidthCertificate};

/// A subset-closed family of allowed atoms that contains every singleton.
#[derive(Clone)]
pub enum AtomFamily {
    /// `Sing(U) ∪ {∅}`.
    Singletons,
    /// `2^U`.
    All,
    /// Membership predicate with a name for reports.
    Predicate(String, Arc<dyn Fn(Mask) -> bool + Send + Sync>),
}

impl fmt::Debug for AtomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl AtomFamily {
    /// Family of all subsets of the given sets (plus singletons).
    pub fn generated_by(maximal: Vec<Mask>) -> AtomFamily {
        let name = format!("down-closure of {} sets", maximal.len());
        AtomFamily::Predicate(name, Arc::new(move |x| size(x) <= 1 || maximal.iter().any(|&m| x & !m == 0)))
    }

    pub fn contains(&self, x: Mask) -> bool {
        match self {
            AtomFamily::Singletons => size(x) <= 1,
            AtomFamily::All => true,
            AtomFamily::Predicate(_, f) => f(x),
        }
    }

    pub fn name(&self) -> String {
        match self {
            AtomFamily::Singletons => "singletons".into(),
            AtomFamily::All => "all".into(),
            AtomFamily::Predicate(n, _) => n.clone(),
        }
    }
}

/// Exact branch width by dynamic programming over all subsets.
pub fn branch_width<S: Evaluate + ?Sized>(sys: &S, dp_limit: usize) -> Result<WidthCertificate> {
    let n = sys.n();
    check_limit("branch_width (use trisection_upper_bound for larger inputs)", n, dp_limit)?;
    let full = sys.full();
    if n <= 1 {
        let d = DirectedDecomposition::single(full);
        return Ok(WidthCertificate { value: d.width(sys), witness: Decomposition::Directed(d) });
    }
    let mut g = vec![i64::MAX; 1usize << n];
    let mut split = vec![0 as Mask; 1usize << n];
    for x in 1..=full {
        if size(x) == 1 {
            g[x as usize] = sys.eval(x);
            continue;
        }
        let mut best = i64::MAX;
        let mut arg = 0;
        for y in submasks(x) {
            if y == 0 || y == x {
                continue;
            }
            let v = g[y as usize].max(g[(x ^ y) as usize]);
            if v < best {
                best = v;
                arg = y;
            }
        }
        g[x as usize] = best.max(sys.eval(x));
        split[x as usize] = arg;
    }
    let mut d = DirectedDecomposition { full, root: 0, parent: vec![], children: vec![], cone: vec![] };
    build(&mut d, full, None, &|x| if size(x) <= 1 { None } else { Some(split[x as usize]) });
    d.validate()?;
    Ok(WidthCertificate { value: g[full as usize], witness: Decomposition::Directed(d) })
}

fn build(d: &mut DirectedDecomposition, x: Mask, parent: Option<usize>, split: &dyn Fn(Mask) -> Option<Mask>) -> usize {
    let id = d.cone.len();
    d.parent.push(parent);
    d.children.push(None);
    d.cone.push(x);
    if let Some(y) = split(x) {
        let a = build(d, y, Some(id), split);
        let b = build(d, x ^ y, Some(id), split);
        d.children[id] = Some((a, b));
    }
    id
}

/// A decomposition of width `< k` whose atoms all lie in `family`, if one exists.
///
/// Top-down search over sets of order `< k`, memoised per set. Systems with a
/// structural separation enumerator are searched through that list, others
/// through all submasks.
pub fn decompose_over(sys: &ConnectivitySystem, family: &AtomFamily, k: i64) -> Result<Option<DirectedDecomposition>> {
    let n = sys.n();
    if let Some(i) = (0..n).find(|&i| !family.contains(bit(i))) {
        return Err(Error::pre(format!("atom family misses the singleton {}", sys.universe().label(i))));
    }
    if !sys.has_structural_separations() {
        check_limit("decompose_over", n, sys.limits().dp)?;
    }
    let full = sys.full();
    if k <= 0 || sys.eval(full) >= k {
        return Ok(None);
    }
    let low: Vec<Mask> = if sys.has_structural_separations() { sys.separations_below(k)? } else { Vec::new() };
    let mut memo: HashMap<Mask, Option<Mask>> = HashMap::new();
    let mut search = Search { sys, family, k, low: &low, memo: &mut memo };
    if !search.feasible(full) {
        return Ok(None);
    }
    let mut d = DirectedDecomposition { full, root: 0, parent: vec![], children: vec![], cone: vec![] };
    build(&mut d, full, None, &|x| match memo.get(&x) {
        Some(Some(y)) if *y != 0 => Some(*y),
        _ => None,
    });
    d.validate()?;
    Ok(Some(d))
}

struct Search<'a> {
    sys: &'a ConnectivitySystem,
    family: &'a AtomFamily,
    k: i64,
    low: &'a [Mask],
    /// `Some(0)`: atom, `Some(y)`: split off `y`, `None`: infeasible.
    memo: &'a mut HashMap<Mask, Option<Mask>>,
}

impl Search<'_> {
    fn feasible(&mut self, x: Mask) -> bool {
        if let Some(r) = self.memo.get(&x) {
            return r.is_some();
        }
        if self.sys.eval(x) >= self.k {
            self.memo.insert(x, None);
            return false;
        }
        if self.family.contains(x) {
            self.memo.insert(x, Some(0));
            return true;
        }
        let cands: Vec<Mask> = if self.sys.has_structural_separations() {
            self.low.iter().copied().filter(|&y| y != 0 && y != x && y & !x == 0 && y < x ^ y).collect()
        } else {
            submasks(x).filter(|&y| y != 0 && y != x && y < x ^ y).collect()
        };
        for y in cands {
            if self.sys.eval(y) >= self.k || self.sys.eval(x ^ y) >= self.k {
                continue;
            }
            if self.feasible(y) && self.feasible(x ^ y) {
                self.memo.insert(x, Some(y));
                return true;
            }
        }
        self.memo.insert(x, None);
        false
    }
}

/// Three balanced blocks by index, each a balanced binary tree, joined at a centre.
pub fn trisection_upper_bound<S: Evaluate + ?Sized>(sys: &S) -> Result<WidthCertificate> {
    let n = sys.n();
    let full = sys.full();
    if n <= 2 {
        let d = if n == 2 {
            DirectedDecomposition::from_parts(full, 0, vec![Some((1, 2)), None, None], vec![full, 0b01, 0b10])?
        } else {
            DirectedDecomposition::single(full)
        };
        return Ok(WidthCertificate { value: d.width(sys), witness: Decomposition::Directed(d) });
    }
    let elems: Vec<usize> = elements(full).collect();
    let mut edges = Vec::new();
    let mut leaf_set = vec![0];
    let mut start = 0;
    for i in 0..3 {
        let len = n / 3 + usize::from(i < n % 3);
        let r = binary_tree(&elems[start..start + len], &mut edges, &mut leaf_set);
        edges.push((0, r));
        start += len;
    }
    let nodes = leaf_set.len();
    let d = UndirectedDecomposition::from_leaf_sets(full, nodes, edges, &leaf_set)?;
    Ok(WidthCertificate { value: d.width(sys), witness: Decomposition::Undirected(d) })
}

/// Balanced binary tree over each nonempty block, with the block trees
/// joined left to right. Every cone is a union of elements from one block
/// or the complement of such a union.
pub fn blockwise_decomposition(full: Mask, blocks: &[Mask]) -> Result<DirectedDecomposition> {
    let mut seen = 0;
    for &b in blocks {
        if b & seen != 0 {
            return Err(Error::pre("blocks overlap"));
        }
        seen |= b;
    }
    if seen != full {
        return Err(Error::pre("blocks do not cover the universe"));
    }
    let shape = blocks
        .iter()
        .filter(|&&b| b != 0)
        .map(|&b| balanced_shape(&elements(b).collect::<Vec<_>>()))
        .reduce(Shape::node);
    match shape {
        Some(s) => DirectedDecomposition::from_shape(&s, full),
        None => Ok(DirectedDecomposition::single(full)),
    }
}

fn balanced_shape(elems: &[usize]) -> Shape {
    if elems.len() == 1 {
        return Shape::elem(elems[0]);
    }
    let mid = elems.len() / 2;
    Shape::node(balanced_shape(&elems[..mid]), balanced_shape(&elems[mid..]))
}

fn binary_tree(elems: &[usize], edges: &mut Vec<(usize, usize)>, leaf_set: &mut Vec<Mask>) -> usize {
    let id = leaf_set.len();
    if elems.len() == 1 {
        leaf_set.push(bit(elems[0]));
        return id;
    }
    leaf_set.push(0);
    let mid = elems.len() / 2;
    let a = binary_tree(&elems[..mid], edges, leaf_set);
    let b = binary_tree(&elems[mid..], edges, leaf_set);
    edges.push((id, a));
    edges.push((id, b));
    id
}
