//! Nested sets of separations and the tree decompositions they induce.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{is_subset, Mask};
use crate::system::Evaluate;

/// A set of subsets, meant to be nested and closed under complementation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct NestedSeparationSet {
    members: Vec<Mask>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NestedViolation {
    Crossing(Mask, Mask),
    MissingComplement(Mask),
}

impl fmt::Display for NestedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NestedViolation::Crossing(x, y) => write!(f, "{x:#x} and {y:#x} cross"),
            NestedViolation::MissingComplement(x) => write!(f, "complement of {x:#x} is missing"),
        }
    }
}

/// Whether the four corners of `x` and `y` are not all nonempty.
pub fn nested(full: Mask, x: Mask, y: Mask) -> bool {
    let (xc, yc) = (full & !x, full & !y);
    x & y == 0 || x & yc == 0 || xc & y == 0 || xc & yc == 0
}

impl NestedSeparationSet {
    /// Sorted and deduplicated; not validated.
    pub fn new(mut members: Vec<Mask>) -> Self {
        members.sort_unstable();
        members.dedup();
        NestedSeparationSet { members }
    }

    pub fn empty() -> Self {
        NestedSeparationSet::default()
    }

    /// The given sets together with their complements.
    pub fn closure(full: Mask, sets: impl IntoIterator<Item = Mask>) -> Self {
        NestedSeparationSet::new(sets.into_iter().flat_map(|x| [x, full & !x]).collect())
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Mask) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn violation(&self, full: Mask) -> Option<NestedViolation> {
        if let Some(&x) = self.members.iter().find(|&&x| !self.contains(full & !x)) {
            return Some(NestedViolation::MissingComplement(x));
        }
        for (i, &x) in self.members.iter().enumerate() {
            if let Some(&y) = self.members[i + 1..].iter().find(|&&y| !nested(full, x, y)) {
                return Some(NestedViolation::Crossing(x, y));
            }
        }
        None
    }

    pub fn validate(&self, full: Mask) -> Result<()> {
        if let Some(&x) = self.members.iter().find(|&&x| x & !full != 0) {
            return Err(Error::pre(format!("{x:#x} lies outside the universe")));
        }
        match self.violation(full) {
            Some(v) => Err(Error::pre(format!("separation set is not nested: {v}"))),
            None => Ok(()),
        }
    }
}

/// Rooted tree with disjoint bags covering the universe. Node 0 is the root
/// and every parent has a smaller index than its children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetTreeDecomposition {
    full: Mask,
    parent: Vec<Option<usize>>,
    bags: Vec<Mask>,
    /// Union of the bags in the subtree below each node.
    #[serde(skip)]
    below: Vec<Mask>,
}

impl SetTreeDecomposition {
    pub fn from_parents(full: Mask, parent: Vec<Option<usize>>, bags: Vec<Mask>) -> Result<Self> {
        let n = bags.len();
        let bad = |c: &str| Err(Error::invalid("tree decomposition", c));
        if n == 0 || parent.len() != n || parent[0].is_some() {
            return bad("node 0 must be the only root");
        }
        if (1..n).any(|t| !matches!(parent[t], Some(p) if p < t)) {
            return bad("parents must precede children");
        }
        let mut seen = 0;
        for &b in &bags {
            if b & seen != 0 {
                return bad("bags overlap");
            }
            seen |= b;
        }
        if seen != full {
            return bad("bags do not cover the universe");
        }
        let mut below = bags.clone();
        for t in (1..n).rev() {
            let p = parent[t].expect("non-root");
            below[p] |= below[t];
        }
        Ok(SetTreeDecomposition { full, parent, bags, below })
    }

    /// Re-check the structure against a universe.
    pub fn validate(&self, full: Mask) -> Result<()> {
        if full != self.full {
            return Err(Error::invalid("tree decomposition", "wrong universe"));
        }
        SetTreeDecomposition::from_parents(full, self.parent.clone(), self.bags.clone()).map(|_| ())
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn full(&self) -> Mask {
        self.full
    }

    pub fn bag(&self, t: usize) -> Mask {
        self.bags[t]
    }

    pub fn bags(&self) -> &[Mask] {
        &self.bags
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, t: usize) -> Vec<usize> {
        (t + 1..self.len()).filter(|&c| self.parent[c] == Some(t)).collect()
    }

    pub fn neighbours(&self, t: usize) -> Vec<usize> {
        self.parent[t].into_iter().chain(self.children(t)).collect()
    }

    pub fn depth(&self, mut t: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[t] {
            t = p;
            d += 1;
        }
        d
    }

    /// Nodes of degree at most one.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.neighbours(t).len() <= 1).collect()
    }

    /// `(parent, child)` pairs.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        (1..self.len()).map(|t| (self.parent[t].expect("non-root"), t)).collect()
    }

    /// Both orientations of every tree edge.
    pub fn oriented_edges(&self) -> Vec<(usize, usize)> {
        self.tree_edges().into_iter().flat_map(|(p, c)| [(p, c), (c, p)]).collect()
    }

    /// Union of the bags on `b`'s side of the edge `ab`.
    pub fn cone(&self, a: usize, b: usize) -> Mask {
        if self.parent[b] == Some(a) {
            self.below[b]
        } else if self.parent[a] == Some(b) {
            self.full & !self.below[a]
        } else {
            panic!("{a} and {b} are not adjacent")
        }
    }

    /// Whether `v` lies on `b`'s side of the edge `ab`.
    pub fn separates(&self, a: usize, b: usize, v: usize) -> bool {
        let in_subtree = |top: usize| {
            let mut x = v;
            loop {
                if x == top {
                    return true;
                }
                match self.parent[x] {
                    Some(p) => x = p,
                    None => return false,
                }
            }
        };
        if self.parent[b] == Some(a) {
            in_subtree(b)
        } else {
            !in_subtree(a)
        }
    }

    /// Nodes on the path from `u` to `v`, both included.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let up = |mut x: usize| {
            let mut out = vec![x];
            while let Some(p) = self.parent[x] {
                out.push(p);
                x = p;
            }
            out
        };
        let (pu, pv) = (up(u), up(v));
        let meet = *pu.iter().find(|x| pv.contains(x)).expect("common root");
        let mut path: Vec<usize> = pu.iter().copied().take_while(|&x| x != meet).collect();
        path.push(meet);
        let tail: Vec<usize> = pv.iter().copied().take_while(|&x| x != meet).collect();
        path.extend(tail.into_iter().rev());
        path
    }

    /// For each node, how many marked nodes its subtree contains.
    pub fn subtree_counts(&self, marked: &[bool]) -> Vec<usize> {
        let mut cnt: Vec<usize> = marked.iter().map(|&m| usize::from(m)).collect();
        for t in (1..self.len()).rev() {
            let p = self.parent[t].expect("non-root");
            cnt[p] += cnt[t];
        }
        cnt
    }

    /// `Sep(T, β)`.
    pub fn separations(&self) -> BTreeSet<Mask> {
        self.oriented_edges().into_iter().map(|(a, b)| self.cone(a, b)).collect()
    }
}

/// The tree decomposition whose separations are exactly `S`.
///
/// Built in rounds: each round peels off the inclusion-minimal members
/// with their complements, and the rounds are then replayed innermost
/// first, hanging one leaf per minimal set at the deepest node whose cone
/// contains it.
pub fn treedec_from_nested<S: Evaluate + ?Sized>(sys: &S, s: &NestedSeparationSet) -> Result<SetTreeDecomposition> {
    let full = sys.full();
    s.validate(full)?;
    let mut rest: BTreeSet<Mask> = s.members().iter().copied().collect();
    let mut rounds: Vec<Vec<Mask>> = Vec::new();
    while !rest.is_empty() {
        let mins: Vec<Mask> = rest.iter().copied().filter(|&x| !rest.iter().any(|&y| y != x && is_subset(y, x))).collect();
        for &x in &mins {
            rest.remove(&x);
            rest.remove(&(full & !x));
        }
        rounds.push(mins);
    }
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut bags: Vec<Mask> = vec![full];
    for mins in rounds.iter().rev() {
        if mins.contains(&0) {
            if mins.len() != 1 {
                return Err(Error::Inconsistent("empty set is minimal together with other sets".into()));
            }
            parent.push(Some(0));
            bags.push(0);
            continue;
        }
        let cur = SetTreeDecomposition::from_parents(full, parent.clone(), bags.clone())?;
        let mut attach = Vec::with_capacity(mins.len());
        for &x in mins {
            let fits: Vec<usize> = (1..cur.len()).filter(|&t| is_subset(x, cur.below[t])).collect();
            let deepest = fits.iter().map(|&t| cur.depth(t)).max();
            let at: Vec<usize> = fits.into_iter().filter(|&t| Some(cur.depth(t)) == deepest).collect();
            if at.len() > 1 {
                return Err(Error::Inconsistent(format!("{x:#x} fits at several nodes of the same depth")));
            }
            attach.push(at.first().copied().unwrap_or(0));
        }
        let taken = mins.iter().fold(0, |acc, &x| acc | x);
        for b in bags.iter_mut() {
            *b &= !taken;
        }
        for (&x, &t) in mins.iter().zip(&attach) {
            parent.push(Some(t));
            bags.push(x);
        }
    }
    let out = SetTreeDecomposition::from_parents(full, parent, bags)?;
    let seps = out.separations();
    if seps.len() != s.len() || !s.members().iter().all(|x| seps.contains(x)) {
        return Err(Error::Inconsistent("separations of the tree differ from the nested set".into()));
    }
    Ok(out)
}
