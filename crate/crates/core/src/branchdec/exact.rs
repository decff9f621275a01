use crate::error::{Error, Result};
use crate::subset::{is_subset, size, Mask};
use crate::system::Evaluate;

use super::DirectedDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactifyCase {
    /// Shrink both children to their intersection with the parent.
    ShrinkChildren,
    /// Grow the parent by one child.
    GrowParent,
    /// Make overlapping children disjoint.
    Disjoin,
}

/// One iteration of `exactify`, with the (total weight, total size) measure after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactifyStep {
    pub node: usize,
    pub case: ExactifyCase,
    pub measure: (i64, usize),
}

/// Exact decomposition on the same tree with no larger cone orders and no larger leaves.
pub fn exactify<S: Evaluate + ?Sized>(d: &DirectedDecomposition, sys: &S) -> Result<DirectedDecomposition> {
    exactify_traced(d, sys).map(|(d, _)| d)
}

fn measure<S: Evaluate + ?Sized>(cone: &[Mask], sys: &S) -> (i64, usize) {
    (cone.iter().map(|&c| sys.eval(c)).sum(), cone.iter().map(|&c| size(c)).sum())
}

/// As [`exactify`], also returning every step taken.
///
/// The step invariants are checked as the loop runs; a violation (possible
/// only if the function is not a connectivity function) is an error.
pub fn exactify_traced<S: Evaluate + ?Sized>(
    d: &DirectedDecomposition,
    sys: &S,
) -> Result<(DirectedDecomposition, Vec<ExactifyStep>)> {
    d.validate()?;
    if d.full != sys.full() {
        return Err(Error::pre("decomposition and system have different universes"));
    }
    let k = |m: Mask| sys.eval(m);
    let mut g = d.cone.clone();
    let mut steps = Vec::new();
    let mut last = measure(&g, sys);
    while let Some(s) = (0..g.len()).find(|&t| !exact_at(d, &g, t)) {
        let (t1, t2) = d.children[s].expect("non-exact node is internal");
        let (x, y1, y2) = (g[s], g[t1], g[t2]);
        let before = g.clone();
        let case = if x != y1 | y2 {
            if k(x & y1) <= k(y1) && k(x & y2) <= k(y2) {
                g[t1] = x & y1;
                g[t2] = x & y2;
                ExactifyCase::ShrinkChildren
            } else {
                g[s] = if k(x | y1) < k(x) {
                    x | y1
                } else if k(x | y2) < k(x) {
                    x | y2
                } else {
                    return Err(Error::Inconsistent(format!("no submodular growth at node {s}")));
                };
                ExactifyCase::GrowParent
            }
        } else if k(y1 & !y2) <= k(y1) {
            g[t1] = y1 & !y2;
            ExactifyCase::Disjoin
        } else if k(y2 & !y1) <= k(y2) {
            g[t2] = y2 & !y1;
            ExactifyCase::Disjoin
        } else {
            return Err(Error::Inconsistent(format!("no posimodular shrink at node {s}")));
        };
        for t in 0..g.len() {
            let ok_order = k(g[t]) <= k(before[t]);
            let ok_shape = is_subset(g[t], before[t]) || k(g[t]) < k(before[t]);
            let ok_leaf = !d.is_leaf(t) || is_subset(g[t], before[t]);
            if !(ok_order && ok_shape && ok_leaf) {
                return Err(Error::Inconsistent(format!("exactify invariant broken at node {t}")));
            }
        }
        let now = measure(&g, sys);
        if now >= last {
            return Err(Error::Inconsistent("exactify measure did not decrease".into()));
        }
        last = now;
        steps.push(ExactifyStep { node: s, case, measure: now });
    }
    let mut out = d.clone();
    out.cone = g;
    out.validate()?;
    Ok((out, steps))
}

fn exact_at(d: &DirectedDecomposition, g: &[Mask], t: usize) -> bool {
    match d.children[t] {
        None => true,
        Some((a, b)) => g[a] & g[b] == 0 && g[a] | g[b] == g[t],
    }
}

/// Remove empty atoms: each empty node goes, and its sibling takes the parent's place.
pub fn prune_empty_leaves(d: &DirectedDecomposition) -> Result<DirectedDecomposition> {
    if d.full == 0 {
        return Err(Error::pre("empty universe"));
    }
    if !d.is_exact() {
        return Err(Error::pre("decomposition is not exact"));
    }
    let mut out = DirectedDecomposition { full: d.full, root: 0, parent: vec![], children: vec![], cone: vec![] };
    rebuild(d, d.root, None, &mut out);
    out.validate()?;
    Ok(out)
}

fn rebuild(d: &DirectedDecomposition, t: usize, parent: Option<usize>, out: &mut DirectedDecomposition) -> Option<usize> {
    if d.cone[t] == 0 {
        return None;
    }
    match d.children[t] {
        None => Some(push(out, parent, d.cone[t])),
        Some((a, b)) => match (d.cone[a] != 0, d.cone[b] != 0) {
            (true, true) => {
                let id = push(out, parent, d.cone[t]);
                let l = rebuild(d, a, Some(id), out).expect("nonempty child");
                let r = rebuild(d, b, Some(id), out).expect("nonempty child");
                out.children[id] = Some((l, r));
                Some(id)
            }
            (true, false) => rebuild(d, a, parent, out),
            (false, true) => rebuild(d, b, parent, out),
            (false, false) => unreachable!("exact node with nonempty cone has a nonempty child"),
        },
    }
}

fn push(out: &mut DirectedDecomposition, parent: Option<usize>, cone: Mask) -> usize {
    out.parent.push(parent);
    out.children.push(None);
    out.cone.push(cone);
    out.cone.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::Universe;
    use crate::system::SetFunction;

    fn cut2() -> SetFunction {
        SetFunction::new(Universe::indexed(2), |x| i64::from(x == 1 || x == 2))
    }

    #[test]
    fn overlapping_children_become_disjoint() {
        let d = DirectedDecomposition::from_parts(0b11, 0, vec![Some((1, 2)), None, None], vec![0b11, 0b11, 0b11])
            .unwrap();
        let f = cut2();
        let (e, steps) = exactify_traced(&d, &f).unwrap();
        assert!(e.is_exact());
        assert!(!steps.is_empty());
        assert!(e.width(&f) <= d.width(&f));
        for t in e.leaves() {
            assert!(is_subset(e.cone(t), d.cone(t)));
        }
    }

    #[test]
    fn exact_input_is_fixpoint() {
        let d = DirectedDecomposition::from_parts(0b11, 0, vec![Some((1, 2)), None, None], vec![0b11, 0b01, 0b10])
            .unwrap();
        assert_eq!(exactify(&d, &cut2()).unwrap(), d);
    }

    #[test]
    fn empty_leaf_pair_collapses() {
        let d = DirectedDecomposition::from_parts(
            0b11,
            0,
            vec![Some((1, 2)), Some((3, 4)), None, None, None],
            vec![0b11, 0b01, 0b10, 0b00, 0b01],
        )
        .unwrap();
        let p = prune_empty_leaves(&d).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.is_branch_decomposition());
    }
}
