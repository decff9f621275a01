//! Tangles: verification, enumeration, truncation, separations and covers.

mod graph;
mod linked;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::branchdec::AtomFamily;
use crate::error::{check_limit, Error, Result};
use crate::subset::{is_subset, lowest, size, submasks_of_size, Mask};
use crate::system::{ConnectivitySystem, Evaluate};

pub use graph::{
    all_graph_separations, g_tangle_from_kappa, g_tangle_from_touching, g_tangle_of_edge, is_g_tangle,
    kappa_tangle_from_g, touching_from_g_tangle, touches, ExceptionCase, GSeparation, GTangle, GTangleViolation,
    Subgraph, TouchingFamily,
};
pub use linked::{
    is_free, is_k_linked, is_well_linked, max_free_set, pi_x, tangle_from_well_linked, well_linked_witness,
};

/// A tangle: its members ("big sides") together with its order.
///
/// Members are kept sorted by bitmask, so equal tangles compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tangle {
    order: i64,
    members: Vec<Mask>,
}

impl Tangle {
    pub fn new(order: i64, mut members: Vec<Mask>) -> Tangle {
        members.sort_unstable();
        members.dedup();
        Tangle { order, members }
    }

    /// The empty tangle of order 0.
    pub fn empty() -> Tangle {
        Tangle { order: 0, members: Vec::new() }
    }

    /// All `X` with `κ(X) < k` that satisfy `pred`.
    pub fn from_predicate(sys: &ConnectivitySystem, k: i64, pred: impl Fn(Mask) -> bool) -> Result<Tangle> {
        let members = sys.separations_below(k)?.into_iter().filter(|&x| pred(x)).collect();
        Ok(Tangle::new(k, members))
    }

    pub fn order(&self) -> i64 {
        self.order
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

    /// Inclusion-minimal members, ascending.
    pub fn minimal_members(&self) -> Vec<Mask> {
        minimal(&self.members)
    }

    /// Members of order below `j`, annotated with order `j`.
    pub fn truncate<S: Evaluate + ?Sized>(&self, sys: &S, j: i64) -> Result<Tangle> {
        if j < 0 || j > self.order {
            return Err(Error::pre(format!("cannot truncate a tangle of order {} to order {j}", self.order)));
        }
        Ok(Tangle::new(j, self.members.iter().copied().filter(|&x| sys.eval(x) < j).collect()))
    }

    /// Whether `self` extends `other`.
    pub fn extends(&self, other: &Tangle) -> bool {
        other.order <= self.order && other.members.iter().all(|&x| self.contains(x))
    }

    pub fn avoids(&self, family: &AtomFamily) -> bool {
        self.members.iter().all(|&x| !family.contains(x))
    }

    /// Whether `s` meets every member.
    pub fn is_cover(&self, s: Mask) -> bool {
        self.members.iter().all(|&x| x & s != 0)
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tangle of order {} with {} members", self.order, self.members.len())
    }
}

pub fn is_extension(t: &Tangle, t2: &Tangle) -> bool {
    t.extends(t2)
}

pub fn incomparable(t: &Tangle, t2: &Tangle) -> bool {
    !t.extends(t2) && !t2.extends(t)
}

fn minimal(sets: &[Mask]) -> Vec<Mask> {
    let mut by_size: Vec<Mask> = sets.to_vec();
    by_size.sort_unstable_by_key(|&x| (size(x), x));
    let mut out: Vec<Mask> = Vec::new();
    for x in by_size {
        if !out.iter().any(|&m| is_subset(m, x)) {
            out.push(x);
        }
    }
    out.sort_unstable();
    out
}

/// The axiom a candidate tangle breaks, with the sets involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangleViolation {
    /// A member of order at least `k`.
    Order(Mask),
    /// A separation with neither side a member.
    Unoriented(Mask),
    /// A separation with both sides members.
    BothSides(Mask),
    /// Three members with empty intersection.
    EmptyTriple(Mask, Mask, Mask),
    /// A singleton member.
    Singleton(Mask),
}

impl fmt::Display for TangleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleViolation::Order(x) => write!(f, "T0: member {x:#x} has order too large"),
            TangleViolation::Unoriented(x) => write!(f, "T1: neither {x:#x} nor its complement is a member"),
            TangleViolation::BothSides(x) => write!(f, "T1: both {x:#x} and its complement are members"),
            TangleViolation::EmptyTriple(a, b, c) => write!(f, "T2: {a:#x}, {b:#x}, {c:#x} have empty intersection"),
            TangleViolation::Singleton(x) => write!(f, "T3: singleton member {x:#x}"),
        }
    }
}

/// First violated axiom, or `None` for a tangle.
pub fn tangle_violation(sys: &ConnectivitySystem, t: &Tangle) -> Result<Option<TangleViolation>> {
    let k = t.order;
    let full = sys.full();
    if let Some(&x) = t.members.iter().find(|&&x| sys.eval(x) >= k || x & !full != 0) {
        return Ok(Some(TangleViolation::Order(x)));
    }
    for x in sys.separations_below(k)? {
        match (t.contains(x), t.contains(full & !x)) {
            (false, false) => return Ok(Some(TangleViolation::Unoriented(x))),
            (true, true) => return Ok(Some(TangleViolation::BothSides(x))),
            _ => {}
        }
    }
    let m = t.minimal_members();
    for (i, &a) in m.iter().enumerate() {
        for (j, &b) in m.iter().enumerate().skip(i) {
            if a & b == 0 {
                return Ok(Some(TangleViolation::EmptyTriple(a, a, b)));
            }
            if let Some(&c) = m[j..].iter().find(|&&c| a & b & c == 0) {
                return Ok(Some(TangleViolation::EmptyTriple(a, b, c)));
            }
        }
    }
    if let Some(&x) = t.members.iter().find(|&&x| size(x) == 1) {
        return Ok(Some(TangleViolation::Singleton(x)));
    }
    Ok(None)
}

pub fn is_tangle(sys: &ConnectivitySystem, t: &Tangle) -> Result<bool> {
    tangle_violation(sys, t).map(|v| v.is_none())
}

/// All tangles of order exactly `k`, sorted.
pub fn enumerate_tangles(sys: &ConnectivitySystem, k: i64) -> Result<Vec<Tangle>> {
    Ok(tangles_by_order(sys, k)?.pop().unwrap_or_default())
}

/// Entry `j` holds all tangles of order `j`, for `j = 0..=kmax`.
///
/// Each order-`j` tangle is grown from its order-`(j-1)` truncation by
/// orienting the separations of order exactly `j-1`.
pub fn tangles_by_order(sys: &ConnectivitySystem, kmax: i64) -> Result<Vec<Vec<Tangle>>> {
    check_limit("enumerate_tangles", sys.n(), sys.enumeration_limit(sys.limits().enumerate))?;
    if kmax < 0 {
        return Ok(Vec::new());
    }
    let mut levels = vec![vec![Tangle::empty()]];
    for k in 1..=kmax {
        let next = grow_level(sys, levels.last().expect("level"), k)?;
        levels.push(next);
    }
    Ok(levels)
}

/// Tangles with no extension of the next order, for orders up to `kmax`.
pub fn maximal_tangles(levels: &[Vec<Tangle>]) -> Vec<Tangle> {
    let mut out = Vec::new();
    for (j, level) in levels.iter().enumerate() {
        for t in level {
            let extended = levels.get(j + 1).is_some_and(|up| up.iter().any(|u| u.extends(t)));
            if !extended {
                out.push(t.clone());
            }
        }
    }
    out
}

/// Every tangle, by order, up to the first order with none.
///
/// The last entry is always empty, so [`maximal_tangles`] on the result
/// sees every tangle's possible extensions.
pub fn all_tangles(sys: &ConnectivitySystem) -> Result<Vec<Vec<Tangle>>> {
    check_limit("enumerate_tangles", sys.n(), sys.enumeration_limit(sys.limits().enumerate))?;
    let mut levels = vec![vec![Tangle::empty()]];
    while !levels.last().expect("level").is_empty() {
        let k = levels.len() as i64;
        let next = grow_level(sys, levels.last().expect("level"), k)?;
        levels.push(next);
    }
    Ok(levels)
}

/// Largest order with a tangle; equals the branch width.
pub fn max_tangle_order(sys: &ConnectivitySystem) -> Result<i64> {
    Ok(all_tangles(sys)?.len() as i64 - 2)
}

fn grow_level(sys: &ConnectivitySystem, prev: &[Tangle], k: i64) -> Result<Vec<Tangle>> {
    let full = sys.full();
    let mut pairs: Vec<Mask> =
        sys.separations_below(k)?.into_iter().filter(|&x| sys.eval(x) == k - 1 && x <= full & !x).collect();
    pairs.sort_unstable_by_key(|&x| (size(x).min(size(full & !x)), x));
    let mut next = Vec::new();
    for t in prev {
        let state = Growth { min: t.minimal_members(), chosen: Vec::new() };
        let mut ctx = Extend { sys, k, full, pairs: &pairs, base: t, out: &mut next };
        ctx.run(state, 0);
    }
    next.sort();
    Ok(next)
}

#[derive(Clone)]
struct Growth {
    /// Inclusion-minimal sets known to be members.
    min: Vec<Mask>,
    chosen: Vec<Mask>,
}

struct Extend<'a> {
    sys: &'a ConnectivitySystem,
    k: i64,
    full: Mask,
    pairs: &'a [Mask],
    base: &'a Tangle,
    out: &'a mut Vec<Tangle>,
}

impl Extend<'_> {
    fn run(&mut self, mut st: Growth, mut i: usize) {
        while i < self.pairs.len() {
            let x = self.pairs[i];
            let xc = self.full & !x;
            let fx = st.min.iter().any(|&m| is_subset(m, x));
            let fxc = st.min.iter().any(|&m| is_subset(m, xc));
            match (fx, fxc) {
                (true, true) => return,
                (true, false) => st.chosen.push(x),
                (false, true) => st.chosen.push(xc),
                (false, false) => {
                    let mut alt = st.clone();
                    if self.admit(&mut alt, x) {
                        alt.chosen.push(x);
                        self.run(alt, i + 1);
                    }
                    if !self.admit(&mut st, xc) {
                        return;
                    }
                    st.chosen.push(xc);
                }
            }
            i += 1;
        }
        let mut members = self.base.members.clone();
        members.extend(st.chosen);
        self.out.push(Tangle::new(self.k, members));
    }

    /// Add `z` as a member together with every intersection it forces.
    fn admit(&self, st: &mut Growth, z: Mask) -> bool {
        let mut queue = vec![z];
        while let Some(z) = queue.pop() {
            if st.min.iter().any(|&m| is_subset(m, z)) {
                continue;
            }
            if size(z) <= 1 {
                return false;
            }
            for (i, &a) in st.min.iter().enumerate() {
                let za = z & a;
                if za == 0 || st.min[i..].iter().any(|&b| za & b == 0) {
                    return false;
                }
            }
            for &m in &st.min {
                let w = z & m;
                if self.sys.eval(w) < self.k {
                    queue.push(w);
                }
            }
            st.min.retain(|&m| !is_subset(z, m));
            st.min.push(z);
        }
        true
    }
}

/// Leftmost minimum `(T, T′)`-separation.
pub fn leftmost_min_tangle_separation(sys: &ConnectivitySystem, t: &Tangle, t2: &Tangle) -> Result<Mask> {
    let full = sys.full();
    let seps: Vec<Mask> = t.members.iter().copied().filter(|&x| t2.contains(full & !x)).collect();
    let best = seps.iter().map(|&x| sys.eval(x)).min().ok_or_else(|| Error::pre("tangles are comparable"))?;
    let minimum: Vec<Mask> = seps.into_iter().filter(|&x| sys.eval(x) == best).collect();
    let x = *minimum.iter().min_by_key(|&&x| (size(x), x)).expect("nonempty");
    if let Some(&y) = minimum.iter().find(|&&y| !is_subset(x, y)) {
        return Err(Error::Inconsistent(format!("minimum separation {x:#x} is not inside {y:#x}")));
    }
    Ok(x)
}

/// Cover of size at most the order, built one element per order level.
pub fn greedy_cover(sys: &ConnectivitySystem, t: &Tangle) -> Mask {
    let mut s: Mask = 0;
    for i in 0..t.order {
        let pick =
            t.members.iter().copied().filter(|&x| x & s == 0 && sys.eval(x) < i + 1).min_by_key(|&x| (sys.eval(x), size(x), x));
        if let Some(x) = pick {
            s |= 1 << lowest(x).expect("members are nonempty");
        }
    }
    debug_assert!(t.is_cover(s));
    s
}

/// Smallest cover; ties go to the smallest bitmask.
pub fn minimum_cover(sys: &ConnectivitySystem, t: &Tangle) -> Result<Mask> {
    check_limit("minimum_cover", sys.n(), sys.limits().min_cover)?;
    let min = t.minimal_members();
    let full = sys.full();
    for c in 0..=sys.n() {
        if let Some(s) = submasks_of_size(full, c).into_iter().find(|&s| min.iter().all(|&x| x & s != 0)) {
            return Ok(s);
        }
    }
    Err(Error::Inconsistent("no cover found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete_graph, cycle_graph, path_graph};
    use crate::instances::{matching_connectivity, vertex_connectivity};

    #[test]
    fn empty_tangle_is_order_zero() {
        let sys = matching_connectivity(&cycle_graph(5));
        assert_eq!(enumerate_tangles(&sys, 0).unwrap(), vec![Tangle::empty()]);
        assert!(is_tangle(&sys, &Tangle::empty()).unwrap());
    }

    #[test]
    fn cycle_mu_has_no_order_three_tangle() {
        let sys = matching_connectivity(&cycle_graph(5));
        assert!(!enumerate_tangles(&sys, 2).unwrap().is_empty());
        assert!(enumerate_tangles(&sys, 3).unwrap().is_empty());
        assert_eq!(max_tangle_order(&sys).unwrap(), 2);
    }

    #[test]
    fn k4_kappa_order_three() {
        let sys = vertex_connectivity(&complete_graph(4));
        let ts = enumerate_tangles(&sys, 3).unwrap();
        assert!(!ts.is_empty());
        for t in &ts {
            assert!(is_tangle(&sys, t).unwrap());
            let s = greedy_cover(&sys, t);
            assert!(t.is_cover(s) && size(s) as i64 <= t.order());
        }
    }

    #[test]
    fn truncation_and_extension() {
        let sys = vertex_connectivity(&complete_graph(4));
        let t = enumerate_tangles(&sys, 3).unwrap().remove(0);
        assert_eq!(t.truncate(&sys, 3).unwrap(), t);
        assert_eq!(t.truncate(&sys, 0).unwrap(), Tangle::empty());
        let lower = t.truncate(&sys, 2).unwrap();
        assert!(t.extends(&lower) && !lower.extends(&t));
        assert!(t.truncate(&sys, 4).is_err());
    }

    #[test]
    fn short_path_has_no_order_two_kappa_tangle() {
        let sys = vertex_connectivity(&path_graph(3));
        assert_eq!(enumerate_tangles(&sys, 1).unwrap().len(), 1);
        assert!(enumerate_tangles(&sys, 2).unwrap().is_empty());
        let sys = vertex_connectivity(&path_graph(2));
        assert!(enumerate_tangles(&sys, 1).unwrap().is_empty());
    }
}
