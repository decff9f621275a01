//! Nested separation sets, tree decompositions of a connectivity system,
//! tangle-tree decompositions and the canonical decomposition into maximal
//! tangles.

mod iso;
mod nested;

use std::collections::BTreeSet;

use crate::error::{check_limit, Error, Result};
use crate::instances::{contract, ContractionSystem, Graph};
use crate::graphbridge::GraphTreeDecomposition;
use crate::subset::{is_subset, Mask};
use crate::system::{ConnectivitySystem, Evaluate};

use crate::tangles::{all_tangles, incomparable, maximal_tangles, tangle_violation, tangles_by_order, Tangle};

pub use iso::{canonicity_test, isomorphic};
pub use nested::{treedec_from_nested, NestedSeparationSet, NestedViolation, SetTreeDecomposition};

/// A tree decomposition together with the node each tangle sits at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleTreeDecomposition {
    pub tree: SetTreeDecomposition,
    pub tangles: Vec<Tangle>,
    /// `tau[i]` is the node of `tangles[i]`.
    pub tau: Vec<usize>,
}

impl TangleTreeDecomposition {
    /// Index of the tangle placed at `t`.
    pub fn tangle_at(&self, t: usize) -> Option<usize> {
        self.tau.iter().position(|&s| s == t)
    }

    pub fn is_hub(&self, t: usize) -> bool {
        self.tangle_at(t).is_none()
    }

    pub fn hubs(&self) -> Vec<usize> {
        (0..self.tree.len()).filter(|&t| self.is_hub(t)).collect()
    }

    /// Check conditions (i) to (v) and that `τ` is the only placement
    /// satisfying (iii).
    pub fn verify(&self, sys: &ConnectivitySystem) -> Result<()> {
        let tree = &self.tree;
        let fail = |c: String| Err(Error::Inconsistent(format!("tangle tree: {c}")));
        let distinct: BTreeSet<usize> = self.tau.iter().copied().collect();
        if distinct.len() != self.tau.len() {
            return fail("τ is not injective".into());
        }
        for (i, t) in self.tangles.iter().enumerate() {
            for j in (i + 1)..self.tangles.len() {
                let t2 = &self.tangles[j];
                let path = tree.path(self.tau[i], self.tau[j]);
                let ok = path.windows(2).any(|w| is_min_separation(sys, tree.cone(w[1], w[0]), t, t2));
                if !ok {
                    return fail(format!("(i) fails for tangles {i} and {j}"));
                }
            }
        }
        for (a, b) in tree.oriented_edges() {
            let z = tree.cone(b, a);
            let ok = (0..self.tangles.len()).any(|i| {
                (0..self.tangles.len()).any(|j| {
                    i != j && {
                        let path = tree.path(self.tau[i], self.tau[j]);
                        path.windows(2).any(|w| w[0] == a && w[1] == b)
                            && is_min_separation(sys, z, &self.tangles[i], &self.tangles[j])
                    }
                })
            });
            if !ok {
                return fail(format!("(ii) fails at edge ({a}, {b})"));
            }
        }
        for (i, t) in self.tangles.iter().enumerate() {
            let at: Vec<usize> = (0..tree.len()).filter(|&s| points_inward(tree, t, s)).collect();
            if at != [self.tau[i]] {
                return fail(format!("(iii) holds at nodes {at:?} for tangle {i}, placed at {}", self.tau[i]));
            }
            for (a, b) in tree.oriented_edges() {
                let y = tree.cone(a, b);
                if tree.separates(a, b, self.tau[i]) && sys.eval(y) < t.order() && !t.contains(y) {
                    return fail(format!("(iv) fails for tangle {i} at edge ({a}, {b})"));
                }
            }
        }
        if let Some(l) = tree.leaves().into_iter().find(|&l| self.is_hub(l)) {
            return fail(format!("(v) fails: leaf {l} is a hub"));
        }
        Ok(())
    }
}

/// Whether every cone pointing at `s` is a member of `t`.
fn points_inward(tree: &SetTreeDecomposition, t: &Tangle, s: usize) -> bool {
    tree.neighbours(s).into_iter().all(|u| t.contains(tree.cone(u, s)))
}

/// Order of a minimum `(T, T′)`-separation, if the two are separated at all.
pub fn min_separation_order(sys: &ConnectivitySystem, t: &Tangle, t2: &Tangle) -> Option<i64> {
    let full = sys.full();
    t.members().iter().filter(|&&z| t2.contains(full & !z)).map(|&z| sys.eval(z)).min()
}

/// All minimum `(T, T′)`-separations.
pub fn min_separations(sys: &ConnectivitySystem, t: &Tangle, t2: &Tangle) -> Vec<Mask> {
    let full = sys.full();
    let Some(best) = min_separation_order(sys, t, t2) else {
        return Vec::new();
    };
    t.members().iter().copied().filter(|&z| t2.contains(full & !z) && sys.eval(z) == best).collect()
}

pub fn is_min_separation(sys: &ConnectivitySystem, z: Mask, t: &Tangle, t2: &Tangle) -> bool {
    t.contains(z) && t2.contains(sys.full() & !z) && min_separation_order(sys, t, t2) == Some(sys.eval(z))
}

/// Check TN1 and TN2 for a family of mutually incomparable tangles.
pub fn check_nested_for(sys: &ConnectivitySystem, fam: &[Tangle], s: &NestedSeparationSet) -> Result<()> {
    s.validate(sys.full())?;
    for i in 0..fam.len() {
        for j in (i + 1)..fam.len() {
            if !incomparable(&fam[i], &fam[j]) {
                return Err(Error::pre(format!("tangles {i} and {j} are comparable")));
            }
            if !s.members().iter().any(|&z| is_min_separation(sys, z, &fam[i], &fam[j])) {
                return Err(Error::pre(format!("TN1: no minimum separation of tangles {i} and {j}")));
            }
        }
    }
    for &z in s.members() {
        let ok = (0..fam.len()).any(|i| (0..fam.len()).any(|j| i != j && is_min_separation(sys, z, &fam[i], &fam[j])));
        if !ok {
            return Err(Error::pre(format!("TN2: {} separates no pair minimally", sys.universe().format(z))));
        }
    }
    Ok(())
}

/// Tree decomposition from `S` with every tangle of `fam` located at a node.
pub fn build_tangle_tree(sys: &ConnectivitySystem, fam: &[Tangle], s: &NestedSeparationSet) -> Result<TangleTreeDecomposition> {
    if fam.is_empty() {
        return Err(Error::pre("empty tangle family"));
    }
    check_nested_for(sys, fam, s)?;
    let tree = treedec_from_nested(sys, s)?;
    let mut tau = Vec::with_capacity(fam.len());
    for (i, t) in fam.iter().enumerate() {
        // Nodes that every low-order edge, oriented towards `t`, points at.
        let mut c: Vec<usize> = (0..tree.len()).collect();
        for (a, b) in tree.oriented_edges() {
            let y = tree.cone(a, b);
            if sys.eval(y) < t.order() && t.contains(y) {
                c.retain(|&v| tree.separates(a, b, v));
            }
        }
        if c.len() != 1 {
            return Err(Error::Inconsistent(format!("tangle {i} has a component of {} nodes", c.len())));
        }
        tau.push(c[0]);
    }
    let out = TangleTreeDecomposition { tree, tangles: fam.to_vec(), tau };
    out.verify(sys)?;
    Ok(out)
}

/// Nested set of separations for a family of tangles of order `k+1` that
/// share their order-`k` truncation.
pub fn coherent_nested_set(sys: &ConnectivitySystem, fam: &[Tangle]) -> Result<NestedSeparationSet> {
    let Some(first) = fam.first() else {
        return Ok(NestedSeparationSet::empty());
    };
    let k = first.order() - 1;
    if fam.iter().any(|t| t.order() != k + 1) {
        return Err(Error::pre("tangles of different orders"));
    }
    for i in 0..fam.len() {
        for j in (i + 1)..fam.len() {
            if fam[i] == fam[j] || min_separation_order(sys, &fam[i], &fam[j]) != Some(k) {
                return Err(Error::pre(format!("family is not coherent at tangles {i} and {j}")));
            }
        }
    }
    let mut chosen: BTreeSet<Mask> = BTreeSet::new();
    let mut done = vec![false; fam.len()];
    loop {
        let rest: Vec<usize> = (0..fam.len()).filter(|&i| !done[i]).collect();
        if rest.len() <= 1 {
            break;
        }
        let mut seps: BTreeSet<Mask> = BTreeSet::new();
        for &i in &rest {
            for &j in &rest {
                if i != j {
                    seps.extend(min_separations(sys, &fam[i], &fam[j]));
                }
            }
        }
        let all: Vec<Mask> = seps.iter().copied().collect();
        let minimal: Vec<Mask> = all.iter().copied().filter(|&z| !all.iter().any(|&y| y != z && is_subset(y, z))).collect();
        // Each new set is nested with every minimum separation of the rest.
        for &z0 in &minimal {
            if let Some(&z) = all.iter().find(|&&z| !is_subset(z0, z) && z0 & z != 0) {
                return Err(Error::Inconsistent(format!("{} is neither inside nor outside {}", sys.universe().format(z0), sys.universe().format(z))));
            }
        }
        chosen.extend(minimal);
        for i in 0..fam.len() {
            if !done[i] {
                done[i] = (0..fam.len()).any(|j| j != i && chosen.iter().any(|&z| is_min_separation(sys, z, &fam[i], &fam[j])));
            }
        }
    }
    let out = NestedSeparationSet::closure(sys.full(), chosen);
    check_nested_for(sys, fam, &out).map_err(|e| Error::Inconsistent(format!("coherent family: {e}")))?;
    Ok(out)
}

/// Contract the complements of the inclusion-minimal members of
/// `T* ∩ S^{≤k}` to single elements.
pub fn contract_at_tangle(sys: &ConnectivitySystem, tstar: &Tangle, sk: &NestedSeparationSet) -> Result<ContractionSystem> {
    let full = sys.full();
    let inside: Vec<Mask> = sk.members().iter().copied().filter(|&z| tstar.contains(z)).collect();
    let minimal: Vec<Mask> = inside.iter().copied().filter(|&z| !inside.iter().any(|&y| y != z && is_subset(y, z))).collect();
    let atoms: Vec<Mask> = minimal.iter().map(|&z| full & !z).collect();
    contract(sys, &atoms)
}

/// `T↓ = {X : X↑ ∈ T}`, of the same order.
pub fn project_tangle(c: &ContractionSystem, t: &Tangle) -> Tangle {
    Tangle::new(t.order(), t.members().iter().filter_map(|&y| c.project(y)).collect())
}

/// Result of [`canonical_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    pub nested: NestedSeparationSet,
    pub tree: TangleTreeDecomposition,
}

/// Nested set of separations for all tangles of order at most `k_max`
/// (all tangles when `None`), and the tangle tree built from it.
pub fn canonical_decomposition(sys: &ConnectivitySystem, k_max: Option<i64>) -> Result<CanonicalDecomposition> {
    if !sys.has_structural_separations() {
        check_limit("canonical_decomposition", sys.n(), sys.limits().canonical)?;
    }
    let mut levels = match k_max {
        Some(k) => tangles_by_order(sys, k)?,
        None => all_tangles(sys)?,
    };
    while levels.len() > 1 && levels.last().is_some_and(|l| l.is_empty()) {
        levels.pop();
    }
    let mut s = NestedSeparationSet::empty();
    for k in 0..levels.len().saturating_sub(1) {
        let k64 = k as i64;
        let truncs: Vec<Tangle> = levels[k + 1].iter().map(|t| t.truncate(sys, k64)).collect::<Result<_>>()?;
        let mut added: BTreeSet<Mask> = BTreeSet::new();
        for tstar in &levels[k] {
            let fam: Vec<Tangle> =
                levels[k + 1].iter().zip(&truncs).filter(|(_, tr)| *tr == tstar).map(|(t, _)| t.clone()).collect();
            if fam.len() < 2 {
                continue;
            }
            let c = contract_at_tangle(sys, tstar, &s)?;
            let down: Vec<Tangle> = fam.iter().map(|t| project_tangle(&c, t)).collect();
            check_injective(sys, &c, &fam, &down)?;
            let si = coherent_nested_set(c.system(), &down)?;
            added.extend(si.members().iter().map(|&x| c.expand(x)));
        }
        s = NestedSeparationSet::new(s.members().iter().copied().chain(added).collect());
        let fam = maximal_tangles(&levels[..=k + 1]);
        check_nested_for(sys, &fam, &s).map_err(|e| Error::Inconsistent(format!("level {}: {e}", k + 1)))?;
    }
    let fam = maximal_tangles(&levels);
    let tree = build_tangle_tree(sys, &fam, &s)?;
    Ok(CanonicalDecomposition { nested: s, tree })
}

/// Contracted tangles are tangles of the same order, pairwise distinct,
/// and their minimum separations expand to minimum separations.
fn check_injective(sys: &ConnectivitySystem, c: &ContractionSystem, fam: &[Tangle], down: &[Tangle]) -> Result<()> {
    let csys = c.system();
    for (t, d) in fam.iter().zip(down) {
        if let Some(v) = tangle_violation(csys, d)? {
            return Err(Error::Inconsistent(format!("contracted {t} fails {v}")));
        }
    }
    for i in 0..down.len() {
        for j in 0..down.len() {
            if i == j {
                continue;
            }
            if down[i] == down[j] {
                return Err(Error::Inconsistent(format!("contraction identifies tangles {i} and {j}")));
            }
            for x in min_separations(csys, &down[i], &down[j]) {
                if !is_min_separation(sys, c.expand(x), &fam[i], &fam[j]) {
                    return Err(Error::Inconsistent(format!("expansion of {} is not a minimum separation", csys.universe().format(x))));
                }
            }
        }
    }
    Ok(())
}

/// Tree decomposition of `G` from a tree decomposition of `κ_G`: vertex
/// `v` goes to every node on a path between two nodes whose bags hold an
/// edge at `v`.
pub fn graph_treedec_from_kappa_treedec(g: &Graph, td: &SetTreeDecomposition) -> Result<GraphTreeDecomposition> {
    td.validate(g.all_edges())?;
    let n = td.len();
    let mut bags = vec![0 as Mask; n];
    for v in 0..g.n() {
        let inc = g.incident(v);
        let hit: Vec<bool> = (0..n).map(|t| td.bag(t) & inc != 0).collect();
        let total = hit.iter().filter(|&&h| h).count();
        if total == 0 {
            continue;
        }
        let below = td.subtree_counts(&hit);
        for t in 0..n {
            let mut sides = td.children(t).into_iter().filter(|&c| below[c] > 0).count();
            if below[t] < total {
                sides += 1;
            }
            if hit[t] || sides >= 2 {
                bags[t] |= 1 << v;
            }
        }
    }
    let edges = td.tree_edges();
    let out = GraphTreeDecomposition::new(edges, bags);
    out.validate(g)?;
    Ok(out)
}
