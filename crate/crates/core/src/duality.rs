//! Tangle/decomposition duality, branch width through tangles, and the
//! well-linked set bounds in both directions.

use crate::branchdec::{branch_width, decompose_over, AtomFamily, DirectedDecomposition};
use crate::error::{check_limit, Error, Result};
use crate::subset::{bit, lowest, size, submasks_of_size, Mask};
use crate::system::{ConnectivitySystem, Evaluate};
use crate::tangles::{enumerate_tangles, is_well_linked, max_free_set, max_tangle_order, tangle_violation, well_linked_witness, Tangle};

/// Which side of the duality holds for a given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualityWitness {
    /// Width `< k`, all atoms in the family.
    Decomposition(DirectedDecomposition),
    /// Order `k`, no member in the family.
    Tangle(Tangle),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityVerdict {
    pub k: i64,
    pub family: String,
    pub witness: DualityWitness,
}

impl DualityVerdict {
    pub fn has_tangle(&self) -> bool {
        matches!(self.witness, DualityWitness::Tangle(_))
    }

    /// Re-check the witness against the system.
    pub fn validate(&self, sys: &ConnectivitySystem, family: &AtomFamily) -> Result<()> {
        match &self.witness {
            DualityWitness::Decomposition(d) => {
                d.validate()?;
                if d.width(sys) >= self.k {
                    return Err(Error::Inconsistent(format!("decomposition witness has width {} for k = {}", d.width(sys), self.k)));
                }
                if let Some(a) = d.leaves().into_iter().map(|t| d.cone(t)).find(|&a| !family.contains(a)) {
                    return Err(Error::Inconsistent(format!("atom {} is outside the family", sys.universe().format(a))));
                }
            }
            DualityWitness::Tangle(t) => {
                if t.order() != self.k {
                    return Err(Error::Inconsistent(format!("tangle witness has order {}", t.order())));
                }
                if let Some(v) = tangle_violation(sys, t)? {
                    return Err(Error::Inconsistent(format!("tangle witness fails {v}")));
                }
                if !t.avoids(family) {
                    return Err(Error::Inconsistent("tangle witness meets the family".into()));
                }
            }
        }
        Ok(())
    }
}

/// Decide the duality for `k` both ways and insist that exactly one side holds.
pub fn duality_check(sys: &ConnectivitySystem, family: &AtomFamily, k: i64) -> Result<DualityVerdict> {
    if !sys.has_structural_separations() {
        check_limit("duality_check", sys.n(), sys.limits().enumerate)?;
    }
    let dec = decompose_over(sys, family, k)?;
    let tangle = enumerate_tangles(sys, k)?.into_iter().find(|t| t.avoids(family));
    let witness = match (dec, tangle) {
        (Some(d), None) => DualityWitness::Decomposition(d),
        (None, Some(t)) => DualityWitness::Tangle(t),
        (Some(_), Some(_)) => return Err(Error::Inconsistent(format!("both a decomposition and a tangle exist for k = {k}"))),
        (None, None) => return Err(Error::Inconsistent(format!("neither a decomposition nor a tangle exists for k = {k}"))),
    };
    let verdict = DualityVerdict { k, family: family.name(), witness };
    verdict.validate(sys, family)?;
    Ok(verdict)
}

/// Largest order of a tangle.
pub fn branch_width_via_tangles(sys: &ConnectivitySystem) -> Result<i64> {
    max_tangle_order(sys)
}

/// Directed branch decomposition of width at most `k`, built by splitting
/// leaves, for a system with no well-linked set larger than `k/val − 1`.
pub fn decomposition_from_no_well_linked(sys: &ConnectivitySystem, k: i64) -> Result<DirectedDecomposition> {
    let val = sys.valence();
    if val <= 0 {
        return Err(Error::pre("system is trivial (valence 0)"));
    }
    // Sizes `s > k/val − 1` are exactly `s ≥ ⌊k/val⌋`.
    if let Some(w) = well_linked_set_of_size(sys, (k.max(0) / val) as usize)? {
        return Err(Error::pre(format!("well-linked set {} is larger than k/val − 1", sys.universe().format(w))));
    }
    let full = sys.full();
    let mut children: Vec<Option<(usize, usize)>> = vec![None];
    let mut cones: Vec<Mask> = vec![full];
    let mut t = 0;
    while t < cones.len() {
        let x = cones[t];
        if size(x) >= 2 {
            let kx = sys.eval(x);
            let x1 = if kx <= k - val {
                bit(lowest(x).expect("nonempty"))
            } else {
                split_by_free_set(sys, x)?
                    .ok_or_else(|| Error::Inconsistent(format!("free set in the complement of {} is well-linked", sys.universe().format(x))))?
            };
            children[t] = Some((cones.len(), cones.len() + 1));
            cones.push(x1);
            cones.push(x ^ x1);
            children.push(None);
            children.push(None);
        }
        t += 1;
    }
    let d = DirectedDecomposition::from_parts(full, 0, children, cones)?;
    if !d.is_branch_decomposition() || d.width(sys) > k {
        return Err(Error::Inconsistent(format!("leaf splitting produced width {} > {k}", d.width(sys))));
    }
    Ok(d)
}

/// Split `X` along the smallest set that shows a maximal free set of `X̄`
/// is not well-linked. Returns `X ∩ Z`, or `None` if that free set is
/// well-linked. Both parts are checked to have order below `κ(X)`.
pub fn split_by_free_set(sys: &ConnectivitySystem, x: Mask) -> Result<Option<Mask>> {
    let y = max_free_set(sys, sys.complement(x))?;
    let Some(z) = well_linked_witness(sys, y)? else {
        return Ok(None);
    };
    let (x1, kx) = (x & z, sys.eval(x));
    if x1 == 0 || x1 == x || sys.eval(x1) >= kx || sys.eval(x ^ x1) >= kx {
        return Err(Error::Inconsistent(format!("split of {} by {} does not lower the order", sys.universe().format(x), sys.universe().format(z))));
    }
    Ok(Some(x1))
}

/// A well-linked set of the given size, if any. Subsets of well-linked sets
/// are well-linked, so this also settles every larger size.
fn well_linked_set_of_size(sys: &ConnectivitySystem, s: usize) -> Result<Option<Mask>> {
    if s > sys.n() {
        return Ok(None);
    }
    for w in submasks_of_size(sys.full(), s) {
        if is_well_linked(sys, w)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Whether no well-linked set exceeds `3·bw`.
pub fn well_linked_obstruction_check(sys: &ConnectivitySystem) -> Result<bool> {
    let bw = branch_width(sys, sys.limits().dp)?.value;
    Ok(well_linked_set_of_size(sys, (3 * bw + 1) as usize)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete_graph, cycle_graph, star_graph, vector_family};
    use crate::instances::{cut_rank, vector_connectivity, edge_connectivity, matching_connectivity, vertex_connectivity};

    #[test]
    fn duality_at_branch_width() {
        for sys in [vertex_connectivity(&cycle_graph(5)), matching_connectivity(&cycle_graph(5)), vertex_connectivity(&complete_graph(4))] {
            let bw = branch_width(&sys, 14).unwrap().value;
            assert!(duality_check(&sys, &AtomFamily::Singletons, bw).unwrap().has_tangle());
            assert!(!duality_check(&sys, &AtomFamily::Singletons, bw + 1).unwrap().has_tangle());
            assert!(!duality_check(&sys, &AtomFamily::All, 1).unwrap().has_tangle());
            assert_eq!(branch_width_via_tangles(&sys).unwrap(), bw);
        }
    }

    #[test]
    fn vector_family_width_one() {
        let sys = vector_connectivity(&vector_family());
        assert_eq!(branch_width_via_tangles(&sys).unwrap(), 1);
    }

    #[test]
    fn duality_with_larger_atoms() {
        let sys = vertex_connectivity(&complete_graph(4));
        let fam = AtomFamily::generated_by(vec![0b000111, 0b111000]);
        for k in 1..5 {
            duality_check(&sys, &fam, k).unwrap();
        }
    }

    #[test]
    fn two_element_split() {
        let sys = edge_connectivity(&crate::fixtures::path_graph(2));
        let val = sys.valence();
        // Both singletons and the pair are well-linked.
        assert!(decomposition_from_no_well_linked(&sys, val).is_err());
        assert!(decomposition_from_no_well_linked(&sys, 2 * val).is_err());
        let d = decomposition_from_no_well_linked(&sys, 3 * val).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.width(&sys) <= val);
    }

    #[test]
    fn star_leaf_splitting() {
        let sys = edge_connectivity(&star_graph(4));
        // The whole star is well-linked, so the bound must exceed 5.
        assert!(decomposition_from_no_well_linked(&sys, 4 * sys.valence()).is_err());
        let k = 6 * sys.valence();
        let d = decomposition_from_no_well_linked(&sys, k).unwrap();
        assert!(d.is_branch_decomposition() && d.width(&sys) <= k);
    }

    #[test]
    fn free_set_splits_lower_the_order() {
        // Two disjoint edges: {0, 2} has order 2 and splits into singletons.
        let g = crate::instances::Graph::indexed(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(split_by_free_set(&edge_connectivity(&g), 0b0101).unwrap(), Some(0b0001));
        let mut splits = 0;
        for sys in [vertex_connectivity(&complete_graph(4)), edge_connectivity(&g), matching_connectivity(&g)] {
            for x in 1..sys.full() {
                if let Some(x1) = split_by_free_set(&sys, x).unwrap() {
                    assert!(sys.eval(x1) < sys.eval(x) && sys.eval(x & !x1) < sys.eval(x));
                    splits += 1;
                }
            }
        }
        assert!(splits > 0);
    }

    #[test]
    fn precondition_is_checked() {
        let sys = matching_connectivity(&cycle_graph(6));
        assert!(decomposition_from_no_well_linked(&sys, 1).is_err());
    }

    #[test]
    fn well_linked_bound() {
        assert!(well_linked_obstruction_check(&cut_rank(&complete_graph(5))).unwrap());
        assert!(well_linked_obstruction_check(&vertex_connectivity(&star_graph(4))).unwrap());
        let forest = vertex_connectivity(&crate::fixtures::path_graph(5));
        assert!(well_linked_obstruction_check(&forest).unwrap());
        // No set of size 4 is well-linked in a path.
        assert!(submasks_of_size(forest.full(), 4).into_iter().all(|w| !is_well_linked(&forest, w).unwrap()));
    }
}
