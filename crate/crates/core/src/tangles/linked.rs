//! Well-linked, free and k-linked sets.

use crate::error::{check_limit, Error, Result};
use crate::subset::{bit, elements, is_subset, size, submasks, Mask};
use crate::system::{ConnectivitySystem, Evaluate};

use super::Tangle;

/// Sets `X` that must be scanned to test a property of order below `k`.
fn candidates(sys: &ConnectivitySystem, k: i64) -> Result<Vec<Mask>> {
    if sys.has_structural_separations() {
        sys.separations_below(k)
    } else {
        check_limit("well-linkedness scan", sys.n(), sys.limits().well_linked)?;
        Ok((0..=sys.full()).collect())
    }
}

/// Smallest `X` with `κ(X) < min(|W∩X|, |W∖X|)`, if any.
pub fn well_linked_witness(sys: &ConnectivitySystem, w: Mask) -> Result<Option<Mask>> {
    if !is_subset(w, sys.full()) {
        return Err(Error::pre("set lies outside the universe"));
    }
    let half = (size(w) / 2) as i64;
    Ok(candidates(sys, half)?.into_iter().find(|&x| sys.eval(x) < size(w & x).min(size(w & !x)) as i64))
}

pub fn is_well_linked(sys: &ConnectivitySystem, w: Mask) -> Result<bool> {
    well_linked_witness(sys, w).map(|x| x.is_none())
}

/// `π_X(Y) = min κ(Y′)` over `Y ⊆ Y′ ⊆ X`.
pub fn pi_x<S: Evaluate + ?Sized>(sys: &S, x: Mask, y: Mask) -> Result<i64> {
    if !is_subset(y, x) {
        return Err(Error::pre("Y is not a subset of X"));
    }
    Ok(submasks(x & !y).map(|extra| sys.eval(y | extra)).min().expect("at least one superset"))
}

/// Whether `|Y′| ≤ π_X(Y′)` for every `Y′ ⊆ Y`.
pub fn is_free<S: Evaluate + ?Sized>(sys: &S, x: Mask, y: Mask) -> Result<bool> {
    if !is_subset(y, x) {
        return Err(Error::pre("Y is not a subset of X"));
    }
    for yy in submasks(y) {
        if size(yy) as i64 > pi_x(sys, x, yy)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Inclusion-maximal free subset of `X`, grown by ascending element index.
pub fn max_free_set<S: Evaluate + ?Sized>(sys: &S, x: Mask) -> Result<Mask> {
    check_limit("max_free_set", sys.n(), crate::system::Limits::default().exhaustive)?;
    let mut y: Mask = 0;
    for e in elements(x) {
        // Only the subsets that contain `e` are new.
        let ok = submasks(y).all(|yy| {
            let z = yy | bit(e);
            size(z) as i64 <= pi_x(sys, x, z).expect("inside X")
        });
        if ok {
            y |= bit(e);
        }
    }
    let target = sys.eval(x);
    if pi_x(sys, x, y)? != target {
        return Err(Error::Inconsistent(format!("maximal free set has π_X = {} but κ(X) = {target}", pi_x(sys, x, y)?)));
    }
    Ok(y)
}

/// `|V| ≥ 2k` and no `X` of order `< |Y|` separates equal-size disjoint
/// `Y, Z ⊆ V` with `|Y| ≤ k`.
pub fn is_k_linked(sys: &ConnectivitySystem, v: Mask, k: i64) -> Result<bool> {
    if (size(v) as i64) < 2 * k {
        return Ok(false);
    }
    // Such Y, Z exist for X exactly when κ(X) < min(|V∩X|, |V∖X|, k).
    Ok(candidates(sys, k)?.into_iter().all(|x| sys.eval(x) >= (size(v & x).min(size(v & !x)) as i64).min(k)))
}

/// `{X : κ(X) < |W|/3, |W∩X| > 2|W|/3}`, of order `⌈|W|/3⌉`.
pub fn tangle_from_well_linked(sys: &ConnectivitySystem, w: Mask) -> Result<Tangle> {
    let m = size(w) as i64;
    let order = (m + 2) / 3;
    Tangle::from_predicate(sys, order, |x| 3 * size(w & x) as i64 > 2 * m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cycle_graph, path_graph};
    use crate::instances::{cut_rank, matching_connectivity};
    use crate::tangles::is_tangle;

    #[test]
    fn cycle_vertices_are_well_linked() {
        let g = cycle_graph(4);
        assert!(is_well_linked(&matching_connectivity(&g), 0b1111).unwrap());
        // Opposite vertices of a 4-cycle have cut-rank 1.
        assert_eq!(well_linked_witness(&cut_rank(&g), 0b1111).unwrap(), Some(0b0101));
        let g = cycle_graph(5);
        assert!(is_well_linked(&cut_rank(&g), 0b01111).unwrap());
    }

    #[test]
    fn free_sets_on_a_path() {
        let sys = matching_connectivity(&path_graph(5));
        let x = 0b00111;
        assert_eq!(pi_x(&sys, x, 0).unwrap(), 0);
        assert!(is_free(&sys, x, 0).unwrap());
        let y = max_free_set(&sys, x).unwrap();
        assert_eq!(pi_x(&sys, x, y).unwrap(), sys.eval(x));
    }

    #[test]
    fn k_linked_basics() {
        let sys = matching_connectivity(&cycle_graph(4));
        assert!(is_k_linked(&sys, 0b1111, 2).unwrap());
        assert!(!is_k_linked(&sys, 0b0111, 2).unwrap());
    }

    #[test]
    fn well_linked_tangle() {
        let sys = matching_connectivity(&cycle_graph(6));
        let w = 0b1111;
        assert!(is_well_linked(&sys, w).unwrap());
        let t = tangle_from_well_linked(&sys, w).unwrap();
        assert_eq!(t.order(), 2);
        assert!(is_tangle(&sys, &t).unwrap());
    }
}
