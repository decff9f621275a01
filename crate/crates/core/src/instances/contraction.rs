//! Contraction of disjoint atoms to single elements.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::{bit, elements, Mask, Universe};
use crate::system::{ConnectivitySystem, Evaluate};

/// `κ↓(X) = κ(X↑)` on the universe where each atom became one element.
///
/// Contracted universe order: uncontracted elements in base order, then one
/// element per atom, atoms sorted by bitmask.
#[derive(Debug, Clone)]
pub struct ContractionSystem {
    base: ConnectivitySystem,
    maps: Arc<Maps>,
    system: ConnectivitySystem,
}

#[derive(Debug)]
struct Maps {
    plain: Vec<usize>,
    atoms: Vec<Mask>,
}

impl Maps {
    fn expand(&self, x: Mask) -> Mask {
        let p = self.plain.len();
        elements(x).fold(0, |acc, i| if i < p { acc | bit(self.plain[i]) } else { acc | self.atoms[i - p] })
    }

    fn project(&self, y: Mask) -> Option<Mask> {
        let mut out = 0;
        for (j, &v) in self.plain.iter().enumerate() {
            if y & bit(v) != 0 {
                out |= bit(j);
            }
        }
        for (j, &a) in self.atoms.iter().enumerate() {
            let part = y & a;
            if part == a {
                out |= bit(self.plain.len() + j);
            } else if part != 0 {
                return None;
            }
        }
        Some(out)
    }
}

/// Contract each atom to a fresh element. Atoms must be nonempty and disjoint.
pub fn contract(sys: &ConnectivitySystem, atoms: &[Mask]) -> Result<ContractionSystem> {
    let full = sys.full();
    let mut seen = 0;
    for &a in atoms {
        if a == 0 {
            return Err(Error::pre("empty atom"));
        }
        if a & !full != 0 {
            return Err(Error::pre("atom outside the universe"));
        }
        if a & seen != 0 {
            return Err(Error::pre("atoms overlap"));
        }
        seen |= a;
    }
    let mut sorted = atoms.to_vec();
    sorted.sort_unstable();
    let plain: Vec<usize> = elements(full & !seen).collect();
    let u = sys.universe();
    let labels: Vec<String> =
        plain.iter().map(|&i| u.label(i).to_string()).chain(sorted.iter().map(|&a| u.format(a))).collect();
    let universe = Universe::new(labels)?;
    let maps = Arc::new(Maps { plain, atoms: sorted });
    let base = sys.clone();
    let m1 = maps.clone();
    let mut system = ConnectivitySystem::new(universe, move |x| base.eval(m1.expand(x)))
        .named(format!("{}/contracted", sys.name()))
        .with_limits(*sys.limits());
    if sys.has_structural_separations() {
        let base = sys.clone();
        let m2 = maps.clone();
        system = system.with_separations(Arc::new(move |k| {
            base.separations_below(k)
                .unwrap_or_default()
                .into_iter()
                .filter_map(|y| m2.project(y))
                .collect()
        }));
    }
    Ok(ContractionSystem { base: sys.clone(), maps, system })
}

impl ContractionSystem {
    pub fn system(&self) -> &ConnectivitySystem {
        &self.system
    }

    pub fn base(&self) -> &ConnectivitySystem {
        &self.base
    }

    /// Atoms in contracted-universe order.
    pub fn atoms(&self) -> &[Mask] {
        &self.maps.atoms
    }

    /// `X↑`.
    pub fn expand(&self, x: Mask) -> Mask {
        self.maps.expand(x)
    }

    /// The contracted set whose expansion is `y`, if every atom lies inside or outside `y`.
    pub fn project(&self, y: Mask) -> Option<Mask> {
        self.maps.project(y)
    }

    /// Index of the contracted element standing for atom `j`.
    pub fn atom_element(&self, j: usize) -> usize {
        self.maps.plain.len() + j
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::graph::{edge_connectivity, Graph};

    #[test]
    fn contracted_values() {
        let g = Graph::from_compact("abcd", "ab bc cd da").unwrap();
        let nu = edge_connectivity(&g);
        let c = contract(&nu, &[0b0011, 0b1100]).unwrap();
        assert_eq!(c.system().n(), 2);
        assert_eq!(c.system().eval(0b01), nu.eval(0b0011));
        assert_eq!(c.expand(0b10), 0b1100);
        assert_eq!(c.project(0b0110), None);
    }

    #[test]
    fn whole_universe_atom() {
        let g = Graph::from_compact("abc", "ab bc").unwrap();
        let nu = edge_connectivity(&g);
        let c = contract(&nu, &[0b111]).unwrap();
        assert_eq!(c.system().n(), 1);
        assert_eq!(c.system().eval(1), 0);
    }

    #[test]
    fn overlap_rejected() {
        let g = Graph::from_compact("abc", "ab bc").unwrap();
        assert!(contract(&edge_connectivity(&g), &[0b011, 0b110]).is_err());
    }
}
