//! Connectivity functions of integer polymatroids.

use crate::error::{check_limit, Error, Result};
use crate::subset::{bit, elements, Mask};
use crate::system::{ConnectivitySystem, Evaluate, Limits, SetFunction};

/// First failure of the polymatroid axioms, if any.
pub fn polymatroid_violation(pi: &SetFunction) -> Option<String> {
    let full = pi.full();
    let u = pi.universe();
    if pi.eval(0) != 0 {
        return Some(format!("π(∅) = {}", pi.eval(0)));
    }
    for x in 0..=full {
        for a in elements(full & !x) {
            if pi.eval(x | bit(a)) < pi.eval(x) {
                return Some(format!("not monotone at {} + {}", u.format(x), u.label(a)));
            }
            for b in elements(full & !x & !((bit(a) << 1).wrapping_sub(1))) {
                let (xa, xb) = (x | bit(a), x | bit(b));
                if pi.eval(xa) + pi.eval(xb) < pi.eval(x) + pi.eval(xa | xb) {
                    return Some(format!("not submodular on {} and {}", u.format(xa), u.format(xb)));
                }
            }
        }
    }
    None
}

/// `κ_π(X) = π(X) + π(X̄) − π(U)` after verifying that `π` is a polymatroid.
pub fn polymatroid_connectivity(pi: &SetFunction, limits: &Limits) -> Result<ConnectivitySystem> {
    check_limit("polymatroid_connectivity", pi.n(), limits.exhaustive)?;
    if let Some(clause) = polymatroid_violation(pi) {
        return Err(Error::invalid("polymatroid", clause));
    }
    let f = pi.clone();
    let full = pi.full();
    let total = pi.eval(full);
    Ok(ConnectivitySystem::new(pi.universe().clone(), move |x: Mask| f.eval(x) + f.eval(full & !x) - total)
        .named("polymatroid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::{size, Universe};

    #[test]
    fn uniform_matroid() {
        let pi = SetFunction::new(Universe::indexed(4), |x| size(x).min(2) as i64);
        let k = polymatroid_connectivity(&pi, &Limits::default()).unwrap();
        assert_eq!(k.eval(0b0011), 2);
        assert_eq!(k.eval(0b0001), 1);
    }

    #[test]
    fn rejects_non_monotone() {
        let pi = SetFunction::new(Universe::indexed(2), |x| if x == 3 { 0 } else { size(x) as i64 });
        assert!(polymatroid_connectivity(&pi, &Limits::default()).is_err());
    }
}
