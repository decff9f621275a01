//! Property verification and basic separation minimisation.

use serde::Serialize;

use crate::error::{check_limit, Error, Result};
use crate::subset::{bit, elements, is_subset, size, submasks, Mask};
use crate::system::{Evaluate, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Normalised,
    Nonnegative,
    Symmetric,
    Submodular,
    Posimodular,
}

/// A set (or pair of sets) on which a property fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: Property,
    pub x: Mask,
    pub y: Option<Mask>,
}

impl Violation {
    /// Re-evaluates the violation; `true` if it still fails.
    pub fn reproduces<S: Evaluate + ?Sized>(&self, sys: &S) -> bool {
        let c = sys.full();
        let k = |m| sys.eval(m);
        let x = self.x;
        match (self.property, self.y) {
            (Property::Normalised, _) => k(0) != 0,
            (Property::Nonnegative, _) => k(x) < 0,
            (Property::Symmetric, _) => k(x) != k(c ^ x),
            (Property::Submodular, Some(y)) => k(x) + k(y) < k(x & y) + k(x | y),
            (Property::Posimodular, Some(y)) => k(x) + k(y) < k(x & !y) + k(y & !x),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub normalised: bool,
    pub nonnegative: bool,
    pub symmetric: bool,
    pub submodular: bool,
    pub posimodular: bool,
    pub valence: i64,
    /// One entry per failed property, in the order of the flags above.
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn is_connectivity_function(&self) -> bool {
        self.normalised && self.nonnegative && self.symmetric && self.submodular
    }

    pub fn counterexample(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Evaluate `κ(X)`, rejecting subsets outside the universe.
pub fn evaluate<S: Evaluate + ?Sized>(sys: &S, x: Mask) -> Result<i64> {
    if !is_subset(x, sys.full()) {
        return Err(Error::pre("subset outside the universe"));
    }
    check_limit("evaluate", sys.n(), crate::subset::MAX_ELEMENTS)?;
    Ok(sys.eval(x))
}

const POSIMODULAR_SCAN: usize = 12;

/// Exhaustive verification of the connectivity-function axioms.
pub fn check_properties<S: Evaluate + ?Sized>(sys: &S, limits: &Limits) -> Result<PropertyReport> {
    let n = sys.n();
    check_limit("check_properties", n, limits.exhaustive)?;
    let full = sys.full();
    let k = |m: Mask| sys.eval(m);
    let mut violations = Vec::new();

    let normalised = k(0) == 0;
    if !normalised {
        violations.push(Violation { property: Property::Normalised, x: 0, y: None });
    }

    let neg = (0..=full).find(|&x| k(x) < 0);
    if let Some(x) = neg {
        violations.push(Violation { property: Property::Nonnegative, x, y: None });
    }

    let asym = (0..=full).find(|&x| k(x) != k(full ^ x));
    if let Some(x) = asym {
        violations.push(Violation { property: Property::Symmetric, x, y: None });
    }

    // Submodularity reduces to the local inequality on X, X+a, X+b, X+a+b.
    let mut locally_submodular = true;
    'outer: for x in 0..=full {
        let rest = full & !x;
        for a in elements(rest) {
            for b in elements(rest & !((bit(a) << 1).wrapping_sub(1))) {
                let (xa, xb) = (x | bit(a), x | bit(b));
                if k(xa) + k(xb) < k(x) + k(xa | xb) {
                    locally_submodular = false;
                    break 'outer;
                }
            }
        }
    }
    let sub = if locally_submodular { None } else { first_pair(full, |x, y| k(x) + k(y) < k(x & y) + k(x | y)) };
    if let Some((x, y)) = sub {
        violations.push(Violation { property: Property::Submodular, x, y: Some(y) });
    }

    let posi_ok_by_inference = asym.is_none() && sub.is_none() && n > POSIMODULAR_SCAN;
    let posi = if posi_ok_by_inference {
        None
    } else {
        first_pair(full, |x, y| k(x) + k(y) < k(x & !y) + k(y & !x))
    };
    if let Some((x, y)) = posi {
        violations.push(Violation { property: Property::Posimodular, x, y: Some(y) });
    }

    let valence = (0..n).map(|i| (k(bit(i)) - k(0)).abs()).max().unwrap_or(0);

    Ok(PropertyReport {
        normalised,
        nonnegative: neg.is_none(),
        symmetric: asym.is_none(),
        submodular: sub.is_none(),
        posimodular: posi.is_none(),
        valence,
        violations,
    })
}

/// First pair `(X, Y)` with `X < Y` satisfying `bad`, scanning `Y` in the
/// outer loop and `X` in the inner loop (both ascending).
fn first_pair(full: Mask, bad: impl Fn(Mask, Mask) -> bool) -> Option<(Mask, Mask)> {
    for y in 1..=full {
        for x in 0..y {
            if bad(x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// `|κ(X) − κ(Y)| ≤ Σ_{x∈X△Y} κ({x}) ≤ val(κ)·|X△Y|`.
pub fn lipschitz_check<S: Evaluate + ?Sized>(sys: &S, x: Mask, y: Mask) -> bool {
    let d = x ^ y;
    let sum: i64 = elements(d).map(|i| sys.eval(bit(i))).sum();
    let val = (0..sys.n()).map(|i| sys.eval(bit(i))).max().unwrap_or(0);
    (sys.eval(x) - sys.eval(y)).abs() <= sum && sum <= val * size(d) as i64
}

/// The leftmost minimum `(X,Y)`-separation.
pub fn leftmost_min_separation<S: Evaluate + ?Sized>(sys: &S, x: Mask, y: Mask, limits: &Limits) -> Result<Mask> {
    if x & y != 0 {
        return Err(Error::pre("X and Y intersect"));
    }
    let free = sys.full() & !x & !y;
    check_limit("leftmost_min_separation", size(free), limits.evaluate)?;
    let best = submasks(free)
        .map(|s| x | s)
        .min_by_key(|&z| (sys.eval(z), size(z), z))
        .expect("at least one candidate");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::Universe;
    use crate::system::SetFunction;

    #[test]
    fn cut_function_of_k4() {
        let f = SetFunction::new(Universe::indexed(4), |x| {
            let s = size(x) as i64;
            s * (4 - s)
        });
        let r = check_properties(&f, &Limits::default()).unwrap();
        assert!(r.is_connectivity_function() && r.posimodular);
        assert_eq!(r.valence, 3);
        assert!(lipschitz_check(&f, 0b1, 0b11));
    }

    #[test]
    fn violations_reproduce() {
        let f = SetFunction::new(Universe::indexed(3), |x| if x == 0b011 { 5 } else { size(x) as i64 % 2 });
        let r = check_properties(&f, &Limits::default()).unwrap();
        assert!(!r.symmetric);
        for v in &r.violations {
            assert!(v.reproduces(&f), "{v:?}");
        }
    }

    #[test]
    fn empty_universe() {
        let f = SetFunction::new(Universe::indexed(0), |_| 0);
        let r = check_properties(&f, &Limits::default()).unwrap();
        assert!(r.is_connectivity_function() && r.posimodular);
        assert_eq!(r.valence, 0);
    }

    #[test]
    fn size_limit_refused() {
        let f = SetFunction::new(Universe::indexed(17), |_| 0);
        assert!(matches!(check_properties(&f, &Limits::default()), Err(Error::SizeLimit { .. })));
    }
}
