//! Bitmask subsets over an ordered universe.
//!
//! Element `i` of the universe is bit `i`. Universes hold at most 64
//! elements; the exhaustive operations impose much smaller limits.

use crate::error::{Error, Result};

pub type Mask = u64;

pub const MAX_ELEMENTS: usize = 64;

#[inline]
pub fn full(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn bit(i: usize) -> Mask {
    1u64 << i
}

#[inline]
pub fn size(x: Mask) -> usize {
    x.count_ones() as usize
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

#[inline]
pub fn lowest(x: Mask) -> Option<usize> {
    if x == 0 {
        None
    } else {
        Some(x.trailing_zeros() as usize)
    }
}

/// Indices of the set bits, ascending.
pub fn elements(mut x: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Mask {
    it.into_iter().fold(0, |m, i| m | bit(i))
}

/// All submasks of `m` in ascending numeric order, `0` and `m` included.
pub fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut cur: Option<Mask> = Some(0);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == m { None } else { Some(((out | !m).wrapping_add(1)) & m) };
        Some(out)
    })
}

/// Submasks of `m` with exactly `k` elements, ascending.
pub fn submasks_of_size(m: Mask, k: usize) -> Vec<Mask> {
    submasks(m).filter(|&x| size(x) == k).collect()
}

/// Ordered, labelled universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::SizeLimit { op: "universe", n: labels.len(), limit: MAX_ELEMENTS });
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::invalid("universe", format!("duplicate label {l}")));
            }
        }
        Ok(Universe { labels })
    }

    /// Universe with labels `0..n`.
    pub fn indexed(n: usize) -> Self {
        Universe::new((0..n).map(|i| i.to_string())).expect("indexed universe")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn full(&self) -> Mask {
        full(self.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Parse a set of labels into a mask.
    pub fn mask_of(&self, labels: &[&str]) -> Result<Mask> {
        let mut m = 0;
        for l in labels {
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::pre(format!("unknown element {l}")))?;
            m |= bit(i);
        }
        Ok(m)
    }

    pub fn complement(&self, x: Mask) -> Mask {
        self.full() ^ x
    }

    pub fn format(&self, x: Mask) -> String {
        let parts: Vec<&str> = elements(x).map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Little-endian hex rendering of a mask (bit 0 is the first element).
pub fn hex(x: Mask) -> String {
    format!("{x:#x}")
}

pub fn parse_hex(s: &str) -> Result<Mask> {
    let t = s.trim_start_matches("0x");
    u64::from_str_radix(t, 16).map_err(|e| Error::Parse { line: 0, msg: format!("bad mask {s}: {e}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_order() {
        let s: Vec<Mask> = submasks(0b1010).collect();
        assert_eq!(s, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn sized_submasks() {
        let s = submasks_of_size(0b10110, 2);
        assert_eq!(s, vec![0b00110, 0b10010, 0b10100]);
        assert_eq!(submasks_of_size(0b111, 0), vec![0]);
        assert!(submasks_of_size(0b1, 2).is_empty());
    }

    #[test]
    fn labels() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        assert_eq!(u.mask_of(&["a", "c"]).unwrap(), 0b101);
        assert_eq!(u.format(0b110), "{b,c}");
        assert!(Universe::new(["a", "a"]).is_err());
    }
}
