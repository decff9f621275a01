//! Set functions and connectivity systems.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicI64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{check_limit, Error, Result};
use crate::subset::{bit, elements, Mask, Universe};

pub type OracleFn = Arc<dyn Fn(Mask) -> i64 + Send + Sync>;

/// Lists every `X` with `κ(X) < k` (duplicates and any order allowed).
pub type SeparationFn = Arc<dyn Fn(i64) -> Vec<Mask> + Send + Sync>;

/// Size limits for the exhaustive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub evaluate: usize,
    pub exhaustive: usize,
    pub dp: usize,
    pub enumerate: usize,
    pub canonical: usize,
    pub well_linked: usize,
    pub min_cover: usize,
    pub treewidth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            evaluate: 24,
            exhaustive: 16,
            dp: 14,
            enumerate: 12,
            canonical: 10,
            well_linked: 16,
            min_cover: 14,
            treewidth: 12,
        }
    }
}

/// Anything that can be evaluated on subsets of a universe.
pub trait Evaluate {
    fn universe(&self) -> &Universe;
    fn eval(&self, x: Mask) -> i64;

    fn n(&self) -> usize {
        self.universe().len()
    }

    fn full(&self) -> Mask {
        self.universe().full()
    }
}

/// A plain set function, not assumed to be a connectivity function.
#[derive(Clone)]
pub struct SetFunction {
    universe: Universe,
    oracle: OracleFn,
}

impl SetFunction {
    pub fn new(universe: Universe, f: impl Fn(Mask) -> i64 + Send + Sync + 'static) -> Self {
        SetFunction { universe, oracle: Arc::new(f) }
    }

    pub fn from_arc(universe: Universe, oracle: OracleFn) -> Self {
        SetFunction { universe, oracle }
    }

    /// Explicit value table, entry `i` is the value of bitmask `i`.
    pub fn from_table(universe: Universe, table: Vec<i64>) -> Result<Self> {
        if table.len() != 1usize << universe.len() {
            return Err(Error::pre(format!(
                "table has {} entries, expected {}",
                table.len(),
                1usize << universe.len()
            )));
        }
        let table = Arc::new(table);
        Ok(SetFunction::new(universe, move |x| table[x as usize]))
    }
}

impl Evaluate for SetFunction {
    fn universe(&self) -> &Universe {
        &self.universe
    }
    fn eval(&self, x: Mask) -> i64 {
        (self.oracle)(x)
    }
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFunction(n={})", self.universe.len())
    }
}

const DENSE_LIMIT: usize = 22;
const EMPTY: i64 = i64::MIN;

struct Memo {
    dense: OnceLock<Vec<AtomicI64>>,
    sparse: RwLock<HashMap<Mask, i64>>,
}

/// A universe together with a memoised value oracle.
///
/// Nothing about the oracle is assumed; `check_properties` verifies it.
#[derive(Clone)]
pub struct ConnectivitySystem {
    f: SetFunction,
    memo: Arc<Memo>,
    seps: Option<SeparationFn>,
    limits: Limits,
    name: String,
}

impl fmt::Debug for ConnectivitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConnectivitySystem({}, n={})", self.name, self.n())
    }
}

impl ConnectivitySystem {
    pub fn new(universe: Universe, f: impl Fn(Mask) -> i64 + Send + Sync + 'static) -> Self {
        Self::from_function(SetFunction::new(universe, f))
    }

    pub fn from_function(f: SetFunction) -> Self {
        ConnectivitySystem {
            f,
            memo: Arc::new(Memo { dense: OnceLock::new(), sparse: RwLock::new(HashMap::new()) }),
            seps: None,
            limits: Limits::default(),
            name: String::from("oracle"),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Attach a structural enumerator of low-order separations.
    pub fn with_separations(mut self, f: SeparationFn) -> Self {
        self.seps = Some(f);
        self
    }

    pub fn has_structural_separations(&self) -> bool {
        self.seps.is_some()
    }

    pub fn function(&self) -> &SetFunction {
        &self.f
    }

    pub fn complement(&self, x: Mask) -> Mask {
        self.full() ^ x
    }

    /// `val(κ)`: the largest change caused by a single element.
    pub fn valence(&self) -> i64 {
        let e = self.eval(0);
        (0..self.n()).map(|i| (self.eval(bit(i)) - e).abs()).max().unwrap_or(0)
    }

    /// Every `X` with `κ(X) < k`, ascending and without repetition.
    ///
    /// Uses the structural enumerator when there is one, otherwise scans
    /// all subsets (subject to `limits.evaluate`).
    pub fn separations_below(&self, k: i64) -> Result<Vec<Mask>> {
        let mut out = match &self.seps {
            Some(f) => {
                let mut v = f(k);
                v.retain(|&x| self.eval(x) < k);
                v
            }
            None => {
                check_limit("separation scan", self.n(), self.limits.evaluate)?;
                let full = self.full();
                (0..=full).filter(|&x| self.eval(x) < k).collect()
            }
        };
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Limit that applies to tangle enumeration on this system.
    pub fn enumeration_limit(&self, base: usize) -> usize {
        if self.seps.is_some() {
            crate::subset::MAX_ELEMENTS
        } else {
            base
        }
    }

    /// Relabel: element `i` becomes element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<ConnectivitySystem> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::pre("permutation length differs from universe size"));
        }
        let mut inv = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::pre("not a permutation"));
            }
            inv[p] = i;
        }
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.universe().label(i).to_string();
        }
        let universe = Universe::new(labels)?;
        let base = self.clone();
        let inv = Arc::new(inv);
        let mut sys = ConnectivitySystem::new(universe, move |x| base.eval(map_mask(x, &inv)));
        sys.limits = self.limits;
        sys.name = self.name.clone();
        if let Some(f) = &self.seps {
            let f = f.clone();
            let perm: Arc<Vec<usize>> = Arc::new(perm.to_vec());
            sys.seps = Some(Arc::new(move |k| f(k).into_iter().map(|x| map_mask(x, &perm)).collect()));
        }
        Ok(sys)
    }

    fn lookup(&self, x: Mask) -> i64 {
        let n = self.n();
        if n <= DENSE_LIMIT {
            let dense = self.memo.dense.get_or_init(|| (0..1usize << n).map(|_| AtomicI64::new(EMPTY)).collect());
            let slot = &dense[x as usize];
            let v = slot.load(Ordering::Relaxed);
            if v != EMPTY {
                return v;
            }
            let v = self.f.eval(x);
            slot.store(v, Ordering::Relaxed);
            v
        } else {
            if let Some(&v) = self.memo.sparse.read().expect("memo lock").get(&x) {
                return v;
            }
            let v = self.f.eval(x);
            self.memo.sparse.write().expect("memo lock").insert(x, v);
            v
        }
    }
}

impl Evaluate for ConnectivitySystem {
    fn universe(&self) -> &Universe {
        &self.f.universe
    }

    fn eval(&self, x: Mask) -> i64 {
        debug_assert!(x & !self.full() == 0, "subset outside universe");
        self.lookup(x)
    }
}

/// Image of `x` under the index map `m`.
pub fn map_mask(x: Mask, m: &[usize]) -> Mask {
    elements(x).fold(0, |acc, i| acc | bit(m[i]))
}
