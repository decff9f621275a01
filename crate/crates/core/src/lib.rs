//! Connectivity systems: symmetric submodular set functions, their branch
//! decompositions, tangles, and canonical tangle-tree decompositions.
//!
//! Subsets of the universe are `u64` bitmasks; element `i` is bit `i`.

pub mod branchdec;
pub mod canonical;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod graphbridge;
pub mod instances;
pub mod io;
pub mod props;
pub mod subset;
pub mod system;
pub mod tangles;

pub use error::{Error, Result};
pub use props::{check_properties, evaluate, leftmost_min_separation, lipschitz_check, PropertyReport};
pub use subset::{Mask, Universe};
pub use system::{ConnectivitySystem, Evaluate, Limits, SetFunction};
