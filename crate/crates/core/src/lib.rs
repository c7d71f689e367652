//! Pipe dreams, marked chain-order polytopes and the toric degenerations of
//! type-A flag varieties and semi-infinite Grassmannians they parametrize.
//!
//! Everything is exact: integer or big-integer arithmetic, no tolerances.

pub mod degeneration;
pub mod error;
pub mod linalg;
pub mod mcop;
pub mod order;
pub mod perm;
pub mod pipedream;
pub mod poly;
pub mod poset;
pub mod repn;
pub mod semiinf;
pub mod tableaux;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use poset::{GtPoset, OcPartition, OrderIdeal, PosetElement};
