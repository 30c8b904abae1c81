//! Symmetric quadratics, the square-run oracle, bounded search and the
//! infinite families.

pub mod families;
pub mod poly;
pub mod search;

pub use families::{conic_family, n7_classification, n8_family, N7Report};
pub use poly::{square_run_check, Axis, RunWitness, SymQuadPoly};
pub use search::{exhaustive_search, search_shards};
