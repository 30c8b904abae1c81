//! Mechanical verification that no non-square symmetric quadratic takes
//! square values at 7 or at 9 or more consecutive integers, together with
//! generators for the infinite families at lengths up to 6 and at 8.

pub mod elliptic;
pub mod chabauty;
pub mod descent;
pub mod error;
pub mod exactmath;
pub mod geometry;
pub mod polyruns;

pub use error::{Error, Result};
