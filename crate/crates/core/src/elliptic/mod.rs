//! Weierstrass curves, torsion, 2-isogenies and the maps between the genus
//! one curves of the problem and their Jacobians.

pub mod curve;
pub mod finite;
pub mod formal;
pub mod hj;
pub mod isogeny;
pub mod quartic;
pub mod torsion;

pub use curve::{find_isomorphisms, reduce_curve, reduce_curve_split, reduce_point, reduce_point_split, Curve, Iso, Point};
