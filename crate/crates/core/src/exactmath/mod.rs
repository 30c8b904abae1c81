//! Exact arithmetic: rationals, `Q(√6)`, residue rings of `Z[√6]`, square
//! classes, polynomials, truncated series and local solvability.

pub mod field;
pub mod local;
pub mod poly;
pub mod padic;
pub mod primefield;
pub mod qf6;
pub mod rational;
pub mod residue;
pub mod series;
pub mod squareclass;

pub use field::{Field, SqrtField};
pub use qf6::{is_square_in_qf6, QF6};
pub use rational::{big, int, is_square_in_q, rat, BigRat};
pub use padic::Padic;
pub use primefield::{is_split, split_reduce, sqrt6_mod, Fp};
pub use residue::{is_inert, residue_reduce, ResidueElem};
pub use squareclass::{pushforward_square_class, SquareClass};
