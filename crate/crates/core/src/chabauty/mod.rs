//! Elliptic Chabauty on `J±` over `Q(√6)` at the inert primes 11 and 13.

pub mod assemble;
pub mod fibers;
pub mod reduced;
pub mod series;

pub use assemble::{assemble_c_points, run_chabauty, AssemblyReport, ChabautyReport, KillRecord};
pub use fibers::{lift_and_kill, sieve_mod_p, FiberClass, FiberStatus, LiftWitness};
pub use reduced::{chabauty_prime, reduce_curve_and_points, subgroup_surjectivity_check, ReducedGroup};
