pub mod conic;
pub mod curve5;
pub mod tz;

pub use curve5::{contains, f_model, known_points, point_to_poly, rho, tau, FModel, ProjPoint5};
pub use tz::{rho_tz, tau_tz, tz_to_c, TZPoint};
pub mod verify;
pub use verify::{verify_model_identities, GeometryReport};
