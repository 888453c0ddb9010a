//! Real root counting, hyperbolicity sampling and linking numbers.

mod hyperbolic;
mod linking;
mod poly;

pub use hyperbolic::{
    all_real_restriction, hyperbolicity_check, line_test, point, random_point, sphere_quadric,
    Exponents, HyperbolicityVerdict, HypersurfaceSpec, LineTest,
};
pub use linking::{
    default_hyperplane, hyperbolicity_from_linking, linking_number, octagon, rank, Closure,
    GreatSubsphere, PLCycle, Point,
};
pub use poly::{sturm_count, UnivariatePoly};
