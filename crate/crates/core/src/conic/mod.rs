//! Minimal conic bundles: numerical conditions, the Chow ring of the ambient
//! projective bundle, and explicit sections.

mod bundle;
mod chow;
mod forms;
mod section;

pub use bundle::{candidate_divisor, conic_lattice, necbundle_conditions, BundleReport, Candidate};
pub use chow::{chow_degree, chow_mul, surface_class_identities, ChowClass, SurfaceIdentities};
pub use forms::{BinaryForm, Factorization};
pub use section::{
    analyze, construct_section, discriminant, ConicMatrix, Decision, FiberAnalysis, Smoothness,
};
