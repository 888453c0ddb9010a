//! Real structures on del Pezzo surfaces, conic bundles and real topology.

pub mod catalog;
pub mod conic;
pub mod error;
pub mod lattice;
pub mod schema;
pub mod search;
pub mod topology;

pub use error::{Error, Result};
