pub mod burnside;
pub mod character;
pub mod error;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod relations;

pub use error::{Error, Result};
