pub mod algebra;
pub mod catalog;
pub mod constraints;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod triangular;

pub use error::{Error, Result};
