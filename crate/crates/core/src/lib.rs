pub mod arith;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod geometry;
pub mod ideals;
pub mod domain;
pub mod membership;
pub mod zeta;

pub use error::{Error, Result};
