//! Exact and certified numeric building blocks.

pub mod dyadic;
pub mod interval;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod rational;

pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
