pub mod census;
pub mod cyclotomic;
pub mod diophant;
pub mod error;
pub mod exec;
pub mod factor;
pub mod homometry;
pub mod poly;
pub mod polytope;
pub mod roots;

pub use error::{Error, Result};
pub use exec::Exec;
pub use poly::{from_support, DensePoly, SupportSet};
