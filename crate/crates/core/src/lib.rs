pub mod commutative;
pub mod downset;
pub mod error;
pub mod exec;
pub mod ineq;
pub mod lang;
pub mod limits;
pub mod monoid;
pub mod numsg;
pub mod reproduce;

pub use error::{Error, Result};
pub use exec::Exec;
pub use limits::Limits;
