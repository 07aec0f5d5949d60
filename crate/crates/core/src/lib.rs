pub mod arith;
pub mod closed;
pub mod ct;
pub mod cyclic;
pub mod dyck;
pub mod error;
pub mod kostant;
pub mod lidskii;
pub mod model;
pub mod verify;

pub use error::{Error, Result};
