pub mod error;
pub mod exact;
pub mod graded;
pub mod model;
pub mod parse;
pub mod classify;
pub mod biquotient;
pub mod cli;

pub use error::{Error, Result};
