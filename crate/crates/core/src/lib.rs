pub mod characters;
pub mod dsl;
pub mod error;
pub mod lambda;
pub mod report;
pub mod ring;
pub mod spaces;
pub mod verifier;

pub use error::{Error, Result};
