pub mod arith;
pub mod cli;
pub mod asw;
pub mod cover;
pub mod error;
pub mod garuti;
pub mod ramification;
pub mod selftest;
pub mod stacky;
pub mod witt;

pub use error::{Error, Result};
