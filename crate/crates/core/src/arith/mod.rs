//! Exact arithmetic foundations.

pub mod fp;
pub mod laurent;
pub mod parse;
pub mod pl;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use fp::{FpElem, PrimeField};
pub use laurent::{laurent_expand, LaurentSeries, Precision};
pub use pl::{pl_eval, pl_invert, PLFunction};
pub use poly::Poly;
pub use ratfunc::{valuation, Place, RatFunc};
pub use rational::BigRat;
