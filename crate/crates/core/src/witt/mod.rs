//! p-typical Witt vectors of finite length.

pub mod coeff;
pub mod polys;
pub mod vector;

pub use coeff::{CharPCoeff, Coeff};
pub use polys::{check_caps, gen_witt_polys, get_caps, set_caps, Kind, MPoly, WittPolySet};
pub use vector::{
    frobenius, from_zpn, ghost_map, to_zpn, truncate, verschiebung, witt_add, witt_mul,
    witt_neg, witt_op_int, witt_sub, wp, WittVector,
};
