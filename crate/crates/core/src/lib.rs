//! Polynomial functions and polynomial permutations on `Z/p^nZ`.
//!
//! * [`arith`]: valuations, `alpha`/`beta`, falling factorials.
//! * [`polyfun`]: monomial, canonical (falling-factorial) and Carlitz forms, value tables.
//! * [`fgroup`]: the monoid `F_n` and the group `G_n`, by formula and by enumeration.
//! * [`hgroup`]: the group `H` between `G_1` and `G_2`, with `theta: F_2 -> E` and `psi: E -> F_1`.
//! * [`sylow`]: Sylow `p`-subgroups of `H` and `G_n`.
//! * [`group`]: brute-force group routines used as oracles.

pub mod arith;
pub mod error;
pub mod fgroup;
pub mod group;
pub mod hgroup;
pub mod polyfun;
pub mod sylow;

pub use arith::PrimeLevel;
pub use error::{Error, Result};
pub use polyfun::{CanonicalForm, CarlitzForm, FunctionTable, MonomialPoly};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serializer;

/// Serializes a big integer as a JSON number when it fits in `u128`, and as a
/// decimal string otherwise.
pub fn serialize_big<S: Serializer>(value: &BigUint, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    match value.to_u128() {
        Some(v) => serializer.serialize_u128(v),
        None => serializer.serialize_str(&value.to_string()),
    }
}
