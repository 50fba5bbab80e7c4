//! Construction and certification of mutually orthogonal Latin squares.
//!
//! Two routes to MOLS are covered:
//!
//! * separable permutation codes, generated as orbits of a subgroup of the
//!   Hamming isometry group `Iso(n)` acting on `S_n` ([`isometry`], [`code`]);
//! * `(n, k, 1)` difference matrices over small abelian groups, expanded from
//!   base columns ([`algebra`], [`dm`]).
//!
//! Every construction ends in [`latin::verify_mols`], which checks the
//! resulting squares directly. The [`datasets`] module embeds the four
//! constructions for orders 54, 96, 108 and 45.

pub mod algebra;
pub mod code;
pub mod datasets;
pub mod dm;
mod error;
pub mod isometry;
pub mod latin;
pub mod perm;

pub use error::{Error, Result};
