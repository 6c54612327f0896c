//! Exact maximal-subgroup invariants of finite permutation groups.
//!
//! The crate computes chief series, crowns, counts of maximal subgroups by
//! index and type, generation probabilities, and evaluates the upper bounds
//! for `m_n(G)` and `nu(G)` expressed through the crown invariants
//! `cr^A_n`, `rks_n`, `rko_n` and `rkm_n`. It also builds the `L_k` towers
//! over primitive groups with abelian socle and the subdirect "hat"
//! construction over Aut-orbits of generating tuples.
//!
//! Everything is `no_std` + `alloc`; IO, reports and the command line live in
//! the companion `maxind` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod bitset;
pub mod bounds;
pub mod catalog;
pub mod constructions;
mod error;
pub mod gf;
pub mod group;
pub mod hom;
pub mod invariants;
pub mod lattice;
pub mod meataxe;
pub mod perm;
pub mod simple;
pub mod probgen;
pub mod random;
pub mod small;
pub mod subdirect;
pub mod structure;

pub use error::{Error, Result};
pub use group::Group;
pub use perm::Perm;

/// Hash map used throughout the crate.
pub(crate) type HashMap<K, V> = hashbrown::HashMap<K, V>;
pub(crate) type HashSet<K> = hashbrown::HashSet<K>;
