//! Variant Robinson–Schensted–Knuth correspondence, standardization, and an
//! exact engine for x-stable partial flags over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`tableau`]: partitions, compositions, tableaux and their enumeration.
//! * [`rsk`]: arrays and matrices, variant and classic insertion.
//! * [`standardize`]: standardization of tableaux and arrays.
//! * [`linalg`] and [`flag`]: subspaces over `F_p`, nilpotent operators,
//!   stable flags, their tableaux and relative positions.
//! * [`harness`]: verification campaigns tying the combinatorics to the geometry.

pub mod error;
pub mod flag;
pub mod harness;
pub mod linalg;
pub mod rsk;
pub mod standardize;
pub mod tableau;

pub use error::{Error, Result};
pub use flag::{Flag, NilpotentOperator};
pub use linalg::{PrimeField, Subspace};
pub use rsk::{BiArray, Convention, RelPosMatrix};
pub use tableau::{Composition, Partition, Tableau};
