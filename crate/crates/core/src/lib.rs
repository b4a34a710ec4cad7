//! Lie operads, partition complexes and related combinatorics.

mod error;
pub mod free_lie;
pub mod grasper;
pub mod hilton_milnor;
pub mod homology;
pub mod linalg;
pub mod partition;
pub mod perm;
pub mod robinson;
pub mod sparse;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
