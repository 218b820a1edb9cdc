//! One-term distributive homology of finite shelves and spindles.
//!
//! The crate builds the chain complexes of a shelf (full, augmented,
//! reduced, normalized, degenerate, relative and the `b`-ending
//! subcomplex), computes their integral homology exactly through sparse
//! Smith normal form, and evaluates the closed-form answers known for
//! f-spindles and block spindles so the two can be checked against each
//! other.

pub mod algebra;
pub mod chain;
pub mod error;
pub mod explorer;
pub mod homology;
pub mod io;
pub mod linalg;

pub use algebra::{OperationTable, Shelf, Spindle};
pub use error::{Error, Result};
pub use linalg::{FGAbelianGroup, SparseIntMatrix};
