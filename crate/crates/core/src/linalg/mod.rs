//! Exact integer linear algebra: sparse matrices, Smith normal form and
//! finitely generated abelian groups.

pub mod coeff;
mod group;
mod snf;
mod sparse;

pub use group::{group_directsum, group_iso_eq, group_power, invariant_chain, FGAbelianGroup};
#[allow(unused_imports)]
pub(crate) use group::{deserialize_factors, serialize_factors};
pub use snf::{determinant, rank, smith_normal_form, smith_normal_form_with, SnfOptions, SnfResult, SnfWitnesses};
pub use sparse::SparseIntMatrix;

use crate::error::{Error, Result};

/// Homology at the middle of `C_{n+1} --d_np1--> C_n --d_n--> C_{n-1}`.
///
/// Matrices map columns to rows, so `d_n.cols() == d_np1.rows() == dim C_n`.
pub fn homology_from_boundaries(d_n: &SparseIntMatrix, d_np1: &SparseIntMatrix) -> Result<FGAbelianGroup> {
    homology_with(d_n, d_np1, &SnfOptions::default())
}

pub fn homology_with(d_n: &SparseIntMatrix, d_np1: &SparseIntMatrix, options: &SnfOptions) -> Result<FGAbelianGroup> {
    if d_n.cols() != d_np1.rows() {
        return Err(Error::DimensionMismatch(format!(
            "outgoing boundary has {} columns but incoming boundary has {} rows",
            d_n.cols(),
            d_np1.rows()
        )));
    }
    let composite = d_n.mul(d_np1)?;
    if !composite.is_zero() {
        return Err(Error::NonzeroComposite(format!("{} nonzero entries", composite.nnz())));
    }
    let out = smith_normal_form_with(d_n, options)?;
    let inc = smith_normal_form_with(d_np1, options)?;
    Ok(homology_from_snf(d_n.cols(), out.rank, &inc))
}

/// Assembles `ker d_n / im d_{n+1}` from a chain dimension, the rank of the
/// outgoing boundary and the Smith form of the incoming one.
pub fn homology_from_snf(dim: usize, outgoing_rank: usize, incoming: &SnfResult) -> FGAbelianGroup {
    let free = dim - outgoing_rank - incoming.rank;
    FGAbelianGroup::new(free, incoming.torsion())
}
