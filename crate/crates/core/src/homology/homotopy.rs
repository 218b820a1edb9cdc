//! The contracting homotopy `h(x̄) = (a_x̄, x̄)` of the augmented complex,
//! available when some subset `A` is permuted by every right multiplication.

use std::collections::BTreeMap;

use serde::Serialize;

use super::compute::homology;
use crate::algebra::{is_right_permutation_subset, Shelf};
use crate::chain::{boundary_of_tuple, Variant};
use crate::error::{Error, Result};
use crate::linalg::FGAbelianGroup;

/// A formal sum of tuples; the empty tuple is the generator in degree −1.
pub type Chain = Vec<(Vec<usize>, i64)>;

fn check_witness(shelf: &Shelf, subset: &[usize]) -> Result<()> {
    if is_right_permutation_subset(shelf, subset) {
        Ok(())
    } else {
        Err(Error::Contract(format!("{subset:?} is not permuted by every right multiplication")))
    }
}

/// The unique `a' ∈ A` with `((a' ▷ x_0) ▷ x_1) ⋯ ▷ x_n = a`.
fn lift(shelf: &Shelf, subset: &[usize], a: usize, tuple: &[usize]) -> usize {
    tuple.iter().rev().fold(a, |current, &x| {
        *subset.iter().find(|&&z| shelf.op(z, x) == current).expect("right multiplication permutes the witness")
    })
}

/// Boundary in the augmented complex, where `∂(x) = ()`.
pub fn augmented_boundary(shelf: &Shelf, tuple: &[usize]) -> Chain {
    match tuple.len() {
        0 => Vec::new(),
        1 => vec![(Vec::new(), 1)],
        _ => boundary_of_tuple(shelf, tuple),
    }
}

/// Applies `h` to a chain, using the smallest element of `subset` as `a`.
pub fn contracting_homotopy(shelf: &Shelf, subset: &[usize], chain: &[(Vec<usize>, i64)]) -> Result<Chain> {
    check_witness(shelf, subset)?;
    let a = *subset.iter().min().expect("witness is nonempty");
    Ok(chain
        .iter()
        .map(|(tuple, c)| {
            let mut lifted = Vec::with_capacity(tuple.len() + 1);
            lifted.push(lift(shelf, subset, a, tuple));
            lifted.extend_from_slice(tuple);
            (lifted, *c)
        })
        .collect())
}

fn add_into(acc: &mut BTreeMap<Vec<usize>, i64>, chain: Chain) {
    for (t, c) in chain {
        *acc.entry(t).or_insert(0) += c;
    }
}

/// Checks `∂h + h∂ = id` on every tuple of degree `−1..=n_max`.
pub fn homotopy_identity_holds(shelf: &Shelf, subset: &[usize], n_max: usize) -> Result<bool> {
    check_witness(shelf, subset)?;
    let size = shelf.size();
    for len in 0..=n_max + 1 {
        let mut tuple = vec![0usize; len];
        loop {
            let mut total = BTreeMap::new();
            for (t, c) in contracting_homotopy(shelf, subset, &[(tuple.clone(), 1)])? {
                add_into(&mut total, augmented_boundary(shelf, &t).into_iter().map(|(f, d)| (f, c * d)).collect());
            }
            add_into(&mut total, contracting_homotopy(shelf, subset, &augmented_boundary(shelf, &tuple))?);
            total.retain(|_, c| *c != 0);
            if total.len() != 1 || total.get(&tuple) != Some(&1) {
                return Ok(false);
            }
            // next tuple in lexicographic order
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < size {
                    break;
                }
                tuple[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if len == 0 || i == usize::MAX {
                break;
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    pub witness: Vec<usize>,
    /// `H̃_0, …, H̃_{n_max}`
    pub reduced: Vec<FGAbelianGroup>,
    pub homotopy_holds: bool,
    pub acyclic: bool,
}

/// Computes `H̃_n` for `n ≤ n_max` and checks the homotopy identity on the
/// same range.
pub fn verify_acyclicity(shelf: &Shelf, subset: &[usize], n_max: usize) -> Result<AcyclicityReport> {
    check_witness(shelf, subset)?;
    let reduced = homology(shelf, &Variant::Augmented, 0, n_max)?;
    let homotopy_holds = homotopy_identity_holds(shelf, subset, n_max)?;
    let acyclic = homotopy_holds && reduced.iter().all(FGAbelianGroup::is_trivial);
    Ok(AcyclicityReport { witness: subset.to_vec(), reduced, homotopy_holds, acyclic })
}
