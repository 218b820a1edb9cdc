//! Subsets on which the shelf acts from the right by permutations.
//!
//! Such a subset `A` forces the augmented complex to be acyclic. The search
//! here is sound but incomplete above [`EXHAUSTIVE_LIMIT`] elements: `None`
//! means no witness was found, not that none exists.

use super::Shelf;

/// Carriers up to this size are additionally searched over all subsets.
pub const EXHAUSTIVE_LIMIT: usize = 10;

/// Smallest superset of `seed` closed under `a ↦ a ▷ x` for every `x`.
pub fn closure(shelf: &Shelf, seed: &[usize]) -> Vec<usize> {
    let n = shelf.size();
    let mut member = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    for &a in seed {
        if !member[a] {
            member[a] = true;
            stack.push(a);
        }
    }
    while let Some(a) = stack.pop() {
        for x in 0..n {
            let b = shelf.op(a, x);
            if !member[b] {
                member[b] = true;
                stack.push(b);
            }
        }
    }
    (0..n).filter(|&a| member[a]).collect()
}

/// `A` is nonempty, closed under right multiplication, and every `a ↦ a ▷ x`
/// permutes it.
pub fn is_right_permutation_subset(shelf: &Shelf, subset: &[usize]) -> bool {
    let n = shelf.size();
    if subset.is_empty() || subset.iter().any(|&a| a >= n) {
        return false;
    }
    let mut member = vec![false; n];
    for &a in subset {
        member[a] = true;
    }
    let distinct = member.iter().filter(|&&m| m).count();
    (0..n).all(|x| {
        let mut hit = vec![false; n];
        let mut count = 0;
        for a in (0..n).filter(|&a| member[a]) {
            let b = shelf.op(a, x);
            if !member[b] {
                return false;
            }
            if !hit[b] {
                hit[b] = true;
                count += 1;
            }
        }
        count == distinct
    })
}

/// Candidates in order: right-closures of singletons, closures of column
/// images, the whole carrier, then every subset for small carriers.
pub fn find_acyclicity_witness(shelf: &Shelf) -> Option<Vec<usize>> {
    let n = shelf.size();
    for a in 0..n {
        let candidate = closure(shelf, &[a]);
        if is_right_permutation_subset(shelf, &candidate) {
            return Some(candidate);
        }
    }
    for y in 0..n {
        let column: Vec<usize> = (0..n).map(|x| shelf.op(x, y)).collect();
        let candidate = closure(shelf, &column);
        if is_right_permutation_subset(shelf, &candidate) {
            return Some(candidate);
        }
    }
    let everything: Vec<usize> = (0..n).collect();
    if is_right_permutation_subset(shelf, &everything) {
        return Some(everything);
    }
    if n <= EXHAUSTIVE_LIMIT {
        for mask in 1u32..(1 << n) {
            let candidate: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if is_right_permutation_subset(shelf, &candidate) {
                return Some(candidate);
            }
        }
    }
    None
}
