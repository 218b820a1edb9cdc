//! Exhaustive enumeration of small spindles and sweeps of the growth
//! conjectures over them.

mod conjectures;

pub use conjectures::{
    default_degree_bound, sweep_conjectures, test_growth_conjectures, ConjectureReport, Outcome, Status,
};

use std::collections::BTreeSet;

use crate::algebra::{OperationTable, Shelf, Spindle};
use crate::error::{Error, Result};

/// Largest carrier for exhaustive spindle enumeration.
pub const MAX_ENUMERATION_SIZE: usize = 4;
/// Largest carrier for exhaustive shelf enumeration.
pub const MAX_SHELF_ENUMERATION_SIZE: usize = 3;
/// Largest carrier accepted by [`canonical_form`].
pub const MAX_CANONICAL_SIZE: usize = 5;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut perm, &mut out);
    out
}

fn heap_permute(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, perm, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        perm.swap(j, k - 1);
    }
}

/// The lexicographically smallest relabeling of a table.
pub fn canonical_form(table: &OperationTable) -> Result<OperationTable> {
    if table.size() > MAX_CANONICAL_SIZE {
        return Err(Error::Unsupported(format!(
            "canonical forms are limited to {MAX_CANONICAL_SIZE} elements (got {})",
            table.size()
        )));
    }
    Ok(permutations(table.size()).iter().map(|p| table.relabel(p)).min().expect("at least one permutation"))
}

pub fn is_isomorphic(a: &OperationTable, b: &OperationTable) -> Result<bool> {
    Ok(a.size() == b.size() && canonical_form(a)? == canonical_form(b)?)
}

/// Backtracking over cells in row-major order; a partial table is abandoned
/// as soon as some distributivity instance with all its cells filled fails.
struct Search {
    n: usize,
    idempotent: bool,
    cells: Vec<Option<usize>>,
    found: Vec<Vec<usize>>,
}

impl Search {
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.cells[x * self.n + y]
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = self.get(x, y) else { continue };
                for z in 0..n {
                    let (Some(xz), Some(yz)) = (self.get(x, z), self.get(y, z)) else { continue };
                    if let (Some(l), Some(r)) = (self.get(xy, z), self.get(xz, yz)) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, cell: usize) {
        if cell == self.n * self.n {
            self.found.push(self.cells.iter().map(|c| c.expect("complete")).collect());
            return;
        }
        let (x, y) = (cell / self.n, cell % self.n);
        let choices: Vec<usize> = if self.idempotent && x == y { vec![x] } else { (0..self.n).collect() };
        for v in choices {
            self.cells[cell] = Some(v);
            if self.consistent() {
                self.run(cell + 1);
            }
        }
        self.cells[cell] = None;
    }
}

fn search(n: usize, idempotent: bool) -> Vec<OperationTable> {
    let mut s = Search { n, idempotent, cells: vec![None; n * n], found: Vec::new() };
    s.run(0);
    s.found
        .into_iter()
        .map(|cells| OperationTable::from_fn(n, |x, y| cells[x * n + y]).expect("entries in range"))
        .collect()
}

fn dedup(tables: Vec<OperationTable>, up_to_iso: bool) -> Result<Vec<OperationTable>> {
    if !up_to_iso {
        return Ok(tables);
    }
    let forms: BTreeSet<OperationTable> = tables.iter().map(canonical_form).collect::<Result<_>>()?;
    Ok(forms.into_iter().collect())
}

/// Every spindle on `size` elements in lexicographic order, or one canonical
/// representative per isomorphism class (sorted) when `up_to_iso` is set.
pub fn enumerate_spindles(size: usize, up_to_iso: bool) -> Result<Vec<Spindle>> {
    if size == 0 || size > MAX_ENUMERATION_SIZE {
        return Err(Error::Unsupported(format!(
            "exhaustive spindle enumeration covers sizes 1..={MAX_ENUMERATION_SIZE} (got {size})"
        )));
    }
    dedup(search(size, true), up_to_iso)?.into_iter().map(Spindle::new).collect()
}

/// Like [`enumerate_spindles`] without the idempotency requirement.
pub fn enumerate_shelves(size: usize, up_to_iso: bool) -> Result<Vec<Shelf>> {
    if size == 0 || size > MAX_SHELF_ENUMERATION_SIZE {
        return Err(Error::Unsupported(format!(
            "exhaustive shelf enumeration covers sizes 1..={MAX_SHELF_ENUMERATION_SIZE} (got {size})"
        )));
    }
    dedup(search(size, false), up_to_iso)?.into_iter().map(Shelf::new).collect()
}
