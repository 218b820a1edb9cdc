//! Operation tables, shelves and spindles.
//!
//! Elements of a carrier of size `n` are the indices `0..n`, and the table
//! entry at `(x, y)` is `x ▷ y`. A [`Shelf`] certifies right
//! self-distributivity, a [`Spindle`] additionally certifies idempotency.

mod acyclic;
mod fspindle;
mod orbit;

pub use acyclic::{closure, find_acyclicity_witness, is_right_permutation_subset};
pub use fspindle::{
    assemble_block_spindle, assemble_f_spindle, assemble_sigma_spindle, detect_f_spindle, sigma_function, Block,
    BlockSpindleSpec, FSpindleSpec,
};
pub use orbit::{analyze_orbit_graph, OrbitGraph, OrbitSummary};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of counterexamples kept by the validators.
pub const DEFAULT_COUNTEREXAMPLE_CAP: usize = 10;

/// A binary operation on `0..size`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperationTable {
    size: usize,
    cells: Vec<usize>,
}

impl OperationTable {
    /// Builds a table from rows, rejecting empty, ragged or out-of-range input.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::EmptyTable);
        }
        let mut cells = Vec::with_capacity(size * size);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != size {
                return Err(Error::RaggedTable { row, found: entries.len(), expected: size });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= size {
                    return Err(Error::EntryOutOfRange { row, col, value, size });
                }
            }
            cells.extend(entries);
        }
        Ok(OperationTable { size, cells })
    }

    pub fn from_fn(size: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::new((0..size).map(|x| (0..size).map(|y| op(x, y)).collect()).collect())
    }

    /// Parses rows written with labels `1..=n`.
    pub fn from_one_based(rows: Vec<Vec<usize>>) -> Result<Self> {
        let size = rows.len();
        let mut shifted = Vec::with_capacity(size);
        for (row, entries) in rows.into_iter().enumerate() {
            let mut out = Vec::with_capacity(entries.len());
            for (col, value) in entries.into_iter().enumerate() {
                if value == 0 || value > size {
                    return Err(Error::EntryOutOfRange { row, col, value, size: size + 1 });
                }
                out.push(value - 1);
            }
            shifted.push(out);
        }
        Self::new(shifted)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// The table transported along `perm`: the result satisfies
    /// `perm[x] ▷' perm[y] = perm[x ▷ y]`.
    pub fn relabel(&self, perm: &[usize]) -> OperationTable {
        assert_eq!(perm.len(), self.size, "permutation length must match the carrier");
        let n = self.size;
        let mut cells = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[perm[x] * n + perm[y]] = perm[self.op(x, y)];
            }
        }
        OperationTable { size: n, cells }
    }

    /// Restriction to `subset`, reindexed by position in the (sorted) subset.
    pub fn restrict(&self, subset: &[usize]) -> Result<OperationTable> {
        let mut position = vec![usize::MAX; self.size];
        for (i, &e) in subset.iter().enumerate() {
            if e >= self.size {
                return Err(Error::ElementOutOfRange { element: e, size: self.size });
            }
            position[e] = i;
        }
        let mut rows = Vec::with_capacity(subset.len());
        for &x in subset {
            let mut row = Vec::with_capacity(subset.len());
            for &y in subset {
                let z = self.op(x, y);
                if position[z] == usize::MAX {
                    return Err(Error::NotASubspindle { x, y, z });
                }
                row.push(position[z]);
            }
            rows.push(row);
        }
        OperationTable::new(rows)
    }
}

/// Outcome of checking the shelf and spindle axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_shelf: bool,
    pub is_spindle: bool,
    /// Triples `(x, y, z)` with `(x▷y)▷z != (x▷z)▷(y▷z)`, in lexicographic order.
    pub distributivity_violations: Vec<(usize, usize, usize)>,
    /// Elements with `x▷x != x`.
    pub idempotency_violations: Vec<usize>,
    /// True when a list was cut off at the cap.
    pub truncated: bool,
}

pub fn validate_shelf(table: &OperationTable) -> ValidationReport {
    validate_with_cap(table, DEFAULT_COUNTEREXAMPLE_CAP, false)
}

pub fn validate_spindle(table: &OperationTable) -> ValidationReport {
    validate_with_cap(table, DEFAULT_COUNTEREXAMPLE_CAP, true)
}

/// Exhaustive axiom check keeping at most `cap` counterexamples per axiom.
/// When `check_idempotency` is false the diagonal is not inspected and
/// `is_spindle` is reported as false.
pub fn validate_with_cap(
    table: &OperationTable,
    cap: usize,
    check_idempotency: bool,
) -> ValidationReport {
    let n = table.size();
    let mut distributivity_violations = Vec::new();
    let mut idempotency_violations = Vec::new();
    let mut truncated = false;
    let mut distributive = true;
    for x in 0..n {
        for y in 0..n {
            let xy = table.op(x, y);
            for z in 0..n {
                let lhs = table.op(xy, z);
                let rhs = table.op(table.op(x, z), table.op(y, z));
                if lhs != rhs {
                    distributive = false;
                    if distributivity_violations.len() < cap {
                        distributivity_violations.push((x, y, z));
                    } else {
                        truncated = true;
                    }
                }
            }
        }
    }
    let mut idempotent = true;
    if check_idempotency {
        for x in 0..n {
            if table.op(x, x) != x {
                idempotent = false;
                if idempotency_violations.len() < cap {
                    idempotency_violations.push(x);
                } else {
                    truncated = true;
                }
            }
        }
    }
    ValidationReport {
        is_shelf: distributive,
        is_spindle: distributive && idempotent && check_idempotency,
        distributivity_violations,
        idempotency_violations,
        truncated,
    }
}

/// A right self-distributive operation table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shelf {
    table: OperationTable,
}

impl Shelf {
    pub fn new(table: OperationTable) -> Result<Self> {
        let report = validate_shelf(&table);
        if !report.is_shelf {
            let (x, y, z) = report.distributivity_violations[0];
            return Err(Error::NotAShelf(format!("distributivity fails at ({x}, {y}, {z})")));
        }
        Ok(Shelf { table })
    }

    pub fn table(&self) -> &OperationTable {
        &self.table
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.table.size()
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table.op(x, y)
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size()).all(|x| self.op(x, x) == x)
    }

    /// Whether `subset` is closed under the operation.
    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.size()];
        for &e in subset {
            if e >= self.size() {
                return false;
            }
            member[e] = true;
        }
        subset.iter().all(|&x| subset.iter().all(|&y| member[self.op(x, y)]))
    }
}

/// An idempotent shelf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spindle {
    shelf: Shelf,
}

impl Spindle {
    pub fn new(table: OperationTable) -> Result<Self> {
        let report = validate_spindle(&table);
        if !report.is_spindle {
            let reason = if let Some(&(x, y, z)) = report.distributivity_violations.first() {
                format!("distributivity fails at ({x}, {y}, {z})")
            } else {
                format!("{0} ▷ {0} != {0}", report.idempotency_violations[0])
            };
            return Err(Error::NotASpindle(reason));
        }
        Ok(Spindle { shelf: Shelf { table } })
    }

    pub fn from_shelf(shelf: Shelf) -> Result<Self> {
        if let Some(x) = (0..shelf.size()).find(|&x| shelf.op(x, x) != x) {
            return Err(Error::NotASpindle(format!("{x} ▷ {x} != {x}")));
        }
        Ok(Spindle { shelf })
    }

    pub fn as_shelf(&self) -> &Shelf {
        &self.shelf
    }

    pub fn into_shelf(self) -> Shelf {
        self.shelf
    }

    pub fn table(&self) -> &OperationTable {
        self.shelf.table()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.shelf.size()
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.shelf.op(x, y)
    }
}

/// The right-trivial spindle `x ▷ y = y`.
pub fn trivial_spindle(size: usize) -> Result<Spindle> {
    Spindle::new(OperationTable::from_fn(size, |_, y| y)?)
}

/// The dihedral quandle `x ▷ y = 2y - x (mod n)`.
pub fn dihedral_quandle(n: usize) -> Result<Spindle> {
    Spindle::new(OperationTable::from_fn(n, |x, y| (2 * y + n - x) % n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn t1() -> OperationTable {
        OperationTable::from_one_based(vec![
            vec![1, 2, 3, 4],
            vec![1, 2, 3, 4],
            vec![1, 2, 3, 4],
            vec![2, 1, 1, 4],
        ])
        .unwrap()
    }

    fn t2() -> OperationTable {
        OperationTable::from_one_based(vec![
            vec![1, 2, 4, 3],
            vec![1, 2, 4, 3],
            vec![2, 1, 3, 4],
            vec![2, 1, 3, 4],
        ])
        .unwrap()
    }

    #[test]
    fn intro_tables_are_spindles() {
        assert!(validate_shelf(&t1()).is_shelf);
        let r = validate_spindle(&t2());
        assert!(r.is_spindle);
        assert!(r.distributivity_violations.is_empty());
    }

    #[test]
    fn right_trivial_is_shelf() {
        let t = OperationTable::from_fn(3, |_, y| y).unwrap();
        assert!(validate_shelf(&t).is_shelf);
    }

    #[test]
    fn xor_is_not_a_shelf() {
        let t = OperationTable::from_fn(2, |x, y| (x + y) % 2).unwrap();
        let r = validate_shelf(&t);
        assert!(!r.is_shelf);
        assert!(r.distributivity_violations.contains(&(0, 1, 1)));
        // brute force: every listed triple really fails
        for &(x, y, z) in &r.distributivity_violations {
            assert_ne!(t.op(t.op(x, y), z), t.op(t.op(x, z), t.op(y, z)));
        }
        assert!(Shelf::new(t).is_err());
    }

    #[test]
    fn diagonal_violation() {
        let t = OperationTable::new(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let r = validate_spindle(&t);
        assert!(!r.is_spindle);
        assert_eq!(r.idempotency_violations, vec![0]);
    }

    #[test]
    fn dihedral_three_is_spindle() {
        let t = OperationTable::from_fn(3, |x, y| (2 * y + 3 - x) % 3).unwrap();
        assert!(validate_spindle(&t).is_spindle);
    }

    #[test]
    fn malformed_tables() {
        assert_eq!(OperationTable::new(vec![]), Err(Error::EmptyTable));
        assert_eq!(
            OperationTable::new(vec![vec![0, 2], vec![0, 1]]),
            Err(Error::EntryOutOfRange { row: 0, col: 1, value: 2, size: 2 })
        );
        assert!(matches!(
            OperationTable::new(vec![vec![0], vec![0, 1]]),
            Err(Error::RaggedTable { row: 0, .. })
        ));
    }

    #[test]
    fn counterexamples_are_capped() {
        // x ▷ y = x + y mod 5 violates distributivity on most triples
        let t = OperationTable::from_fn(5, |x, y| (x + y) % 5).unwrap();
        let r = validate_with_cap(&t, 3, true);
        assert_eq!(r.distributivity_violations.len(), 3);
        assert!(r.truncated);
    }

    #[test]
    fn relabel_is_an_isomorphism() {
        let t = t1();
        let perm = [3, 1, 0, 2];
        let u = t.relabel(&perm);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(u.op(perm[x], perm[y]), perm[t.op(x, y)]);
            }
        }
        assert!(validate_spindle(&u).is_spindle);
    }
}
