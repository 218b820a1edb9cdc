//! Tuple bases and boundary matrices of the one-term distributive complex.
//!
//! `C_n` is free on `(n+1)`-tuples of elements with `∂ = Σ (-1)^i d^i`,
//! `d^0` dropping the head and `d^i` right-multiplying the first `i`
//! entries by `x_i` and dropping it. Bases are sorted lexicographically;
//! tuples are encoded as base-`|X|` integers with `x_0` most significant so
//! that numeric and lexicographic order agree.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Shelf;
use crate::error::{Error, Result};
use crate::linalg::SparseIntMatrix;

/// Which complex to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Full,
    /// Full complex plus `Z` in degree −1 with `∂₀(x) = 1`.
    Augmented,
    /// `C(X) / C({b})`.
    Reduced { basepoint: usize },
    /// Quotient by tuples with an adjacent repeat.
    Normalized,
    /// Span of tuples with an adjacent repeat.
    Degenerate,
    /// `C(X) / C(Y)` for a subspindle `Y`, or `CN(X) / CN(Y)` when normalized.
    Relative { subset: Vec<usize>, normalized: bool },
    /// Normalized tuples ending in `b`; `reduced` also drops the tuple `(b)`.
    BEnding { basepoint: usize, reduced: bool },
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Augmented => "augmented",
            Variant::Reduced { .. } => "reduced",
            Variant::Normalized => "normalized",
            Variant::Degenerate => "degenerate",
            Variant::Relative { .. } => "relative",
            Variant::BEnding { .. } => "bending",
        }
    }

    fn needs_idempotency(&self) -> bool {
        match self {
            Variant::Normalized | Variant::Degenerate | Variant::BEnding { .. } => true,
            Variant::Relative { normalized, .. } => *normalized,
            _ => false,
        }
    }

    /// Checks the variant's parameters against a shelf.
    pub fn check(&self, shelf: &Shelf) -> Result<()> {
        let n = shelf.size();
        match self {
            Variant::Reduced { basepoint } | Variant::BEnding { basepoint, .. } if *basepoint >= n => {
                return Err(Error::ElementOutOfRange { element: *basepoint, size: n });
            }
            Variant::Reduced { basepoint } if shelf.op(*basepoint, *basepoint) != *basepoint => {
                let b = *basepoint;
                return Err(Error::NotASubspindle { x: b, y: b, z: shelf.op(b, b) });
            }
            Variant::Relative { subset, .. } => {
                if let Some(&e) = subset.iter().find(|&&e| e >= n) {
                    return Err(Error::ElementOutOfRange { element: e, size: n });
                }
                for &x in subset {
                    for &y in subset {
                        let z = shelf.op(x, y);
                        if !subset.contains(&z) {
                            return Err(Error::NotASubspindle { x, y, z });
                        }
                    }
                }
            }
            _ => {}
        }
        if self.needs_idempotency() && !shelf.is_idempotent() {
            return Err(Error::NotASpindle(format!("the {} complex needs an idempotent operation", self.name())));
        }
        Ok(())
    }

    fn membership(&self, carrier: usize) -> Membership {
        let mut in_sub = vec![false; carrier];
        if let Variant::Relative { subset, .. } = self {
            for &e in subset {
                in_sub[e] = true;
            }
        }
        Membership { variant: self.clone(), in_sub }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether a tuple has `x_i = x_{i+1}` for some `i`.
pub fn is_degenerate(tuple: &[usize]) -> bool {
    tuple.windows(2).any(|w| w[0] == w[1])
}

enum Class {
    Basis,
    /// Lies in the subcomplex being divided out.
    Killed,
    /// Outside the complex; must cancel.
    Outside,
}

struct Membership {
    variant: Variant,
    in_sub: Vec<bool>,
}

impl Membership {
    fn classify(&self, t: &[usize]) -> Class {
        let degenerate = || is_degenerate(t);
        match &self.variant {
            Variant::Full | Variant::Augmented => Class::Basis,
            Variant::Reduced { basepoint } => {
                if t.iter().all(|x| x == basepoint) {
                    Class::Killed
                } else {
                    Class::Basis
                }
            }
            Variant::Normalized => {
                if degenerate() {
                    Class::Killed
                } else {
                    Class::Basis
                }
            }
            Variant::Degenerate => {
                if degenerate() {
                    Class::Basis
                } else {
                    Class::Outside
                }
            }
            Variant::Relative { normalized, .. } => {
                if t.iter().all(|&x| self.in_sub[x]) || (*normalized && degenerate()) {
                    Class::Killed
                } else {
                    Class::Basis
                }
            }
            Variant::BEnding { basepoint, reduced } => {
                if degenerate() || (*reduced && t.len() == 1 && t[0] == *basepoint) {
                    Class::Killed
                } else if t.last() == Some(basepoint) {
                    Class::Basis
                } else {
                    Class::Outside
                }
            }
        }
    }
}

/// Size limits for complex construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    /// Highest degree whose boundary may be built.
    pub degree_cap: usize,
    /// Cap on the estimated number of boundary entries (tuples × faces).
    pub max_entries: u128,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig { degree_cap: 6, max_entries: 50_000_000 }
    }
}

impl ChainConfig {
    fn check(&self, carrier: usize, degree: usize) -> Result<()> {
        if degree > self.degree_cap {
            return Err(Error::DegreeCap { degree, cap: self.degree_cap });
        }
        let estimate = (carrier as u128)
            .checked_pow(degree as u32 + 1)
            .and_then(|t| t.checked_mul(degree as u128 + 1))
            .unwrap_or(u128::MAX);
        if estimate > self.max_entries {
            return Err(Error::Budget { estimate, budget: self.max_entries });
        }
        Ok(())
    }
}

/// Ordered basis of one degree of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBasis {
    degree: usize,
    carrier: usize,
    /// Sorted tuple codes; `None` when every tuple is present.
    codes: Option<Vec<u64>>,
    total: usize,
}

impl ChainBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.codes.as_ref().map_or(self.total, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tuple(&self, index: usize) -> Vec<usize> {
        let code = match &self.codes {
            Some(c) => c[index],
            None => index as u64,
        };
        decode(code, self.carrier, self.degree + 1)
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.degree + 1 || tuple.iter().any(|&x| x >= self.carrier) {
            return None;
        }
        let code = encode(tuple, self.carrier);
        match &self.codes {
            Some(c) => c.binary_search(&code).ok(),
            None => Some(code as usize),
        }
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(move |i| self.tuple(i))
    }
}

fn encode(tuple: &[usize], carrier: usize) -> u64 {
    tuple.iter().fold(0u64, |acc, &x| acc * carrier as u64 + x as u64)
}

fn decode(mut code: u64, carrier: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (code % carrier as u64) as usize;
        code /= carrier as u64;
    }
    out
}

/// The face `d^i` of a tuple.
pub fn face(shelf: &Shelf, tuple: &[usize], i: usize) -> Result<Vec<usize>> {
    if i >= tuple.len() {
        return Err(Error::Contract(format!("face index {i} out of range for a tuple of length {}", tuple.len())));
    }
    let mut out = Vec::with_capacity(tuple.len() - 1);
    out.extend(tuple[..i].iter().map(|&x| shelf.op(x, tuple[i])));
    out.extend_from_slice(&tuple[i + 1..]);
    Ok(out)
}

/// Boundary of a single tuple in the full complex, as `(tuple, coefficient)`
/// pairs with repeated faces merged and zeros dropped.
pub fn boundary_of_tuple(shelf: &Shelf, tuple: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let mut out: Vec<(Vec<usize>, i64)> = Vec::new();
    if tuple.len() <= 1 {
        return out;
    }
    for i in 0..tuple.len() {
        let f = face(shelf, tuple, i).expect("index in range");
        let sign = if i % 2 == 0 { 1 } else { -1 };
        match out.iter_mut().find(|(t, _)| *t == f) {
            Some(entry) => entry.1 += sign,
            None => out.push((f, sign)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

pub fn chain_basis(shelf: &Shelf, degree: usize, variant: &Variant) -> Result<ChainBasis> {
    chain_basis_with(shelf, degree, variant, &ChainConfig::default())
}

pub fn chain_basis_with(shelf: &Shelf, degree: usize, variant: &Variant, config: &ChainConfig) -> Result<ChainBasis> {
    variant.check(shelf)?;
    config.check(shelf.size(), degree)?;
    Ok(basis_unchecked(shelf.size(), degree, variant))
}

fn basis_unchecked(carrier: usize, degree: usize, variant: &Variant) -> ChainBasis {
    let total = carrier.pow(degree as u32 + 1);
    if matches!(variant, Variant::Full | Variant::Augmented) {
        return ChainBasis { degree, carrier, codes: None, total };
    }
    let membership = variant.membership(carrier);
    let codes = (0..total as u64)
        .filter(|&code| matches!(membership.classify(&decode(code, carrier, degree + 1)), Class::Basis))
        .collect();
    ChainBasis { degree, carrier, codes: Some(codes), total }
}

/// Matrix of `∂_n`, columns indexed by the degree-`n` basis and rows by the
/// degree-`(n-1)` basis. In degree 0 this is `0 × dim C_0`, except for the
/// augmented complex where it is the all-ones row.
pub fn boundary_matrix(shelf: &Shelf, degree: usize, variant: &Variant) -> Result<SparseIntMatrix> {
    boundary_matrix_with(shelf, degree, variant, &ChainConfig::default())
}

pub fn boundary_matrix_with(
    shelf: &Shelf,
    degree: usize,
    variant: &Variant,
    config: &ChainConfig,
) -> Result<SparseIntMatrix> {
    variant.check(shelf)?;
    config.check(shelf.size(), degree)?;
    let source = basis_unchecked(shelf.size(), degree, variant);
    if degree == 0 {
        return if *variant == Variant::Augmented {
            SparseIntMatrix::from_triples(1, source.len(), (0..source.len()).map(|j| (0, j, 1)))
        } else {
            Ok(SparseIntMatrix::zeros(0, source.len()))
        };
    }
    let target = basis_unchecked(shelf.size(), degree - 1, variant);
    assemble(shelf, variant, &source, &target)
}

fn assemble(shelf: &Shelf, variant: &Variant, source: &ChainBasis, target: &ChainBasis) -> Result<SparseIntMatrix> {
    let membership = variant.membership(shelf.size());
    let columns: Vec<Vec<(usize, i64)>> = (0..source.len())
        .into_par_iter()
        .map(|j| {
            let tuple = source.tuple(j);
            let mut column = Vec::with_capacity(tuple.len());
            for (f, c) in boundary_of_tuple(shelf, &tuple) {
                match membership.classify(&f) {
                    Class::Basis => {
                        let row = target.index_of(&f).expect("basis face is indexed");
                        column.push((row, c));
                    }
                    Class::Killed => {}
                    Class::Outside => {
                        return Err(Error::FaceEscapes {
                            tuple: format!("{tuple:?}"),
                            face: format!("{f:?}"),
                            variant: variant.name().to_string(),
                        });
                    }
                }
            }
            Ok(column)
        })
        .collect::<Result<_>>()?;
    SparseIntMatrix::from_columns(target.len(), columns)
}

/// Bases and boundaries of a complex over a window of degrees.
#[derive(Clone, Debug)]
pub struct ChainComplexSlice {
    pub variant: Variant,
    pub n_lo: usize,
    pub n_hi: usize,
    /// Bases for degrees `n_lo..=n_hi`.
    pub bases: Vec<ChainBasis>,
    /// `∂_n` for `n` in `n_lo..=n_hi`.
    pub boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplexSlice {
    pub fn basis(&self, degree: usize) -> &ChainBasis {
        &self.bases[degree - self.n_lo]
    }

    pub fn boundary(&self, degree: usize) -> &SparseIntMatrix {
        &self.boundaries[degree - self.n_lo]
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.bases.iter().map(ChainBasis::len).collect()
    }
}

pub fn build_slice(shelf: &Shelf, n_lo: usize, n_hi: usize, variant: &Variant) -> Result<ChainComplexSlice> {
    build_slice_with(shelf, n_lo, n_hi, variant, &ChainConfig::default())
}

/// Builds every basis and boundary in the window and checks `∂∂ = 0`.
pub fn build_slice_with(
    shelf: &Shelf,
    n_lo: usize,
    n_hi: usize,
    variant: &Variant,
    config: &ChainConfig,
) -> Result<ChainComplexSlice> {
    if n_lo > n_hi {
        return Err(Error::Contract(format!("empty degree window {n_lo}..={n_hi}")));
    }
    let bases = (n_lo..=n_hi).map(|n| chain_basis_with(shelf, n, variant, config)).collect::<Result<Vec<_>>>()?;
    let boundaries = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| boundary_matrix_with(shelf, n, variant, config))
        .collect::<Result<Vec<_>>>()?;
    for w in boundaries.windows(2) {
        let composite = w[0].mul(&w[1])?;
        if !composite.is_zero() {
            return Err(Error::NonzeroComposite(format!("{} complex, {} entries", variant.name(), composite.nnz())));
        }
    }
    Ok(ChainComplexSlice { variant: variant.clone(), n_lo, n_hi, bases, boundaries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        assemble_f_spindle, assemble_sigma_spindle, trivial_spindle, FSpindleSpec, OperationTable, Spindle,
    };
    use num_bigint::BigInt;

    fn t1_spindle() -> Spindle {
        Spindle::new(
            OperationTable::from_one_based(vec![
                vec![1, 2, 3, 4],
                vec![1, 2, 3, 4],
                vec![1, 2, 3, 4],
                vec![2, 1, 1, 4],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    fn t2_spindle() -> Spindle {
        Spindle::new(
            OperationTable::from_one_based(vec![
                vec![1, 2, 4, 3],
                vec![1, 2, 4, 3],
                vec![2, 1, 3, 4],
                vec![2, 1, 3, 4],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn faces() {
        let s = t1_spindle();
        assert_eq!(face(s.as_shelf(), &[0, 1], 0).unwrap(), vec![1]);
        // one-based labels: d¹(4,1,3) = (4▷1, 3) = (2, 3)
        assert_eq!(face(s.as_shelf(), &[3, 0, 2], 1).unwrap(), vec![1, 2]);
        assert!(face(s.as_shelf(), &[0, 1], 2).is_err());
        let f = assemble_f_spindle(&FSpindleSpec::new(vec![2, 1, 1]).unwrap()).unwrap();
        for y in 1..4 {
            assert_eq!(face(f.as_shelf(), &[0, y], 1).unwrap(), vec![[0, 2, 1, 1][y]]);
        }
    }

    #[test]
    fn trivial_spindle_boundaries() {
        let s = trivial_spindle(3).unwrap();
        // ∂(x0, x1) = (x1) - (x1) in the full complex
        assert!(boundary_matrix(s.as_shelf(), 1, &Variant::Full).unwrap().is_zero());
        // ∂(x0, x1, x2) = (x2, x2) survives in the full complex ...
        assert!(!boundary_matrix(s.as_shelf(), 2, &Variant::Full).unwrap().is_zero());
        // ... but the normalized complex has zero differential
        for n in 1..=4 {
            assert!(boundary_matrix(s.as_shelf(), n, &Variant::Normalized).unwrap().is_zero());
        }
    }

    #[test]
    fn point_normalized() {
        let s = trivial_spindle(1).unwrap();
        let m = boundary_matrix(s.as_shelf(), 1, &Variant::Normalized).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 0));
        assert_eq!(chain_basis(s.as_shelf(), 0, &Variant::Normalized).unwrap().len(), 1);
        assert_eq!(chain_basis(s.as_shelf(), 1, &Variant::Normalized).unwrap().len(), 0);
    }

    #[test]
    fn t1_first_boundary() {
        let s = t1_spindle();
        let m = boundary_matrix(s.as_shelf(), 1, &Variant::Full).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 16));
        let basis = chain_basis(s.as_shelf(), 1, &Variant::Full).unwrap();
        // oracle: ∂(x, y) = (y) - (x▷y); nonzero only for x = 4 (index 3), y ∈ {1,2,3}
        for (j, t) in basis.tuples().enumerate() {
            for r in 0..4 {
                let expected = i64::from(r == t[1]) - i64::from(r == s.op(t[0], t[1]));
                assert_eq!(m.get(r, j), BigInt::from(expected), "tuple {t:?} row {r}");
            }
        }
        assert_eq!(m.nnz(), 6);
    }

    #[test]
    fn slice_dimensions() {
        let t2 = t2_spindle();
        let slice = build_slice(t2.as_shelf(), 0, 3, &Variant::Full).unwrap();
        assert_eq!(slice.dimensions(), vec![4, 16, 64, 256]);
        let t1 = t1_spindle();
        let slice = build_slice(t1.as_shelf(), 0, 2, &Variant::Normalized).unwrap();
        assert_eq!(slice.dimensions(), vec![4, 12, 36]);
        let sigma = assemble_sigma_spindle(5, 1).unwrap();
        let slice = build_slice(sigma.as_shelf(), 0, 2, &Variant::Degenerate).unwrap();
        // inclusion–exclusion: 7² + 7² − 7 degenerate triples
        assert_eq!(slice.dimensions(), vec![0, 7, 91]);
    }

    #[test]
    fn augmented_degree_zero() {
        let s = t1_spindle();
        let m = boundary_matrix(s.as_shelf(), 0, &Variant::Augmented).unwrap();
        assert_eq!((m.rows(), m.cols(), m.nnz()), (1, 4, 4));
        assert_eq!(boundary_matrix(s.as_shelf(), 0, &Variant::Full).unwrap().rows(), 0);
    }

    #[test]
    fn caps_and_budgets() {
        let s = t1_spindle();
        assert!(matches!(boundary_matrix(s.as_shelf(), 7, &Variant::Full), Err(Error::DegreeCap { .. })));
        let tight = ChainConfig { degree_cap: 6, max_entries: 100 };
        assert!(matches!(boundary_matrix_with(s.as_shelf(), 3, &Variant::Full, &tight), Err(Error::Budget { .. })));
    }

    #[test]
    fn variant_preconditions() {
        let s = t1_spindle();
        let bad = Variant::Relative { subset: vec![3], normalized: false };
        // {4} is a subspindle but {1, 4} is not (4 ▷ 1 = 2)
        assert!(bad.check(s.as_shelf()).is_ok());
        let bad = Variant::Relative { subset: vec![0, 3], normalized: false };
        assert!(matches!(bad.check(s.as_shelf()), Err(Error::NotASubspindle { .. })));
        assert!(Variant::Reduced { basepoint: 9 }.check(s.as_shelf()).is_err());
        let shelf = Shelf::new(OperationTable::new(vec![vec![1, 0], vec![1, 1]]).unwrap()).unwrap();
        assert!(matches!(Variant::Reduced { basepoint: 0 }.check(&shelf), Err(Error::NotASubspindle { .. })));
        let shelf = Shelf::new(OperationTable::from_fn(2, |x, _| 1 - x).unwrap()).unwrap();
        assert!(matches!(boundary_matrix(&shelf, 1, &Variant::Normalized), Err(Error::NotASpindle(_))));
        assert!(boundary_matrix(&shelf, 1, &Variant::Full).is_ok());
    }

    #[test]
    fn bending_escape_is_reported() {
        // dihedral quandle: column of b is not constant, so b-ending tuples leave the subcomplex
        let d3 = crate::algebra::dihedral_quandle(3).unwrap();
        let r = boundary_matrix(d3.as_shelf(), 2, &Variant::BEnding { basepoint: 0, reduced: false });
        assert!(matches!(r, Err(Error::FaceEscapes { .. })));
    }

    #[test]
    fn basis_index_round_trip() {
        let s = t2_spindle();
        let basis = chain_basis(s.as_shelf(), 3, &Variant::Normalized).unwrap();
        assert_eq!(basis.len(), 4 * 27);
        for (i, t) in basis.tuples().enumerate() {
            assert!(!is_degenerate(&t));
            assert_eq!(basis.index_of(&t), Some(i));
        }
        let sorted: Vec<Vec<usize>> = basis.tuples().collect();
        assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    }
}
