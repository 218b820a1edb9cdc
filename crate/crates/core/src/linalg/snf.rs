//! Smith normal form over the integers.
//!
//! The main route is sparse elimination: each step picks a pivot (units
//! first, then smallest magnitude, ties broken by Markowitz cost
//! `(row_len - 1)(col_len - 1)`), clears its column with row operations and
//! its row with column operations, and records the pivot. The recorded
//! pivots form a diagonal form whose invariant factors are recovered by
//! [`invariant_chain`]. Once no unit is left and the active block is small
//! it is handed to a dense routine. Everything runs in checked `i64` first
//! and restarts in `BigInt` on overflow.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::coeff::{Checked, Coeff, Overflow};
use super::group::invariant_chain;
use super::sparse::SparseIntMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SnfOptions {
    /// Compute `U`, `V` with `U·M·V = S` (dense, BigInt).
    pub want_witnesses: bool,
    /// Active blocks with both sides at most this size go to the dense routine.
    pub dense_threshold: usize,
    /// Abort when fill-in exceeds this many stored entries.
    pub max_entries: usize,
    /// Refuse witnesses for matrices with more than this many rows or columns.
    pub max_witness_dim: usize,
}

impl Default for SnfOptions {
    fn default() -> Self {
        SnfOptions {
            want_witnesses: false,
            dense_threshold: 400,
            max_entries: 200_000_000,
            max_witness_dim: 2_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfWitnesses {
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
    pub diagonal_form: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d₁ | d₂ | … | d_rank`, all positive.
    pub diagonal: Vec<BigUint>,
    pub rank: usize,
    pub witnesses: Option<SnfWitnesses>,
}

impl SnfResult {
    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    fn from_pivots(pivots: Vec<BigInt>) -> Self {
        let rank = pivots.len();
        let chain = invariant_chain(pivots.into_iter().map(|p| (p.magnitude().clone(), 1)).collect());
        let nontrivial: usize = chain.iter().map(|(_, c)| c).sum();
        let mut diagonal = vec![BigUint::one(); rank - nontrivial];
        for (d, c) in chain {
            diagonal.extend(std::iter::repeat_n(d, c));
        }
        SnfResult { diagonal, rank, witnesses: None }
    }
}

pub fn smith_normal_form(m: &SparseIntMatrix, want_witnesses: bool) -> Result<SnfResult> {
    smith_normal_form_with(m, &SnfOptions { want_witnesses, ..SnfOptions::default() })
}

pub fn smith_normal_form_with(m: &SparseIntMatrix, options: &SnfOptions) -> Result<SnfResult> {
    if options.want_witnesses {
        return dense_with_witnesses(m, options);
    }
    match sparse_pivots::<i64>(m, options) {
        Ok(p) => Ok(SnfResult::from_pivots(p)),
        Err(EngineError::Overflow) => {
            log::debug!("i64 overflow in SNF of {}x{}, retrying with BigInt", m.rows(), m.cols());
            match sparse_pivots::<BigInt>(m, options) {
                Ok(p) => Ok(SnfResult::from_pivots(p)),
                Err(EngineError::Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
                Err(EngineError::Budget(n)) => {
                    Err(Error::Budget { estimate: n as u128, budget: options.max_entries as u128 })
                }
            }
        }
        Err(EngineError::Budget(n)) => {
            Err(Error::Budget { estimate: n as u128, budget: options.max_entries as u128 })
        }
    }
}

/// Rank of an integer matrix.
pub fn rank(m: &SparseIntMatrix) -> Result<usize> {
    Ok(smith_normal_form(m, false)?.rank)
}

#[derive(Debug)]
enum EngineError {
    Overflow,
    Budget(usize),
}

impl From<Overflow> for EngineError {
    fn from(_: Overflow) -> Self {
        EngineError::Overflow
    }
}

type Line<T> = Vec<(u32, T)>;

fn sparse_pivots<T: Coeff>(m: &SparseIntMatrix, options: &SnfOptions) -> std::result::Result<Vec<BigInt>, EngineError> {
    // lines of the longer side become rows: they are the short ones
    let transpose = m.cols() > m.rows();
    let (nrows, ncols) = if transpose { (m.cols(), m.rows()) } else { (m.rows(), m.cols()) };
    let mut rows: Vec<Line<T>> = vec![Vec::new(); nrows];
    for (r, c, v) in m.entries() {
        let (r, c) = if transpose { (*c, *r) } else { (*r, *c) };
        rows[r].push((c as u32, T::from_bigint(v)?));
    }
    for row in &mut rows {
        row.sort_by_key(|(c, _)| *c);
    }
    let mut engine = Sparse::new(rows, ncols, options.max_entries);
    engine.run(options.dense_threshold)?;
    Ok(engine.pivots.iter().map(Coeff::to_bigint).collect())
}

struct Sparse<T> {
    rows: Vec<Line<T>>,
    row_alive: Vec<bool>,
    /// Row lists per column; may hold stale or repeated indices.
    cols: Vec<Vec<u32>>,
    col_count: Vec<usize>,
    col_alive: Vec<bool>,
    alive_rows: Vec<u32>,
    nnz: usize,
    max_entries: usize,
    pivots: Vec<T>,
}

impl<T: Coeff> Sparse<T> {
    fn new(rows: Vec<Line<T>>, ncols: usize, max_entries: usize) -> Self {
        let mut cols = vec![Vec::new(); ncols];
        let mut col_count = vec![0; ncols];
        let mut nnz = 0;
        for (i, row) in rows.iter().enumerate() {
            for (c, _) in row {
                cols[*c as usize].push(i as u32);
                col_count[*c as usize] += 1;
            }
            nnz += row.len();
        }
        let alive_rows = (0..rows.len() as u32).filter(|&i| !rows[i as usize].is_empty()).collect();
        let row_alive = rows.iter().map(|r| !r.is_empty()).collect();
        Sparse {
            rows,
            row_alive,
            cols,
            col_count,
            col_alive: vec![true; ncols],
            alive_rows,
            nnz,
            max_entries,
            pivots: Vec::new(),
        }
    }

    fn run(&mut self, dense_threshold: usize) -> std::result::Result<(), EngineError> {
        loop {
            self.alive_rows.retain(|&i| !self.rows[i as usize].is_empty());
            if self.alive_rows.is_empty() {
                return Ok(());
            }
            let (r, c, unit) = self.select_pivot();
            if !unit {
                let active_cols = self.col_count.iter().filter(|&&n| n > 0).count();
                if self.alive_rows.len() <= dense_threshold && active_cols <= dense_threshold {
                    return self.finish_dense();
                }
            }
            self.eliminate(r, c)?;
        }
    }

    fn value(&self, r: usize, c: u32) -> Option<&T> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |(k, _)| *k).ok().map(|i| &row[i].1)
    }

    /// Best pivot as `(row, col, is_unit)`.
    fn select_pivot(&self) -> (usize, u32, bool) {
        let mut best: Option<(bool, usize, u64, usize, u32)> = None;
        for &i in &self.alive_rows {
            let row = &self.rows[i as usize];
            let rl = (row.len() - 1) as u64;
            for (c, v) in row {
                let unit = v.is_unit();
                let cost = rl * (self.col_count[*c as usize] as u64 - 1);
                let better = match &best {
                    None => true,
                    Some((bu, bi, bcost, _, bc)) => {
                        if unit != *bu {
                            unit
                        } else if unit {
                            cost < *bcost
                        } else {
                            let bv = self.value(*bi, *bc).unwrap();
                            match v.cmp_abs(bv) {
                                std::cmp::Ordering::Less => true,
                                std::cmp::Ordering::Equal => cost < *bcost,
                                std::cmp::Ordering::Greater => false,
                            }
                        }
                    }
                };
                if better {
                    best = Some((unit, i as usize, cost, 0, *c));
                    if unit && cost == 0 {
                        return (i as usize, *c, true);
                    }
                }
            }
        }
        let (unit, r, _, _, c) = best.expect("select_pivot on an empty matrix");
        (r, c, unit)
    }

    /// Live rows with a nonzero in column `c`, deduplicated.
    fn column_rows(&mut self, c: u32) -> Vec<u32> {
        let mut list = std::mem::take(&mut self.cols[c as usize]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&i| self.row_alive[i as usize] && self.value(i as usize, c).is_some());
        self.cols[c as usize] = list.clone();
        list
    }

    /// Replaces row `i`, keeping column counts and lists in sync.
    fn replace_row(&mut self, i: usize, new: Line<T>) -> std::result::Result<(), EngineError> {
        let old = std::mem::take(&mut self.rows[i]);
        let (mut a, mut b) = (0, 0);
        while a < old.len() || b < new.len() {
            let oc = old.get(a).map(|e| e.0);
            let nc = new.get(b).map(|e| e.0);
            match (oc, nc) {
                (Some(x), Some(y)) if x == y => {
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    self.col_count[x as usize] -= 1;
                    a += 1;
                }
                (Some(x), None) => {
                    self.col_count[x as usize] -= 1;
                    a += 1;
                }
                (_, Some(y)) => {
                    self.col_count[y as usize] += 1;
                    self.cols[y as usize].push(i as u32);
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.nnz = self.nnz + new.len() - old.len();
        if self.nnz > self.max_entries {
            return Err(EngineError::Budget(self.nnz));
        }
        if !new.is_empty() && !self.row_alive[i] {
            self.row_alive[i] = true;
            self.alive_rows.push(i as u32);
        }
        self.rows[i] = new;
        Ok(())
    }

    fn eliminate(&mut self, r: usize, c: u32) -> std::result::Result<(), EngineError> {
        let mut p = self.value(r, c).unwrap().clone();
        loop {
            for i in self.column_rows(c) {
                let i = i as usize;
                if i == r {
                    continue;
                }
                let a = self.value(i, c).unwrap().clone();
                if p.divides(&a) {
                    let q = a.div_exact(&p)?.neg()?;
                    let new = axpy(&self.rows[i], &q, &self.rows[r])?;
                    self.replace_row(i, new)?;
                } else {
                    let (g, s, t) = p.ext_gcd(&a)?;
                    let new_r = lincomb(&s, &self.rows[r], &t, &self.rows[i])?;
                    let new_i = lincomb(&a.div_exact(&g)?.neg()?, &self.rows[r], &p.div_exact(&g)?, &self.rows[i])?;
                    self.replace_row(r, new_r)?;
                    self.replace_row(i, new_i)?;
                    p = g;
                }
            }
            let stubborn = self.rows[r].iter().find(|(j, v)| *j != c && !p.divides(v)).map(|(j, v)| (*j, v.clone()));
            let Some((j, a)) = stubborn else { break };
            // column operation on (c, j): c ← s·c + t·j, j ← (-a/g)·c + (p/g)·j
            let (g, s, t) = p.ext_gcd(&a)?;
            let (cj, jj) = (a.div_exact(&g)?.neg()?, p.div_exact(&g)?);
            for i in self.column_rows(j) {
                let i = i as usize;
                let x = self.value(i, c).cloned().unwrap_or_else(T::zero);
                let y = self.value(i, j).unwrap().clone();
                let new_c = s.mul(&x)?.add(&t.mul(&y)?)?;
                let new_j = cj.mul(&x)?.add(&jj.mul(&y)?)?;
                let mut row = self.rows[i].clone();
                set_entry(&mut row, c, new_c);
                set_entry(&mut row, j, new_j);
                self.replace_row(i, row)?;
            }
            p = g;
        }
        // column c is now zero outside row r and p divides the rest of row r
        self.pivots.push(p);
        let row = std::mem::take(&mut self.rows[r]);
        for (j, _) in &row {
            self.col_count[*j as usize] -= 1;
        }
        self.nnz -= row.len();
        self.row_alive[r] = false;
        self.col_alive[c as usize] = false;
        Ok(())
    }

    fn finish_dense(&mut self) -> std::result::Result<(), EngineError> {
        let live: Vec<u32> = self.alive_rows.clone();
        let mut col_index = vec![usize::MAX; self.col_count.len()];
        let mut ncols = 0;
        for (c, &n) in self.col_count.iter().enumerate() {
            if n > 0 {
                col_index[c] = ncols;
                ncols += 1;
            }
        }
        let mut dense = vec![vec![T::zero(); ncols]; live.len()];
        for (k, &i) in live.iter().enumerate() {
            for (c, v) in &self.rows[i as usize] {
                dense[k][col_index[*c as usize]] = v.clone();
            }
        }
        log::trace!("dense tail {}x{}", live.len(), ncols);
        let mut d = Dense::new(dense, false);
        d.reduce()?;
        self.pivots.extend(d.diagonal());
        for &i in &live {
            self.rows[i as usize].clear();
        }
        self.alive_rows.clear();
        Ok(())
    }
}

fn set_entry<T: Coeff>(row: &mut Line<T>, c: u32, v: T) {
    match row.binary_search_by_key(&c, |(k, _)| *k) {
        Ok(i) if v.is_zero() => {
            row.remove(i);
        }
        Ok(i) => row[i].1 = v,
        Err(_) if v.is_zero() => {}
        Err(i) => row.insert(i, (c, v)),
    }
}

/// `target + q·src`
fn axpy<T: Coeff>(target: &[(u32, T)], q: &T, src: &[(u32, T)]) -> Checked<Line<T>> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < src.len() {
        let ta = target.get(a);
        let sb = src.get(b);
        match (ta, sb) {
            (Some((x, u)), Some((y, w))) if x == y => {
                let v = u.add(&q.mul(w)?)?;
                if !v.is_zero() {
                    out.push((*x, v));
                }
                a += 1;
                b += 1;
            }
            (Some((x, u)), Some((y, _))) if x < y => {
                out.push((*x, u.clone()));
                a += 1;
            }
            (Some((x, u)), None) => {
                out.push((*x, u.clone()));
                a += 1;
            }
            (_, Some((y, w))) => {
                out.push((*y, q.mul(w)?));
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(out)
}

/// `α·a + β·b`
fn lincomb<T: Coeff>(alpha: &T, a: &[(u32, T)], beta: &T, b: &[(u32, T)]) -> Checked<Line<T>> {
    let scaled: Line<T> = if alpha.is_zero() {
        Vec::new()
    } else {
        a.iter().map(|(c, v)| Ok((*c, alpha.mul(v)?))).collect::<Checked<_>>()?
    };
    if beta.is_zero() {
        return Ok(scaled);
    }
    axpy(&scaled, beta, b)
}

/// Dense elimination to a full Smith form, optionally tracking transforms.
struct Dense<T> {
    a: Vec<Vec<T>>,
    m: usize,
    n: usize,
    left: Option<Vec<Vec<T>>>,
    right: Option<Vec<Vec<T>>>,
    rank: usize,
}

impl<T: Coeff> Dense<T> {
    fn new(a: Vec<Vec<T>>, track: bool) -> Self {
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        let ident = |k: usize| -> Vec<Vec<T>> {
            (0..k)
                .map(|i| (0..k).map(|j| if i == j { T::from_bigint(&BigInt::one()).unwrap() } else { T::zero() }).collect())
                .collect()
        };
        let (left, right) = if track { (Some(ident(m)), Some(ident(n))) } else { (None, None) };
        Dense { a, m, n, left, right, rank: 0 }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.left {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.right {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i ← row_i - q·row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Checked<()> {
        fn apply<T: Coeff>(mat: &mut [Vec<T>], i: usize, t: usize, q: &T) -> Checked<()> {
            for k in 0..mat[i].len() {
                if !mat[t][k].is_zero() {
                    mat[i][k] = mat[i][k].sub(&q.mul(&mat[t][k])?)?;
                }
            }
            Ok(())
        }
        apply(&mut self.a, i, t, q)?;
        if let Some(u) = &mut self.left {
            apply(u, i, t, q)?;
        }
        Ok(())
    }

    /// col_j ← col_j - q·col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Checked<()> {
        fn apply<T: Coeff>(mat: &mut [Vec<T>], j: usize, t: usize, q: &T) -> Checked<()> {
            for row in mat {
                if !row[t].is_zero() {
                    row[j] = row[j].sub(&q.mul(&row[t])?)?;
                }
            }
            Ok(())
        }
        apply(&mut self.a, j, t, q)?;
        if let Some(v) = &mut self.right {
            apply(v, j, t, q)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, t: usize) -> Checked<()> {
        for x in &mut self.a[t] {
            *x = x.neg()?;
        }
        if let Some(u) = &mut self.left {
            for x in &mut u[t] {
                *x = x.neg()?;
            }
        }
        Ok(())
    }

    fn reduce(&mut self) -> Checked<()> {
        let mut t = 0;
        while t < self.m.min(self.n) {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.m {
                for j in t..self.n {
                    if !self.a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| self.a[i][j].cmp_abs(&self.a[bi][bj]).is_lt())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            self.swap_rows(t, bi);
            self.swap_cols(t, bj);
            loop {
                let p = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let (q, r) = self.a[i][t].div_rem_euclid(&p)?;
                        self.row_sub(i, t, &q)?;
                        clean &= r.is_zero();
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let (q, r) = self.a[t][j].div_rem_euclid(&p)?;
                        self.col_sub(j, t, &q)?;
                        clean &= r.is_zero();
                    }
                }
                if !clean {
                    // move the smallest remainder to the pivot
                    let mut pos = (t, t);
                    for i in t + 1..self.m {
                        if !self.a[i][t].is_zero() && self.a[i][t].cmp_abs(&self.a[pos.0][pos.1]).is_lt() {
                            pos = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        if !self.a[t][j].is_zero() && self.a[t][j].cmp_abs(&self.a[pos.0][pos.1]).is_lt() {
                            pos = (t, j);
                        }
                    }
                    if pos.0 != t {
                        self.swap_rows(t, pos.0);
                    } else if pos.1 != t {
                        self.swap_cols(t, pos.1);
                    }
                    continue;
                }
                // pivot must divide the whole trailing block
                let offender = (t + 1..self.m).find(|&i| (t + 1..self.n).any(|j| !p.divides(&self.a[i][j])));
                match offender {
                    Some(i) => {
                        let minus_one = T::from_bigint(&BigInt::from(-1)).unwrap();
                        self.row_sub(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        self.rank = t;
        Ok(())
    }

    fn diagonal(&self) -> Vec<T> {
        (0..self.rank).map(|t| self.a[t][t].clone()).collect()
    }
}

fn dense_with_witnesses(m: &SparseIntMatrix, options: &SnfOptions) -> Result<SnfResult> {
    if m.rows().max(m.cols()) > options.max_witness_dim {
        return Err(Error::Budget {
            estimate: (m.rows() * m.cols()) as u128,
            budget: (options.max_witness_dim * options.max_witness_dim) as u128,
        });
    }
    let mut d = Dense::new(m.to_dense(), true);
    d.reduce().expect("BigInt arithmetic cannot overflow");
    let diagonal: Vec<BigUint> = d.diagonal().iter().map(|x| x.magnitude().clone()).collect();
    let rank = d.rank;
    let witnesses = SnfWitnesses {
        left: d.left.take().unwrap(),
        right: d.right.take().unwrap(),
        diagonal_form: d.a,
    };
    Ok(SnfResult { diagonal, rank, witnesses: Some(witnesses) })
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if Zero::is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !Zero::is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return <BigInt as Zero>::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> (Vec<u64>, usize) {
        let m = SparseIntMatrix::from_dense(rows).unwrap();
        let r = smith_normal_form(&m, false).unwrap();
        (r.diagonal.iter().map(|d| u64::try_from(d).unwrap()).collect(), r.rank)
    }

    #[test]
    fn identity() {
        assert_eq!(factors(&[vec![1, 0], vec![0, 1]]), (vec![1, 1], 2));
    }

    #[test]
    fn two_three() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), (vec![1, 6], 2));
    }

    #[test]
    fn zero_matrix() {
        let r = smith_normal_form(&SparseIntMatrix::zeros(3, 5), false).unwrap();
        assert_eq!(r.rank, 0);
        assert!(r.diagonal.is_empty());
    }

    #[test]
    fn needs_column_operations() {
        // row gcd forces a column step: [[2, 3]] has Smith form [1]
        assert_eq!(factors(&[vec![2, 3]]), (vec![1], 1));
        assert_eq!(factors(&[vec![4, 6], vec![6, 9]]), (vec![1], 1));
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), (vec![2, 6, 12], 3));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 40;
        // i64 elimination overflows on products of these entries
        let rows = vec![vec![big, big + 1, 3], vec![big - 1, big, 5], vec![7, 11, big]];
        let m = SparseIntMatrix::from_dense(&rows).unwrap();
        let r = smith_normal_form(&m, false).unwrap();
        let det = determinant(&m.to_dense());
        let prod: BigUint = r.diagonal.iter().product();
        assert_eq!(&prod, det.magnitude());
    }

    #[test]
    fn witnesses_reconstruct() {
        let rows = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let m = SparseIntMatrix::from_dense(&rows).unwrap();
        let r = smith_normal_form(&m, true).unwrap();
        let w = r.witnesses.as_ref().unwrap();
        let mul = |a: &Vec<Vec<BigInt>>, b: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            (0..a.len())
                .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
                .collect()
        };
        assert_eq!(mul(&mul(&w.left, &m.to_dense()), &w.right), w.diagonal_form);
        assert!(determinant(&w.left).magnitude().is_one());
        assert!(determinant(&w.right).magnitude().is_one());
        assert_eq!(r.diagonal, vec![2u32, 6, 12].into_iter().map(BigUint::from).collect::<Vec<_>>());
    }

    #[test]
    fn dense_threshold_zero_uses_sparse_throughout() {
        let rows = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let m = SparseIntMatrix::from_dense(&rows).unwrap();
        let opts = SnfOptions { dense_threshold: 0, ..SnfOptions::default() };
        let r = smith_normal_form_with(&m, &opts).unwrap();
        assert_eq!(r.diagonal, vec![2u32, 6, 12].into_iter().map(BigUint::from).collect::<Vec<_>>());
    }

    #[test]
    fn fill_budget() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 1], vec![1, 2]]).unwrap();
        let opts = SnfOptions { max_entries: 0, dense_threshold: 0, ..SnfOptions::default() };
        assert!(matches!(smith_normal_form_with(&m, &opts), Err(Error::Budget { .. })));
    }
}
