//! f-spindles and block spindles.
//!
//! The basepoint `b` of an f-spindle sits at index 0 and `X₀` occupies
//! indices `1..=m`, so the 1-based values of `f` coincide with table indices.

use serde::{Deserialize, Serialize};

use super::{OperationTable, Spindle};
use crate::error::{Error, Result};

/// A function `f: X₀ → X₀` on `X₀ = {1, …, m}`; `f[i - 1]` is `f(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FSpindleSpec {
    pub f: Vec<usize>,
}

impl FSpindleSpec {
    pub fn new(f: Vec<usize>) -> Result<Self> {
        check_function(&f)?;
        Ok(FSpindleSpec { f })
    }

    pub fn base_size(&self) -> usize {
        self.f.len()
    }

    /// `f(x)` for `x ∈ 1..=m`.
    pub fn apply(&self, x: usize) -> usize {
        self.f[x - 1]
    }

    pub fn sigma(k: usize, r: usize) -> Result<Self> {
        Self::new(sigma_function(k, r)?)
    }
}

fn check_function(f: &[usize]) -> Result<()> {
    let m = f.len();
    for (i, &v) in f.iter().enumerate() {
        if v == 0 || v > m {
            return Err(Error::FunctionOutOfRange { position: i + 1, value: v, size: m });
        }
    }
    Ok(())
}

/// Table of the f-spindle: `b ▷ y = f(y)`, `b ▷ b = b`, and `x ▷ y = y` otherwise.
pub fn assemble_f_spindle(spec: &FSpindleSpec) -> Result<Spindle> {
    check_function(&spec.f)?;
    let n = spec.base_size() + 1;
    let table = OperationTable::from_fn(n, |x, y| if x == 0 && y != 0 { spec.apply(y) } else { y })?;
    Spindle::new(table)
}

/// Recognizes an f-spindle table: some `b` whose row maps the other elements
/// among themselves while every other row is the identity. Returns the
/// function (with `X₀` numbered in increasing index order) and `b`.
pub fn detect_f_spindle(table: &OperationTable) -> Option<(FSpindleSpec, usize)> {
    let n = table.size();
    let identity_row = |x: usize| (0..n).all(|y| table.op(x, y) == y);
    let b = (0..n).find(|&b| (0..n).all(|x| x == b || identity_row(x)))?;
    if table.op(b, b) != b {
        return None;
    }
    let position = |y: usize| if y < b { y + 1 } else { y };
    let mut f = Vec::with_capacity(n - 1);
    for y in (0..n).filter(|&y| y != b) {
        let image = table.op(b, y);
        if image == b {
            return None;
        }
        f.push(position(image));
    }
    Some((FSpindleSpec { f }, b))
}

/// `σ_{k,r}` on `{1, …, k + r}`: `n ↦ n + 1` below `k`, everything else to 1.
pub fn sigma_function(k: usize, r: usize) -> Result<Vec<usize>> {
    if k == 0 || r == 0 {
        return Err(Error::Unsupported(format!("sigma needs k, r >= 1 (got k = {k}, r = {r})")));
    }
    Ok((1..=k + r).map(|n| if n < k { n + 1 } else { 1 }).collect())
}

/// The f-spindle of `σ_{k,r}`, on `k + r + 1` elements.
pub fn assemble_sigma_spindle(k: usize, r: usize) -> Result<Spindle> {
    assemble_f_spindle(&FSpindleSpec::sigma(k, r)?)
}

/// One block `X_i` with its block function, 1-based within the block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub size: usize,
    pub f: Vec<usize>,
}

impl Block {
    pub fn new(f: Vec<usize>) -> Result<Self> {
        check_function(&f)?;
        Ok(Block { size: f.len(), f })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSpindleSpec {
    pub blocks: Vec<Block>,
    /// Adds a one-element block `{b}` at index 0.
    #[serde(default)]
    pub add_singleton_block: bool,
}

impl BlockSpindleSpec {
    pub fn validate(&self) -> Result<()> {
        for block in &self.blocks {
            if block.size != block.f.len() {
                return Err(Error::Parse(format!(
                    "block declares size {} but lists {} function values",
                    block.size,
                    block.f.len()
                )));
            }
            check_function(&block.f)?;
        }
        if self.blocks.iter().all(|b| b.size == 0) && !self.add_singleton_block {
            return Err(Error::EmptyTable);
        }
        Ok(())
    }

    /// Global index ranges of the listed blocks (the singleton, if any, is index 0).
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = usize::from(self.add_singleton_block);
        self.blocks
            .iter()
            .map(|b| {
                let r = start..start + b.size;
                start += b.size;
                r
            })
            .collect()
    }

    pub fn carrier_size(&self) -> usize {
        usize::from(self.add_singleton_block) + self.blocks.iter().map(|b| b.size).sum::<usize>()
    }

    /// Whether a one-element block is present, either added or listed.
    pub fn has_singleton_block(&self) -> bool {
        self.add_singleton_block || self.blocks.iter().any(|b| b.size == 1)
    }
}

/// `x ▷ y = y` inside a block and `f_j(y)` across blocks, for `y ∈ X_j`.
pub fn assemble_block_spindle(spec: &BlockSpindleSpec) -> Result<Spindle> {
    spec.validate()?;
    let n = spec.carrier_size();
    // (block id, global image under the block function) per element
    let mut block_of = vec![0usize; n];
    let mut image = vec![0usize; n];
    if spec.add_singleton_block {
        block_of[0] = usize::MAX;
        image[0] = 0;
    }
    for (id, (block, range)) in spec.blocks.iter().zip(spec.ranges()).enumerate() {
        for (local, global) in range.clone().enumerate() {
            block_of[global] = id;
            image[global] = range.start + block.f[local] - 1;
        }
    }
    let table =
        OperationTable::from_fn(n, |x, y| if block_of[x] == block_of[y] { y } else { image[y] })?;
    Spindle::new(table)
}
