use std::fs;

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};
use spindle_homology::algebra::{
    assemble_block_spindle, assemble_f_spindle, detect_f_spindle, dihedral_quandle, sigma_function, trivial_spindle,
    Block, BlockSpindleSpec, FSpindleSpec, OperationTable,
};
use spindle_homology::io::{parse_blocks_json, parse_fspindle_json, parse_list, parse_table, table_to_json, TableFormat};

use crate::args::InputArgs;

/// A resolved input: the table plus whatever structure it was built from.
pub struct Input {
    pub table: OperationTable,
    /// f-spindle structure, given or detected, with its basepoint.
    pub fspindle: Option<(FSpindleSpec, usize)>,
    pub blocks: Option<BlockSpindleSpec>,
    /// Added to 0-based indices when printing and subtracted when reading labels.
    pub offset: usize,
}

impl Input {
    /// sha256 of the canonical JSON form of the table.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(table_to_json(&self.table).as_bytes()))
    }

    pub fn label(&self, x: usize) -> usize {
        x + self.offset
    }

    /// Converts a user-supplied element label to an index.
    pub fn element(&self, label: usize) -> Result<usize> {
        let x = label.checked_sub(self.offset).context("label 0 with 1-based labels")?;
        if x >= self.table.size() {
            bail!(spindle_homology::Error::ElementOutOfRange { element: x, size: self.table.size() });
        }
        Ok(x)
    }

    pub fn elements(&self, text: &str) -> Result<Vec<usize>> {
        let mut out = parse_list(text)?.into_iter().map(|l| self.element(l)).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

fn pair(text: &str) -> Result<(usize, usize)> {
    match parse_list(text)?[..] {
        [a, b] => Ok((a, b)),
        _ => bail!(spindle_homology::Error::Parse(format!("expected two numbers \"k,r\", found {text:?}"))),
    }
}

fn read(path: &std::path::Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn from_spec(spec: FSpindleSpec) -> Result<Input> {
    let table = assemble_f_spindle(&spec)?.table().clone();
    Ok(Input { table, fspindle: Some((spec, 0)), blocks: None, offset: 0 })
}

fn from_blocks(spec: BlockSpindleSpec) -> Result<Input> {
    let table = assemble_block_spindle(&spec)?.table().clone();
    let fspindle = detect_f_spindle(&table);
    Ok(Input { table, fspindle, blocks: Some(spec), offset: 0 })
}

pub fn resolve(args: &InputArgs) -> Result<Input> {
    if let Some(path) = &args.table {
        let text = read(path)?;
        let format = TableFormat::detect(&path.to_string_lossy(), &text);
        let table = parse_table(&text, format, args.one_based).with_context(|| format!("parsing {}", path.display()))?;
        let fspindle = detect_f_spindle(&table);
        return Ok(Input { table, fspindle, blocks: None, offset: usize::from(args.one_based) });
    }
    if let Some(f) = &args.fspindle {
        return from_spec(FSpindleSpec::new(parse_list(f)?)?);
    }
    if let Some(path) = &args.fspindle_file {
        return from_spec(parse_fspindle_json(&read(path)?)?);
    }
    if let Some(s) = &args.sigma {
        let (k, r) = pair(s)?;
        return from_spec(FSpindleSpec::sigma(k, r)?);
    }
    if let Some(b) = &args.blocks {
        let blocks = b
            .split(';')
            .map(|part| {
                let (k, r) = pair(part)?;
                Ok(Block::new(sigma_function(k, r)?)?)
            })
            .collect::<Result<Vec<_>>>()?;
        return from_blocks(BlockSpindleSpec { blocks, add_singleton_block: true });
    }
    if let Some(b) = &args.block_fns {
        let blocks = b.split(';').map(|part| Ok(Block::new(parse_list(part)?)?)).collect::<Result<Vec<_>>>()?;
        return from_blocks(BlockSpindleSpec { blocks, add_singleton_block: true });
    }
    if let Some(path) = &args.blocks_file {
        return from_blocks(parse_blocks_json(&read(path)?)?);
    }
    if let Some(n) = args.dihedral {
        return Ok(Input { table: dihedral_quandle(n)?.table().clone(), fspindle: None, blocks: None, offset: 0 });
    }
    if let Some(n) = args.trivial {
        let table = trivial_spindle(n)?.table().clone();
        let fspindle = detect_f_spindle(&table);
        return Ok(Input { table, fspindle, blocks: None, offset: 0 });
    }
    bail!(spindle_homology::Error::Parse(
        "no input: use --table, --fspindle, --fspindle-file, --sigma, --blocks, --block-fns, --blocks-file, --dihedral or --trivial".into()
    ))
}

/// Parses "a..b", "a..=b" or "a" as an inclusive range.
pub fn degrees(text: &str) -> Result<(usize, usize)> {
    let bad = || spindle_homology::Error::Parse(format!("bad degree range {text:?}; expected a..b"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=')),
        None => (text.trim(), text.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        bail!(bad());
    }
    Ok((lo, hi))
}
