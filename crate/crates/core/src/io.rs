//! Text formats for operation tables and f-spindle / block specifications.
//!
//! Tables are JSON `{"size": n, "table": [[...], ...]}` or CSV with `n`
//! rows of `n` comma-separated entries. Entries are 0-based unless the
//! caller asks for 1-based labels.

use serde::{Deserialize, Serialize};

use crate::algebra::{BlockSpindleSpec, FSpindleSpec, OperationTable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
}

impl TableFormat {
    /// Guesses from a file extension, falling back to the first non-blank
    /// character (`{` means JSON).
    pub fn detect(path: &str, text: &str) -> TableFormat {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".json") {
            TableFormat::Json
        } else if lower.ends_with(".csv") {
            TableFormat::Csv
        } else if text.trim_start().starts_with('{') {
            TableFormat::Json
        } else {
            TableFormat::Csv
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

fn shift(rows: Vec<Vec<usize>>, one_based: bool) -> Result<Vec<Vec<usize>>> {
    if !one_based {
        return Ok(rows);
    }
    rows.into_iter()
        .enumerate()
        .map(|(r, row)| {
            row.into_iter()
                .enumerate()
                .map(|(c, v)| {
                    v.checked_sub(1).ok_or_else(|| Error::Parse(format!("row {}, column {}: label 0 with 1-based labels", r + 1, c + 1)))
                })
                .collect()
        })
        .collect()
}

pub fn parse_table(text: &str, format: TableFormat, one_based: bool) -> Result<OperationTable> {
    match format {
        TableFormat::Json => parse_table_json(text, one_based),
        TableFormat::Csv => parse_table_csv(text, one_based),
    }
}

pub fn parse_table_json(text: &str, one_based: bool) -> Result<OperationTable> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Json {
        Sized(TableFile),
        Bare(Vec<Vec<usize>>),
    }
    let file = match serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))? {
        Json::Sized(file) => file,
        Json::Bare(table) => TableFile { size: table.len(), table },
    };
    if file.size != file.table.len() {
        return Err(Error::Parse(format!("size is {} but the table has {} rows", file.size, file.table.len())));
    }
    OperationTable::new(shift(file.table, one_based)?)
}

pub fn parse_table_csv(text: &str, one_based: bool) -> Result<OperationTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let line = record.position().map_or(rows.len() + 1, |p| p.line() as usize);
        let row = record
            .iter()
            .enumerate()
            .map(|(c, field)| {
                field
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {line}, column {}: expected an index, found {field:?}", c + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no table rows found".into()));
    }
    OperationTable::new(shift(rows, one_based)?)
}

pub fn table_to_json(table: &OperationTable) -> String {
    serde_json::to_string(&TableFile { size: table.size(), table: table.rows() }).expect("serializable")
}

pub fn table_to_csv(table: &OperationTable) -> String {
    table
        .rows()
        .iter()
        .map(|row| row.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .map(|line| line + "\n")
        .collect()
}

#[derive(Deserialize)]
struct FSpindleFile {
    f: Vec<usize>,
}

pub fn parse_fspindle_json(text: &str) -> Result<FSpindleSpec> {
    let file: FSpindleFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    FSpindleSpec::new(file.f)
}

pub fn parse_blocks_json(text: &str) -> Result<BlockSpindleSpec> {
    let spec: BlockSpindleSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}

/// Parses a comma-separated list such as `"2,1,1"`.
pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("expected a number, found {s:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const T1: &str = r#"{"size": 4, "table": [[1,2,3,4],[1,2,3,4],[1,2,3,4],[2,1,1,4]]}"#;

    #[test]
    fn json_one_based() {
        let t = parse_table_json(T1, true).unwrap();
        assert_eq!(t.op(3, 0), 1);
        assert!(matches!(parse_table_json(T1, false), Err(Error::EntryOutOfRange { .. })));
        let back = parse_table_json(&table_to_json(&t), false).unwrap();
        assert_eq!(back, t);
        let bare = parse_table_json("[[1,2,3,4],[1,2,3,4],[1,2,3,4],[2,1,1,4]]", true).unwrap();
        assert_eq!(bare, t);
    }

    #[test]
    fn csv_round_trip() {
        let t = parse_table_json(T1, true).unwrap();
        let text = table_to_csv(&t);
        assert_eq!(text.lines().next(), Some("0,1,2,3"));
        assert_eq!(parse_table_csv(&text, false).unwrap(), t);
        let spaced = "# comment\n 1, 2\n2 ,1\n";
        assert_eq!(parse_table_csv(spaced, true).unwrap().rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_table_json("", false), Err(Error::Parse(_))));
        assert!(matches!(parse_table_csv("", false), Err(Error::Parse(_))));
        let err = parse_table_csv("0,1\n1,x\n", false).unwrap_err().to_string();
        assert!(err.contains("line 2, column 2"), "{err}");
        assert!(matches!(parse_table_json(r#"{"size": 3, "table": [[0]]}"#, false), Err(Error::Parse(_))));
        assert!(matches!(parse_table_csv("0,1\n0\n", false), Err(Error::RaggedTable { .. })));
        assert!(matches!(parse_table_csv("1,2\n2,0\n", true), Err(Error::Parse(_))));
    }

    #[test]
    fn specs() {
        assert_eq!(parse_fspindle_json(r#"{"f": [2, 1, 1]}"#).unwrap().f, vec![2, 1, 1]);
        assert!(parse_fspindle_json(r#"{"f": [4]}"#).is_err());
        let blocks = parse_blocks_json(r#"{"blocks": [{"size": 2, "f": [2, 1]}], "add_singleton_block": true}"#).unwrap();
        assert_eq!(blocks.carrier_size(), 3);
        assert!(parse_blocks_json(r#"{"blocks": [{"size": 3, "f": [2, 1]}]}"#).is_err());
        assert_eq!(parse_list(" 2, 1,1 ").unwrap(), vec![2, 1, 1]);
    }
}
