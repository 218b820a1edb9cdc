use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation table is empty")]
    EmptyTable,

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedTable { row: usize, found: usize, expected: usize },

    #[error("cell ({row}, {col}) holds {value}, outside 0..{size}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, size: usize },

    #[error("table is not a shelf: {0}")]
    NotAShelf(String),

    #[error("table is not a spindle: {0}")]
    NotASpindle(String),

    #[error("function value {value} at position {position} is outside 1..={size}")]
    FunctionOutOfRange { position: usize, value: usize, size: usize },

    #[error("element {element} is outside the carrier 0..{size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("subset is not closed under the operation: {x} > {y} = {z} escapes it")]
    NotASubspindle { x: usize, y: usize, z: usize },

    #[error("face {face} of tuple {tuple} escapes the {variant} complex")]
    FaceEscapes { tuple: String, face: String, variant: String },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("estimated {estimate} matrix entries exceed the budget of {budget}")]
    Budget { estimate: u128, budget: u128 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("boundary composite is nonzero: {0}")]
    NonzeroComposite(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by size limits rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::DegreeCap { .. } | Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
