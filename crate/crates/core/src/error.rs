use alloc::string::String;

/// Errors raised by the core engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("element {element} does not belong to {group}")]
    ElementMismatch { element: String, group: String },
    #[error("operands live over different groups ({left} vs {right})")]
    SpecMismatch { left: String, right: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("degree {degree} out of range (laplacians are determined up to degree {max})")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("Taylor order {order} gives no finite remainder bound: need order + 2 > t*N = {tn}")]
    BoundUnavailable { order: usize, tn: String },
    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = core::result::Result<T, Error>;
