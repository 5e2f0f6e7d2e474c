use alloc::string::String;
use core::fmt;

use crate::colour::ValidityReport;
use crate::Vertex;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed series-parallel expression; `pos` is a byte offset.
    Parse {
        pos: usize,
        msg: String,
    },
    /// A series or parallel node with fewer than two children.
    Arity {
        found: usize,
    },
    /// A repetition count (power, stretch, leaf count) below its minimum.
    Count {
        what: &'static str,
        value: u64,
    },
    /// The construction would join the same pair of vertices twice.
    MultiEdge {
        u: Vertex,
        v: Vertex,
    },
    SelfLoop {
        v: Vertex,
    },
    UnknownVertex {
        v: Vertex,
    },
    MissingTerminals,
    /// An operation was called outside its stated preconditions.
    Precondition(String),
    GirthTooSmall {
        girth: u32,
        k: u32,
    },
    ListsTooSmall(ValidityReport),
    /// No removable chain and no leaf in a component that is not a path;
    /// the graph is not a series-parallel graph of the requested girth.
    NoChain {
        component: Vertex,
    },
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "syntax error at offset {pos}: {msg}"),
            Error::Arity { found } => {
                write!(f, "composition needs at least two children, found {found}")
            }
            Error::Count { what, value } => write!(f, "{what} must be at least 1, got {value}"),
            Error::MultiEdge { u, v } => {
                write!(f, "multi-edge between {u} and {v}: graph would not be simple")
            }
            Error::SelfLoop { v } => write!(f, "self-loop at vertex {v}"),
            Error::UnknownVertex { v } => write!(f, "reference to unknown vertex {v}"),
            Error::MissingTerminals => f.write_str("graph has no terminal pair"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::GirthTooSmall { girth, k } => write!(f, "girth {girth} is below k = {k}"),
            Error::ListsTooSmall(report) => {
                write!(f, "lists too small: {} violation(s)", report.violations.len())?;
                for v in &report.violations {
                    write!(f, "; {v}")?;
                }
                Ok(())
            }
            Error::NoChain { component } => {
                write!(f, "no removable chain in the component of vertex {component}: graph is outside the class")
            }
            Error::Overflow => f.write_str("arithmetic overflow"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
