//! File formats, parallel gadget certification and the acceptance suite
//! built on `sfchoice-core`. The `sfchoice` binary is a thin front end over
//! this library.

#![forbid(unsafe_code)]

pub mod certify;
pub mod error;
pub mod formats;
pub mod suite;

pub use error::{CliError, CliResult};
