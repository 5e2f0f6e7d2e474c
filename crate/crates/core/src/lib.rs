//! Two-terminal series-parallel graphs and multi-fold list colouring.
//!
//! The crate builds both sides of the strong fractional choice number of
//! series-parallel graphs with girth at least `k`, which equals `2 + 1/q`
//! for `q = ⌊(k + 1) / 4⌋`:
//!
//! - [`constructive`] colours any graph of the class from lists of size
//!   `⌈(2 + 1/q)·m⌉` with `m` colours per vertex,
//! - [`adversary`] builds list assignments with `2m + e` colours (`q·e < m`)
//!   that admit no `m`-fold colouring,
//! - [`oracle`] holds exact solvers that certify either verdict independently.
//!
//! Everything here is `no_std` with `alloc`; file formats, threading and the
//! command line live in the `sfchoice` crate.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod adversary;
pub mod bound;
pub mod colour;
pub mod constructive;
mod error;
pub mod oracle;
pub mod sp;

pub use error::{Error, Result};

/// Vertex identifier.
pub type Vertex = u32;
/// Colour identifier.
pub type Colour = u32;
