//! Two-terminal series-parallel graphs: terms, the expression language,
//! realization to concrete graphs, and structural queries.

mod chain;
mod girth;
mod graph;
mod parse;
mod random;
mod term;

pub use chain::{find_chain_excluding, find_removable_chain, Chain};
pub use girth::{girth, GirthValue};
pub use graph::{parallel_compose, realize, series_compose, Graph};
pub use parse::parse_sp_expression;
pub use random::{random_sp_graph, random_sp_term};
pub use term::SpTerm;
