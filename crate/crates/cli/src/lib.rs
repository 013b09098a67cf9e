//! Command-line front end and file formats for `topo-core`.

pub mod cli;
pub mod document;
pub mod dot;

pub use cli::{run_cli, run_cli_with};
pub use document::{parse_document, serialize_document, DocError, Document};
pub use dot::{emit_dot, emit_dot_with_map};
