//! File formats, the classification store and batch drivers behind the
//! `omreal` binary.

pub mod classify;
pub mod format;
pub mod store;

pub use classify::{run_classify, ClassifySummary};
pub use format::{parse_chirotope_line, parse_chirotope_lines, parse_witness, witness_text};
pub use store::{Record, Store};
