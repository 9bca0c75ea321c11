//! Library side of the CLI: configuration, cell execution, serialization.

// Domain guards use the `!(x >= y)` form on purpose: it rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod emit;
pub mod run;

pub use config::{HRule, OutputFormat, RunConfig};
pub use emit::{emit, to_csv, to_json, CSV_HEADER};
pub use run::{execute, plan, Cell, CellOutcome};
