pub mod cache;
pub mod commands;
pub mod report;

pub use commands::{Budgets, CliError, Context, Method, Suite};
pub use report::{ReportDocument, Status, Verdict, SCHEMA_VERSION};
