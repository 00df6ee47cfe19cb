//! Law suites, JSON tools and reports behind the `eja` command.

pub mod commands;
pub mod json;
pub mod laws;
pub mod report;

pub use json::UsageError;
pub use laws::{benchmark_algebras, catalog, run_suite, Law, Suite, SuiteSelection};
pub use report::{LawResult, LawSuiteReport, LawsOutput};
