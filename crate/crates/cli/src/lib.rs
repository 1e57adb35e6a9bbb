//! Command-line front end: surface parsers, relation files, reports and
//! the golden-corpus runner.

pub mod config;
pub mod files;
pub mod lang;
pub mod lex;
pub mod parse;
pub mod report;
pub mod run;
pub mod selftest;

pub use config::RunConfig;
pub use report::{Exit, Report};
pub use run::run;
