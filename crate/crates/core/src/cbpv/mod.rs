//! Call-by-push-value with recursive computation types and binary choice.

pub mod sem;
pub mod syntax;
