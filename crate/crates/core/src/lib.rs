//! Program-equivalence workbench.
//!
//! Three calculi share one set of drivers:
//!
//! * [`xcl`]: untyped extended combinatory logic with lazy, labelled reduction.
//! * [`fgcbv`]: the two-sorted fine-grain call-by-value variant.
//! * [`cbpv`]: typed call-by-push-value with recursive types and binary choice.
//!
//! [`kernel`] holds the language-agnostic parts: relations, weak closures,
//! greatest-simulation fixpoints, step-indexed chains and the context oracle.

pub mod cbpv;
pub mod fgcbv;
pub mod kernel;
pub mod rng;
pub mod xcl;
