//! Experiment harness for `dynmatch`: stream generators, a runner binding
//! estimator pipelines to streams and exact oracles, reports and audits.

pub mod audit;
pub mod error;
pub mod generators;
pub mod instances;
pub mod report;
pub mod runner;

pub use error::{BenchError, Result};
