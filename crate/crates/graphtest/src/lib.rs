//! Experiment harness for `graphtest-core`: edge-list and trace formats,
//! JSON configuration, seeded trial batches with Wilson intervals,
//! acceptance curves, and the container-lemma validation corpus.

pub mod config;
pub mod corpus;
mod error;
pub mod experiment;
pub mod format;
pub mod stats;

pub use error::{HarnessError, Result};
