//! Instance documents, random corpora and engine cross-checks for the
//! `obribe` command.

pub mod check;
pub mod document;
pub mod generate;
pub mod manip;

pub use check::{cross_check, run, CheckSummary, Engine, RunError, RunReport};
pub use document::{parse_corpus, parse_instance, serialize_instance, DocError, Instance};
pub use generate::{generate_random, GenParams};
