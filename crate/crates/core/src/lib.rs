//! Exact computations in Z≀Z, Thompson's group F and Baumslag's metabelian
//! group, with the two embeddings of Z≀Z and breadth-first word-length
//! oracles to check closed-form lengths against.

pub mod baumslag;
pub mod embedding;
pub mod error;
pub mod laurent;
pub mod oracle;
pub mod thompson;
pub mod word;
pub mod wreath;

pub use error::{Error, Result};
