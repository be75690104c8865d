//! Influence maximization under the Independent Cascade model, with seed
//! reselection (multiset seeds) and fading.

pub mod cascade;
pub mod cli;
pub mod error;
pub mod graph;
pub mod maximize;
pub mod metrics;
pub mod seeding;

pub use error::{Error, Result};
