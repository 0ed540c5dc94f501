//! Sublinear-time estimation of maximum matching and minimum vertex cover
//! sizes by locally simulating randomized greedy maximal matching.

pub mod cli;
pub mod error;
pub mod estimate;
pub mod experiment;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod rank;
pub mod reduction;
pub mod reference;
pub mod seed;
pub mod verify;

pub use error::{Error, Result};
