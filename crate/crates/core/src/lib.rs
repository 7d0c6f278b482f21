//! ΔY-exchanges on graphs, cycle weight maps, exact PL spatial embeddings and
//! the link invariants needed to check Conway-Gordon type identities.

pub mod canon;
pub mod cycles;
pub mod diagram;
pub mod error;
pub mod family;
pub mod geometry;
pub mod graph;
pub mod invariants;
pub mod spatial;
pub mod verifier;
pub mod weights;

pub use error::{Error, Result};
