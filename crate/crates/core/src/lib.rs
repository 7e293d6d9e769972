//! Deterministic exploration of anonymous port-numbered graphs with advice.

pub mod advice;
pub mod explore;
pub mod graph;
pub mod sim;
pub mod adversary;
pub mod harness;
