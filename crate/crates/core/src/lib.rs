//! Tools for disguising an individual's centrality and hiding a community
//! from social network analysis, plus the oracles used to check them.

pub mod centrality;
pub mod community;
pub mod concealment;
pub mod dice;
pub mod error;
pub mod exact;
pub mod gadgets;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod influence;
pub mod io;
pub mod lieutenant;
pub mod oracles;
pub mod rng;
pub mod roam;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId, RewiringPlan};
