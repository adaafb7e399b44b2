//! Cluster variables as exact fractions over the initial extended cluster.

mod poly;
mod rational;
mod state;

use thiserror::Error;

pub use poly::{Exponents, MultiPoly};
pub use rational::RationalFunction;
pub use state::{
    enumerate_clusters, Cluster, ClusterEnumeration, ExplorationStatus, LabeledSeedState, SymbolicCaps,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("polynomial exceeded {0} terms")]
    TermCap(usize),
    #[error("exchange produced a fraction whose denominator is not a monomial")]
    NotLaurent,
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Seed(#[from] crate::SeedError),
}
