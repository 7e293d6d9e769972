//! Experiment plumbing: graph families, advice generation, report rows,
//! and the pigeonhole collision finder.

mod collide;
mod experiment;
mod report;

pub use collide::{find_advice_collision, pigeonhole_demo, PigeonholeReport, RingLadder, RingLadderWalker};
pub use experiment::{
    build_instance, make_advice, make_strategy, resolve_starts, run_experiment, run_on_instance,
    run_with_advice, Algo, ExperimentSpec, Family, Instance, StartSelection,
};
pub use report::{emit_report, report_to_string, ReportRow};

use thiserror::Error;

use crate::advice::AdviceError;
use crate::adversary::AdversaryError;
use crate::explore::ExploreError;
use crate::graph::GraphError;
use crate::sim::SimError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Advice(#[from] AdviceError),
    #[error(transparent)]
    Explore(#[from] ExploreError),
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    /// Whether the error comes from bad user input rather than a failed check.
    pub fn is_config(&self) -> bool {
        !matches!(self, HarnessError::Sim(_))
    }
}
