use crate::advice::{decode_size_bound, BitString, SizeAdviceParams, SizeBound};
use crate::sim::{Move, Observation, Strategy};

use super::{ExploreError, UxsCertificate, UxsReplay, UxsStore};

/// What to do when the decoded size bound is beyond the store's cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CapPolicy {
    /// Report [`ExploreError::FeasibilityCapExceeded`].
    #[default]
    Strict,
    /// Replay the certificate for the cap instead. Only correct on graphs
    /// with at most `cap` nodes; [`PolyExplorer::effective_bound`] says which
    /// bound was used.
    ClampToCap,
}

/// Decodes a size bound `N` from the advice and replays a UXS certified for `N`.
#[derive(Debug, Clone)]
pub struct PolyExplorer {
    requested: SizeBound,
    certificate: UxsCertificate,
    replay: UxsReplay,
}

impl PolyExplorer {
    pub fn new(
        advice: &BitString,
        params: SizeAdviceParams,
        store: &UxsStore,
        policy: CapPolicy,
    ) -> Result<Self, ExploreError> {
        let requested = decode_size_bound(advice, params);
        let bound = requested.saturating_usize();
        let bound = match policy {
            CapPolicy::Strict => bound,
            CapPolicy::ClampToCap => bound.min(store.cap()),
        };
        let certificate = store.certificate(bound)?;
        let replay = UxsReplay::new(&certificate.offsets);
        Ok(Self {
            requested,
            certificate,
            replay,
        })
    }

    pub fn requested_bound(&self) -> SizeBound {
        self.requested
    }

    pub fn effective_bound(&self) -> usize {
        self.certificate.bound
    }

    pub fn certificate(&self) -> &UxsCertificate {
        &self.certificate
    }
}

impl Strategy for PolyExplorer {
    fn next_move(&mut self, observation: Observation) -> Move {
        self.replay.next_move(observation)
    }
}
