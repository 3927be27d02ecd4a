use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::topology::{AsGraph, Role};
use crate::voting::TrustState;

/// A trusted subject assessed strictly below this is a missed detection.
pub const FAIL_BELOW_FOR_TRUSTED: f64 = 0.6;
/// A distrusted subject assessed strictly above this is a missed detection.
pub const FAIL_ABOVE_FOR_DISTRUSTED: f64 = 0.4;

/// Failure count over scored `(trusted evaluator, neighbour)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DetectionTally {
    pub failures: usize,
    pub pairs: usize,
}

impl DetectionTally {
    pub fn rate(&self) -> f64 {
        self.failures as f64 / self.pairs as f64
    }
}

/// Scores every pair whose evaluator is trusted. Boundary values count as
/// correct detections.
pub fn detection_failures<T: Scalar>(g: &AsGraph<T>, state: &TrustState<T>) -> Result<DetectionTally> {
    let below = T::lit(FAIL_BELOW_FOR_TRUSTED);
    let above = T::lit(FAIL_ABOVE_FOR_DISTRUSTED);
    let mut tally = DetectionTally::default();
    for evaluator in (0..g.node_count()).filter(|&e| g.role(e) == Role::Trusted) {
        for link in g.out_links(evaluator) {
            let subject = link.to;
            let derived = state
                .get(evaluator, subject)
                .and_then(|p| p.derived)
                .ok_or_else(|| Error::MissingDerived(g.id(evaluator).clone(), g.id(subject).clone()))?
                .value();
            let failed = match g.role(subject) {
                Role::Trusted => derived < below,
                Role::Distrusted => derived > above,
            };
            tally.pairs += 1;
            tally.failures += failed as usize;
        }
    }
    if tally.pairs == 0 {
        return Err(Error::NoEligiblePairs);
    }
    Ok(tally)
}
