//! Experiment runners.
//!
//! * [`run_trust_variation`]: path cost under both cost models while the
//!   first-hop trust falls and the advertised remainder's trust grows.
//! * [`run_alpha_sweep`]: detection-failure rate on random grid worlds as
//!   a function of the direct/voted weighting and of neighbour count.

mod metrics;
mod sweep;
mod variation;

pub use metrics::{detection_failures, DetectionTally, FAIL_ABOVE_FOR_DISTRUSTED, FAIL_BELOW_FOR_TRUSTED};
pub use sweep::{
    argmin_alpha, build_world, run_alpha_sweep, run_replicate, ReplicateOutcome, SweepCell, SweepConfig, SweepResult,
};
pub use variation::{run_trust_variation, VariationConfig, VariationSeries, VariationStep};
