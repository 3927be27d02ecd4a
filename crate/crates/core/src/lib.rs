//! Hybrid trust model for inter-domain routing.
//!
//! Autonomous systems rate their neighbours with trust values in `[0, 1]`.
//! This crate combines direct (inherent and observed) trust with trust voted
//! by the neighbourhood, uses it to cost BGP-style paths under two cost
//! models, and provides the Monte Carlo experiments that measure how well
//! the combination separates trusted from distrusted ASes.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below fix the precision used by the command-line tool.
//!
//! ```
//! use hybrid_trust::{build_fig1_example, propagate_routes, AsId, CostModel};
//!
//! let g = build_fig1_example::<f64>();
//! let routes = propagate_routes(&g, &AsId::parse("H"), CostModel::Recommended).unwrap();
//! assert_eq!(routes[&AsId::parse("A")].as_path.to_string(), "A-B-G-H");
//! ```

pub mod error;
pub mod rng;
pub mod routing;
pub mod scalar;
pub mod simulation;
pub mod topology;
pub mod trust;
pub mod voting;

pub use error::{Error, Result};
pub use rng::{RandomStream, StreamRng};
pub use routing::{
    enumerate_paths, normalized_cost, path_cost_direct, path_cost_recommended, propagate_routes, CostModel, Path,
    RouteEntry,
};
pub use scalar::Scalar;
pub use simulation::{
    argmin_alpha, detection_failures, run_alpha_sweep, run_trust_variation, DetectionTally, SweepCell, SweepConfig,
    SweepResult, VariationConfig, VariationSeries, VariationStep,
};
pub use topology::{
    assign_roles, average_degree, build_fig1_example, generate_grid, sample_direct_trust, thin_links, AsGraph, AsId,
    AsNode, GridConfig, Role, TrustEdge,
};
pub use trust::{
    aggregate_votes, classify, combine_alpha, evaluate_trust_tree, hybrid_trust, make_rate, universal_trust, TrustBand,
    TrustLeaf, TrustRate, TrustTree, TrustWeights2, TrustWeights3, WeightedVote,
};
pub use voting::{collect_votes, init_state, run_vote_round, run_votes, PairTrust, TrustState, VoteParams};

pub type TrustRate64 = TrustRate<f64>;
pub type TrustRate32 = TrustRate<f32>;
pub type TrustWeights2F64 = TrustWeights2<f64>;
pub type TrustWeights3F64 = TrustWeights3<f64>;
pub type TrustTree64 = TrustTree<f64>;
pub type WeightedVote64 = WeightedVote<f64>;
pub type AsGraph64 = AsGraph<f64>;
pub type AsGraph32 = AsGraph<f32>;
pub type TrustEdge64 = TrustEdge<f64>;
pub type RouteEntry64 = RouteEntry<f64>;
pub type TrustState64 = TrustState<f64>;
pub type VariationSeries64 = VariationSeries<f64>;
