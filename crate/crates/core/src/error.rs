use crate::topology::AsId;

/// Errors raised by the trust model, topology and simulation code.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite value {0} where a real number was expected")]
    NonFinite(f64),
    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
    #[error("invalid trust tree: {0}")]
    InvalidTree(String),
    #[error("no voter with positive weight")]
    NoVoters,
    #[error("trust rate is zero (complete distrust); cost is unbounded")]
    CompleteDistrust,
    #[error("path has no links")]
    EmptyPath,
    #[error("path visits {0} twice")]
    LoopingPath(AsId),
    #[error("unknown AS {0}")]
    UnknownNode(AsId),
    #[error("duplicate AS {0}")]
    DuplicateNode(AsId),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(AsId, AsId),
    #[error("self-loop on {0}")]
    SelfLoop(AsId),
    #[error("{0} is not a neighbour of {1}")]
    NotNeighbour(AsId, AsId),
    #[error("average degree target {target} is unreachable from current average {current}")]
    UnreachableDegree { target: f64, current: f64 },
    #[error("no trusted evaluator/neighbour pairs to score")]
    NoEligiblePairs,
    #[error("derived trust missing for {0} -> {1}")]
    MissingDerived(AsId, AsId),
    #[error("path-vector iteration did not converge after {0} rounds")]
    NotConverged(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
