use super::{AsGraph, AsNode, Role, TrustEdge};
use crate::scalar::Scalar;
use crate::trust::TrustRate;

/// Link trusts of the eight-node worked example, as seen from A towards H.
const FIG1_EDGES: [(&str, &str, f64); 9] = [
    ("A", "B", 0.9),
    ("B", "G", 0.8),
    ("G", "H", 0.6),
    ("A", "J", 0.6),
    ("J", "H", 0.56),
    ("A", "E", 0.89),
    ("E", "C", 0.98),
    ("C", "D", 0.68),
    ("D", "H", 0.71),
];

/// The eight-AS example with three alternative A -> H paths.
///
/// Only the links on those paths are present, in the direction A uses.
pub fn build_fig1_example<T: Scalar>() -> AsGraph<T> {
    let nodes = ["A", "B", "C", "D", "E", "G", "H", "J"]
        .into_iter()
        .map(|id| AsNode::new(id, Role::Trusted))
        .collect();
    let edges = FIG1_EDGES
        .iter()
        .map(|&(from, to, t)| TrustEdge::new(from, to, TrustRate::saturating(T::lit(t))))
        .collect();
    AsGraph::new(nodes, edges).expect("example topology is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::AsId;

    #[test]
    fn example_link_trusts() {
        let g = build_fig1_example::<f64>();
        assert_eq!(g.node_count(), 8);
        assert_eq!(g.edge_count(), 9);
        let t = |a: &str, b: &str| g.trust(&AsId::parse(a), &AsId::parse(b)).unwrap().value();
        assert_eq!(t("G", "H"), 0.60);
        assert_eq!(t("B", "G"), 0.80);
        assert_eq!(t("J", "H"), 0.56);
        assert!(g.trust(&AsId::parse("H"), &AsId::parse("G")).is_none());
        assert!(g.nodes().iter().all(|n| n.role == Role::Trusted));
    }
}
