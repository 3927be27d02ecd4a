//! Line-oriented topology text format.
//!
//! ```text
//! # comment
//! node <id> <trusted|distrusted>
//! edge <from> <to> <trust> [<base_cost>]
//! ```
//!
//! `#` starts a comment anywhere on a line. Node ids that are all digits are
//! integer ids, anything else is a label. Trust must lie in `[0, 1]`; the
//! optional base cost defaults to 1. Edges may reference nodes declared
//! later in the file.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use super::{AsGraph, AsId, AsNode, Role, TrustEdge};
use crate::scalar::Scalar;
use crate::trust::TrustRate;

/// One problem found while reading a topology file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based line number.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// All diagnostics for a rejected topology file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct TopologyError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for TopologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

fn parse_number(token: &str) -> Option<f64> {
    token.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// Parses a topology, reporting every invalid line rather than the first.
pub fn parse_topology<T: Scalar>(text: &str) -> Result<AsGraph<T>, TopologyError> {
    let mut diags = Vec::new();
    let mut nodes: Vec<AsNode> = Vec::new();
    let mut node_ids = HashSet::new();
    let mut edges: Vec<(usize, TrustEdge<T>)> = Vec::new();
    let mut edge_keys = HashSet::new();
    let mut err = |line: usize, message: String| diags.push(Diagnostic { line, message });

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["node", id, role] => {
                let role = match *role {
                    "trusted" => Role::Trusted,
                    "distrusted" => Role::Distrusted,
                    other => {
                        err(line, format!("unknown role {other:?}, expected trusted or distrusted"));
                        continue;
                    }
                };
                let id = AsId::parse(id);
                if !node_ids.insert(id.clone()) {
                    err(line, format!("duplicate node {id}"));
                    continue;
                }
                nodes.push(AsNode::new(id, role));
            }
            ["node", ..] => err(line, "expected `node <id> <trusted|distrusted>`".into()),
            ["edge", from, to, trust, rest @ ..] if rest.len() <= 1 => {
                let (from, to) = (AsId::parse(from), AsId::parse(to));
                let Some(t) = parse_number(trust) else {
                    err(line, format!("trust {trust:?} is not a number"));
                    continue;
                };
                let Ok(t) = TrustRate::strict(T::lit(t)) else {
                    err(line, format!("trust {trust} is outside [0, 1]"));
                    continue;
                };
                let base_cost = match rest.first() {
                    None => 1.0,
                    Some(tok) => match parse_number(tok) {
                        Some(c) if c > 0.0 => c,
                        _ => {
                            err(line, format!("base cost {tok:?} must be a positive number"));
                            continue;
                        }
                    },
                };
                if from == to {
                    err(line, format!("self-loop on {from}"));
                    continue;
                }
                if !edge_keys.insert((from.clone(), to.clone())) {
                    err(line, format!("duplicate edge {from} -> {to}"));
                    continue;
                }
                let mut e = TrustEdge::new(from, to, t);
                e.base_cost = T::lit(base_cost);
                edges.push((line, e));
            }
            ["edge", ..] => err(line, "expected `edge <from> <to> <trust> [<base_cost>]`".into()),
            [kw, ..] => err(line, format!("unknown record {kw:?}")),
        }
    }
    for (line, e) in &edges {
        for end in [&e.from, &e.to] {
            if !node_ids.contains(end) {
                err(*line, format!("edge references undeclared node {end}"));
            }
        }
    }
    if !diags.is_empty() {
        diags.sort_by_key(|d| d.line);
        return Err(TopologyError { diagnostics: diags });
    }
    AsGraph::new(nodes, edges.into_iter().map(|(_, e)| e).collect()).map_err(|e| TopologyError {
        diagnostics: vec![Diagnostic {
            line: 0,
            message: e.to_string(),
        }],
    })
}

/// Serializes `g`: nodes sorted by id, then edges in `(from, to)` order.
/// The base cost column is written only when it differs from 1.
pub fn write_topology<T: Scalar>(g: &AsGraph<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} nodes, {} edges", g.node_count(), g.edge_count());
    for n in g.nodes() {
        let _ = writeln!(out, "node {} {}", n.id, n.role.as_str());
    }
    for e in g.edges() {
        let _ = write!(out, "edge {} {} {}", e.from, e.to, e.direct_trust);
        if e.base_cost != T::one() {
            let _ = write!(out, " {}", e.base_cost);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;
    use crate::topology::{assign_roles, build_fig1_example, generate_grid, sample_direct_trust, GridConfig};
    use proptest::prelude::*;

    #[test]
    fn reads_a_small_file() {
        let text = "\
# two ASes
node A trusted
node 7 distrusted   # integer id
edge A 7 0.25
edge 7 A 1 2.5
";
        let g = parse_topology::<f64>(text).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.trust(&"A".into(), &7u32.into()).unwrap().value(), 0.25);
        let back = g.index_of(&7u32.into()).unwrap();
        assert_eq!(g.out_links(back)[0].base_cost, 2.5);
        assert_eq!(g.role(back), Role::Distrusted);
    }

    #[test]
    fn edges_may_precede_nodes() {
        let g = parse_topology::<f64>("edge A B 0.5\nnode A trusted\nnode B trusted\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn reports_every_bad_line() {
        let text = "\
node A trusted
node A trusted
node B sometimes
edge A B 1.5
edge A C 0.5
edge A A 0.5
frobnicate
edge A B
edge A B nan
edge A B 0.5 0
";
        let err = parse_topology::<f64>(text).unwrap_err();
        let lines: Vec<usize> = err.diagnostics.iter().map(|d| d.line).collect();
        assert_eq!(lines, vec![2, 3, 4, 5, 6, 7, 8, 9, 10]);
        assert!(err.diagnostics[2].message.contains("1.5"));
        assert!(err.to_string().starts_with("line 2: duplicate node A"));
    }

    #[test]
    fn round_trips_fig1() {
        let g = build_fig1_example::<f64>();
        let text = write_topology(&g);
        assert_eq!(parse_topology::<f64>(&text).unwrap(), g);
        assert!(text.contains("edge J H 0.56\n"));
    }

    #[test]
    fn generated_grid_round_trips() {
        let cfg = GridConfig::default();
        let mut rng = RandomStream::from_seed(1).rng();
        let g = generate_grid::<f64>(&cfg).unwrap();
        let g = assign_roles(g, 0.2, &mut rng).unwrap();
        let g = sample_direct_trust(g, &cfg, &mut rng);
        let text = write_topology(&g);
        assert_eq!(text.lines().filter(|l| l.starts_with("node ")).count(), 225);
        let back = parse_topology::<f64>(&text).unwrap();
        // positions are not part of the text format
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(write_topology(&back), text);
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(
            trusts in prop::collection::vec(0.0..=1.0f64, 6),
            distrusted in prop::collection::vec(any::<bool>(), 4),
        ) {
            let ids = ["a", "b", "3", "12"];
            let nodes = ids.iter().zip(&distrusted)
                .map(|(id, d)| AsNode::new(*id, if *d { Role::Distrusted } else { Role::Trusted }))
                .collect();
            let pairs = [(0, 1), (1, 0), (1, 2), (2, 3), (3, 0), (0, 2)];
            let edges = pairs.iter().zip(&trusts)
                .map(|(&(a, b), &t)| TrustEdge::new(ids[a], ids[b], TrustRate::strict(t).unwrap()))
                .collect();
            let g = AsGraph::new(nodes, edges).unwrap();
            prop_assert_eq!(parse_topology::<f64>(&write_topology(&g)).unwrap(), g);
        }
    }
}
