//! AS-level graph model.
//!
//! Nodes are kept sorted by [`AsId`], so the dense node index used by the
//! routing and voting code orders the same way as the identifiers. Each
//! directed edge `A -> B` carries A's direct trust in B; the reverse edge,
//! when present, is an independent value.

mod fig1;
pub mod format;
mod grid;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::trust::TrustRate;

pub use fig1::build_fig1_example;
pub use grid::{assign_roles, generate_grid, sample_direct_trust, thin_links, GridConfig};

/// Identifier of an autonomous system.
///
/// Generated grids use integer indices; hand-written topologies use labels.
/// Indices order before labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AsId {
    Index(u32),
    Label(String),
}

impl AsId {
    /// Parses a token: all-digit tokens that fit in `u32` become indices.
    pub fn parse(token: &str) -> Self {
        if !token.is_empty() && token.bytes().all(|b| b.is_ascii_digit()) {
            if let Ok(i) = token.parse() {
                return AsId::Index(i);
            }
        }
        AsId::Label(token.to_string())
    }
}

impl fmt::Display for AsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsId::Index(i) => write!(f, "{i}"),
            AsId::Label(s) => f.write_str(s),
        }
    }
}

impl From<&str> for AsId {
    fn from(s: &str) -> Self {
        AsId::parse(s)
    }
}

impl From<u32> for AsId {
    fn from(i: u32) -> Self {
        AsId::Index(i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Role {
    #[default]
    Trusted,
    Distrusted,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Trusted => "trusted",
            Role::Distrusted => "distrusted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsNode {
    pub id: AsId,
    pub role: Role,
    /// `(row, col)` for grid-generated graphs.
    pub grid_pos: Option<(u32, u32)>,
}

impl AsNode {
    pub fn new(id: impl Into<AsId>, role: Role) -> Self {
        Self {
            id: id.into(),
            role,
            grid_pos: None,
        }
    }
}

/// A directed edge in identifier form, used to build and export graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct TrustEdge<T> {
    pub from: AsId,
    pub to: AsId,
    pub direct_trust: TrustRate<T>,
    /// Original routing criterion of the link; 1 unless configured.
    pub base_cost: T,
}

impl<T: Scalar> TrustEdge<T> {
    pub fn new(from: impl Into<AsId>, to: impl Into<AsId>, direct_trust: TrustRate<T>) -> Self {
        Self {
            from: from.into(),
            to: to.into(),
            direct_trust,
            base_cost: T::one(),
        }
    }
}

/// Outgoing edge in index form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link<T> {
    pub to: usize,
    pub trust: TrustRate<T>,
    pub base_cost: T,
}

/// Directed AS graph with per-edge direct trust and per-node role.
#[derive(Debug, Clone, PartialEq)]
pub struct AsGraph<T> {
    nodes: Vec<AsNode>,
    index: HashMap<AsId, usize>,
    out: Vec<Vec<Link<T>>>,
    inn: Vec<Vec<usize>>,
}

impl<T: Scalar> AsGraph<T> {
    /// Builds a graph, checking node uniqueness, edge endpoints, self-loops,
    /// duplicate edges and base costs.
    pub fn new(mut nodes: Vec<AsNode>, edges: Vec<TrustEdge<T>>) -> Result<Self> {
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = nodes.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateNode(w[0].id.clone()));
        }
        let index: HashMap<AsId, usize> = nodes.iter().enumerate().map(|(i, n)| (n.id.clone(), i)).collect();
        let mut out: Vec<Vec<Link<T>>> = vec![Vec::new(); nodes.len()];
        for e in edges {
            let from = *index.get(&e.from).ok_or_else(|| Error::UnknownNode(e.from.clone()))?;
            let to = *index.get(&e.to).ok_or_else(|| Error::UnknownNode(e.to.clone()))?;
            if from == to {
                return Err(Error::SelfLoop(e.from));
            }
            if !(e.base_cost.is_finite() && e.base_cost > T::zero()) {
                return Err(Error::OutOfRange {
                    what: "base cost",
                    value: e.base_cost.as_f64(),
                    range: "(0, inf)",
                });
            }
            out[from].push(Link {
                to,
                trust: e.direct_trust,
                base_cost: e.base_cost,
            });
        }
        for (from, links) in out.iter_mut().enumerate() {
            links.sort_by_key(|l| l.to);
            if let Some(w) = links.windows(2).find(|w| w[0].to == w[1].to) {
                return Err(Error::DuplicateEdge(nodes[from].id.clone(), nodes[w[0].to].id.clone()));
            }
        }
        let mut g = Self {
            nodes,
            index,
            out,
            inn: Vec::new(),
        };
        g.rebuild_incoming();
        Ok(g)
    }

    fn rebuild_incoming(&mut self) {
        let mut inn = vec![Vec::new(); self.nodes.len()];
        for (from, links) in self.out.iter().enumerate() {
            for l in links {
                inn[l.to].push(from);
            }
        }
        // pushed in ascending `from` order, so already sorted
        self.inn = inn;
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of directed edges.
    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn nodes(&self) -> &[AsNode] {
        &self.nodes
    }

    pub fn node(&self, ix: usize) -> &AsNode {
        &self.nodes[ix]
    }

    pub fn id(&self, ix: usize) -> &AsId {
        &self.nodes[ix].id
    }

    pub fn role(&self, ix: usize) -> Role {
        self.nodes[ix].role
    }

    pub fn index_of(&self, id: &AsId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &AsId) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownNode(id.clone()))
    }

    /// Outgoing links of `ix`, sorted by target index.
    pub fn out_links(&self, ix: usize) -> &[Link<T>] {
        &self.out[ix]
    }

    /// Nodes with an edge into `ix`, sorted.
    pub fn in_neighbours(&self, ix: usize) -> &[usize] {
        &self.inn[ix]
    }

    pub fn link(&self, from: usize, to: usize) -> Option<&Link<T>> {
        let links = &self.out[from];
        links.binary_search_by_key(&to, |l| l.to).ok().map(|p| &links[p])
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.link(from, to).is_some()
    }

    /// Direct trust on `from -> to`, by identifier.
    pub fn trust(&self, from: &AsId, to: &AsId) -> Option<TrustRate<T>> {
        let f = self.index_of(from)?;
        let t = self.index_of(to)?;
        self.link(f, t).map(|l| l.trust)
    }

    /// All edges in `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = TrustEdge<T>> + '_ {
        self.out.iter().enumerate().flat_map(move |(from, links)| {
            links.iter().map(move |l| TrustEdge {
                from: self.nodes[from].id.clone(),
                to: self.nodes[l.to].id.clone(),
                direct_trust: l.trust,
                base_cost: l.base_cost,
            })
        })
    }

    /// Unordered neighbour pairs `(a, b)`, `a < b`, joined by at least one edge.
    pub fn undirected_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .out
            .iter()
            .enumerate()
            .flat_map(|(a, links)| links.iter().map(move |l| (a.min(l.to), a.max(l.to))))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// Mean undirected degree over all nodes; 0 for an empty graph.
    pub fn average_degree(&self) -> f64 {
        if self.nodes.is_empty() {
            return 0.0;
        }
        2.0 * self.undirected_pairs().len() as f64 / self.nodes.len() as f64
    }

    /// Largest undirected degree.
    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.nodes.len()];
        for (a, b) in self.undirected_pairs() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub(crate) fn set_role(&mut self, ix: usize, role: Role) {
        self.nodes[ix].role = role;
    }

    pub(crate) fn out_links_mut(&mut self, ix: usize) -> &mut [Link<T>] {
        &mut self.out[ix]
    }

    /// Removes both directions between `a` and `b`.
    pub(crate) fn remove_pairs(&mut self, pairs: &[(usize, usize)]) {
        for &(a, b) in pairs {
            self.out[a].retain(|l| l.to != b);
            self.out[b].retain(|l| l.to != a);
        }
        self.rebuild_incoming();
    }
}

/// Mean undirected degree of `g`.
pub fn average_degree<T: Scalar>(g: &AsGraph<T>) -> f64 {
    g.average_degree()
}
