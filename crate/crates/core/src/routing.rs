//! Trust-aware path costs and path-vector route selection.
//!
//! Every node advertises the *aggregate* cost of its selected path, the sum
//! of per-link normalized costs `C/T` along it. Two cost models decide
//! which neighbour's advertisement a node adopts:
//!
//! * [`CostModel::DirectSum`]: the aggregate itself, `C_1/T_1 + downstream`.
//! * [`CostModel::Recommended`]: the first-hop trust also discounts what the
//!   neighbour advertised, `(C_1 + downstream) / T_1`, so a poorly trusted
//!   neighbour cannot pass on a cheap-looking path unchanged.
//!
//! Only the selecting node applies the coefficient; the advertisement it
//! passes upstream stays additive.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::topology::{AsGraph, AsId};
use crate::trust::TrustRate;

/// A loop-free AS path from source to destination.
///
/// A single-element path is the destination's own route.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<AsId>);

impl Path {
    pub fn new(hops: Vec<AsId>) -> Result<Self> {
        if hops.is_empty() {
            return Err(Error::EmptyPath);
        }
        for (i, id) in hops.iter().enumerate() {
            if hops[..i].contains(id) {
                return Err(Error::LoopingPath(id.clone()));
            }
        }
        Ok(Self(hops))
    }

    pub fn hops(&self) -> &[AsId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn source(&self) -> &AsId {
        &self.0[0]
    }

    pub fn destination(&self) -> &AsId {
        self.0.last().expect("paths are nonempty")
    }

    fn from_indices<T: Scalar>(g: &AsGraph<T>, ixs: &[usize]) -> Self {
        Self(ixs.iter().map(|&i| g.id(i).clone()).collect())
    }

    fn to_indices<T: Scalar>(&self, g: &AsGraph<T>) -> Result<Vec<usize>> {
        self.0.iter().map(|id| g.require(id)).collect()
    }
}

impl fmt::Display for Path {
    /// Hops joined by `-`, e.g. `A-J-H`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{id}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostModel {
    /// Sum of per-link `C/T`.
    DirectSum,
    /// `(C_1 + downstream) / T_1` at every hop.
    Recommended,
}

impl CostModel {
    pub const ALL: [CostModel; 2] = [CostModel::DirectSum, CostModel::Recommended];

    pub fn name(self) -> &'static str {
        match self {
            CostModel::DirectSum => "direct",
            CostModel::Recommended => "recommended",
        }
    }

    /// Selection cost of reaching the destination over a link with
    /// `base_cost` and `trust`, given the neighbour's advertised aggregate
    /// `downstream` cost.
    pub fn extend<T: Scalar>(self, base_cost: T, trust: TrustRate<T>, downstream: T) -> Result<T> {
        match self {
            CostModel::DirectSum => Ok(normalized_cost(base_cost, trust)? + downstream),
            CostModel::Recommended => {
                if trust.value() <= T::zero() {
                    return Err(Error::CompleteDistrust);
                }
                Ok((base_cost + downstream) / trust.value())
            }
        }
    }

    /// Evaluates this model along `path` using the link data in `g`: the
    /// model is applied at the first hop to the additive cost of the rest.
    pub fn path_cost<T: Scalar>(self, g: &AsGraph<T>, path: &Path) -> Result<T> {
        let ixs = path.to_indices(g)?;
        let link = |w: &[usize]| {
            g.link(w[0], w[1])
                .ok_or_else(|| Error::NotNeighbour(g.id(w[1]).clone(), g.id(w[0]).clone()))
        };
        let mut rest = T::zero();
        for w in ixs.windows(2).skip(1).rev() {
            let l = link(w)?;
            rest = normalized_cost(l.base_cost, l.trust)? + rest;
        }
        match ixs.get(..2) {
            Some(first) => {
                let l = link(first)?;
                self.extend(l.base_cost, l.trust, rest)
            }
            None => Ok(T::zero()),
        }
    }
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Normalized routing criterion `C / T`.
pub fn normalized_cost<T: Scalar>(cost: T, trust: TrustRate<T>) -> Result<T> {
    if !(cost.is_finite() && cost > T::zero()) {
        return Err(Error::OutOfRange {
            what: "routing criterion",
            value: cost.as_f64(),
            range: "(0, inf)",
        });
    }
    if trust.value() <= T::zero() {
        return Err(Error::CompleteDistrust);
    }
    Ok(cost / trust.value())
}

/// Sum of reciprocal link trusts, with unit base cost per link.
pub fn path_cost_direct<T: Scalar>(link_trusts: &[TrustRate<T>]) -> Result<T> {
    if link_trusts.is_empty() {
        return Err(Error::EmptyPath);
    }
    link_trusts
        .iter()
        .try_fold(T::zero(), |acc, &t| Ok(acc + normalized_cost(T::one(), t)?))
}

/// `(1 + downstream) / T_1`; `downstream` is 0 when the first hop is the
/// destination.
pub fn path_cost_recommended<T: Scalar>(first_hop: TrustRate<T>, downstream: T) -> Result<T> {
    if !(downstream.is_finite() && downstream >= T::zero()) {
        return Err(Error::OutOfRange {
            what: "downstream cost",
            value: downstream.as_f64(),
            range: "[0, inf)",
        });
    }
    CostModel::Recommended.extend(T::one(), first_hop, downstream)
}

/// A node's selected route towards one destination.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteEntry<T> {
    pub destination: AsId,
    /// The destination itself for the destination's own entry.
    pub next_hop: AsId,
    pub as_path: Path,
    /// Cost under `model`; what the owner minimizes.
    pub cost: T,
    /// Additive path cost the owner advertises to its in-neighbours.
    pub advertised: T,
    pub model: CostModel,
}

#[derive(Debug, Clone, PartialEq)]
struct Offer<T> {
    path: Vec<usize>,
    cost: T,
    advertised: T,
}

/// Lower cost first, then shorter path, then lexicographically smaller
/// path. Node indices follow identifier order, so index comparison is
/// identifier comparison.
fn prefer<T: Scalar>(a: &Offer<T>, b: &Offer<T>) -> Ordering {
    a.cost
        .partial_cmp(&b.cost)
        .expect("route costs are finite")
        .then(a.path.len().cmp(&b.path.len()))
        .then_with(|| a.path.cmp(&b.path))
}

/// Best loop-free candidate for `x` given the neighbours' current offers.
fn best_candidate<T: Scalar>(
    g: &AsGraph<T>,
    model: CostModel,
    offers: &[Option<Offer<T>>],
    x: usize,
) -> Option<Offer<T>> {
    let mut best: Option<Offer<T>> = None;
    for link in g.out_links(x) {
        let Some(offer) = &offers[link.to] else { continue };
        if offer.path.contains(&x) || link.trust.value() <= T::zero() {
            continue;
        }
        let (Ok(cost), Ok(hop)) = (
            model.extend(link.base_cost, link.trust, offer.advertised),
            normalized_cost(link.base_cost, link.trust),
        ) else {
            continue;
        };
        let mut path = Vec::with_capacity(offer.path.len() + 1);
        path.push(x);
        path.extend_from_slice(&offer.path);
        let cand = Offer {
            path,
            cost,
            advertised: hop + offer.advertised,
        };
        if best.as_ref().is_none_or(|b| prefer(&cand, b) == Ordering::Less) {
            best = Some(cand);
        }
    }
    best
}

/// Synchronous path-vector computation towards `destination`.
///
/// Every round each node offers its current best route and its aggregate
/// cost to the nodes that have an edge into it; a node keeps the best
/// loop-free candidate built from those offers. Rounds repeat until nothing
/// changes. Zero-trust links are never used. Nodes that cannot reach the
/// destination have no entry.
///
/// Under [`CostModel::Recommended`] the preference is not monotone along
/// paths, so as with BGP policies a fixed point is not guaranteed to
/// exist; [`Error::NotConverged`] is returned if the rounds cycle.
pub fn propagate_routes<T: Scalar>(
    g: &AsGraph<T>,
    destination: &AsId,
    model: CostModel,
) -> Result<BTreeMap<AsId, RouteEntry<T>>> {
    let dst = g.require(destination)?;
    let n = g.node_count();
    let mut offers: Vec<Option<Offer<T>>> = vec![None; n];
    offers[dst] = Some(Offer {
        path: vec![dst],
        cost: T::zero(),
        advertised: T::zero(),
    });
    let limit = n * n + 8;
    let mut converged = false;
    for _ in 0..limit {
        let next: Vec<Option<Offer<T>>> = (0..n)
            .map(|x| {
                if x == dst {
                    offers[dst].clone()
                } else {
                    best_candidate(g, model, &offers, x)
                }
            })
            .collect();
        if next == offers {
            converged = true;
            break;
        }
        offers = next;
    }
    if !converged {
        return Err(Error::NotConverged(limit));
    }
    Ok(offers
        .into_iter()
        .enumerate()
        .filter_map(|(x, o)| {
            let o = o?;
            let entry = RouteEntry {
                destination: destination.clone(),
                next_hop: g.id(*o.path.get(1).unwrap_or(&x)).clone(),
                as_path: Path::from_indices(g, &o.path),
                cost: o.cost,
                advertised: o.advertised,
                model,
            };
            Some((g.id(x).clone(), entry))
        })
        .collect())
}

/// Every simple path from `src` to `dst` with at most `max_len` nodes, in
/// depth-first order over identifier-sorted neighbours. Empty if
/// `src == dst`.
pub fn enumerate_paths<T: Scalar>(g: &AsGraph<T>, src: &AsId, dst: &AsId, max_len: usize) -> Result<Vec<Path>> {
    let s = g.require(src)?;
    let d = g.require(dst)?;
    let mut found = Vec::new();
    if s == d || max_len < 2 {
        return Ok(found);
    }
    let mut stack = vec![s];
    let mut on_path = vec![false; g.node_count()];
    on_path[s] = true;
    dfs(g, d, max_len, &mut stack, &mut on_path, &mut found);
    Ok(found)
}

fn dfs<T: Scalar>(
    g: &AsGraph<T>,
    dst: usize,
    max_len: usize,
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    found: &mut Vec<Path>,
) {
    let here = *stack.last().expect("stack starts with the source");
    for link in g.out_links(here) {
        let next = link.to;
        if on_path[next] {
            continue;
        }
        stack.push(next);
        if next == dst {
            found.push(Path::from_indices(g, stack));
        } else if stack.len() < max_len {
            on_path[next] = true;
            dfs(g, dst, max_len, stack, on_path, found);
            on_path[next] = false;
        }
        stack.pop();
    }
}
