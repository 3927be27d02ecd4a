//! Grid world used by the detection-failure experiments.
//!
//! A `rows × cols` grid where each node links to its (up to eight) Moore
//! neighbours, with no wraparound. Links can then be thinned at random,
//! a fraction of nodes marked distrusted, and direct trust drawn from a
//! Gaussian centred on the subject's role.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{AsGraph, AsId, AsNode, Role, TrustEdge};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::trust::TrustRate;

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub rows: u32,
    pub cols: u32,
    /// Fraction of nodes marked distrusted, in `[0, 1)`.
    pub distrusted_fraction: f64,
    /// Average undirected degree to thin down to.
    pub target_avg_degree: f64,
    /// Mean direct trust towards trusted subjects.
    pub mu_trusted: f64,
    /// Mean direct trust towards distrusted subjects.
    pub mu_distrusted: f64,
    /// Standard deviation of direct trust.
    pub sigma: f64,
    pub seed: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            rows: 15,
            cols: 15,
            distrusted_fraction: 0.2,
            target_avg_degree: 6.5,
            mu_trusted: 0.7,
            mu_distrusted: 0.3,
            sigma: 0.2,
            seed: 0,
        }
    }
}

impl GridConfig {
    /// Average undirected degree of the unthinned grid.
    pub fn full_average_degree(&self) -> f64 {
        let (r, c) = (self.rows as f64, self.cols as f64);
        if r * c == 0.0 {
            return 0.0;
        }
        let pairs = r * (c - 1.0) + (r - 1.0) * c + 2.0 * (r - 1.0) * (c - 1.0);
        2.0 * pairs / (r * c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Config("grid needs at least one row and column".into()));
        }
        if !(0.0..1.0).contains(&self.distrusted_fraction) {
            return Err(Error::OutOfRange {
                what: "distrusted_fraction",
                value: self.distrusted_fraction,
                range: "[0, 1)",
            });
        }
        check_degree_target(self.target_avg_degree, self.full_average_degree())?;
        for (what, v) in [("mu_trusted", self.mu_trusted), ("mu_distrusted", self.mu_distrusted)] {
            if !v.is_finite() {
                return Err(Error::Config(format!("{what} must be finite")));
            }
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::OutOfRange {
                what: "sigma",
                value: self.sigma,
                range: "[0, inf)",
            });
        }
        Ok(())
    }
}

fn check_degree_target(target: f64, current: f64) -> Result<()> {
    if !(target.is_finite() && target >= 0.0 && target <= current + 1e-12) {
        return Err(Error::UnreachableDegree { target, current });
    }
    Ok(())
}

/// Full Moore-neighbourhood grid; every edge starts at trust 0.5.
///
/// Node `(row, col)` gets id `row * cols + col`.
pub fn generate_grid<T: Scalar>(cfg: &GridConfig) -> Result<AsGraph<T>> {
    if cfg.rows == 0 || cfg.cols == 0 {
        return Err(Error::Config("grid needs at least one row and column".into()));
    }
    let (rows, cols) = (cfg.rows as i64, cfg.cols as i64);
    let id = |r: i64, c: i64| (r * cols + c) as u32;
    let mut nodes = Vec::with_capacity((rows * cols) as usize);
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            nodes.push(AsNode {
                id: AsId::Index(id(r, c)),
                role: Role::Trusted,
                grid_pos: Some((r as u32, c as u32)),
            });
            for dr in -1..=1 {
                for dc in -1..=1 {
                    let (nr, nc) = (r + dr, c + dc);
                    if (dr, dc) == (0, 0) || nr < 0 || nc < 0 || nr >= rows || nc >= cols {
                        continue;
                    }
                    edges.push(TrustEdge::new(id(r, c), id(nr, nc), TrustRate::uncertain()));
                }
            }
        }
    }
    AsGraph::new(nodes, edges)
}

/// Removes uniformly random neighbour pairs (both directions) until the
/// average undirected degree is at most `target`.
pub fn thin_links<T: Scalar, R: Rng + ?Sized>(mut g: AsGraph<T>, target: f64, rng: &mut R) -> Result<AsGraph<T>> {
    check_degree_target(target, g.average_degree())?;
    let n = g.node_count();
    let mut pairs = g.undirected_pairs();
    let keep = (target * n as f64 / 2.0 + 1e-9).floor() as usize;
    if keep >= pairs.len() {
        return Ok(g);
    }
    // a uniform shuffle then a prefix is the same law as removing pairs one at a time
    pairs.shuffle(rng);
    let drop = pairs.len() - keep;
    g.remove_pairs(&pairs[..drop]);
    Ok(g)
}

/// Marks exactly `round(fraction · n)` nodes, chosen uniformly without
/// replacement, as distrusted and the rest as trusted.
pub fn assign_roles<T: Scalar, R: Rng + ?Sized>(mut g: AsGraph<T>, fraction: f64, rng: &mut R) -> Result<AsGraph<T>> {
    if !(0.0..1.0).contains(&fraction) {
        return Err(Error::OutOfRange {
            what: "distrusted fraction",
            value: fraction,
            range: "[0, 1)",
        });
    }
    let n = g.node_count();
    let count = ((fraction * n as f64).round() as usize).min(n);
    for ix in 0..n {
        g.set_role(ix, Role::Trusted);
    }
    for ix in index::sample(rng, n, count) {
        g.set_role(ix, Role::Distrusted);
    }
    Ok(g)
}

/// Draws the direct trust of every edge `A -> B` from
/// `Normal(mu(B), sigma)` clamped to `[0, 1]`, where `mu(B)` follows the
/// subject's role. Edges are visited in `(from, to)` order.
pub fn sample_direct_trust<T: Scalar, R: Rng + ?Sized>(mut g: AsGraph<T>, cfg: &GridConfig, rng: &mut R) -> AsGraph<T> {
    for from in 0..g.node_count() {
        let roles: Vec<Role> = g.out_links(from).iter().map(|l| g.role(l.to)).collect();
        for (link, role) in g.out_links_mut(from).iter_mut().zip(roles) {
            let mu = match role {
                Role::Trusted => cfg.mu_trusted,
                Role::Distrusted => cfg.mu_distrusted,
            };
            let z: f64 = rng.sample(StandardNormal);
            let x = (mu + cfg.sigma * z).clamp(0.0, 1.0);
            link.trust = TrustRate::saturating(T::lit(x));
        }
    }
    g
}
