use rayon::prelude::*;

use super::metrics::{detection_failures, DetectionTally};
use crate::error::{Error, Result};
use crate::rng::RandomStream;
use crate::scalar::Scalar;
use crate::topology::{assign_roles, generate_grid, sample_direct_trust, thin_links, AsGraph, GridConfig};
use crate::voting::{init_state, run_votes, VoteParams};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// World parameters; `target_avg_degree` is replaced by each entry of
    /// `degree_targets`.
    pub grid: GridConfig,
    /// Voting parameters; `alpha` is replaced by each entry of `alphas`.
    pub vote: VoteParams,
    pub alphas: Vec<f64>,
    pub degree_targets: Vec<f64>,
    pub replicates: u32,
    pub master_seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            grid: GridConfig::default(),
            vote: VoteParams::default(),
            alphas: (0..=10).map(|i| i as f64 / 10.0).collect(),
            degree_targets: vec![6.5, 2.2],
            replicates: 200,
            master_seed: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.degree_targets.is_empty() {
            return Err(Error::Config("alphas and degree_targets must be nonempty".into()));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        for &alpha in &self.alphas {
            VoteParams { alpha, ..self.vote }.validate()?;
        }
        for &target_avg_degree in &self.degree_targets {
            GridConfig {
                target_avg_degree,
                ..self.grid.clone()
            }
            .validate()?;
        }
        Ok(())
    }

    /// Root of the seed tree for one `(degree target, replicate)` world.
    ///
    /// The stream does not depend on alpha, so every alpha is evaluated on
    /// the same worlds and the same adversarial draws.
    pub fn replicate_stream(&self, degree_target: f64, replicate: u32) -> RandomStream {
        RandomStream::from_seed(self.master_seed).derive("replicate", &[degree_target.to_bits(), replicate as u64])
    }
}

/// Result of one world under every alpha.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateOutcome {
    pub realized_degree: f64,
    /// One tally per entry of `SweepConfig::alphas`.
    pub tallies: Vec<DetectionTally>,
}

/// Builds the thinned, role-assigned, trust-sampled world for one replicate.
pub fn build_world<T: Scalar>(cfg: &SweepConfig, degree_target: f64, stream: &RandomStream) -> Result<AsGraph<T>> {
    let g = generate_grid::<T>(&cfg.grid)?;
    let g = thin_links(g, degree_target, &mut stream.derive("thin", &[]).rng())?;
    let g = assign_roles(g, cfg.grid.distrusted_fraction, &mut stream.derive("roles", &[]).rng())?;
    Ok(sample_direct_trust(
        g,
        &cfg.grid,
        &mut stream.derive("trust", &[]).rng(),
    ))
}

/// Runs one replicate world under every configured alpha.
pub fn run_replicate<T: Scalar>(cfg: &SweepConfig, degree_target: f64, replicate: u32) -> Result<ReplicateOutcome> {
    let stream = cfg.replicate_stream(degree_target, replicate);
    let g = build_world::<T>(cfg, degree_target, &stream)?;
    let votes = stream.derive("votes", &[]);
    let initial = init_state(&g);
    let tallies = cfg
        .alphas
        .iter()
        .map(|&alpha| {
            let params = VoteParams { alpha, ..cfg.vote };
            let state = run_votes(&g, &params, initial.clone(), &votes)?;
            detection_failures(&g, &state)
        })
        .collect::<Result<_>>()?;
    Ok(ReplicateOutcome {
        realized_degree: g.average_degree(),
        tallies,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub alpha: f64,
    pub degree_target: f64,
    pub mean_failure_rate: f64,
    /// Sample standard deviation over replicates (0 for one replicate).
    pub std_failure_rate: f64,
    pub mean_realized_degree: f64,
    pub replicates: u32,
    /// Per-replicate tallies in replicate order.
    pub tallies: Vec<DetectionTally>,
}

/// Cells ordered by degree target (config order), then alpha (config order).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    pub fn cell(&self, alpha: f64, degree_target: f64) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.alpha == alpha && c.degree_target == degree_target)
    }

    /// Cells for one degree target, in alpha order.
    pub fn row(&self, degree_target: f64) -> Vec<&SweepCell> {
        self.cells.iter().filter(|c| c.degree_target == degree_target).collect()
    }
}

/// The alpha with the lowest mean failure among `cells` (first on ties).
pub fn argmin_alpha(cells: &[&SweepCell]) -> Option<f64> {
    cells
        .iter()
        .min_by(|a, b| a.mean_failure_rate.total_cmp(&b.mean_failure_rate))
        .map(|c| c.alpha)
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs the full `degree_targets × replicates` grid of worlds, each under
/// every alpha, on `workers` threads (all available cores if `None`).
///
/// Replicate results are gathered in job order before aggregation, so the
/// output is identical for any worker count.
pub fn run_alpha_sweep<T: Scalar>(cfg: &SweepConfig, workers: Option<usize>) -> Result<SweepResult> {
    cfg.validate()?;
    let jobs: Vec<(f64, u32)> = cfg
        .degree_targets
        .iter()
        .flat_map(|&d| (0..cfg.replicates).map(move |r| (d, r)))
        .collect();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        pool = pool.num_threads(n.max(1));
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<ReplicateOutcome> = pool.install(|| {
        jobs.par_iter()
            .map(|&(d, r)| run_replicate::<T>(cfg, d, r))
            .collect::<Result<_>>()
    })?;

    let reps = cfg.replicates as usize;
    let mut cells = Vec::with_capacity(cfg.degree_targets.len() * cfg.alphas.len());
    for (di, &degree_target) in cfg.degree_targets.iter().enumerate() {
        let block = &outcomes[di * reps..(di + 1) * reps];
        let degrees: Vec<f64> = block.iter().map(|o| o.realized_degree).collect();
        let (mean_realized_degree, _) = mean_std(&degrees);
        for (ai, &alpha) in cfg.alphas.iter().enumerate() {
            let tallies: Vec<DetectionTally> = block.iter().map(|o| o.tallies[ai]).collect();
            let rates: Vec<f64> = tallies.iter().map(DetectionTally::rate).collect();
            let (mean, std) = mean_std(&rates);
            cells.push(SweepCell {
                alpha,
                degree_target,
                mean_failure_rate: mean,
                std_failure_rate: std,
                mean_realized_degree,
                replicates: cfg.replicates,
                tallies,
            });
        }
    }
    Ok(SweepResult { cells })
}
