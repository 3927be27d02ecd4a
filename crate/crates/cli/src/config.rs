//! Scenario file: TOML with optional `[grid]`, `[vote]`, `[sweep]`,
//! `[variation]` and `[trust]` sections. Every key is optional and unknown
//! keys are rejected.
//!
//! ```toml
//! [grid]
//! distrusted_fraction = 0.2
//!
//! [sweep]
//! alphas = [0.0, 0.5, 1.0]
//! replicates = 50
//!
//! [trust]
//! inherent_weight = 0.6
//! observed_weight = 0.4
//! inherent = [{ name = "contract", weight = 1.0, value = 0.8 }]
//! observed = [
//!     { name = "utilization", weight = 0.5, value = 0.7 },
//!     { name = "dropping", weight = 0.5, value = 0.9 },
//! ]
//! ```

use std::path::Path;

use hybrid_trust::{
    GridConfig, SweepConfig, TrustLeaf, TrustRate, TrustTree64, TrustWeights2F64, VariationConfig, VoteParams,
};
use serde::{de, Deserialize, Deserializer, Serialize};

use crate::error::{CliError, CliResult};

/// How far a weight vector may be from summing to 1 and still be rescaled.
const WEIGHT_SLACK: f64 = 1e-3;

fn unit<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    let x = f64::deserialize(d)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(de::Error::custom(format!("{x} is outside [0, 1]")));
    }
    Ok(x)
}

fn unit_list<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
    let xs = Vec::<f64>::deserialize(d)?;
    if let Some(x) = xs.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(de::Error::custom(format!("{x} is outside [0, 1]")));
    }
    Ok(xs)
}

fn positive_unit<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    let x = f64::deserialize(d)?;
    if !(x > 0.0 && x <= 1.0) {
        return Err(de::Error::custom(format!("{x} is outside (0, 1]")));
    }
    Ok(x)
}

fn non_negative<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    let x = f64::deserialize(d)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(de::Error::custom(format!("{x} must be a nonnegative number")));
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub rows: u32,
    pub cols: u32,
    #[serde(deserialize_with = "unit")]
    pub distrusted_fraction: f64,
    pub target_avg_degree: f64,
    #[serde(deserialize_with = "unit")]
    pub mu_trusted: f64,
    #[serde(deserialize_with = "unit")]
    pub mu_distrusted: f64,
    #[serde(deserialize_with = "non_negative")]
    pub sigma: f64,
    pub seed: u64,
}

impl Default for GridSection {
    fn default() -> Self {
        let g = GridConfig::default();
        Self {
            rows: g.rows,
            cols: g.cols,
            distrusted_fraction: g.distrusted_fraction,
            target_avg_degree: g.target_avg_degree,
            mu_trusted: g.mu_trusted,
            mu_distrusted: g.mu_distrusted,
            sigma: g.sigma,
            seed: g.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VoteSection {
    #[serde(deserialize_with = "unit")]
    pub alpha: f64,
    #[serde(deserialize_with = "unit")]
    pub remote_weight: f64,
    pub rounds: u32,
}

impl Default for VoteSection {
    fn default() -> Self {
        let v = VoteParams::default();
        Self {
            alpha: v.alpha,
            remote_weight: v.remote_weight,
            rounds: v.rounds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    #[serde(deserialize_with = "unit_list")]
    pub alphas: Vec<f64>,
    pub degree_targets: Vec<f64>,
    pub replicates: u32,
    pub master_seed: u64,
}

impl Default for SweepSection {
    fn default() -> Self {
        let s = SweepConfig::default();
        Self {
            alphas: s.alphas,
            degree_targets: s.degree_targets,
            replicates: s.replicates,
            master_seed: s.master_seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VariationSection {
    pub steps: u32,
    #[serde(deserialize_with = "positive_unit")]
    pub t1_start: f64,
    #[serde(deserialize_with = "positive_unit")]
    pub t1_end: f64,
    #[serde(deserialize_with = "positive_unit")]
    pub tau_start: f64,
    #[serde(deserialize_with = "positive_unit")]
    pub tau_end: f64,
}

impl Default for VariationSection {
    fn default() -> Self {
        let v = VariationConfig::default();
        Self {
            steps: v.steps,
            t1_start: v.t1_start,
            t1_end: v.t1_end,
            tau_start: v.tau_start,
            tau_end: v.tau_end,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeafSection {
    pub name: String,
    #[serde(deserialize_with = "non_negative")]
    pub weight: f64,
    #[serde(deserialize_with = "unit")]
    pub value: f64,
}

/// Inherent/observed weights and the leaves of both trust-tree branches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrustSection {
    #[serde(deserialize_with = "non_negative")]
    pub inherent_weight: f64,
    #[serde(deserialize_with = "non_negative")]
    pub observed_weight: f64,
    pub inherent: Vec<LeafSection>,
    pub observed: Vec<LeafSection>,
}

impl Default for TrustSection {
    fn default() -> Self {
        Self {
            inherent_weight: 0.5,
            observed_weight: 0.5,
            inherent: Vec::new(),
            observed: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub grid: GridSection,
    pub vote: VoteSection,
    pub sweep: SweepSection,
    pub variation: VariationSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trust: Option<TrustSection>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn config_err(e: hybrid_trust::Error) -> CliError {
    CliError::Config(e.to_string())
}

/// Rescales `weights` to sum to 1 if they are already within
/// [`WEIGHT_SLACK`] of it; anything further off is rejected.
fn normalize_weights(what: &str, weights: &mut [f64]) -> CliResult<()> {
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() <= 1e-9 {
        return Ok(());
    }
    if (sum - 1.0).abs() > WEIGHT_SLACK {
        return Err(CliError::Config(format!("{what} weights sum to {sum}, expected 1")));
    }
    log::warn!("{what} weights sum to {sum}; rescaling to 1");
    for w in weights.iter_mut() {
        *w /= sum;
    }
    Ok(())
}

impl ScenarioConfig {
    /// Parses a scenario; errors name the offending line.
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| {
            let msg = e.message().trim_end().to_string();
            match e.span() {
                Some(span) => CliError::Config(format!("line {}: {msg}", line_of(text, span.start))),
                None => CliError::Config(msg),
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario config is always serializable")
    }

    /// Checks the cross-field constraints the per-key parsers cannot see.
    pub fn validate(&self) -> CliResult<()> {
        self.grid_config().validate().map_err(config_err)?;
        self.vote_params().validate().map_err(config_err)?;
        self.sweep_config().validate().map_err(config_err)?;
        self.variation_config().validate().map_err(config_err)?;
        if self.trust.is_some() {
            self.trust_tree()?;
        }
        Ok(())
    }

    pub fn grid_config(&self) -> GridConfig {
        let g = &self.grid;
        GridConfig {
            rows: g.rows,
            cols: g.cols,
            distrusted_fraction: g.distrusted_fraction,
            target_avg_degree: g.target_avg_degree,
            mu_trusted: g.mu_trusted,
            mu_distrusted: g.mu_distrusted,
            sigma: g.sigma,
            seed: g.seed,
        }
    }

    pub fn vote_params(&self) -> VoteParams {
        VoteParams {
            alpha: self.vote.alpha,
            remote_weight: self.vote.remote_weight,
            rounds: self.vote.rounds,
        }
    }

    pub fn sweep_config(&self) -> SweepConfig {
        SweepConfig {
            grid: self.grid_config(),
            vote: self.vote_params(),
            alphas: self.sweep.alphas.clone(),
            degree_targets: self.sweep.degree_targets.clone(),
            replicates: self.sweep.replicates,
            master_seed: self.sweep.master_seed,
        }
    }

    pub fn variation_config(&self) -> VariationConfig {
        let v = &self.variation;
        VariationConfig {
            steps: v.steps,
            t1_start: v.t1_start,
            t1_end: v.t1_end,
            tau_start: v.tau_start,
            tau_end: v.tau_end,
        }
    }

    /// The `[trust]` section as a tree and branch weights. Weight vectors
    /// that miss 1 by at most 0.001 are rescaled with a warning.
    pub fn trust_tree(&self) -> CliResult<(TrustTree64, TrustWeights2F64)> {
        let t = self
            .trust
            .as_ref()
            .ok_or_else(|| CliError::Config("scenario has no [trust] section".into()))?;
        let weights = TrustWeights2F64::normalized(t.inherent_weight, t.observed_weight).map_err(config_err)?;

        let leaves = |what: &str, src: &[LeafSection]| -> CliResult<Vec<TrustLeaf<f64>>> {
            let mut ws: Vec<f64> = src.iter().map(|l| l.weight).collect();
            if !ws.is_empty() {
                normalize_weights(what, &mut ws)?;
            }
            src.iter()
                .zip(ws)
                .map(|(l, w)| {
                    let value = TrustRate::strict(l.value).map_err(config_err)?;
                    Ok(TrustLeaf::new(l.name.clone(), w, value))
                })
                .collect()
        };
        let tree = TrustTree64::new(
            leaves("inherent leaf", &t.inherent)?,
            leaves("observed leaf", &t.observed)?,
        )
        .map_err(config_err)?;
        Ok((tree, weights))
    }
}
