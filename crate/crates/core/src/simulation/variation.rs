use crate::error::{Error, Result};
use crate::routing::{path_cost_direct, path_cost_recommended};
use crate::scalar::Scalar;
use crate::trust::TrustRate;

/// Trust schedule for the neighbour-trust variation scenario.
///
/// The first-hop trust `t1` falls linearly from `t1_start` to `t1_end`;
/// the aggregate trust `tau` of the path behind the neighbour grows
/// geometrically from `tau_start` to `tau_end`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationConfig {
    pub steps: u32,
    pub t1_start: f64,
    pub t1_end: f64,
    pub tau_start: f64,
    pub tau_end: f64,
}

impl Default for VariationConfig {
    fn default() -> Self {
        Self {
            steps: 10,
            t1_start: 1.0,
            t1_end: 0.1,
            tau_start: 0.05,
            tau_end: 0.33,
        }
    }
}

impl VariationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Config("steps must be at least 1".into()));
        }
        for (what, v) in [
            ("t1_start", self.t1_start),
            ("t1_end", self.t1_end),
            ("tau_start", self.tau_start),
            ("tau_end", self.tau_end),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::OutOfRange {
                    what,
                    value: v,
                    range: "(0, 1]",
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationStep<T> {
    pub t1: TrustRate<T>,
    pub tau: TrustRate<T>,
    /// `1/t1 + 1/tau`.
    pub cost_direct: T,
    /// `(1 + 1/tau) / t1`.
    pub cost_recommended: T,
}

pub type VariationSeries<T> = Vec<VariationStep<T>>;

/// Evaluates both cost models along the schedule. The remainder behind the
/// neighbour is treated as one link of trust `tau`, i.e. downstream cost
/// `1/tau`.
pub fn run_trust_variation<T: Scalar>(cfg: &VariationConfig) -> Result<VariationSeries<T>> {
    cfg.validate()?;
    let last = cfg.steps.saturating_sub(1).max(1) as f64;
    (0..cfg.steps)
        .map(|k| {
            let f = k as f64 / last;
            // endpoint-exact forms of linear and geometric interpolation
            let t1 = cfg.t1_start * (1.0 - f) + cfg.t1_end * f;
            let tau = cfg.tau_start.powf(1.0 - f) * cfg.tau_end.powf(f);
            let t1 = TrustRate::new(T::lit(t1))?;
            let tau = TrustRate::new(T::lit(tau))?;
            let downstream = T::one() / tau.value();
            Ok(VariationStep {
                t1,
                tau,
                cost_direct: path_cost_direct(&[t1, tau])?,
                cost_recommended: path_cost_recommended(t1, downstream)?,
            })
        })
        .collect()
}
