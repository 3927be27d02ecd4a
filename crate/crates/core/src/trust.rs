//! Trust-rate arithmetic.
//!
//! A trust rate is a number in `[0, 1]`: `0` is complete distrust, `1`
//! complete trust and `0.5` uncertainty. Everything else in the crate is
//! built from the combinations defined here:
//!
//! * universal trust `w1·I + w2·O` from inherent and observed trust,
//! * hybrid trust `w1·I + w2·O + w3·V` which adds voted trust,
//! * the one-parameter form `α·T_d + (1 − α)·V` used by the simulations,
//! * the weighted vote average `Σ V_i·T_i / Σ T_i`,
//! * the five-band classification scale.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A trust value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct TrustRate<T>(T);

impl<T: Scalar> TrustRate<T> {
    /// Clamping constructor: finite inputs are folded into `[0, 1]`.
    pub fn new(x: T) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NonFinite(x.as_f64()));
        }
        Ok(Self(x.max(T::zero()).min(T::one())))
    }

    /// Rejecting constructor for validated inputs such as config files.
    pub fn strict(x: T) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NonFinite(x.as_f64()));
        }
        if x < T::zero() || x > T::one() {
            return Err(Error::OutOfRange {
                what: "trust rate",
                value: x.as_f64(),
                range: "[0, 1]",
            });
        }
        Ok(Self(x))
    }

    /// Folds a value already known to be finite into `[0, 1]`.
    pub(crate) fn saturating(x: T) -> Self {
        debug_assert!(x.is_finite());
        Self(x.max(T::zero()).min(T::one()))
    }

    pub fn value(self) -> T {
        self.0
    }

    pub fn zero() -> Self {
        Self(T::zero())
    }

    pub fn one() -> Self {
        Self(T::one())
    }

    /// `0.5`, the default when nothing is known.
    pub fn uncertain() -> Self {
        Self(T::lit(0.5))
    }
}

impl<T: fmt::Display> fmt::Display for TrustRate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `make_rate`: clamps a finite real into a trust rate.
pub fn make_rate<T: Scalar>(x: T) -> Result<TrustRate<T>> {
    TrustRate::new(x)
}

fn check_weight<T: Scalar>(w: T) -> Result<()> {
    if !w.is_finite() {
        return Err(Error::NonFinite(w.as_f64()));
    }
    if w < T::zero() || w > T::one() {
        return Err(Error::OutOfRange {
            what: "weight",
            value: w.as_f64(),
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// Validates `ws`; when `normalize` is set, a sum within `1e-3` of one is
/// rescaled to exactly one instead of rejected.
fn check_weights<T: Scalar, const N: usize>(mut ws: [T; N], normalize: bool) -> Result<[T; N]> {
    for w in ws {
        if !w.is_finite() {
            return Err(Error::NonFinite(w.as_f64()));
        }
        if w < T::zero() {
            return Err(Error::OutOfRange {
                what: "weight",
                value: w.as_f64(),
                range: "[0, 1]",
            });
        }
    }
    let sum: T = ws.iter().copied().sum();
    if (sum - T::one()).abs() <= T::weight_tolerance() {
        ws.iter().try_for_each(|&w| check_weight(w))?;
        return Ok(ws);
    }
    if normalize && (sum - T::one()).abs() <= T::lit(1e-3) {
        log::warn!("weight vector sums to {sum}; normalizing");
        for w in ws.iter_mut() {
            *w = *w / sum;
        }
        return Ok(ws);
    }
    Err(Error::WeightSum { sum: sum.as_f64() })
}

/// Two weights summing to one, for the universal trust combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrustWeights2<T> {
    pub inherent: T,
    pub observed: T,
}

impl<T: Scalar> TrustWeights2<T> {
    pub fn new(inherent: T, observed: T) -> Result<Self> {
        let [inherent, observed] = check_weights([inherent, observed], false)?;
        Ok(Self { inherent, observed })
    }

    /// Like [`new`](Self::new) but rescales near-miss vectors (off by at
    /// most `1e-3`) with a warning.
    pub fn normalized(inherent: T, observed: T) -> Result<Self> {
        let [inherent, observed] = check_weights([inherent, observed], true)?;
        Ok(Self { inherent, observed })
    }

    pub fn equal() -> Self {
        Self {
            inherent: T::lit(0.5),
            observed: T::lit(0.5),
        }
    }
}

/// Three weights summing to one, for the hybrid trust combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrustWeights3<T> {
    pub inherent: T,
    pub observed: T,
    pub voted: T,
}

impl<T: Scalar> TrustWeights3<T> {
    pub fn new(inherent: T, observed: T, voted: T) -> Result<Self> {
        let [inherent, observed, voted] = check_weights([inherent, observed, voted], false)?;
        Ok(Self {
            inherent,
            observed,
            voted,
        })
    }

    pub fn normalized(inherent: T, observed: T, voted: T) -> Result<Self> {
        let [inherent, observed, voted] = check_weights([inherent, observed, voted], true)?;
        Ok(Self {
            inherent,
            observed,
            voted,
        })
    }

    pub fn equal() -> Self {
        let third = T::one() / T::lit(3.0);
        Self {
            inherent: third,
            observed: third,
            voted: T::one() - third - third,
        }
    }
}

/// Weighted sum of rates, pinned into the hull of its inputs.
fn convex<T: Scalar>(terms: &[(T, TrustRate<T>)]) -> TrustRate<T> {
    let mut lo = T::one();
    let mut hi = T::zero();
    let mut acc = T::zero();
    for &(w, r) in terms {
        acc = acc + w * r.0;
        if w > T::zero() {
            lo = lo.min(r.0);
            hi = hi.max(r.0);
        }
    }
    if lo > hi {
        return TrustRate::saturating(acc);
    }
    TrustRate(acc.max(lo).min(hi))
}

/// Universal trust `w1·I_t + w2·O_t`.
pub fn universal_trust<T: Scalar>(inherent: TrustRate<T>, observed: TrustRate<T>, w: TrustWeights2<T>) -> TrustRate<T> {
    convex(&[(w.inherent, inherent), (w.observed, observed)])
}

/// Hybrid trust `w1·I_t + w2·O_t + w3·V_t`.
pub fn hybrid_trust<T: Scalar>(
    inherent: TrustRate<T>,
    observed: TrustRate<T>,
    voted: TrustRate<T>,
    w: TrustWeights3<T>,
) -> TrustRate<T> {
    convex(&[(w.inherent, inherent), (w.observed, observed), (w.voted, voted)])
}

/// `α·direct + (1 − α)·voted`.
pub fn combine_alpha<T: Scalar>(direct: TrustRate<T>, voted: TrustRate<T>, alpha: T) -> Result<TrustRate<T>> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite(alpha.as_f64()));
    }
    if alpha < T::zero() || alpha > T::one() {
        return Err(Error::OutOfRange {
            what: "alpha",
            value: alpha.as_f64(),
            range: "[0, 1]",
        });
    }
    Ok(convex(&[(alpha, direct), (T::one() - alpha, voted)]))
}

/// One vote and the weight the evaluator gives its voter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedVote<T> {
    pub vote: TrustRate<T>,
    pub weight: T,
}

impl<T: Scalar> WeightedVote<T> {
    pub fn new(vote: TrustRate<T>, weight: T) -> Result<Self> {
        if !weight.is_finite() {
            return Err(Error::NonFinite(weight.as_f64()));
        }
        if weight < T::zero() {
            return Err(Error::OutOfRange {
                what: "vote weight",
                value: weight.as_f64(),
                range: "[0, inf)",
            });
        }
        Ok(Self { vote, weight })
    }
}

/// Weighted mean of the votes, `Σ V_i·T_i / Σ T_i`.
///
/// Fails with [`Error::NoVoters`] if the list is empty or every weight is
/// zero.
pub fn aggregate_votes<T: Scalar>(votes: &[WeightedVote<T>]) -> Result<TrustRate<T>> {
    let total: T = votes.iter().map(|v| v.weight).sum();
    if total <= T::zero() {
        return Err(Error::NoVoters);
    }
    let terms: Vec<(T, TrustRate<T>)> = votes.iter().map(|v| (v.weight / total, v.vote)).collect();
    Ok(convex(&terms))
}

/// One named component of a trust tree branch.
#[derive(Debug, Clone, PartialEq)]
pub struct TrustLeaf<T> {
    pub name: String,
    pub weight: T,
    pub value: TrustRate<T>,
}

impl<T> TrustLeaf<T> {
    pub fn new(name: impl Into<String>, weight: T, value: TrustRate<T>) -> Self {
        Self {
            name: name.into(),
            weight,
            value,
        }
    }
}

/// Direct-trust tree with an inherent and an observed branch.
///
/// Leaves are free-form (political, financial, technical, ..., router
/// utilization, packet dropping). Each branch's leaf weights sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct TrustTree<T> {
    inherent: Vec<TrustLeaf<T>>,
    observed: Vec<TrustLeaf<T>>,
}

fn check_branch<T: Scalar>(branch: &str, leaves: &[TrustLeaf<T>]) -> Result<()> {
    if leaves.is_empty() {
        return Err(Error::InvalidTree(format!("{branch} branch is empty")));
    }
    let mut seen = HashSet::new();
    let mut sum = T::zero();
    for leaf in leaves {
        if !seen.insert(leaf.name.as_str()) {
            return Err(Error::InvalidTree(format!(
                "duplicate leaf {:?} in {branch} branch",
                leaf.name
            )));
        }
        if !leaf.weight.is_finite() || leaf.weight < T::zero() {
            return Err(Error::InvalidTree(format!(
                "leaf {:?} has invalid weight {}",
                leaf.name, leaf.weight
            )));
        }
        sum = sum + leaf.weight;
    }
    if (sum - T::one()).abs() > T::weight_tolerance() {
        return Err(Error::InvalidTree(format!(
            "{branch} leaf weights sum to {sum}, expected 1"
        )));
    }
    Ok(())
}

impl<T: Scalar> TrustTree<T> {
    pub fn new(inherent: Vec<TrustLeaf<T>>, observed: Vec<TrustLeaf<T>>) -> Result<Self> {
        check_branch("inherent", &inherent)?;
        check_branch("observed", &observed)?;
        Ok(Self { inherent, observed })
    }

    pub fn inherent_leaves(&self) -> &[TrustLeaf<T>] {
        &self.inherent
    }

    pub fn observed_leaves(&self) -> &[TrustLeaf<T>] {
        &self.observed
    }

    /// `I_t`, the weighted sum over the inherent branch.
    pub fn inherent_trust(&self) -> TrustRate<T> {
        branch_sum(&self.inherent)
    }

    /// `O_t`, the weighted sum over the observed branch.
    pub fn observed_trust(&self) -> TrustRate<T> {
        branch_sum(&self.observed)
    }

    pub fn evaluate(&self, w: TrustWeights2<T>) -> TrustRate<T> {
        universal_trust(self.inherent_trust(), self.observed_trust(), w)
    }
}

fn branch_sum<T: Scalar>(leaves: &[TrustLeaf<T>]) -> TrustRate<T> {
    let terms: Vec<_> = leaves.iter().map(|l| (l.weight, l.value)).collect();
    convex(&terms)
}

/// Evaluates both branches of `tree` and combines them with `w`.
pub fn evaluate_trust_tree<T: Scalar>(tree: &TrustTree<T>, w: TrustWeights2<T>) -> TrustRate<T> {
    tree.evaluate(w)
}

/// The five-step interpretation scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TrustBand {
    StrongDistrust,
    WeakDistrust,
    Neutral,
    WeakTrust,
    StrongTrust,
}

impl TrustBand {
    pub const ALL: [TrustBand; 5] = [
        TrustBand::StrongDistrust,
        TrustBand::WeakDistrust,
        TrustBand::Neutral,
        TrustBand::WeakTrust,
        TrustBand::StrongTrust,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TrustBand::StrongDistrust => "strong distrust",
            TrustBand::WeakDistrust => "weak distrust",
            TrustBand::Neutral => "neutral",
            TrustBand::WeakTrust => "weak trust",
            TrustBand::StrongTrust => "strong trust",
        }
    }
}

impl fmt::Display for TrustBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Bands are half-open `[lo, hi)` except the top one, which includes 1.
pub fn classify<T: Scalar>(rate: TrustRate<T>) -> TrustBand {
    let v = rate.value();
    if v < T::lit(0.2) {
        TrustBand::StrongDistrust
    } else if v < T::lit(0.4) {
        TrustBand::WeakDistrust
    } else if v < T::lit(0.6) {
        TrustBand::Neutral
    } else if v < T::lit(0.8) {
        TrustBand::WeakTrust
    } else {
        TrustBand::StrongTrust
    }
}
