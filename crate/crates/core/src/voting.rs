//! Neighbourhood voting.
//!
//! To assess a neighbour `B`, evaluator `A` asks the other neighbours of
//! `B` (A's second-degree neighbourhood) what they think of `B`. A voter's
//! opinion is weighted by A's direct trust in the voter when the voter is
//! also A's neighbour, and by a small constant otherwise. The weighted vote
//! is blended with A's direct trust as `α·T_d + (1 − α)·V`.
//!
//! Honest voters answer with their derived trust in `B` if they have one,
//! else their direct trust. Distrusted voters answer uniformly at random.
//!
//! Node arguments are dense graph indices (see [`AsGraph::index_of`]).

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::RandomStream;
use crate::scalar::Scalar;
use crate::topology::{AsGraph, Role};
use crate::trust::{aggregate_votes, combine_alpha, TrustRate, WeightedVote};

/// What an evaluator currently holds about one neighbour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTrust<T> {
    pub direct: TrustRate<T>,
    pub derived: Option<TrustRate<T>>,
}

impl<T: Scalar> PairTrust<T> {
    /// The value given out when asked for a vote.
    pub fn current(&self) -> TrustRate<T> {
        self.derived.unwrap_or(self.direct)
    }
}

/// Per directed `(evaluator, subject)` pair trust, keyed by node index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrustState<T> {
    entries: BTreeMap<(usize, usize), PairTrust<T>>,
}

impl<T: Scalar> TrustState<T> {
    pub fn get(&self, evaluator: usize, subject: usize) -> Option<&PairTrust<T>> {
        self.entries.get(&(evaluator, subject))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &PairTrust<T>)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// Overwrites the derived value of an existing pair; returns `false`
    /// if the pair is not in the state.
    pub fn set_derived(&mut self, evaluator: usize, subject: usize, derived: TrustRate<T>) -> bool {
        match self.entries.get_mut(&(evaluator, subject)) {
            Some(e) => {
                e.derived = Some(derived);
                true
            }
            None => false,
        }
    }

    fn entry(&self, g: &AsGraph<T>, evaluator: usize, subject: usize) -> Result<&PairTrust<T>> {
        self.get(evaluator, subject)
            .ok_or_else(|| Error::NotNeighbour(g.id(subject).clone(), g.id(evaluator).clone()))
    }
}

/// One entry per directed edge: direct trust from the edge, no derived value.
pub fn init_state<T: Scalar>(g: &AsGraph<T>) -> TrustState<T> {
    let entries = (0..g.node_count())
        .flat_map(|from| {
            g.out_links(from).iter().map(move |l| {
                (
                    (from, l.to),
                    PairTrust {
                        direct: l.trust,
                        derived: None,
                    },
                )
            })
        })
        .collect();
    TrustState { entries }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoteParams {
    /// Weight of direct trust against voted trust.
    pub alpha: f64,
    /// Weight for voters that are not the evaluator's neighbours.
    pub remote_weight: f64,
    pub rounds: u32,
}

impl Default for VoteParams {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            remote_weight: 0.3,
            rounds: 1,
        }
    }
}

impl VoteParams {
    pub fn validate(&self) -> Result<()> {
        for (what, v) in [("alpha", self.alpha), ("remote_weight", self.remote_weight)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange {
                    what,
                    value: v,
                    range: "[0, 1]",
                });
            }
        }
        if self.rounds == 0 {
            return Err(Error::Config("rounds must be at least 1".into()));
        }
        Ok(())
    }
}

/// Votes about `subject` for `evaluator`, from every node with an edge into
/// `subject` other than `evaluator`, in index order.
///
/// `rng` is drawn from once per distrusted voter and never otherwise.
pub fn collect_votes<T: Scalar, R: Rng + ?Sized>(
    g: &AsGraph<T>,
    evaluator: usize,
    subject: usize,
    state: &TrustState<T>,
    remote_weight: f64,
    rng: &mut R,
) -> Result<Vec<WeightedVote<T>>> {
    if !g.has_edge(evaluator, subject) {
        return Err(Error::NotNeighbour(g.id(subject).clone(), g.id(evaluator).clone()));
    }
    let remote = T::lit(remote_weight);
    let mut votes = Vec::with_capacity(g.in_neighbours(subject).len());
    for &voter in g.in_neighbours(subject) {
        if voter == evaluator {
            continue;
        }
        let vote = match g.role(voter) {
            Role::Trusted => state.entry(g, voter, subject)?.current(),
            Role::Distrusted => TrustRate::saturating(T::lit(rng.random::<f64>())),
        };
        let weight = match state.get(evaluator, voter) {
            Some(p) => p.direct.value(),
            None => remote,
        };
        votes.push(WeightedVote::new(vote, weight)?);
    }
    Ok(votes)
}

/// One synchronous voting round.
///
/// Every trusted evaluator re-derives its trust in each neighbour from the
/// *input* state; the results are applied together. If no voter carries
/// positive weight the derived value falls back to direct trust.
/// Distrusted evaluators are left untouched. Randomness for the pair
/// `(e, s)` comes from `stream.derive("vote", [e, s, round])`.
pub fn run_vote_round<T: Scalar>(
    g: &AsGraph<T>,
    params: &VoteParams,
    state: &TrustState<T>,
    stream: &RandomStream,
    round: u32,
) -> Result<TrustState<T>> {
    params.validate()?;
    let alpha = T::lit(params.alpha);
    let mut next = state.clone();
    for evaluator in 0..g.node_count() {
        if g.role(evaluator) == Role::Distrusted {
            continue;
        }
        for link in g.out_links(evaluator) {
            let subject = link.to;
            let direct = state.entry(g, evaluator, subject)?.direct;
            let mut rng = stream
                .derive("vote", &[evaluator as u64, subject as u64, round as u64])
                .rng();
            let votes = collect_votes(g, evaluator, subject, state, params.remote_weight, &mut rng)?;
            let derived = match aggregate_votes(&votes) {
                Ok(voted) => combine_alpha(direct, voted, alpha)?,
                Err(Error::NoVoters) => direct,
                Err(e) => return Err(e),
            };
            next.set_derived(evaluator, subject, derived);
        }
    }
    Ok(next)
}

/// Runs `params.rounds` rounds starting from `state`.
pub fn run_votes<T: Scalar>(
    g: &AsGraph<T>,
    params: &VoteParams,
    state: TrustState<T>,
    stream: &RandomStream,
) -> Result<TrustState<T>> {
    (0..params.rounds).try_fold(state, |s, round| run_vote_round(g, params, &s, stream, round))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{build_fig1_example, AsId, AsNode, TrustEdge};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn r(x: f64) -> TrustRate<f64> {
        TrustRate::strict(x).unwrap()
    }

    fn ix(g: &AsGraph<f64>, id: &str) -> usize {
        g.index_of(&AsId::parse(id)).unwrap()
    }

    /// Evaluator X with neighbour S; S's other neighbours are AS2..AS4.
    fn star(roles: [Role; 3]) -> AsGraph<f64> {
        let mut nodes = vec![AsNode::new("X", Role::Trusted), AsNode::new("S", Role::Trusted)];
        let mut edges = vec![TrustEdge::new("X", "S", r(0.6)), TrustEdge::new("S", "X", r(0.6))];
        for (i, role) in roles.into_iter().enumerate() {
            let v = format!("AS{}", i + 2);
            nodes.push(AsNode::new(v.as_str(), role));
            edges.push(TrustEdge::new(v.as_str(), "S", r(0.8)));
            edges.push(TrustEdge::new("S", v.as_str(), r(0.8)));
        }
        AsGraph::new(nodes, edges).unwrap()
    }

    #[test]
    fn init_state_mirrors_edges() {
        let g = build_fig1_example::<f64>();
        let s = init_state(&g);
        assert_eq!(s.len(), 9);
        let p = s.get(ix(&g, "A"), ix(&g, "B")).unwrap();
        assert_eq!(p.direct.value(), 0.9);
        assert!(p.derived.is_none());
        assert!(init_state(&AsGraph::<f64>::new(vec![], vec![]).unwrap()).is_empty());
    }

    #[test]
    fn neighbourhood_query_collects_three_votes() {
        let g = star([Role::Trusted; 3]);
        let state = init_state(&g);
        let mut rng = RandomStream::from_seed(0).rng();
        let votes = collect_votes(&g, ix(&g, "X"), ix(&g, "S"), &state, 0.3, &mut rng).unwrap();
        assert_eq!(votes.len(), 3);
        for v in &votes {
            assert_eq!(v.vote.value(), 0.8);
            // voters are not X's neighbours
            assert_eq!(v.weight, 0.3);
        }
    }

    #[test]
    fn lone_neighbour_has_no_voters() {
        let nodes = vec![AsNode::new("X", Role::Trusted), AsNode::new("S", Role::Trusted)];
        let edges = vec![TrustEdge::new("X", "S", r(0.6)), TrustEdge::new("S", "X", r(0.4))];
        let g = AsGraph::new(nodes, edges).unwrap();
        let state = init_state(&g);
        let (x, s) = (ix(&g, "X"), ix(&g, "S"));
        let votes = collect_votes(&g, x, s, &state, 0.3, &mut RandomStream::from_seed(0).rng()).unwrap();
        assert!(votes.is_empty());
        let next = run_vote_round(&g, &VoteParams::default(), &state, &RandomStream::from_seed(1), 0).unwrap();
        assert_eq!(next.get(x, s).unwrap().derived, Some(r(0.6)));
        assert_eq!(next.get(s, x).unwrap().derived, Some(r(0.4)));
    }

    #[test]
    fn not_a_neighbour() {
        let g = build_fig1_example::<f64>();
        let state = init_state(&g);
        let err = collect_votes(
            &g,
            ix(&g, "A"),
            ix(&g, "H"),
            &state,
            0.3,
            &mut RandomStream::from_seed(0).rng(),
        );
        assert!(matches!(err, Err(Error::NotNeighbour(_, _))));
    }

    #[test]
    fn distrusted_votes_are_seeded_uniforms() {
        let g = star([Role::Distrusted, Role::Trusted, Role::Distrusted]);
        let state = init_state(&g);
        let (x, s) = (ix(&g, "X"), ix(&g, "S"));
        let draw = |seed: u64| {
            let mut rng = RandomStream::from_seed(seed).rng();
            collect_votes(&g, x, s, &state, 0.3, &mut rng).unwrap()
        };
        assert_eq!(draw(5), draw(5));
        assert_eq!(draw(5)[1].vote.value(), 0.8);

        let n = 4000;
        let values: Vec<f64> = (0..n).map(|seed| draw(seed)[0].vote.value()).collect();
        let mean = values.iter().sum::<f64>() / n as f64;
        let below_quarter = values.iter().filter(|&&v| v < 0.25).count() as f64 / n as f64;
        assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
        assert!((mean - 0.5).abs() < 0.02, "{mean}");
        assert!((below_quarter - 0.25).abs() < 0.03, "{below_quarter}");
    }

    /// X -> S, with voters P and Q that are also X's neighbours.
    fn two_voter_graph() -> AsGraph<f64> {
        let nodes = ["X", "S", "P", "Q"].map(|id| AsNode::new(id, Role::Trusted)).to_vec();
        let edges = vec![
            TrustEdge::new("X", "S", r(0.6)),
            TrustEdge::new("X", "P", r(0.9)),
            TrustEdge::new("X", "Q", r(0.3)),
            TrustEdge::new("P", "S", r(0.8)),
            TrustEdge::new("Q", "S", r(0.4)),
        ];
        AsGraph::new(nodes, edges).unwrap()
    }

    #[test]
    fn two_voter_round() {
        let g = two_voter_graph();
        let params = VoteParams {
            alpha: 0.5,
            ..VoteParams::default()
        };
        let next = run_vote_round(&g, &params, &init_state(&g), &RandomStream::from_seed(0), 0).unwrap();
        // V = (0.8·0.9 + 0.4·0.3) / 1.2 = 0.7; 0.5·0.6 + 0.5·0.7
        let d = next.get(ix(&g, "X"), ix(&g, "S")).unwrap().derived.unwrap();
        assert_abs_diff_eq!(d.value(), 0.65, epsilon = 1e-12);
        // P hears X (0.6) and Q (0.4), both remote at 0.3: V = 0.5, derived 0.5·0.8 + 0.5·0.5
        let p = next.get(ix(&g, "P"), ix(&g, "S")).unwrap().derived.unwrap();
        assert_abs_diff_eq!(p.value(), 0.65, epsilon = 1e-12);
    }

    #[test]
    fn alpha_one_keeps_direct() {
        let g = star([Role::Distrusted, Role::Trusted, Role::Trusted]);
        let params = VoteParams {
            alpha: 1.0,
            ..VoteParams::default()
        };
        let next = run_vote_round(&g, &params, &init_state(&g), &RandomStream::from_seed(3), 0).unwrap();
        for ((e, _), p) in next.iter() {
            if g.role(e) == Role::Trusted {
                assert_eq!(p.derived, Some(p.direct));
            } else {
                assert_eq!(p.derived, None);
            }
        }
    }

    #[test]
    fn constant_honest_trust_is_fixed_point() {
        let mut g = crate::topology::generate_grid::<f64>(&crate::topology::GridConfig {
            rows: 6,
            cols: 6,
            ..Default::default()
        })
        .unwrap();
        for from in 0..g.node_count() {
            for l in g.out_links_mut(from) {
                l.trust = r(0.72);
            }
        }
        for alpha in [0.0, 0.3, 1.0] {
            let params = VoteParams {
                alpha,
                rounds: 2,
                ..VoteParams::default()
            };
            let out = run_votes(&g, &params, init_state(&g), &RandomStream::from_seed(1)).unwrap();
            assert!(out.iter().all(|(_, p)| p.derived == Some(r(0.72))));
        }
    }

    #[test]
    fn distrusted_evaluators_do_not_update() {
        let g = star([Role::Trusted; 3]);
        let mut g2 = g.clone();
        g2.set_role(ix(&g, "X"), Role::Distrusted);
        let next = run_vote_round(
            &g2,
            &VoteParams::default(),
            &init_state(&g2),
            &RandomStream::from_seed(0),
            0,
        )
        .unwrap();
        assert!(next.get(ix(&g, "X"), ix(&g, "S")).unwrap().derived.is_none());
    }

    #[test]
    fn round_is_synchronous() {
        // a later evaluator must see round-0 direct values, not earlier updates
        let g = star([Role::Trusted; 3]);
        let state = init_state(&g);
        let params = VoteParams {
            alpha: 0.0,
            ..VoteParams::default()
        };
        let next = run_vote_round(&g, &params, &state, &RandomStream::from_seed(0), 0).unwrap();
        let (x, s) = (ix(&g, "X"), ix(&g, "S"));
        let votes = collect_votes(&g, x, s, &state, 0.3, &mut RandomStream::from_seed(0).rng()).unwrap();
        let expected = aggregate_votes(&votes).unwrap();
        assert_eq!(next.get(x, s).unwrap().derived, Some(expected));
    }

    #[test]
    fn rounds_are_deterministic() {
        let cfg = crate::topology::GridConfig::default();
        let mut rng = RandomStream::from_seed(8).rng();
        let g = crate::topology::generate_grid::<f64>(&cfg).unwrap();
        let g = crate::topology::assign_roles(g, 0.2, &mut rng).unwrap();
        let g = crate::topology::sample_direct_trust(g, &cfg, &mut rng);
        let params = VoteParams {
            rounds: 2,
            ..VoteParams::default()
        };
        let stream = RandomStream::from_seed(99);
        let a = run_votes(&g, &params, init_state(&g), &stream).unwrap();
        let b = run_votes(&g, &params, init_state(&g), &stream).unwrap();
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|(_, p)| p.derived.is_none_or(|d| (0.0..=1.0).contains(&d.value()))));
    }

    proptest! {
        #[test]
        fn shilling_is_damped(
            raw in prop::collection::vec((0.0..=1.0f64, 0.01..=1.0f64), 2..10),
            who in any::<prop::sample::Index>(),
            new_vote in 0.0..=1.0f64,
        ) {
            let votes: Vec<_> = raw.iter().map(|&(v, w)| WeightedVote::new(r(v), w).unwrap()).collect();
            let i = who.index(votes.len());
            let mut shilled = votes.clone();
            shilled[i].vote = r(new_vote);
            let delta = (new_vote - raw[i].0).abs();
            let total: f64 = raw.iter().map(|p| p.1).sum();
            let moved = (aggregate_votes(&shilled).unwrap().value() - aggregate_votes(&votes).unwrap().value()).abs();
            prop_assert!(moved <= delta * raw[i].1 / total + 1e-12);
        }

        #[test]
        fn honest_round_uses_no_randomness(seed_a in any::<u64>(), seed_b in any::<u64>(), alpha in 0.0..=1.0f64) {
            let cfg = crate::topology::GridConfig { rows: 5, cols: 5, ..Default::default() };
            let mut rng = RandomStream::from_seed(3).rng();
            let g = crate::topology::generate_grid::<f64>(&cfg).unwrap();
            let g = crate::topology::sample_direct_trust(g, &cfg, &mut rng);
            let params = VoteParams { alpha, ..VoteParams::default() };
            let a = run_vote_round(&g, &params, &init_state(&g), &RandomStream::from_seed(seed_a), 0).unwrap();
            let b = run_vote_round(&g, &params, &init_state(&g), &RandomStream::from_seed(seed_b), 0).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
