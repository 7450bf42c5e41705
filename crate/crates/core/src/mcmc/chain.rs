use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::consensus::majority_consensus;
use super::moves::{propose_nni, propose_params, propose_scale_branch};
use super::prior::log_prior;
use super::McmcError;
use crate::math::exp;
use crate::phylo::{emit_newick, CharacterMatrix, PatternData, PhyloTree, SubstParams};
use crate::sim::random_tree_with_labels;

/// Relative proposal frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoveWeights {
    pub nni: f64,
    pub branch: f64,
    pub params: f64,
}

impl Default for MoveWeights {
    fn default() -> Self {
        Self {
            nni: 0.4,
            branch: 0.4,
            params: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    /// Initial temperature, at least 1.
    pub t0: f64,
    /// Geometric cooling factor in `(0, 1)`.
    pub cooling: f64,
    pub max_iters: u64,
    /// Stop once the best log-posterior has not improved for this many
    /// iterations at temperature 1. `None` runs to `max_iters`.
    pub stop_window: Option<u64>,
    pub seed: u64,
    /// Rate of the exponential branch-length prior.
    pub branch_rate: f64,
    /// Support of the uniform prior on `pi1`.
    pub pi1_bounds: (f64, f64),
    pub moves: MoveWeights,
    /// Multiplier tuning for branch scaling.
    pub scale_tuning: f64,
    pub pi1_step: f64,
    pub log_mu_step: f64,
    /// Starting length of every branch.
    pub initial_branch_length: f64,
    /// Trace and consensus thinning.
    pub sample_every: u64,
    /// Count topology visits at temperature 1 (costs one key per iteration).
    pub track_topologies: bool,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            t0: 50.0,
            cooling: 0.999,
            max_iters: 50_000,
            stop_window: Some(2_000),
            seed: 42,
            branch_rate: 10.0,
            pi1_bounds: (0.0, 1.0),
            moves: MoveWeights::default(),
            scale_tuning: 1.0,
            pi1_step: 0.1,
            log_mu_step: 0.3,
            initial_branch_length: 0.1,
            sample_every: 10,
            track_topologies: false,
        }
    }
}

impl ChainConfig {
    pub fn validate(&self) -> Result<(), McmcError> {
        let w = self.moves;
        let checks: [(bool, &'static str); 9] = [
            (self.t0 >= 1.0 && self.t0.is_finite(), "t0 must be >= 1"),
            (self.cooling > 0.0 && self.cooling < 1.0, "cooling must be in (0, 1)"),
            (self.max_iters > 0, "max_iters must be positive"),
            (self.stop_window != Some(0), "stop window must be positive"),
            (
                self.branch_rate > 0.0 && self.branch_rate.is_finite(),
                "branch rate must be positive",
            ),
            (
                0.0 <= self.pi1_bounds.0 && self.pi1_bounds.0 < self.pi1_bounds.1 && self.pi1_bounds.1 <= 1.0,
                "pi1 bounds must satisfy 0 <= lo < hi <= 1",
            ),
            (
                w.nni >= 0.0 && w.branch >= 0.0 && w.params >= 0.0 && w.nni + w.branch + w.params > 0.0,
                "move weights must be non-negative with a positive sum",
            ),
            (
                self.scale_tuning > 0.0 && self.pi1_step > 0.0 && self.log_mu_step > 0.0,
                "step sizes must be positive",
            ),
            (
                self.initial_branch_length > 0.0 && self.sample_every > 0,
                "initial branch length and thinning must be positive",
            ),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(McmcError::BadConfig(msg));
            }
        }
        Ok(())
    }

    /// Temperature after one cooling step.
    pub fn cool(&self, t: f64) -> f64 {
        (t * self.cooling).max(1.0)
    }
}

/// Current point of the chain with its cached posterior terms.
#[derive(Debug, Clone, PartialEq)]
pub struct McmcState {
    pub tree: PhyloTree,
    pub params: SubstParams,
    pub log_likelihood: f64,
    pub log_prior: f64,
    pub log_posterior: f64,
    pub temperature: f64,
}

impl McmcState {
    pub fn new(
        tree: PhyloTree,
        params: SubstParams,
        data: &PatternData,
        config: &ChainConfig,
        temperature: f64,
    ) -> Result<Self, McmcError> {
        let (log_likelihood, log_prior) = evaluate(&tree, &params, data, config)?;
        Ok(Self {
            tree,
            params,
            log_likelihood,
            log_prior,
            log_posterior: log_likelihood + log_prior,
            temperature,
        })
    }

    /// Recompute the posterior from scratch.
    pub fn recompute(&self, data: &PatternData, config: &ChainConfig) -> Result<f64, McmcError> {
        let (l, p) = evaluate(&self.tree, &self.params, data, config)?;
        Ok(l + p)
    }
}

fn evaluate(
    tree: &PhyloTree,
    params: &SubstParams,
    data: &PatternData,
    config: &ChainConfig,
) -> Result<(f64, f64), McmcError> {
    let prior = log_prior(tree, params, config);
    if prior == f64::NEG_INFINITY {
        return Ok((f64::NEG_INFINITY, prior));
    }
    Ok((data.loglik(tree, params)?, prior))
}

/// One Metropolis-Hastings update at the state's temperature. Proposals
/// with a NaN posterior are rejected.
pub fn mh_step<R: Rng + ?Sized>(
    state: &McmcState,
    data: &PatternData,
    config: &ChainConfig,
    rng: &mut R,
) -> Result<(McmcState, bool), McmcError> {
    let w = config.moves;
    let pick = rng.gen::<f64>() * (w.nni + w.branch + w.params);
    let (tree, params, log_hastings) = if pick < w.nni && state.tree.leaf_count() >= 3 {
        let (t, h) = propose_nni(&state.tree, rng)?;
        (t, state.params, h)
    } else if pick < w.nni + w.branch || (pick < w.nni && w.params == 0.0) {
        let (t, h) = propose_scale_branch(&state.tree, rng, config.scale_tuning);
        (t, state.params, h)
    } else {
        let (p, h) = propose_params(
            &state.params,
            rng,
            config.pi1_step,
            config.log_mu_step,
            config.pi1_bounds,
        );
        (state.tree.clone(), p, h)
    };

    let (log_likelihood, log_prior) = evaluate(&tree, &params, data, config)?;
    let log_posterior = log_likelihood + log_prior;
    let accept = if log_posterior.is_nan() {
        false
    } else {
        metropolis_accept(
            log_posterior - state.log_posterior,
            log_hastings,
            state.temperature,
            rng,
        )
    };
    if accept {
        Ok((
            McmcState {
                tree,
                params,
                log_likelihood,
                log_prior,
                log_posterior,
                temperature: state.temperature,
            },
            true,
        ))
    } else {
        Ok((state.clone(), false))
    }
}

/// Accept with probability `min(1, exp(delta / temperature + log_hastings))`.
/// A proposal with `delta = -inf` is never accepted.
pub fn metropolis_accept<R: Rng + ?Sized>(delta: f64, log_hastings: f64, temperature: f64, rng: &mut R) -> bool {
    if delta == f64::NEG_INFINITY || delta.is_nan() {
        return false;
    }
    let log_ratio = delta / temperature + log_hastings;
    log_ratio >= 0.0 || rng.gen::<f64>() < exp(log_ratio)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub iteration: u64,
    pub log_posterior: f64,
    pub temperature: f64,
    pub pi1: f64,
    pub mu: f64,
    /// Whether the proposal at this iteration was accepted.
    pub accepted: bool,
    pub newick: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainResult {
    pub trace: Trace,
    pub map_tree: PhyloTree,
    pub map_params: SubstParams,
    pub map_log_posterior: f64,
    /// Majority-rule consensus of thinned samples at temperature 1.
    pub consensus: Option<PhyloTree>,
    pub iterations: u64,
    /// First iteration run at temperature 1.
    pub annealing_end: u64,
    pub accepted: u64,
    /// Rooted topology key -> number of iterations spent there at T = 1.
    pub topology_visits: BTreeMap<String, u64>,
}

/// Run one annealed chain on a character matrix.
///
/// The chain starts from a seeded random topology with every branch at
/// `initial_branch_length`, `pi1` at the matrix mean and `mu = 1`.
pub fn run_chain(data: &CharacterMatrix, config: &ChainConfig) -> Result<ChainResult, McmcError> {
    config.validate()?;
    let n = data.n_languages();
    if n < 3 {
        return Err(McmcError::TooFewLanguages(n));
    }
    let patterns = PatternData::new(data);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut tree = random_tree_with_labels(data.languages(), config.branch_rate, &mut rng);
    for e in tree.edges() {
        tree.set_length(e, config.initial_branch_length);
    }
    let (lo, hi) = config.pi1_bounds;
    let margin = (hi - lo) * 0.01;
    let pi1 = data.mean().clamp(lo + margin, hi - margin);
    let params = SubstParams { pi1, mu: 1.0 };

    let mut state = McmcState::new(tree, params, &patterns, config, config.t0)?;
    if state.log_posterior.is_nan() {
        return Err(McmcError::NotANumber);
    }

    let mut best = state.clone();
    let mut trace = Trace::default();
    let mut samples: Vec<PhyloTree> = Vec::new();
    let mut visits: BTreeMap<String, u64> = BTreeMap::new();
    let mut accepted_total = 0;
    let mut annealing_end = if state.temperature <= 1.0 { 1 } else { 0 };
    let mut last_improvement = 0u64;
    let mut iterations = 0;

    for iter in 1..=config.max_iters {
        iterations = iter;
        let (next, accepted) = mh_step(&state, &patterns, config, &mut rng)?;
        state = next;
        if accepted {
            accepted_total += 1;
        }
        if state.log_posterior.is_nan() {
            return Err(McmcError::NotANumber);
        }
        if state.log_posterior > best.log_posterior {
            best = state.clone();
            last_improvement = iter;
        }

        #[cfg(debug_assertions)]
        if iter % 1000 == 0 && state.log_posterior.is_finite() {
            let fresh = state.recompute(&patterns, config)?;
            debug_assert!(
                (fresh - state.log_posterior).abs() <= 1e-9 * fresh.abs().max(1.0),
                "cached log-posterior drifted"
            );
        }

        let at_one = state.temperature <= 1.0;
        if at_one && config.track_topologies {
            *visits.entry(state.tree.topology_key()).or_insert(0) += 1;
        }
        if iter % config.sample_every == 0 {
            trace.records.push(TraceRecord {
                iteration: iter,
                log_posterior: state.log_posterior,
                temperature: state.temperature,
                pi1: state.params.pi1,
                mu: state.params.mu,
                accepted,
                newick: emit_newick(&state.tree, false),
            });
            if at_one {
                samples.push(state.tree.clone());
            }
        }
        if at_one {
            if let Some(window) = config.stop_window {
                if iter - last_improvement.max(annealing_end) >= window {
                    break;
                }
            }
        } else {
            state.temperature = config.cool(state.temperature);
            if state.temperature <= 1.0 {
                annealing_end = iter + 1;
            }
        }
    }

    let mut map_tree = best.tree.clone();
    map_tree.canonicalize();
    Ok(ChainResult {
        trace,
        map_tree,
        map_params: best.params,
        map_log_posterior: best.log_posterior,
        consensus: majority_consensus(&samples),
        iterations,
        annealing_end,
        accepted: accepted_total,
        topology_visits: visits,
    })
}

/// Temperatures visited by the annealing schedule until it reaches 1
/// (inclusive). Panics if `cooling` is not in `(0, 1)`.
pub fn temperature_schedule(config: &ChainConfig) -> Vec<f64> {
    assert!(config.cooling > 0.0 && config.cooling < 1.0);
    let mut out = alloc::vec![config.t0];
    let mut t = config.t0;
    while t > 1.0 {
        t = config.cool(t);
        out.push(t);
    }
    out
}
