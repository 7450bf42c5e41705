use super::ChainConfig;
use crate::math::log;
use crate::phylo::{PhyloTree, SubstParams};

/// Log prior density: uniform over topologies (constant, dropped),
/// i.i.d. Exponential(`branch_rate`) branch lengths, Uniform on `pi1`
/// within the configured bounds and Exponential(1) on `mu`.
pub fn log_prior(tree: &PhyloTree, params: &SubstParams, config: &ChainConfig) -> f64 {
    let (lo, hi) = config.pi1_bounds;
    let pi1_ok = params.pi1 > lo && params.pi1 < hi;
    if !pi1_ok || params.mu.is_nan() || params.mu <= 0.0 || !params.mu.is_finite() {
        return f64::NEG_INFINITY;
    }
    let rate = config.branch_rate;
    let mut total = -log(hi - lo) - params.mu;
    for e in tree.edges() {
        match tree.node(e).length {
            Some(t) if t > 0.0 && t.is_finite() => total += log(rate) - rate * t,
            _ => return f64::NEG_INFINITY,
        }
    }
    total
}
