use rand::Rng;

use super::McmcError;
use crate::math::exp;
use crate::phylo::{PhyloTree, SubstParams};

/// Nearest-neighbour interchange on a uniformly chosen internal edge.
///
/// For the edge above internal node `c` with sibling `s`, one of `c`'s two
/// children is swapped with `s`. Every move is undone by a move on the same
/// edge and the number of internal edges does not depend on the topology,
/// so the proposal is symmetric.
pub fn propose_nni<R: Rng + ?Sized>(tree: &PhyloTree, rng: &mut R) -> Result<(PhyloTree, f64), McmcError> {
    let internal = tree.internal_edges();
    if internal.is_empty() {
        return Err(McmcError::NoInternalEdge);
    }
    let c = internal[rng.gen_range(0..internal.len())];
    let p = tree.parent(c).expect("internal edge has a parent");
    let sibling = *tree.children(p).iter().find(|&&x| x != c).expect("binary parent");
    let kids = tree.children(c);
    let chosen = kids[rng.gen_range(0..kids.len())];
    let mut out = tree.clone();
    out.swap_subtrees(sibling, chosen);
    Ok((out, 0.0))
}

/// Multiply the branch above `edge` by `exp(tuning * (u - 0.5))`.
/// Returns the new tree and the log Hastings ratio `log c`.
pub fn scale_branch(tree: &PhyloTree, edge: usize, u: f64, tuning: f64) -> (PhyloTree, f64) {
    let log_c = tuning * (u - 0.5);
    let mut out = tree.clone();
    out.set_length(edge, tree.length(edge) * exp(log_c));
    (out, log_c)
}

/// Multiplier move on one uniformly chosen branch.
pub fn propose_scale_branch<R: Rng + ?Sized>(tree: &PhyloTree, rng: &mut R, tuning: f64) -> (PhyloTree, f64) {
    let edges = tree.edges();
    let edge = edges[rng.gen_range(0..edges.len())];
    let u: f64 = rng.gen();
    scale_branch(tree, edge, u, tuning)
}

/// Reflect `x` back into `[lo, hi]`.
pub fn reflect(mut x: f64, lo: f64, hi: f64) -> f64 {
    let width = hi - lo;
    if width <= 0.0 || width.is_nan() || !x.is_finite() {
        return x;
    }
    // fold into one period of length 2 * width
    let period = 2.0 * width;
    let mut r = (x - lo) % period;
    if r < 0.0 {
        r += period;
    }
    x = if r > width { lo + period - r } else { lo + r };
    x
}

/// Apply a step of `d_pi` to `pi1` (reflected into `bounds`) and `d_log_mu`
/// to `log mu`. The log Hastings ratio is `log(mu'/mu)`, the Jacobian of
/// walking on `log mu` while the prior is on `mu`.
pub fn apply_param_step(params: &SubstParams, d_pi: f64, d_log_mu: f64, bounds: (f64, f64)) -> (SubstParams, f64) {
    let pi1 = reflect(params.pi1 + d_pi, bounds.0, bounds.1);
    let mu = params.mu * exp(d_log_mu);
    (SubstParams { pi1, mu }, d_log_mu)
}

/// Reflected uniform random walk on `pi1` (half-width `pi_step`) and on
/// `log mu` (half-width `log_mu_step`).
pub fn propose_params<R: Rng + ?Sized>(
    params: &SubstParams,
    rng: &mut R,
    pi_step: f64,
    log_mu_step: f64,
    bounds: (f64, f64),
) -> (SubstParams, f64) {
    let d_pi = pi_step * (2.0 * rng.gen::<f64>() - 1.0);
    let d_mu = log_mu_step * (2.0 * rng.gen::<f64>() - 1.0);
    let (p, h) = apply_param_step(params, d_pi, d_mu, bounds);
    if p.mu > 0.0 {
        (p, h)
    } else {
        // log mu underflow: keep the current rate
        (SubstParams { mu: params.mu, ..p }, 0.0)
    }
}
