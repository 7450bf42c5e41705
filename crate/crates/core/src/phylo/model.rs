use super::PhyloError;
use crate::math::exp;

/// Two-state substitution model: stationary frequency of state 1 and an
/// overall rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstParams {
    pub pi1: f64,
    pub mu: f64,
}

impl SubstParams {
    pub fn new(pi1: f64, mu: f64) -> Result<Self, PhyloError> {
        let p = Self { pi1, mu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), PhyloError> {
        if self.pi1 > 0.0 && self.pi1 < 1.0 && self.mu >= 0.0 && self.mu.is_finite() {
            Ok(())
        } else {
            Err(PhyloError::InvalidParams {
                pi1: self.pi1,
                mu: self.mu,
            })
        }
    }

    pub fn pi0(&self) -> f64 {
        1.0 - self.pi1
    }

    pub fn stationary(&self) -> [f64; 2] {
        [self.pi0(), self.pi1]
    }
}

/// `P[i][j] = pi_j + (delta_ij - pi_j) * exp(-mu t)`.
pub fn transition_matrix(p: &SubstParams, t: f64) -> [[f64; 2]; 2] {
    let decay = exp(-p.mu * t);
    let pi = p.stationary();
    let mut m = [[0.0; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            *cell = pi[j] + (delta - pi[j]) * decay;
        }
    }
    m
}
