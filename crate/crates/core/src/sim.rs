//! Forward simulation of trees and binary character matrices.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::math::log1p;
use crate::phylo::{transition_matrix, CharacterMatrix, Node, PhyloError, PhyloTree, SubstParams};

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n_languages: usize,
    pub n_columns: usize,
    pub params: SubstParams,
    /// Rate of the exponential branch-length distribution.
    pub branch_rate: f64,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), PhyloError> {
        if self.n_languages < 3 {
            return Err(PhyloError::TooFewLeaves {
                need: 3,
                got: self.n_languages,
            });
        }
        if self.n_columns == 0 {
            return Err(PhyloError::Matrix("need at least one column".into()));
        }
        if !(self.branch_rate > 0.0 && self.branch_rate.is_finite()) {
            return Err(PhyloError::Malformed("branch rate must be positive"));
        }
        self.params.validate()
    }
}

/// Default leaf names `L1..Ln`.
pub fn language_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("L{i}")).collect()
}

/// Exponential draw by inversion; always strictly positive.
pub fn sample_exponential<R: Rng + ?Sized>(rng: &mut R, rate: f64) -> f64 {
    loop {
        let u: f64 = rng.gen();
        let x = -log1p(-u) / rate;
        if x > 0.0 {
            return x;
        }
    }
}

/// Uniform random rooted binary topology on the given labels with
/// Exponential(`rate`) branch lengths.
///
/// Leaves are added one at a time, each joining a uniformly chosen branch
/// (including the one above the root). Every labelled topology has exactly
/// one such construction, so the result is uniform.
pub fn random_tree_with_labels<R: Rng + ?Sized>(labels: &[String], rate: f64, rng: &mut R) -> PhyloTree {
    assert!(labels.len() >= 2, "need at least two leaves");
    let mut parent: Vec<Option<usize>> = vec![None, None, None];
    let mut children: Vec<Vec<usize>> = vec![vec![1, 2], vec![], vec![]];
    let mut label: Vec<Option<String>> = vec![None, Some(labels[0].clone()), Some(labels[1].clone())];
    parent[1] = Some(0);
    parent[2] = Some(0);
    let mut root = 0;

    for name in &labels[2..] {
        // every existing node has a branch above it (the root's is virtual)
        let target = rng.gen_range(0..parent.len());
        let joint = parent.len();
        let leaf = joint + 1;
        parent.push(parent[target]);
        children.push(vec![target, leaf]);
        label.push(None);
        parent.push(Some(joint));
        children.push(vec![]);
        label.push(Some(name.clone()));
        match parent[target] {
            Some(p) => {
                let slot = children[p].iter().position(|&c| c == target).unwrap();
                children[p][slot] = joint;
            }
            None => root = joint,
        }
        parent[target] = Some(joint);
    }

    let nodes: Vec<Node> = (0..parent.len())
        .map(|i| Node {
            parent: None,
            children: children[i].clone(),
            length: if i == root {
                None
            } else {
                Some(sample_exponential(rng, rate))
            },
            label: label[i].clone(),
            support: None,
        })
        .collect();
    PhyloTree::from_nodes(nodes, root).expect("construction yields a valid tree")
}

/// [`random_tree_with_labels`] with leaves `L1..Ln`.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rate: f64, rng: &mut R) -> PhyloTree {
    random_tree_with_labels(&language_names(n), rate, rng)
}

/// RNG stream for column `col` of a simulation seeded with `seed`.
fn column_rng(seed: u64, col: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(col as u64 + 1);
    rng
}

/// Evolve i.i.d. columns down `tree`: the root state is Bernoulli(pi1) and
/// every child state is drawn from the transition matrix of its branch.
/// Rows follow the sorted leaf labels. Constant columns are kept.
pub fn evolve_matrix(tree: &PhyloTree, params: &SubstParams, n_columns: usize, seed: u64) -> CharacterMatrix {
    let languages = tree.leaf_labels();
    let row_of: alloc::collections::BTreeMap<&str, usize> =
        languages.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let order = tree.preorder();
    let probs: Vec<[[f64; 2]; 2]> = (0..tree.len())
        .map(|i| transition_matrix(params, tree.length(i)))
        .collect();
    let mut rows = vec![vec![0u8; n_columns]; languages.len()];
    let mut state = vec![0u8; tree.len()];
    for col in 0..n_columns {
        let mut rng = column_rng(seed, col);
        for &n in &order {
            state[n] = match tree.parent(n) {
                None => (rng.gen::<f64>() < params.pi1) as u8,
                Some(p) => (rng.gen::<f64>() < probs[n][state[p] as usize][1]) as u8,
            };
            if tree.is_leaf(n) {
                rows[row_of[tree.label(n).unwrap()]][col] = state[n];
            }
        }
    }
    let columns = (1..=n_columns).map(|c| format!("{c}")).collect();
    CharacterMatrix::from_rows(languages, columns, &rows).expect("simulated matrix is well formed")
}

/// Simulate a tree and a matrix from one configuration.
pub fn simulate(cfg: &SimConfig) -> Result<(PhyloTree, CharacterMatrix), PhyloError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let tree = random_tree(cfg.n_languages, cfg.branch_rate, &mut rng);
    let m = evolve_matrix(&tree, &cfg.params, cfg.n_columns, cfg.seed);
    Ok((tree, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn two_leaves_make_a_cherry() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_tree(2, 10.0, &mut rng);
        t.check_binary().unwrap();
        assert_eq!(t.leaf_count(), 2);
        assert_eq!(t.topology_key(), "(L1,L2)");
    }

    #[test]
    fn trees_are_binary_with_positive_lengths() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 2..12 {
            let t = random_tree(n, 10.0, &mut rng);
            t.check_binary().unwrap();
            assert_eq!(t.leaf_count(), n);
        }
    }

    #[test]
    fn four_leaf_topologies_are_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let draws = 100_000;
        let mut counts: HashMap<String, usize> = HashMap::new();
        for _ in 0..draws {
            *counts.entry(random_tree(4, 1.0, &mut rng).topology_key()).or_default() += 1;
        }
        assert_eq!(counts.len(), 15);
        let mut chi2 = 0.0;
        let expected = draws as f64 / 15.0;
        for &c in counts.values() {
            let f = c as f64 / draws as f64;
            assert!((f - 1.0 / 15.0).abs() < 0.01, "frequency {f}");
            chi2 += (c as f64 - expected).powi(2) / expected;
        }
        // 14 degrees of freedom, 99.9% quantile is 36.1
        assert!(chi2 < 36.1, "chi2 {chi2}");
    }

    #[test]
    fn zero_rate_keeps_columns_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = random_tree(6, 10.0, &mut rng);
        let p = SubstParams { pi1: 0.4, mu: 0.0 };
        let m = evolve_matrix(&t, &p, 500, 9);
        for s in m.column_sums() {
            assert!(s == 0 || s == 6);
        }
    }

    #[test]
    fn long_branches_give_stationary_leaves() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut t = random_tree(5, 1.0, &mut rng);
        for e in t.edges() {
            t.set_length(e, 1e6);
        }
        let p = SubstParams::new(0.3, 1.0).unwrap();
        let m = evolve_matrix(&t, &p, 10_000, 11);
        assert!((m.mean() - 0.3).abs() < 0.02, "mean {}", m.mean());
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let cfg = SimConfig {
            n_languages: 6,
            n_columns: 50,
            params: SubstParams::new(0.3, 1.0).unwrap(),
            branch_rate: 10.0,
            seed: 7,
        };
        assert_eq!(simulate(&cfg).unwrap(), simulate(&cfg).unwrap());
        let other = SimConfig { seed: 8, ..cfg.clone() };
        assert_ne!(simulate(&cfg).unwrap().1, simulate(&other).unwrap().1);
    }
}
