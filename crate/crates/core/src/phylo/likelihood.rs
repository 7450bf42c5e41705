use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{transition_matrix, CharacterMatrix, PhyloError, PhyloTree, SubstParams};
use crate::math::{log, KahanSum};

/// Character matrix compressed to distinct site patterns with counts.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternData {
    languages: Vec<String>,
    /// `patterns[p][row]` is the state of language `row` in pattern `p`.
    patterns: Vec<Vec<u8>>,
    weights: Vec<f64>,
}

impl PatternData {
    pub fn new(m: &CharacterMatrix) -> Self {
        let mut counts: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        for c in 0..m.n_columns() {
            *counts.entry(m.column(c)).or_insert(0) += 1;
        }
        let (patterns, weights) = counts.into_iter().map(|(p, w)| (p, w as f64)).unzip();
        Self {
            languages: m.languages().to_vec(),
            patterns,
            weights,
        }
    }

    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn n_patterns(&self) -> usize {
        self.patterns.len()
    }

    pub fn n_sites(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Map each leaf node of `tree` to its matrix row.
    fn leaf_rows(&self, tree: &PhyloTree) -> Result<Vec<Option<usize>>, PhyloError> {
        let index: BTreeMap<&str, usize> = self
            .languages
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut rows = vec![None; tree.len()];
        let mut seen = 0;
        for i in tree.leaves() {
            let label = tree.label(i).unwrap_or("");
            match index.get(label) {
                Some(&r) => {
                    rows[i] = Some(r);
                    seen += 1;
                }
                None => return Err(PhyloError::LabelMismatch(format!("leaf {label:?} not in matrix"))),
            }
        }
        if seen != self.languages.len() {
            return Err(PhyloError::LabelMismatch(format!(
                "tree has {seen} leaves, matrix has {} languages",
                self.languages.len()
            )));
        }
        Ok(rows)
    }

    /// Log-likelihood of the patterns on `tree`, with per-node rescaling.
    pub fn loglik(&self, tree: &PhyloTree, params: &SubstParams) -> Result<f64, PhyloError> {
        let rows = self.leaf_rows(tree)?;
        let order = tree.postorder();
        let root = tree.root();
        let probs: Vec<[[f64; 2]; 2]> = (0..tree.len())
            .map(|i| {
                if i == root {
                    [[1.0, 0.0], [0.0, 1.0]]
                } else {
                    transition_matrix(params, tree.length(i))
                }
            })
            .collect();
        let pi = params.stationary();
        let mut partial = vec![[0.0f64; 2]; tree.len()];
        let mut total = KahanSum::new();
        for (pattern, &weight) in self.patterns.iter().zip(&self.weights) {
            let mut log_scale = 0.0;
            for &n in &order {
                let node = tree.node(n);
                if node.is_leaf() {
                    let state = pattern[rows[n].expect("leaf row")] as usize;
                    partial[n] = [0.0, 0.0];
                    partial[n][state] = 1.0;
                    continue;
                }
                let mut acc = [1.0f64; 2];
                for &c in &node.children {
                    let p = &probs[c];
                    let l = partial[c];
                    for (s, a) in acc.iter_mut().enumerate() {
                        *a *= p[s][0] * l[0] + p[s][1] * l[1];
                    }
                }
                let scale = acc[0].max(acc[1]);
                if scale > 0.0 {
                    acc[0] /= scale;
                    acc[1] /= scale;
                    log_scale += log(scale);
                }
                partial[n] = acc;
            }
            let site = pi[0] * partial[root][0] + pi[1] * partial[root][1];
            total.add(weight * (log(site) + log_scale));
        }
        Ok(total.value())
    }
}

/// Log-likelihood of a character matrix on a tree under the two-state
/// model, summed over columns.
pub fn pruning_loglik(tree: &PhyloTree, m: &CharacterMatrix, params: &SubstParams) -> Result<f64, PhyloError> {
    PatternData::new(m).loglik(tree, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phylo::parse_newick;
    use alloc::string::ToString;

    fn matrix(langs: &[&str], cols: &[&[u8]]) -> CharacterMatrix {
        let rows: Vec<Vec<u8>> = (0..langs.len()).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        CharacterMatrix::from_rows(
            langs.iter().map(|s| s.to_string()).collect(),
            (0..cols.len()).map(|i| i.to_string()).collect(),
            &rows,
        )
        .unwrap()
    }

    #[test]
    fn two_leaf_closed_form() {
        let (t1, t2) = (0.3, 0.7);
        let p = SubstParams::new(0.4, 1.3).unwrap();
        let tree = PhyloTree::cherry("A", t1, "B", t2);
        let m = matrix(&["A", "B"], &[&[1, 1]]);
        let a = transition_matrix(&p, t1);
        let b = transition_matrix(&p, t2);
        let expected = log(p.pi0() * a[0][1] * b[0][1] + p.pi1 * a[1][1] * b[1][1]);
        let got = pruning_loglik(&tree, &m, &p).unwrap();
        assert!((got - expected).abs() < 1e-14);
    }

    #[test]
    fn zero_lengths_give_stationary_probability() {
        let tree = parse_newick("((A:0,B:0):0,(C:0,D:0):0);").unwrap();
        let p = SubstParams::new(0.3, 1.0).unwrap();
        let ones = matrix(&["A", "B", "C", "D"], &[&[1, 1, 1, 1]]);
        let zeros = matrix(&["A", "B", "C", "D"], &[&[0, 0, 0, 0]]);
        assert!((pruning_loglik(&tree, &ones, &p).unwrap() - log(0.3)).abs() < 1e-14);
        assert!((pruning_loglik(&tree, &zeros, &p).unwrap() - log(0.7)).abs() < 1e-14);
    }

    #[test]
    fn label_mismatch() {
        let tree = PhyloTree::cherry("A", 0.1, "B", 0.1);
        let p = SubstParams::new(0.5, 1.0).unwrap();
        let m = matrix(&["A", "C"], &[&[1, 0]]);
        assert!(matches!(
            pruning_loglik(&tree, &m, &p),
            Err(PhyloError::LabelMismatch(_))
        ));
        let m3 = matrix(&["A", "B", "C"], &[&[1, 0, 1]]);
        assert!(matches!(
            pruning_loglik(&tree, &m3, &p),
            Err(PhyloError::LabelMismatch(_))
        ));
    }

    #[test]
    fn patterns_are_compressed() {
        let m = matrix(&["A", "B"], &[&[1, 0], &[1, 0], &[0, 1]]);
        let d = PatternData::new(&m);
        assert_eq!(d.n_patterns(), 2);
        assert_eq!(d.n_sites(), 3.0);
    }
}
