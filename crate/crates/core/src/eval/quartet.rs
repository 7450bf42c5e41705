use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::EvalError;
use crate::phylo::PhyloTree;

/// Unrooted topology induced on four leaves `a, b, c, d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quartet {
    AbCd,
    AcBd,
    AdBc,
    Star,
}

/// Edge-count distances between all leaf pairs, indexed by sorted label.
#[derive(Debug, Clone)]
pub struct LeafDistances {
    labels: Vec<String>,
    d: Vec<u32>,
}

impl LeafDistances {
    pub fn new(tree: &PhyloTree) -> Self {
        let labels = tree.leaf_labels();
        let index = tree.leaf_index();
        let mut depth = vec![0u32; tree.len()];
        for n in tree.preorder() {
            if let Some(p) = tree.parent(n) {
                depth[n] = depth[p] + 1;
            }
        }
        let mut leaf_node = vec![0usize; labels.len()];
        for n in tree.leaves() {
            leaf_node[index[tree.label(n).unwrap()]] = n;
        }
        let k = labels.len();
        let mut d = vec![0u32; k * k];
        for i in 0..k {
            for j in i + 1..k {
                let (mut u, mut v) = (leaf_node[i], leaf_node[j]);
                let mut steps = 0;
                while u != v {
                    if depth[u] >= depth[v] {
                        u = tree.parent(u).unwrap();
                    } else {
                        v = tree.parent(v).unwrap();
                    }
                    steps += 1;
                }
                d[i * k + j] = steps;
                d[j * k + i] = steps;
            }
        }
        Self { labels, d }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.labels.len() + j]
    }

    /// Four-point condition on leaf indices: the pairing with the strictly
    /// smallest distance sum is the split; equal sums mean a star.
    pub fn quartet(&self, a: usize, b: usize, c: usize, d: usize) -> Quartet {
        let ab = self.get(a, b) + self.get(c, d);
        let ac = self.get(a, c) + self.get(b, d);
        let ad = self.get(a, d) + self.get(b, c);
        if ab < ac && ab < ad {
            Quartet::AbCd
        } else if ac < ab && ac < ad {
            Quartet::AcBd
        } else if ad < ab && ad < ac {
            Quartet::AdBc
        } else {
            Quartet::Star
        }
    }
}

/// Induced unrooted quartet on four leaves given by label.
pub fn quartet_topology(tree: &PhyloTree, leaves: [&str; 4]) -> Result<Quartet, EvalError> {
    let dist = LeafDistances::new(tree);
    let mut idx = [0usize; 4];
    for (slot, label) in idx.iter_mut().zip(leaves) {
        *slot = dist
            .index_of(label)
            .ok_or_else(|| EvalError::UnknownLeaf(label.into()))?;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if idx[i] == idx[j] {
                return Err(EvalError::RepeatedLeaf);
            }
        }
    }
    Ok(dist.quartet(idx[0], idx[1], idx[2], idx[3]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuartetReport {
    pub total_quartets: u64,
    /// Quartets resolved (not a star) in the gold tree.
    pub gold_resolved: u64,
    /// Gold-resolved quartets the inferred tree resolves the same way.
    pub shared: u64,
    /// `(gold_resolved - shared) / gold_resolved`, 0 when nothing is resolved.
    pub gqd: f64,
}

/// Generalized quartet distance by enumerating every four-leaf subset.
pub fn gqd(inferred: &PhyloTree, gold: &PhyloTree) -> Result<QuartetReport, EvalError> {
    let a = LeafDistances::new(inferred);
    let b = LeafDistances::new(gold);
    if a.labels() != b.labels() || a.labels().len() != inferred.leaf_count() || b.labels().len() != gold.leaf_count() {
        return Err(EvalError::LeafSetMismatch);
    }
    let n = a.labels().len();
    if n < 4 {
        return Err(EvalError::TooFewLeaves(n));
    }
    let (mut total, mut resolved, mut shared) = (0u64, 0u64, 0u64);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    total += 1;
                    let g = b.quartet(i, j, k, l);
                    if g == Quartet::Star {
                        continue;
                    }
                    resolved += 1;
                    if a.quartet(i, j, k, l) == g {
                        shared += 1;
                    }
                }
            }
        }
    }
    let gqd = if resolved == 0 {
        0.0
    } else {
        (resolved - shared) as f64 / resolved as f64
    };
    Ok(QuartetReport {
        total_quartets: total,
        gold_resolved: resolved,
        shared,
        gqd,
    })
}
