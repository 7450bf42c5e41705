use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CognatePartition;

const MAX_SWEEPS: usize = 100;

/// Undirected weighted graph over word forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordGraph {
    ids: Vec<u64>,
    adj: Vec<BTreeMap<usize, u64>>,
}

impl WordGraph {
    pub fn new(ids: Vec<u64>) -> Self {
        let adj = alloc::vec![BTreeMap::new(); ids.len()];
        Self { ids, adj }
    }

    /// Add `weight` to the edge `a`-`b` (node indices). Self-loops are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize, weight: u64) {
        if a == b || weight == 0 {
            return;
        }
        *self.adj[a].entry(b).or_insert(0) += weight;
        *self.adj[b].entry(a).or_insert(0) += weight;
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn weight(&self, a: usize, b: usize) -> u64 {
        self.adj[a].get(&b).copied().unwrap_or(0)
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.adj[a].iter().map(|(k, v)| (*k, *v))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeMap::len).sum::<usize>() / 2
    }

    fn to_partition(&self, labels: &[usize]) -> CognatePartition {
        let mut p = CognatePartition::new();
        p.extend_from_labels(&self.ids, labels, 1);
        p
    }
}

/// Graph partitioning strategy for BipSkip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Partitioner {
    #[default]
    Components,
    LabelPropagation,
}

/// Connected-component labels (the smallest node index of each component).
pub fn component_labels(g: &WordGraph) -> Vec<usize> {
    let n = g.len();
    let mut label = alloc::vec![usize::MAX; n];
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = start;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for (v, _) in g.neighbors(u) {
                if label[v] == usize::MAX {
                    label[v] = start;
                    stack.push(v);
                }
            }
        }
    }
    label
}

/// Asynchronous weighted label propagation. Each sweep visits nodes in a
/// seeded random order; a node takes the label with the largest summed edge
/// weight among its neighbours, smallest label on ties. Stops at a fixed
/// point or after 100 sweeps.
pub fn labelprop_labels(g: &WordGraph, seed: u64) -> Vec<usize> {
    let n = g.len();
    let mut label: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
    for _ in 0..MAX_SWEEPS {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &u in &order {
            tally.clear();
            for (v, w) in g.neighbors(u) {
                *tally.entry(label[v]).or_insert(0) += w;
            }
            // BTreeMap iterates labels ascending, so `>` keeps the smallest on ties
            let mut best: Option<(usize, u64)> = None;
            for (&l, &w) in &tally {
                if best.is_none_or(|(_, bw)| w > bw) {
                    best = Some((l, w));
                }
            }
            if let Some((l, _)) = best {
                if l != label[u] {
                    label[u] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    label
}

/// Connected components of the word graph; isolated words are singletons.
pub fn partition_components(g: &WordGraph) -> CognatePartition {
    g.to_partition(&component_labels(g))
}

/// Weighted label propagation with a seeded visiting order.
pub fn partition_labelprop(g: &WordGraph, seed: u64) -> CognatePartition {
    g.to_partition(&labelprop_labels(g, seed))
}

impl Partitioner {
    pub fn labels(self, g: &WordGraph, seed: u64) -> Vec<usize> {
        match self {
            Partitioner::Components => component_labels(g),
            Partitioner::LabelPropagation => labelprop_labels(g, seed),
        }
    }
}
