use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::graph::{Partitioner, WordGraph};
use super::{CognateError, CognatePartition};
use crate::ingest::{WordForm, Wordlist};

/// Padding character for words shorter than the gram length.
pub const PAD: char = '$';

/// All order-preserving subsequences of length `n`. Strings shorter than `n`
/// yield the whole string right-padded with `$`.
pub fn skip_grams(classes: &str, n: usize) -> BTreeSet<String> {
    let chars: Vec<char> = classes.chars().collect();
    let mut out = BTreeSet::new();
    if n == 0 {
        return out;
    }
    if chars.len() < n {
        let mut s: String = chars.iter().collect();
        s.extend(core::iter::repeat_n(PAD, n - chars.len()));
        out.insert(s);
        return out;
    }
    // walk index combinations in lexicographic order
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        out.insert(idx.iter().map(|&i| chars[i]).collect());
        let mut k = n;
        while k > 0 && idx[k - 1] == chars.len() - n + (k - 1) {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        for t in k..n {
            idx[t] = idx[t - 1] + 1;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipSkipParams {
    pub gram_length: usize,
    /// Grams linked to fewer than `ceil(prune * forms)` words are removed.
    pub prune: f64,
    pub partitioner: Partitioner,
}

impl Default for BipSkipParams {
    fn default() -> Self {
        Self {
            gram_length: 4,
            prune: 0.2,
            partitioner: Partitioner::Components,
        }
    }
}

impl BipSkipParams {
    pub fn validate(&self) -> Result<(), CognateError> {
        if self.gram_length < 2 {
            return Err(CognateError::BadGramLength);
        }
        if !(0.0..1.0).contains(&self.prune) {
            return Err(CognateError::BadPrune(self.prune));
        }
        Ok(())
    }
}

/// Words on one side, skip-grams on the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteNet {
    words: Vec<u64>,
    grams: Vec<String>,
    /// gram index -> word indices
    links: Vec<BTreeSet<usize>>,
}

impl BipartiteNet {
    pub fn build(forms: &[&WordForm], gram_length: usize) -> Self {
        let mut gram_index: BTreeMap<String, usize> = BTreeMap::new();
        let mut grams = Vec::new();
        let mut links: Vec<BTreeSet<usize>> = Vec::new();
        for (w, form) in forms.iter().enumerate() {
            for g in skip_grams(&form.classes, gram_length) {
                let gi = *gram_index.entry(g.clone()).or_insert_with(|| {
                    grams.push(g);
                    links.push(BTreeSet::new());
                    links.len() - 1
                });
                links[gi].insert(w);
            }
        }
        Self {
            words: forms.iter().map(|f| f.id).collect(),
            grams,
            links,
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn grams(&self) -> &[String] {
        &self.grams
    }

    pub fn gram_degree(&self, gram: usize) -> usize {
        self.links[gram].len()
    }

    pub fn edge_count(&self) -> usize {
        self.links.iter().map(BTreeSet::len).sum()
    }

    /// Drop gram nodes linked to fewer than `min_degree` words.
    pub fn prune(&mut self, min_degree: usize) {
        let mut keep = self.links.iter().map(|l| l.len() >= min_degree);
        let mut grams = core::mem::take(&mut self.grams);
        grams.retain(|_| keep.next().unwrap_or(false));
        self.links.retain(|l| l.len() >= min_degree);
        self.grams = grams;
    }

    /// Word graph with edge weight = number of shared gram nodes.
    pub fn project(&self) -> WordGraph {
        let mut g = WordGraph::new(self.words.clone());
        for linked in &self.links {
            let members: Vec<usize> = linked.iter().copied().collect();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    g.add_edge(a, b, 1);
                }
            }
        }
        g
    }
}

/// Minimum gram degree kept for a concept with `forms` words.
pub fn min_gram_degree(prune: f64, forms: usize) -> usize {
    libm::ceil(prune * forms as f64) as usize
}

/// BipSkip labels for the forms of a single concept, in the given order.
pub fn bipskip_concept(forms: &[&WordForm], params: &BipSkipParams, seed: u64) -> Vec<usize> {
    let mut net = BipartiteNet::build(forms, params.gram_length);
    if params.prune > 0.0 {
        net.prune(min_gram_degree(params.prune, forms.len()));
    }
    let graph = net.project();
    params.partitioner.labels(&graph, seed)
}

/// BipSkip over a whole wordlist. Concept slices use seeds derived from
/// `seed` and the concept's position, so slices are independent.
pub fn bipskip_detect(
    wordlist: &Wordlist,
    params: &BipSkipParams,
    seed: u64,
) -> Result<CognatePartition, CognateError> {
    super::detect(wordlist, &super::Method::BipSkip(*params), seed)
}
