//! Multi-threaded drivers whose results do not depend on the thread count.

use std::thread;

use lexiphy_core::cognate::{concept_seed, detect_concept, merge_concept_labels, CognatePartition, Method};
use lexiphy_core::ingest::Wordlist;
use lexiphy_core::mcmc::{run_chain, ChainConfig, ChainResult};
use lexiphy_core::phylo::CharacterMatrix;

use crate::error::{Error, Result};

/// Form ids and local labels of one concept slice.
type Slice = (Vec<u64>, Vec<usize>);

/// Split `0..n` into at most `jobs` contiguous ranges.
fn chunks(n: usize, jobs: usize) -> Vec<std::ops::Range<usize>> {
    let jobs = jobs.clamp(1, n.max(1));
    let size = n.div_ceil(jobs);
    (0..jobs)
        .map(|j| (j * size).min(n)..((j + 1) * size).min(n))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Cognate detection with concepts spread over `jobs` threads. Each concept
/// gets the same derived seed as in the serial run, so the partition is
/// identical for every `jobs`.
pub fn detect_parallel(wordlist: &Wordlist, method: &Method, seed: u64, jobs: usize) -> Result<CognatePartition> {
    method.validate()?;
    if jobs <= 1 {
        return Ok(lexiphy_core::cognate::detect(wordlist, method, seed)?);
    }
    let slices: Vec<_> = wordlist.slices().map(|(_, forms)| forms).collect();
    if slices.is_empty() {
        return Ok(lexiphy_core::cognate::detect(wordlist, method, seed)?);
    }
    let results: Vec<Result<Vec<Slice>>> = thread::scope(|s| {
        let handles: Vec<_> = chunks(slices.len(), jobs)
            .into_iter()
            .map(|range| {
                let slices = &slices;
                s.spawn(move || {
                    range
                        .map(|i| {
                            let forms = &slices[i];
                            let labels = detect_concept(forms, method, concept_seed(seed, i))?;
                            Ok((forms.iter().map(|f| f.id).collect(), labels))
                        })
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("detect worker panicked"))
            .collect()
    });
    let mut labels = Vec::with_capacity(slices.len());
    for chunk in results {
        labels.extend(chunk?);
    }
    Ok(merge_concept_labels(labels))
}

/// Run one chain per configuration on up to `jobs` threads. Results come
/// back in configuration order.
pub fn run_chains(matrix: &CharacterMatrix, configs: &[ChainConfig], jobs: usize) -> Vec<Result<ChainResult>> {
    if jobs <= 1 || configs.len() <= 1 {
        return configs
            .iter()
            .map(|c| run_chain(matrix, c).map_err(Error::from))
            .collect();
    }
    thread::scope(|s| {
        let handles: Vec<_> = chunks(configs.len(), jobs)
            .into_iter()
            .map(|range| {
                s.spawn(move || {
                    configs[range]
                        .iter()
                        .map(|c| run_chain(matrix, c).map_err(Error::from))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("chain worker panicked"))
            .collect()
    })
}
