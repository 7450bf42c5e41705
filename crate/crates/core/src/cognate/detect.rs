use alloc::vec::Vec;

use super::bipskip::{bipskip_concept, BipSkipParams};
use super::distance::{pairwise_matrix, Metric};
use super::upgma::upgma_labels;
use super::{CognateError, CognatePartition};
use crate::align::ScoringScheme;
use crate::ingest::{WordForm, Wordlist};

pub const CCM_THRESHOLD: f64 = 0.5;
pub const EDIT_THRESHOLD: f64 = 0.55;
pub const SCA_THRESHOLD: f64 = 0.45;

/// A cognate detector with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Ccm { threshold: f64 },
    EditDistance { threshold: f64 },
    Sca { threshold: f64, scheme: ScoringScheme },
    BipSkip(BipSkipParams),
}

/// Flat parameter set accepted by [`Method::from_name`].
#[derive(Debug, Clone, Default)]
pub struct MethodParams {
    pub threshold: Option<f64>,
    pub scheme: Option<ScoringScheme>,
    pub bipskip: BipSkipParams,
}

impl Method {
    pub fn from_name(name: &str, params: MethodParams) -> Result<Self, CognateError> {
        let m = match name {
            "ccm" => Method::Ccm {
                threshold: params.threshold.unwrap_or(CCM_THRESHOLD),
            },
            "editdist" => Method::EditDistance {
                threshold: params.threshold.unwrap_or(EDIT_THRESHOLD),
            },
            "sca" => Method::Sca {
                threshold: params.threshold.unwrap_or(SCA_THRESHOLD),
                scheme: params.scheme.unwrap_or_default(),
            },
            "bipskip" => Method::BipSkip(params.bipskip),
            other => return Err(CognateError::UnknownMethod(other.into())),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Ccm { .. } => "ccm",
            Method::EditDistance { .. } => "editdist",
            Method::Sca { .. } => "sca",
            Method::BipSkip(_) => "bipskip",
        }
    }

    pub fn validate(&self) -> Result<(), CognateError> {
        match self {
            Method::Ccm { threshold } | Method::EditDistance { threshold } | Method::Sca { threshold, .. } => {
                if *threshold > 0.0 && *threshold <= 1.0 {
                    Ok(())
                } else {
                    Err(CognateError::BadThreshold(*threshold))
                }
            }
            Method::BipSkip(p) => p.validate(),
        }
    }
}

/// Seed for the `index`-th concept slice (splitmix64 of the pair).
pub fn concept_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Cluster the forms of one concept. `forms` must be ordered by id; the
/// returned labels are local to the slice.
pub fn detect_concept(forms: &[&WordForm], method: &Method, seed: u64) -> Result<Vec<usize>, CognateError> {
    if forms.is_empty() {
        return Err(CognateError::Empty);
    }
    match method {
        Method::Ccm { threshold } => upgma_labels(&pairwise_matrix(forms, &Metric::Ccm)?, *threshold),
        Method::EditDistance { threshold } => upgma_labels(&pairwise_matrix(forms, &Metric::EditDistance)?, *threshold),
        Method::Sca { threshold, scheme } => {
            upgma_labels(&pairwise_matrix(forms, &Metric::Sca(scheme.clone()))?, *threshold)
        }
        Method::BipSkip(p) => Ok(bipskip_concept(forms, p, seed)),
    }
}

/// Run a detector over every concept. Cluster ids are numbered from 1 in
/// concept order, so they are unique across the wordlist.
pub fn detect(wordlist: &Wordlist, method: &Method, seed: u64) -> Result<CognatePartition, CognateError> {
    method.validate()?;
    if wordlist.is_empty() {
        return Err(CognateError::Empty);
    }
    let mut labels = Vec::new();
    for (i, (_, forms)) in wordlist.slices().enumerate() {
        labels.push((
            forms.iter().map(|f| f.id).collect::<Vec<_>>(),
            detect_concept(&forms, method, concept_seed(seed, i))?,
        ));
    }
    Ok(merge_concept_labels(labels))
}

/// Merge per-concept `(ids, labels)` slices, in concept order, into one
/// partition with globally unique cluster ids.
pub fn merge_concept_labels<I>(slices: I) -> CognatePartition
where
    I: IntoIterator<Item = (Vec<u64>, Vec<usize>)>,
{
    let mut partition = CognatePartition::new();
    let mut next = 1;
    for (ids, labels) in slices {
        next = partition.extend_from_labels(&ids, &labels, next);
    }
    partition
}
