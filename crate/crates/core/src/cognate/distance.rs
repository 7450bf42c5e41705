use alloc::vec;
use alloc::vec::Vec;

use super::CognateError;
use crate::align::{normalized_levenshtein, sca_distance, ScoringScheme};
use crate::ingest::{consonant_skeleton, WordForm};

/// Symmetric matrix of pairwise distances in `[0, 1]` with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    ids: Vec<u64>,
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// An all-zero matrix over `ids`.
    pub fn zeros(ids: Vec<u64>) -> Self {
        let n = ids.len();
        Self {
            ids,
            d: vec![0.0; n * n],
        }
    }

    /// Build from a full row-major matrix; checks symmetry, range and diagonal.
    pub fn from_rows(ids: Vec<u64>, rows: &[Vec<f64>]) -> Option<Self> {
        let n = ids.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return None;
        }
        let mut m = Self::zeros(ids);
        for i in 0..n {
            if rows[i][i] != 0.0 {
                return None;
            }
            for j in 0..n {
                let v = rows[i][j];
                if !(0.0..=1.0).contains(&v) || v != rows[j][i] {
                    return None;
                }
                m.d[i * n + j] = v;
            }
        }
        Some(m)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.ids.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let n = self.ids.len();
        self.d[i * n + j] = v;
        self.d[j * n + i] = v;
    }
}

/// Distance used to fill a [`DistanceMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    /// Consonant-class matching on the first two consonant classes.
    Ccm,
    /// Normalized Levenshtein distance over IPA segments.
    EditDistance,
    /// Sound-class alignment distance.
    Sca(ScoringScheme),
}

impl Metric {
    pub fn distance(&self, a: &WordForm, b: &WordForm) -> Result<f64, CognateError> {
        match self {
            Metric::Ccm => ccm_distance(a, b),
            Metric::EditDistance => Ok(normalized_levenshtein(&a.tokens, &b.tokens)?),
            Metric::Sca(s) => Ok(sca_distance(&a.classes, &b.classes, s)),
        }
    }
}

/// 0.0 when both forms share the same non-empty two-consonant skeleton.
pub fn ccm_distance(a: &WordForm, b: &WordForm) -> Result<f64, CognateError> {
    if a.concept != b.concept {
        return Err(CognateError::ConceptMismatch { a: a.id, b: b.id });
    }
    let sa = consonant_skeleton(&a.classes, 2);
    let sb = consonant_skeleton(&b.classes, 2);
    Ok(if !sa.is_empty() && sa == sb { 0.0 } else { 1.0 })
}

/// Pairwise distances between same-concept forms, ordered by form id.
pub fn pairwise_matrix(forms: &[&WordForm], metric: &Metric) -> Result<DistanceMatrix, CognateError> {
    let first = forms.first().ok_or(CognateError::Empty)?;
    if let Some(other) = forms.iter().find(|f| f.concept != first.concept) {
        return Err(CognateError::ConceptMismatch {
            a: first.id,
            b: other.id,
        });
    }
    let mut sorted: Vec<&WordForm> = forms.to_vec();
    sorted.sort_by_key(|f| f.id);
    let mut m = DistanceMatrix::zeros(sorted.iter().map(|f| f.id).collect());
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let d = metric.distance(sorted[i], sorted[j])?;
            m.set(i, j, d.clamp(0.0, 1.0));
        }
    }
    Ok(m)
}
