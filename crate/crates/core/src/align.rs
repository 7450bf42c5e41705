//! Pairwise sequence comparison: Levenshtein distance over segments and
//! Needleman-Wunsch alignment over sound-class strings.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlignError {
    #[error("both sequences are empty")]
    BothEmpty,
    #[error("invalid scoring scheme: {0}")]
    InvalidScheme(&'static str),
}

/// Minimum number of insertions, deletions and substitutions turning `a`
/// into `b`. Works on whole segments, not bytes.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    // single rolling row over b
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, x) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let above = row[j + 1];
            let cost = if x == y { diag } else { diag + 1 };
            row[j + 1] = cost.min(above + 1).min(row[j] + 1);
            diag = above;
        }
    }
    row[b.len()]
}

/// `levenshtein(a, b) / max(len a, len b)`.
pub fn normalized_levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> Result<f64, AlignError> {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return Err(AlignError::BothEmpty);
    }
    Ok(levenshtein(a, b) as f64 / longest as f64)
}

/// Scores for global alignment of class strings.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoringScheme {
    pub match_score: f64,
    pub mismatch_score: f64,
    pub gap_penalty: f64,
    pairs: BTreeMap<(char, char), f64>,
}

impl Default for ScoringScheme {
    fn default() -> Self {
        Self {
            match_score: 1.0,
            mismatch_score: -1.0,
            gap_penalty: -1.0,
            pairs: BTreeMap::new(),
        }
    }
}

impl ScoringScheme {
    pub fn new(match_score: f64, mismatch_score: f64, gap_penalty: f64) -> Result<Self, AlignError> {
        if !(gap_penalty < 0.0 && 0.0 < match_score) {
            return Err(AlignError::InvalidScheme("need gap < 0 < match"));
        }
        if !mismatch_score.is_finite() {
            return Err(AlignError::InvalidScheme("mismatch score must be finite"));
        }
        Ok(Self {
            match_score,
            mismatch_score,
            gap_penalty,
            pairs: BTreeMap::new(),
        })
    }

    /// Override the score of one class pair; the table stays symmetric.
    pub fn set_pair(&mut self, a: char, b: char, score: f64) {
        self.pairs.insert((a, b), score);
        self.pairs.insert((b, a), score);
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((char, char), f64)> + '_ {
        self.pairs.iter().map(|(k, v)| (*k, *v))
    }

    pub fn score(&self, a: char, b: char) -> f64 {
        if let Some(&s) = self.pairs.get(&(a, b)) {
            return s;
        }
        if a == b {
            self.match_score
        } else {
            self.mismatch_score
        }
    }
}

/// One column of a pairwise alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Pair(char, char),
    /// Character of `a` against a gap.
    GapB(char),
    /// Character of `b` against a gap.
    GapA(char),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    pub columns: Vec<Column>,
    pub score: f64,
}

impl Alignment {
    pub fn gaps(&self) -> usize {
        self.columns.iter().filter(|c| !matches!(c, Column::Pair(..))).count()
    }
}

/// Best global alignment score only (no traceback).
pub fn nw_score(a: &[char], b: &[char], s: &ScoringScheme) -> f64 {
    let mut row: Vec<f64> = (0..=b.len()).map(|j| j as f64 * s.gap_penalty).collect();
    for (i, &x) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = (i + 1) as f64 * s.gap_penalty;
        for (j, &y) in b.iter().enumerate() {
            let up = row[j + 1];
            let best = (diag + s.score(x, y))
                .max(up + s.gap_penalty)
                .max(row[j] + s.gap_penalty);
            row[j + 1] = best;
            diag = up;
        }
    }
    row[b.len()]
}

/// Needleman-Wunsch global alignment. Traceback prefers diagonal, then up
/// (gap in `b`), then left (gap in `a`).
pub fn nw_align(a: &str, b: &str, s: &ScoringScheme) -> Alignment {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let (n, m) = (a.len(), b.len());
    let w = m + 1;
    let mut dp = vec![0.0f64; (n + 1) * w];
    for i in 0..=n {
        dp[i * w] = i as f64 * s.gap_penalty;
    }
    for j in 0..=m {
        dp[j] = j as f64 * s.gap_penalty;
    }
    for i in 1..=n {
        for j in 1..=m {
            let diag = dp[(i - 1) * w + j - 1] + s.score(a[i - 1], b[j - 1]);
            let up = dp[(i - 1) * w + j] + s.gap_penalty;
            let left = dp[i * w + j - 1] + s.gap_penalty;
            dp[i * w + j] = diag.max(up).max(left);
        }
    }

    let mut columns = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = dp[i * w + j];
        if i > 0 && j > 0 && here == dp[(i - 1) * w + j - 1] + s.score(a[i - 1], b[j - 1]) {
            columns.push(Column::Pair(a[i - 1], b[j - 1]));
            i -= 1;
            j -= 1;
        } else if i > 0 && (j == 0 || here == dp[(i - 1) * w + j] + s.gap_penalty) {
            columns.push(Column::GapB(a[i - 1]));
            i -= 1;
        } else {
            columns.push(Column::GapA(b[j - 1]));
            j -= 1;
        }
    }
    columns.reverse();
    Alignment {
        columns,
        score: dp[n * w + m],
    }
}

/// Alignment distance `1 - 2 S(a,b) / (S(a,a) + S(b,b))`, clamped to `[0, 1]`.
pub fn sca_distance(a: &str, b: &str, s: &ScoringScheme) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a == b {
        return 0.0;
    }
    let ab = nw_score(&a, &b, s);
    let aa = nw_score(&a, &a, s);
    let bb = nw_score(&b, &b, s);
    let denom = aa + bb;
    if denom <= 0.0 {
        return 1.0;
    }
    (1.0 - 2.0 * ab / denom).clamp(0.0, 1.0)
}
