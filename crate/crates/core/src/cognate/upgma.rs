use alloc::vec::Vec;

use super::{CognateError, CognatePartition, DistanceMatrix};

/// Average-linkage agglomeration stopped at `threshold`: clusters keep
/// merging while the closest pair is at most `threshold` apart. Ties go to
/// the lowest `(i, j)` slot pair. Returns one label per matrix row.
pub fn upgma_labels(m: &DistanceMatrix, threshold: f64) -> Result<Vec<usize>, CognateError> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(CognateError::BadThreshold(threshold));
    }
    let n = m.len();
    let mut dist: Vec<f64> = (0..n * n).map(|k| m.get(k / n.max(1), k % n.max(1))).collect();
    let mut size = alloc::vec![1usize; n];
    let mut active = alloc::vec![true; n];
    // label[i] is the slot that row i was merged into
    let mut label: Vec<usize> = (0..n).collect();

    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..n {
            if !active[i] {
                continue;
            }
            for j in i + 1..n {
                if !active[j] {
                    continue;
                }
                let d = dist[i * n + j];
                if best.is_none_or(|(_, _, b)| d < b) {
                    best = Some((i, j, d));
                }
            }
        }
        let Some((i, j, d)) = best else { break };
        if d > threshold {
            break;
        }
        let (si, sj) = (size[i] as f64, size[j] as f64);
        for k in 0..n {
            if active[k] && k != i && k != j {
                let merged = (si * dist[k * n + i] + sj * dist[k * n + j]) / (si + sj);
                dist[k * n + i] = merged;
                dist[i * n + k] = merged;
            }
        }
        size[i] += size[j];
        active[j] = false;
        for l in label.iter_mut() {
            if *l == j {
                *l = i;
            }
        }
    }
    Ok(label)
}

/// Flat UPGMA clusters numbered from 1.
pub fn upgma_flat_cluster(m: &DistanceMatrix, threshold: f64) -> Result<CognatePartition, CognateError> {
    let labels = upgma_labels(m, threshold)?;
    let mut p = CognatePartition::new();
    p.extend_from_labels(m.ids(), &labels, 1);
    Ok(p)
}
