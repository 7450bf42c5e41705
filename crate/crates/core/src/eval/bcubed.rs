use alloc::collections::BTreeMap;
use alloc::format;

use super::EvalError;
use crate::cognate::CognatePartition;

/// Item-level B-Cubed precision, recall and F-score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcubedScore {
    pub precision: f64,
    pub recall: f64,
    pub fscore: f64,
}

impl BcubedScore {
    pub fn new(precision: f64, recall: f64) -> Self {
        let fscore = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Self {
            precision,
            recall,
            fscore,
        }
    }
}

/// Unweighted mean over items of `|C∩G|/|C|` (precision) and `|C∩G|/|G|`
/// (recall), where `C` and `G` are the item's predicted and gold clusters.
pub fn bcubed(pred: &CognatePartition, gold: &CognatePartition) -> Result<BcubedScore, EvalError> {
    if pred.len() != gold.len() || pred.form_ids().ne(gold.form_ids()) {
        let missing = pred
            .form_ids()
            .find(|&f| gold.get(f).is_none())
            .or_else(|| gold.form_ids().find(|&f| pred.get(f).is_none()));
        return Err(EvalError::DomainMismatch(format!("form {missing:?} is not in both")));
    }
    if pred.is_empty() {
        return Err(EvalError::DomainMismatch("no forms".into()));
    }
    let mut pred_size: BTreeMap<u64, usize> = BTreeMap::new();
    let mut gold_size: BTreeMap<u64, usize> = BTreeMap::new();
    let mut joint: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for (f, p) in pred.iter() {
        let g = gold.get(f).expect("same domain");
        *pred_size.entry(p).or_insert(0) += 1;
        *gold_size.entry(g).or_insert(0) += 1;
        *joint.entry((p, g)).or_insert(0) += 1;
    }
    let (mut precision, mut recall) = (0.0, 0.0);
    // every item in the cell (p, g) has the same overlap |C∩G| = count
    for (&(p, g), &count) in &joint {
        let c = count as f64;
        precision += c * c / pred_size[&p] as f64;
        recall += c * c / gold_size[&g] as f64;
    }
    let n = pred.len() as f64;
    Ok(BcubedScore::new(precision / n, recall / n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(pairs: &[(u64, u64)]) -> CognatePartition {
        CognatePartition::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn perfect_prediction() {
        let g = part(&[(1, 1), (2, 1), (3, 2)]);
        let p = part(&[(1, 5), (2, 5), (3, 9)]);
        assert_eq!(bcubed(&p, &g).unwrap(), BcubedScore::new(1.0, 1.0));
        assert_eq!(bcubed(&p, &g).unwrap().fscore, 1.0);
    }

    #[test]
    fn singletons_against_one_cluster() {
        let g = part(&[(1, 1), (2, 1), (3, 1), (4, 1)]);
        let p = part(&[(1, 1), (2, 2), (3, 3), (4, 4)]);
        let s = bcubed(&p, &g).unwrap();
        assert_eq!(s.precision, 1.0);
        assert_eq!(s.recall, 0.25);
    }

    #[test]
    fn one_cluster_against_two_pairs() {
        let g = part(&[(1, 1), (2, 1), (3, 2), (4, 2)]);
        let p = part(&[(1, 1), (2, 1), (3, 1), (4, 1)]);
        let s = bcubed(&p, &g).unwrap();
        assert_eq!(s.precision, 0.5);
        assert_eq!(s.recall, 1.0);
        assert!((s.fscore - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn domains_must_match() {
        let g = part(&[(1, 1), (2, 1)]);
        let p = part(&[(1, 1), (3, 1)]);
        assert!(matches!(bcubed(&p, &g), Err(EvalError::DomainMismatch(_))));
    }
}
