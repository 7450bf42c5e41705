use std::collections::HashMap;

use lexiphy_core::align::{
    levenshtein, normalized_levenshtein, nw_align, nw_score, sca_distance, Column, ScoringScheme,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Memoized recursion over suffixes.
fn oracle(a: &[String], b: &[String]) -> usize {
    fn go(a: &[String], b: &[String], i: usize, j: usize, memo: &mut HashMap<(usize, usize), usize>) -> usize {
        if i == a.len() {
            return b.len() - j;
        }
        if j == b.len() {
            return a.len() - i;
        }
        if let Some(&v) = memo.get(&(i, j)) {
            return v;
        }
        let sub = go(a, b, i + 1, j + 1, memo) + usize::from(a[i] != b[j]);
        let del = go(a, b, i + 1, j, memo) + 1;
        let ins = go(a, b, i, j + 1, memo) + 1;
        let v = sub.min(del).min(ins);
        memo.insert((i, j), v);
        v
    }
    go(a, b, 0, 0, &mut HashMap::new())
}

const SEGMENTS: [&str; 6] = ["p", "t", "a", "tʰ", "ŋ", "e"];

fn random_word(rng: &mut ChaCha8Rng) -> Vec<String> {
    let len = rng.gen_range(0..=10);
    (0..len)
        .map(|_| SEGMENTS[rng.gen_range(0..SEGMENTS.len())].to_string())
        .collect()
}

#[test]
fn ten_thousand_pairs_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..10_000 {
        let a = random_word(&mut rng);
        let b = random_word(&mut rng);
        assert_eq!(levenshtein(&a, &b), oracle(&a, &b), "{a:?} / {b:?}");
    }
}

fn word() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(prop::sample::select(SEGMENTS.to_vec()).prop_map(String::from), 0..9)
}

proptest! {
    #[test]
    fn metric_axioms(a in word(), b in word(), c in word()) {
        let ab = levenshtein(&a, &b);
        prop_assert_eq!(levenshtein(&a, &a), 0);
        prop_assert_eq!(ab, levenshtein(&b, &a));
        prop_assert_eq!(ab == 0, a == b);
        prop_assert!(levenshtein(&a, &c) <= ab + levenshtein(&b, &c));
        prop_assert!(ab <= a.len().max(b.len()));
        prop_assert!(ab >= a.len().abs_diff(b.len()));
    }

    #[test]
    fn normalized_in_unit_interval(a in word(), b in word()) {
        match normalized_levenshtein(&a, &b) {
            Ok(d) => prop_assert!((0.0..=1.0).contains(&d)),
            Err(_) => prop_assert!(a.is_empty() && b.is_empty()),
        }
    }

    #[test]
    fn alignment_score_matches_dp(a in "[KTPV]{0,8}", b in "[KTPV]{0,8}") {
        let s = ScoringScheme::default();
        let al = nw_align(&a, &b, &s);
        let ac: Vec<char> = a.chars().collect();
        let bc: Vec<char> = b.chars().collect();
        prop_assert!((al.score - nw_score(&ac, &bc, &s)).abs() < 1e-12);
        // columns reproduce both inputs
        let (mut ra, mut rb) = (String::new(), String::new());
        let mut total = 0.0;
        for col in &al.columns {
            match *col {
                Column::Pair(x, y) => { ra.push(x); rb.push(y); total += s.score(x, y); }
                Column::GapB(x) => { ra.push(x); total += s.gap_penalty; }
                Column::GapA(y) => { rb.push(y); total += s.gap_penalty; }
            }
        }
        prop_assert_eq!(ra, a);
        prop_assert_eq!(rb, b);
        prop_assert!((total - al.score).abs() < 1e-12);
    }

    #[test]
    fn sca_distance_bounds(a in "[KTPVN]{1,8}", b in "[KTPVN]{1,8}") {
        let s = ScoringScheme::default();
        let d = sca_distance(&a, &b, &s);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!(sca_distance(&a, &a, &s).abs() < 1e-12);
        prop_assert!((d - sca_distance(&b, &a, &s)).abs() < 1e-12);
    }
}
