use lexiphy_core::phylo::{parse_newick, pruning_loglik, CharacterMatrix, SubstParams};
use lexiphy_core::sim::evolve_matrix;

#[test]
fn pattern_frequencies_match_likelihood() {
    let tree = parse_newick("((A:0.1,B:0.4):0.2,(C:0.3,D:0.05):0.15);").unwrap();
    let params = SubstParams::new(0.3, 1.2).unwrap();
    let n_cols = 100_000;
    let m = evolve_matrix(&tree, &params, n_cols, 99);
    let langs: Vec<String> = m.languages().to_vec();
    let mut counts = [0usize; 16];
    for c in 0..n_cols {
        let col = m.column(c);
        let code = col.iter().fold(0usize, |acc, &b| acc * 2 + b as usize);
        counts[code] += 1;
    }
    let mut tv = 0.0;
    let mut total_p = 0.0;
    for (code, &count) in counts.iter().enumerate() {
        let rows: Vec<Vec<u8>> = (0..4).map(|r| vec![((code >> (3 - r)) & 1) as u8]).collect();
        let single = CharacterMatrix::from_rows(langs.clone(), vec!["1".into()], &rows).unwrap();
        let p = pruning_loglik(&tree, &single, &params).unwrap().exp();
        total_p += p;
        tv += (p - count as f64 / n_cols as f64).abs();
    }
    tv /= 2.0;
    assert!((total_p - 1.0).abs() < 1e-12);
    assert!(tv < 0.02, "total variation {tv}");
}
