use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::phylo::{LeafSet, Node, PhyloTree};

/// Majority-rule consensus of rooted trees over the same leaves.
///
/// Clades found in more than half of the trees are kept; each internal
/// node's support is its clade frequency and every branch gets the mean
/// length observed for its clade.
pub fn majority_consensus(trees: &[PhyloTree]) -> Option<PhyloTree> {
    let first = trees.first()?;
    let index = first.leaf_index();
    let labels: Vec<&String> = index.keys().collect();
    let n = index.len();
    let total = trees.len() as f64;

    // clade -> (count, summed branch length)
    let mut stats: BTreeMap<LeafSet, (usize, f64)> = BTreeMap::new();
    for t in trees {
        let clades = t.clades(&index);
        for e in t.edges() {
            let entry = stats.entry(clades[e].clone()).or_insert((0, 0.0));
            entry.0 += 1;
            entry.1 += t.length(e);
        }
    }

    let all = LeafSet::empty(n).complement(n);
    let mut kept: Vec<(LeafSet, f64, f64)> = stats
        .into_iter()
        .filter(|(set, (count, _))| *count as f64 > total / 2.0 && set.len() < n)
        .map(|(set, (count, sum))| (set, count as f64 / total, sum / count as f64))
        .collect();
    // leaves are present in every tree, so they are always kept; parents
    // before children
    kept.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));

    let mut nodes = alloc::vec![Node {
        parent: None,
        children: Vec::new(),
        length: None,
        label: None,
        support: None,
    }];
    let mut sets = alloc::vec![all];
    for (set, freq, len) in kept {
        // the smallest already placed clade containing this one
        let parent = (0..sets.len())
            .filter(|&i| set.is_subset(&sets[i]))
            .min_by_key(|&i| sets[i].len())
            .expect("root contains everything");
        let leaf = set.len() == 1;
        let label = if leaf {
            set.iter().next().map(|k| labels[k].clone())
        } else {
            None
        };
        nodes.push(Node {
            parent: None,
            children: Vec::new(),
            length: Some(len),
            label,
            support: if leaf { None } else { Some(freq) },
        });
        let idx = nodes.len() - 1;
        nodes[parent].children.push(idx);
        sets.push(set);
    }
    let mut tree = PhyloTree::from_nodes(nodes, 0).ok()?;
    tree.canonicalize();
    Some(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phylo::{emit_newick, parse_newick};

    #[test]
    fn unanimous_trees_reproduce_topology() {
        let t = parse_newick("((A:0.1,B:0.2):0.3,(C:0.4,D:0.5):0.6);").unwrap();
        let c = majority_consensus(&[t.clone(), t.clone()]).unwrap();
        assert_eq!(c.topology_key(), t.topology_key());
        assert_eq!(emit_newick(&c, true), "((A:0.1,B:0.2)1:0.3,(C:0.4,D:0.5)1:0.6);");
    }

    #[test]
    fn minority_clades_collapse() {
        let a = parse_newick("(((A:1,B:1):1,C:1):1,D:1);").unwrap();
        let b = parse_newick("(((A:1,B:1):1,D:1):1,C:1);").unwrap();
        let c = parse_newick("(((A:1,B:1):1,C:1):1,D:1);").unwrap();
        let d = parse_newick("((A:1,(B:1,D:1):1):1,C:1);").unwrap();
        let cons = majority_consensus(&[a, b, c, d]).unwrap();
        // AB in 3/4, ABC in 2/4 (not a majority)
        assert_eq!(cons.topology_key(), "((A,B),C,D)");
        let ab = cons.internal_edges()[0];
        assert_eq!(cons.node(ab).support, Some(0.75));
    }

    #[test]
    fn empty_input() {
        assert!(majority_consensus(&[]).is_none());
    }
}
