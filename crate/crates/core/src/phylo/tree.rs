use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{LeafSet, PhyloError};

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Length of the branch above this node; `None` when unknown.
    pub length: Option<f64>,
    pub label: Option<String>,
    /// Clade support in `[0, 1]`, mostly for consensus trees.
    pub support: Option<f64>,
}

impl Node {
    fn new(label: Option<String>, length: Option<f64>) -> Self {
        Self {
            parent: None,
            children: Vec::new(),
            length,
            label,
            support: None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Rooted tree stored as a node arena.
///
/// Inference code expects binary trees with positive branch lengths, see
/// [`PhyloTree::check_binary`]; consensus and reference trees may have
/// polytomies and missing lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct PhyloTree {
    nodes: Vec<Node>,
    root: usize,
}

impl PhyloTree {
    /// A tree holding a single unattached root node.
    pub fn with_root(label: Option<String>) -> Self {
        Self {
            nodes: vec![Node::new(label, None)],
            root: 0,
        }
    }

    /// Build from an arena; parents are derived from the child lists.
    pub fn from_nodes(mut nodes: Vec<Node>, root: usize) -> Result<Self, PhyloError> {
        if root >= nodes.len() {
            return Err(PhyloError::Malformed("root out of range"));
        }
        for n in nodes.iter_mut() {
            n.parent = None;
        }
        for i in 0..nodes.len() {
            for k in 0..nodes[i].children.len() {
                let c = nodes[i].children[k];
                if c >= nodes.len() || c == root || nodes[c].parent.is_some() {
                    return Err(PhyloError::Malformed("node has several parents"));
                }
                nodes[c].parent = Some(i);
            }
        }
        let tree = Self { nodes, root };
        tree.validate()?;
        Ok(tree)
    }

    /// Two-leaf tree.
    pub fn cherry(a: &str, la: f64, b: &str, lb: f64) -> Self {
        let mut t = Self::with_root(None);
        let r = t.root;
        t.add_child(r, Some(a.into()), Some(la));
        t.add_child(r, Some(b.into()), Some(lb));
        t
    }

    /// Append a node under `parent`; returns its index.
    pub fn add_child(&mut self, parent: usize, label: Option<String>, length: Option<f64>) -> usize {
        let mut n = Node::new(label, length);
        n.parent = Some(parent);
        self.nodes.push(n);
        let idx = self.nodes.len() - 1;
        self.nodes[parent].children.push(idx);
        idx
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn node_mut(&mut self, i: usize) -> &mut Node {
        &mut self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.nodes[i].children
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.nodes[i].parent
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        self.nodes[i].is_leaf()
    }

    pub fn length(&self, i: usize) -> f64 {
        self.nodes[i].length.unwrap_or(0.0)
    }

    pub fn set_length(&mut self, i: usize, v: f64) {
        self.nodes[i].length = Some(v);
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.nodes[i].label.as_deref()
    }

    /// Leaf node indices in postorder.
    pub fn leaves(&self) -> Vec<usize> {
        self.postorder().into_iter().filter(|&i| self.is_leaf(i)).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }

    /// Leaf labels, sorted.
    pub fn leaf_labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .nodes
            .iter()
            .filter(|n| n.is_leaf())
            .filter_map(|n| n.label.clone())
            .collect();
        v.sort();
        v
    }

    /// Sorted leaf label -> position map.
    pub fn leaf_index(&self) -> BTreeMap<String, usize> {
        self.leaf_labels()
            .into_iter()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect()
    }

    /// Node indices with every child before its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((n, expanded)) = stack.pop() {
            if expanded {
                out.push(n);
            } else {
                stack.push((n, true));
                for &c in self.nodes[n].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = self.postorder();
        out.reverse();
        out
    }

    /// Nodes with a branch above them (all but the root).
    pub fn edges(&self) -> Vec<usize> {
        self.postorder().into_iter().filter(|&i| i != self.root).collect()
    }

    /// Internal non-root nodes, i.e. the lower ends of internal edges.
    pub fn internal_edges(&self) -> Vec<usize> {
        self.postorder()
            .into_iter()
            .filter(|&i| i != self.root && !self.is_leaf(i))
            .collect()
    }

    /// Leaf set below every node, indexed by node. Leaves are numbered by
    /// their position in `index`.
    pub fn clades(&self, index: &BTreeMap<String, usize>) -> Vec<LeafSet> {
        let n = index.len();
        let mut sets = vec![LeafSet::empty(n); self.nodes.len()];
        for i in self.postorder() {
            if self.is_leaf(i) {
                if let Some(&k) = self.label(i).and_then(|l| index.get(l)) {
                    sets[i].insert(k);
                }
            } else {
                let mut s = LeafSet::empty(n);
                for &c in &self.nodes[i].children {
                    s.union_with(&sets[c]);
                }
                sets[i] = s;
            }
        }
        sets
    }

    /// Structural checks: connected, acyclic, leaves uniquely labelled.
    pub fn validate(&self) -> Result<(), PhyloError> {
        if self.nodes[self.root].parent.is_some() {
            return Err(PhyloError::Malformed("root has a parent"));
        }
        let order = self.postorder();
        if order.len() != self.nodes.len() {
            return Err(PhyloError::Malformed("unreachable nodes"));
        }
        let mut seen = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if n.is_leaf() {
                let label = n.label.as_ref().ok_or(PhyloError::UnlabeledLeaf(i))?;
                if seen.insert(label.clone(), i).is_some() {
                    return Err(PhyloError::DuplicateLabel(label.clone()));
                }
            }
        }
        Ok(())
    }

    /// Binary with positive finite lengths on every branch.
    pub fn check_binary(&self) -> Result<(), PhyloError> {
        self.validate()?;
        for (i, n) in self.nodes.iter().enumerate() {
            if !n.is_leaf() && n.children.len() != 2 {
                return Err(PhyloError::NotBinary(i));
            }
            if i != self.root {
                match n.length {
                    Some(l) if l > 0.0 && l.is_finite() => {}
                    _ => return Err(PhyloError::BadBranchLength(i)),
                }
            }
        }
        Ok(())
    }

    pub fn is_binary(&self) -> bool {
        self.nodes.iter().all(|n| n.is_leaf() || n.children.len() == 2)
    }

    /// Smallest leaf label below every node.
    fn min_labels(&self) -> Vec<String> {
        let mut out = vec![String::new(); self.nodes.len()];
        for i in self.postorder() {
            out[i] = if self.is_leaf(i) {
                self.label(i).unwrap_or("").into()
            } else {
                self.nodes[i]
                    .children
                    .iter()
                    .map(|&c| out[c].clone())
                    .min()
                    .unwrap_or_default()
            };
        }
        out
    }

    /// Order every child list by smallest descendant leaf label.
    pub fn canonicalize(&mut self) {
        let keys = self.min_labels();
        for n in self.nodes.iter_mut() {
            n.children.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        }
    }

    /// Rooted topology as canonical parenthesised text without lengths.
    pub fn topology_key(&self) -> String {
        let keys = self.min_labels();
        let mut text = vec![String::new(); self.nodes.len()];
        for i in self.postorder() {
            if self.is_leaf(i) {
                text[i] = self.label(i).unwrap_or("").into();
            } else {
                let mut kids = self.nodes[i].children.clone();
                kids.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
                let mut s = String::from("(");
                for (k, &c) in kids.iter().enumerate() {
                    if k > 0 {
                        s.push(',');
                    }
                    s.push_str(&text[c]);
                }
                s.push(')');
                text[i] = s;
            }
        }
        core::mem::take(&mut text[self.root])
    }

    /// Exchange the subtrees rooted at `a` and `b`. Neither may be an
    /// ancestor of the other; branch lengths travel with their subtrees.
    pub fn swap_subtrees(&mut self, a: usize, b: usize) {
        let pa = self.nodes[a].parent.expect("swap of root");
        let pb = self.nodes[b].parent.expect("swap of root");
        let ia = self.nodes[pa].children.iter().position(|&c| c == a).unwrap();
        let ib = self.nodes[pb].children.iter().position(|&c| c == b).unwrap();
        self.nodes[pa].children[ia] = b;
        self.nodes[pb].children[ib] = a;
        self.nodes[a].parent = Some(pb);
        self.nodes[b].parent = Some(pa);
    }

    /// Total branch length.
    pub fn tree_length(&self) -> f64 {
        self.edges().iter().map(|&i| self.length(i)).sum()
    }

    /// Re-root on the branch above `node`, placing the new root at
    /// `fraction` of that branch's length measured from `node`.
    ///
    /// The old root is suppressed when it has two children (its two
    /// branches are merged). Supports are dropped since clades change.
    pub fn reroot(&self, node: usize, fraction: f64) -> Result<Self, PhyloError> {
        if node == self.root {
            return Err(PhyloError::Malformed("cannot re-root above the root"));
        }
        // undirected adjacency with lengths
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.nodes.len()];
        let root_kids = &self.nodes[self.root].children;
        let suppress = root_kids.len() == 2;
        for i in 0..self.nodes.len() {
            if i == self.root {
                continue;
            }
            let p = self.nodes[i].parent.unwrap();
            if suppress && p == self.root {
                continue;
            }
            let l = self.length(i);
            adj[i].push((p, l));
            adj[p].push((i, l));
        }
        if suppress {
            let (a, b) = (root_kids[0], root_kids[1]);
            let l = self.length(a) + self.length(b);
            adj[a].push((b, l));
            adj[b].push((a, l));
        }

        let (u, v, len) = if suppress && (node == root_kids[0] || node == root_kids[1]) {
            let other = if node == root_kids[0] {
                root_kids[1]
            } else {
                root_kids[0]
            };
            (node, other, self.length(root_kids[0]) + self.length(root_kids[1]))
        } else {
            (node, self.nodes[node].parent.unwrap(), self.length(node))
        };

        let mut out = PhyloTree::with_root(None);
        let mut stack = vec![(u, v, len * fraction, 0usize), (v, u, len * (1.0 - fraction), 0usize)];
        while let Some((cur, from, l, parent)) = stack.pop() {
            let label = self.nodes[cur].label.clone();
            let idx = out.add_child(parent, label, Some(l));
            for &(next, nl) in &adj[cur] {
                if next != from {
                    stack.push((next, cur, nl, idx));
                }
            }
        }
        for n in out.nodes.iter_mut() {
            if !n.is_leaf() {
                n.label = None;
            }
        }
        Ok(out)
    }
}
