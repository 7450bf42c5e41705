use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// Assignment of form ids to cluster ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CognatePartition {
    assignment: BTreeMap<u64, u64>,
}

impl CognatePartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        Self {
            assignment: pairs.into_iter().collect(),
        }
    }

    /// Group ids by a local label vector (`labels[i]` belongs to `ids[i]`),
    /// numbering clusters from `first_id` in order of first appearance.
    /// Returns the next unused cluster id.
    pub fn extend_from_labels(&mut self, ids: &[u64], labels: &[usize], first_id: u64) -> u64 {
        debug_assert_eq!(ids.len(), labels.len());
        let mut remap: BTreeMap<usize, u64> = BTreeMap::new();
        let mut next = first_id;
        for (&id, &label) in ids.iter().zip(labels) {
            let cid = *remap.entry(label).or_insert_with(|| {
                next += 1;
                next - 1
            });
            self.assignment.insert(id, cid);
        }
        next
    }

    pub fn insert(&mut self, form: u64, cluster: u64) {
        self.assignment.insert(form, cluster);
    }

    pub fn get(&self, form: u64) -> Option<u64> {
        self.assignment.get(&form).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.assignment.iter().map(|(k, v)| (*k, *v))
    }

    pub fn form_ids(&self) -> impl Iterator<Item = u64> + '_ {
        self.assignment.keys().copied()
    }

    /// Cluster id -> member form ids (ascending).
    pub fn clusters(&self) -> BTreeMap<u64, Vec<u64>> {
        let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for (&f, &c) in &self.assignment {
            out.entry(c).or_default().push(f);
        }
        out
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters().len()
    }

    /// Relabel clusters 1.. in order of their smallest member id.
    pub fn canonical(&self) -> Self {
        let mut remap = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (&f, &c) in &self.assignment {
            let next = remap.len() as u64 + 1;
            let id = *remap.entry(c).or_insert(next);
            out.insert(f, id);
        }
        Self { assignment: out }
    }

    /// True when both partitions group the same forms together.
    pub fn same_grouping(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl FromIterator<(u64, u64)> for CognatePartition {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}
