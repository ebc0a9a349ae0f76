//! Equivalence groups: the partition of classes induced by `owl:equivalentClass`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::OntologyModel;

/// Disjoint-set forest over dense indices, with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, id: usize) -> usize {
        let mut root = id;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut id = id;
        while self.parent[id] != root {
            let next = self.parent[id];
            self.parent[id] = root;
            id = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

/// Partition of every class mentioned in a model into equivalence groups.
///
/// Each group is represented by its lexicographically least member. Classes
/// without equivalences form singleton groups.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EquivalenceGroups {
    representative: BTreeMap<String, String>,
    members: BTreeMap<String, BTreeSet<String>>,
}

impl EquivalenceGroups {
    pub fn build(m: &OntologyModel) -> Self {
        let mut names: BTreeSet<&str> = m.classes.keys().map(String::as_str).collect();
        for e in m.equivalences.keys() {
            names.insert(e.first());
            names.insert(e.second());
        }
        let names: Vec<&str> = names.into_iter().collect();
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (*n, i)).collect();

        let mut uf = UnionFind::new(names.len());
        for e in m.equivalences.keys().filter(|e| !e.is_reflexive()) {
            uf.union(index[e.first()], index[e.second()]);
        }

        let mut by_root: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            by_root
                .entry(uf.find(i))
                .or_default()
                .insert((*name).to_owned());
        }

        let mut groups = EquivalenceGroups::default();
        for set in by_root.into_values() {
            let rep = set.iter().next().expect("non-empty group").clone();
            for member in &set {
                groups.representative.insert(member.clone(), rep.clone());
            }
            groups.members.insert(rep, set);
        }
        groups
    }

    /// Representative of `class`; a class unknown to the partition is its own representative.
    pub fn representative<'a>(&'a self, class: &'a str) -> &'a str {
        self.representative
            .get(class)
            .map(String::as_str)
            .unwrap_or(class)
    }

    /// All members of `class`'s group, including `class` itself.
    pub fn group_of(&self, class: &str) -> BTreeSet<String> {
        self.members
            .get(self.representative(class))
            .cloned()
            .unwrap_or_else(|| BTreeSet::from([class.to_owned()]))
    }

    pub fn same_group(&self, a: &str, b: &str) -> bool {
        self.representative(a) == self.representative(b)
    }

    /// Groups keyed by representative.
    pub fn groups(&self) -> impl Iterator<Item = (&String, &BTreeSet<String>)> {
        self.members.iter()
    }

    /// Groups with more than one member.
    pub fn nontrivial(&self) -> impl Iterator<Item = &BTreeSet<String>> {
        self.members.values().filter(|g| g.len() > 1)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
