use std::fmt;

use serde::{Deserialize, Serialize};

/// A subset of the ground set, stored as a sorted, duplicate-free list of item indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ItemSet(Vec<usize>);

impl ItemSet {
    pub fn empty() -> Self {
        ItemSet(Vec::new())
    }

    /// Builds a set from arbitrary indices; order and repetition are normalized away.
    pub fn new<I: IntoIterator<Item = usize>>(items: I) -> Self {
        let mut items: Vec<usize> = items.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        ItemSet(items)
    }

    /// The first `count` items, `{0, .., count-1}`.
    pub fn prefix(count: usize) -> Self {
        ItemSet((0..count).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, item: usize) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    pub fn is_subset(&self, other: &ItemSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    /// Returns a copy with `item` added.
    pub fn with(&self, item: usize) -> Self {
        let mut items = self.0.clone();
        if let Err(pos) = items.binary_search(&item) {
            items.insert(pos, item);
        }
        ItemSet(items)
    }

    pub fn insert(&mut self, item: usize) -> bool {
        match self.0.binary_search(&item) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, item);
                true
            }
        }
    }

    /// Largest index, if any.
    pub fn max_item(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl FromIterator<usize> for ItemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ItemSet::new(iter)
    }
}

impl<'de> Deserialize<'de> for ItemSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        Ok(ItemSet::new(items))
    }
}

impl fmt::Display for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}
