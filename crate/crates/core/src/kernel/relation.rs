use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Which indices carry the full diagonal `{(t, t)}` implicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagonal<I: Ord> {
    None,
    All,
    At(BTreeSet<I>),
}

/// A family of finite pair sets indexed by sort, type or typing context,
/// optionally extended by the (infinite) diagonal at some indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedRelation<I: Ord, T: Ord> {
    entries: BTreeMap<I, BTreeSet<(T, T)>>,
    diagonal: Diagonal<I>,
}

impl<I: Ord + Clone, T: Ord + Clone> Default for IndexedRelation<I, T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<I: Ord + Clone, T: Ord + Clone> IndexedRelation<I, T> {
    pub fn new() -> Self {
        IndexedRelation {
            entries: BTreeMap::new(),
            diagonal: Diagonal::None,
        }
    }

    /// The diagonal at every index and nothing else.
    pub fn identity() -> Self {
        IndexedRelation {
            entries: BTreeMap::new(),
            diagonal: Diagonal::All,
        }
    }

    pub fn with_diagonal(mut self, diagonal: Diagonal<I>) -> Self {
        self.diagonal = diagonal;
        self
    }

    pub fn set_diagonal(&mut self, diagonal: Diagonal<I>) {
        self.diagonal = diagonal;
    }

    pub fn add_diagonal_at(&mut self, index: I) {
        match &mut self.diagonal {
            Diagonal::All => {}
            Diagonal::At(set) => {
                set.insert(index);
            }
            d @ Diagonal::None => *d = Diagonal::At(BTreeSet::from([index])),
        }
    }

    pub fn diagonal(&self) -> &Diagonal<I> {
        &self.diagonal
    }

    pub fn has_diagonal_at(&self, index: &I) -> bool {
        match &self.diagonal {
            Diagonal::None => false,
            Diagonal::All => true,
            Diagonal::At(set) => set.contains(index),
        }
    }

    pub fn insert(&mut self, index: I, lhs: T, rhs: T) -> bool {
        self.entries.entry(index).or_default().insert((lhs, rhs))
    }

    pub fn remove(&mut self, index: &I, lhs: &T, rhs: &T) -> bool {
        let Some(set) = self.entries.get_mut(index) else {
            return false;
        };
        // BTreeSet<(T, T)> needs an owned key for lookup.
        let removed = set.remove(&(lhs.clone(), rhs.clone()));
        if set.is_empty() {
            self.entries.remove(index);
        }
        removed
    }

    pub fn contains(&self, index: &I, lhs: &T, rhs: &T) -> bool {
        if lhs == rhs && self.has_diagonal_at(index) {
            return true;
        }
        self.entries
            .get(index)
            .is_some_and(|set| set.contains(&(lhs.clone(), rhs.clone())))
    }

    /// Explicitly listed pairs at one index (the implicit diagonal is not included).
    pub fn pairs(&self, index: &I) -> impl Iterator<Item = &(T, T)> {
        self.entries.get(index).into_iter().flatten()
    }

    pub fn indices(&self) -> impl Iterator<Item = &I> {
        self.entries.keys()
    }

    /// All explicit `(index, lhs, rhs)` triples in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&I, &T, &T)> {
        self.entries
            .iter()
            .flat_map(|(i, set)| set.iter().map(move |(a, b)| (i, a, b)))
    }

    /// Number of explicit pairs.
    pub fn len(&self) -> usize {
        self.entries.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0 && self.diagonal == Diagonal::None
    }

    /// Membership-wise inclusion; the diagonal counts only against a diagonal.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        let diag_ok = match &self.diagonal {
            Diagonal::None => true,
            Diagonal::All => other.diagonal == Diagonal::All,
            Diagonal::At(set) => set.iter().all(|i| other.has_diagonal_at(i)),
        };
        diag_ok && self.iter().all(|(i, a, b)| other.contains(i, a, b))
    }

    /// Restrict the explicit pairs to those whose components both satisfy `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&I, &T, &T) -> bool) {
        for (i, set) in self.entries.iter_mut() {
            set.retain(|(a, b)| keep(i, a, b));
        }
        self.entries.retain(|_, set| !set.is_empty());
    }
}

impl<I: Ord + Clone + fmt::Display, T: Ord + Clone + fmt::Display> fmt::Display
    for IndexedRelation<I, T>
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.diagonal {
            Diagonal::None => {}
            Diagonal::All => writeln!(f, "DELTA")?,
            Diagonal::At(set) => {
                for i in set {
                    writeln!(f, "DELTA {i}")?;
                }
            }
        }
        for (i, a, b) in self.iter() {
            writeln!(f, "{i} :: {a} ~ {b}")?;
        }
        Ok(())
    }
}
