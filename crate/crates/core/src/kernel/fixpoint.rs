use std::collections::BTreeMap;

use super::relation::{Diagonal, IndexedRelation};

#[derive(Clone, Debug)]
pub struct FixpointRun<I: Ord, T: Ord> {
    pub relation: IndexedRelation<I, T>,
    /// Pairs removed in each round, in canonical order.
    pub removed: Vec<Vec<(I, T, T)>>,
    pub checks: usize,
}

/// Greatest relation inside `universe × universe` (per index) all of whose
/// pairs pass `clause_check`, by removing every violating pair per round
/// until nothing changes.
///
/// With `with_diagonal` the implicit diagonal is kept at every index and its
/// pairs are never re-checked; the caller asserts that the diagonal is a
/// post-fixpoint of the clauses, which holds for every deterministic or
/// Egli-Milner-lifted transition system.
pub fn simulation_fixpoint<I, T, F>(
    universe: &BTreeMap<I, Vec<T>>,
    with_diagonal: bool,
    mut clause_check: F,
) -> FixpointRun<I, T>
where
    I: Ord + Clone,
    T: Ord + Clone,
    F: FnMut(&I, &T, &T, &IndexedRelation<I, T>) -> bool,
{
    let mut rel = IndexedRelation::new();
    if with_diagonal {
        rel.set_diagonal(Diagonal::All);
    }
    for (i, terms) in universe {
        for a in terms {
            for b in terms {
                if !(with_diagonal && a == b) {
                    rel.insert(i.clone(), a.clone(), b.clone());
                }
            }
        }
    }
    let mut removed = Vec::new();
    let mut checks = 0;
    loop {
        let mut violating = Vec::new();
        for (i, a, b) in rel.iter() {
            checks += 1;
            if !clause_check(i, a, b, &rel) {
                violating.push((i.clone(), a.clone(), b.clone()));
            }
        }
        if violating.is_empty() {
            break;
        }
        for (i, a, b) in &violating {
            rel.remove(i, a, b);
        }
        removed.push(violating);
    }
    FixpointRun {
        relation: rel,
        removed,
        checks,
    }
}
