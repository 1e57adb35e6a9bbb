use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use super::relation::IndexedRelation;

/// The clause set defining `L^{n+1}` from `L^n`. `prev` answers membership
/// in `L^n` for arbitrary pairs; `L^0` is the full relation.
pub trait StepClauses {
    type Pair: Clone + Eq + Hash;

    fn next_holds(&self, pair: &Self::Pair, prev: &mut dyn FnMut(&Self::Pair) -> bool) -> bool;
}

#[derive(Clone, Copy, Debug, Default)]
struct Known {
    /// `L^k(pair)` holds for every k up to this level.
    max_true: usize,
    /// `L^k(pair)` fails for every k from this level on.
    min_false: Option<usize>,
}

/// Lazily evaluated chain `L^0 ⊇ L^1 ⊇ …` with per-pair memoization.
///
/// Levels are natural numbers only; relations that need transfinite indices
/// to close are approximated from above.
pub struct StepIndexed<C: StepClauses> {
    clauses: C,
    memo: HashMap<C::Pair, Known>,
    evaluations: usize,
}

impl<C: StepClauses> StepIndexed<C> {
    pub fn new(clauses: C) -> Self {
        StepIndexed {
            clauses,
            memo: HashMap::new(),
            evaluations: 0,
        }
    }

    pub fn clauses(&self) -> &C {
        &self.clauses
    }

    /// Clause evaluations performed so far.
    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn holds(&mut self, level: usize, pair: &C::Pair) -> bool {
        eval(
            &self.clauses,
            &mut self.memo,
            &mut self.evaluations,
            level,
            pair,
        )
    }

    /// Largest `k ≤ depth` with `L^k(pair)`.
    pub fn max_level(&mut self, depth: usize, pair: &C::Pair) -> usize {
        // The chain is antitone, so binary search would do; linear keeps the
        // memo warm for neighbouring pairs.
        let mut k = 0;
        while k < depth && self.holds(k + 1, pair) {
            k += 1;
        }
        k
    }
}

fn eval<C: StepClauses>(
    clauses: &C,
    memo: &mut HashMap<C::Pair, Known>,
    evaluations: &mut usize,
    level: usize,
    pair: &C::Pair,
) -> bool {
    if level == 0 {
        return true;
    }
    if let Some(k) = memo.get(pair) {
        if level <= k.max_true {
            return true;
        }
        if k.min_false.is_some_and(|f| f <= level) {
            return false;
        }
    }
    // L^level ⊆ L^{level-1}: a pair dropped earlier stays dropped.
    let result = eval(clauses, memo, evaluations, level - 1, pair) && {
        *evaluations += 1;
        clauses.next_holds(pair, &mut |q| {
            eval(clauses, memo, evaluations, level - 1, q)
        })
    };
    let k = memo.entry(pair.clone()).or_default();
    if result {
        k.max_true = k.max_true.max(level);
    } else {
        k.min_false = Some(k.min_false.map_or(level, |f| f.min(level)));
    }
    result
}

/// `[L^0, …, L^depth]` restricted to `universe × universe` per index.
pub fn stepindex_chain<I, T, C>(
    rel: &mut StepIndexed<C>,
    universe: &BTreeMap<I, Vec<T>>,
    depth: usize,
    make_pair: impl Fn(&I, &T, &T) -> C::Pair,
) -> Vec<IndexedRelation<I, T>>
where
    I: Ord + Clone,
    T: Ord + Clone,
    C: StepClauses,
{
    let mut out = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let mut level = IndexedRelation::new();
        for (i, terms) in universe {
            for a in terms {
                for b in terms {
                    if rel.holds(k, &make_pair(i, a, b)) {
                        level.insert(i.clone(), a.clone(), b.clone());
                    }
                }
            }
        }
        out.push(level);
    }
    out
}

/// Whether every successive level is contained in its predecessor.
pub fn is_antitone<I: Ord + Clone, T: Ord + Clone>(chain: &[IndexedRelation<I, T>]) -> bool {
    chain.windows(2).all(|w| w[1].is_subset_of(&w[0]))
}

/// First `k` with `L^k = L^{k+1}` in the chain, if any.
pub fn stabilization_index<I: Ord + Clone, T: Ord + Clone>(
    chain: &[IndexedRelation<I, T>],
) -> Option<usize> {
    chain.windows(2).position(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `L^{n+1}(a, b)` iff `b >= a` and `L^n(a + 1, b)`: pairs survive as
    /// many levels as `b - a + 1`, counting the final reflexive step.
    struct Countdown;

    impl StepClauses for Countdown {
        type Pair = (u32, u32);
        fn next_holds(
            &self,
            &(a, b): &(u32, u32),
            prev: &mut dyn FnMut(&(u32, u32)) -> bool,
        ) -> bool {
            b >= a && (a == b || prev(&(a + 1, b)))
        }
    }

    #[test]
    fn level_zero_is_full() {
        let mut l = StepIndexed::new(Countdown);
        assert!(l.holds(0, &(9, 0)));
        assert!(!l.holds(1, &(9, 0)));
    }

    #[test]
    fn chain_is_antitone_and_stabilizes() {
        let mut l = StepIndexed::new(Countdown);
        let u = BTreeMap::from([((), vec![0u32, 1, 2, 3])]);
        let chain = stepindex_chain(&mut l, &u, 6, |_, a, b| (*a, *b));
        assert_eq!(chain.len(), 7);
        assert!(is_antitone(&chain));
        assert_eq!(chain[0].len(), 16);
        assert!(stabilization_index(&chain).is_some());
        assert_eq!(l.max_level(10, &(0, 3)), 10);
    }
}
