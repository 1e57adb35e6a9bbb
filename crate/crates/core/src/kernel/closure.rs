use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

/// A transition system viewed through its one-step reducts and terminal
/// observations.
pub trait Semantics {
    type Term: Clone + Eq + Hash + Ord + Debug;
    type Obs;

    fn successors(&self, t: &Self::Term) -> Vec<Self::Term>;

    fn observe(&self, t: &Self::Term) -> Option<Self::Obs>;

    /// A preorder under which `later` needs at least as many steps to reach a
    /// terminal state as `earlier`. Returning true for `later` reached from
    /// `earlier` proves that path can be abandoned when searching for
    /// termination. The default is equality, i.e. revisit detection.
    fn subsumes(&self, later: &Self::Term, earlier: &Self::Term) -> bool {
        later == earlier
    }

    /// Cheap necessary condition for [`Semantics::subsumes`]; used to skip
    /// candidate ancestors without running the full test.
    fn subsumption_key(&self, _t: &Self::Term) -> u64 {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakClosure<T: Ord> {
    pub source: T,
    pub reachable: BTreeSet<T>,
    /// Reachable states without successors.
    pub terminals: BTreeSet<T>,
    pub frontier_exhausted: bool,
    pub fuel_used: usize,
    /// Minimal number of steps from `source` to each reachable state.
    pub distance: BTreeMap<T, usize>,
}

impl<T: Ord + Clone> WeakClosure<T> {
    pub fn contains(&self, t: &T) -> bool {
        self.reachable.contains(t)
    }
}

/// Breadth-first exploration of everything reachable in at most `fuel` steps.
pub fn weak_closure<S: Semantics>(sem: &S, t: &S::Term, fuel: usize) -> WeakClosure<S::Term> {
    let mut reachable = BTreeSet::from([t.clone()]);
    let mut terminals = BTreeSet::new();
    let mut distance = BTreeMap::from([(t.clone(), 0)]);
    let mut layer = vec![t.clone()];
    let mut fuel_used = 0;
    let exhausted = loop {
        let mut next = Vec::new();
        let mut fresh_beyond_fuel = false;
        for u in &layer {
            let succ = sem.successors(u);
            if succ.is_empty() {
                terminals.insert(u.clone());
            }
            for v in succ {
                if reachable.contains(&v) {
                    continue;
                }
                if fuel_used == fuel {
                    fresh_beyond_fuel = true;
                    continue;
                }
                reachable.insert(v.clone());
                distance.insert(v.clone(), fuel_used + 1);
                next.push(v);
            }
        }
        if fuel_used == fuel {
            break !fresh_beyond_fuel;
        }
        if next.is_empty() {
            break true;
        }
        fuel_used += 1;
        layer = next;
    };
    WeakClosure {
        source: t.clone(),
        reachable,
        terminals,
        frontier_exhausted: exhausted,
        fuel_used,
        distance,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination<T> {
    /// A successor-free state reached in `steps` steps.
    Terminates { state: T, steps: usize },
    /// The search space closed without a terminal state. `witness` is a
    /// pruned state together with the ancestor it revisits or subsumes.
    Diverges {
        explored: usize,
        witness: Option<(T, T)>,
    },
    /// Fuel ran out with unexplored states left.
    Unknown { explored: usize },
}

impl<T> Termination<T> {
    pub fn terminates(&self) -> bool {
        matches!(self, Termination::Terminates { .. })
    }

    pub fn diverges(&self) -> bool {
        matches!(self, Termination::Diverges { .. })
    }
}

struct Node<T> {
    term: T,
    parent: Option<usize>,
    depth: usize,
    key: u64,
}

/// May-termination search. Breadth-first, so the reported terminal state is
/// one at minimal depth. A state is not expanded when it subsumes a proper
/// ancestor on the path that discovered it: any terminating run from it is
/// no shorter than one from the ancestor, which is explored anyway.
pub fn may_terminate<S: Semantics>(sem: &S, t: &S::Term, fuel: usize) -> Termination<S::Term> {
    let mut nodes: Vec<Node<S::Term>> = Vec::new();
    let mut seen: HashMap<S::Term, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    nodes.push(Node {
        term: t.clone(),
        parent: None,
        depth: 0,
        key: sem.subsumption_key(t),
    });
    seen.insert(t.clone(), 0);
    queue.push_back(0usize);
    let mut witness = None;
    let mut open_beyond_fuel = false;
    while let Some(id) = queue.pop_front() {
        let succ = sem.successors(&nodes[id].term);
        if succ.is_empty() {
            return Termination::Terminates {
                state: nodes[id].term.clone(),
                steps: nodes[id].depth,
            };
        }
        let pruned = subsumed_ancestor(sem, &nodes, id);
        if let Some(anc) = pruned {
            if witness.is_none() {
                witness = Some((nodes[id].term.clone(), nodes[anc].term.clone()));
            }
            continue;
        }
        if nodes[id].depth == fuel {
            open_beyond_fuel = true;
            continue;
        }
        for v in succ {
            if let Some(&old) = seen.get(&v) {
                if witness.is_none() && is_ancestor(&nodes, old, id) {
                    witness = Some((v.clone(), nodes[old].term.clone()));
                }
                continue;
            }
            let nid = nodes.len();
            let key = sem.subsumption_key(&v);
            seen.insert(v.clone(), nid);
            nodes.push(Node {
                term: v,
                parent: Some(id),
                depth: nodes[id].depth + 1,
                key,
            });
            queue.push_back(nid);
        }
    }
    if open_beyond_fuel {
        Termination::Unknown {
            explored: nodes.len(),
        }
    } else {
        Termination::Diverges {
            explored: nodes.len(),
            witness,
        }
    }
}

fn is_ancestor<T>(nodes: &[Node<T>], anc: usize, mut id: usize) -> bool {
    loop {
        if id == anc {
            return true;
        }
        match nodes[id].parent {
            Some(p) => id = p,
            None => return false,
        }
    }
}

fn subsumed_ancestor<S: Semantics>(sem: &S, nodes: &[Node<S::Term>], id: usize) -> Option<usize> {
    let me = &nodes[id];
    let mut cur = me.parent;
    while let Some(a) = cur {
        let anc = &nodes[a];
        if anc.key == me.key && sem.subsumes(&me.term, &anc.term) {
            return Some(a);
        }
        cur = anc.parent;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    /// n -> n+1 up to a cap, with 7 -> 3 looping back.
    struct Counter {
        cap: u32,
    }

    impl Semantics for Counter {
        type Term = u32;
        type Obs = ();
        fn successors(&self, t: &u32) -> Vec<u32> {
            match *t {
                7 => vec![3],
                n if n < self.cap => vec![n + 1],
                _ => vec![],
            }
        }
        fn observe(&self, _: &u32) -> Option<()> {
            None
        }
    }

    #[test]
    fn closure_respects_fuel() {
        let w = weak_closure(&Counter { cap: 5 }, &0, 2);
        assert_eq!(w.reachable, BTreeSet::from([0, 1, 2]));
        assert!(!w.frontier_exhausted);
        let w = weak_closure(&Counter { cap: 5 }, &0, 5);
        assert!(w.frontier_exhausted);
        assert_eq!(w.terminals, BTreeSet::from([5]));
    }

    #[test]
    fn cycle_exhausts_frontier() {
        let w = weak_closure(&Counter { cap: 100 }, &0, 50);
        assert!(w.frontier_exhausted);
        assert_eq!(w.reachable.len(), 8);
        match may_terminate(&Counter { cap: 100 }, &0, 50) {
            Termination::Diverges { witness, .. } => assert_eq!(witness, Some((3, 3))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn termination_and_unknown() {
        assert_eq!(
            may_terminate(&Counter { cap: 5 }, &0, 10),
            Termination::Terminates { state: 5, steps: 5 }
        );
        assert!(matches!(
            may_terminate(&Counter { cap: 5 }, &0, 3),
            Termination::Unknown { .. }
        ));
    }
}
