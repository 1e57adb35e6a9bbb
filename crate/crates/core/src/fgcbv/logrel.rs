use std::collections::BTreeMap;

use super::sim::{FgRelation, FgRuns};
use super::step::{fg_apply_label, fg_step};
use super::term::{FgTerm, FgValue, Sort};
use crate::kernel::{stepindex_chain, StepClauses, StepIndexed};

/// Clauses of the two-sorted step-indexed logical relation.
///
/// Value pairs are tested on related inputs drawn from `inputs`;
/// computation pairs match each reduct weakly and sort-wise.
pub struct FgLogrel {
    pub inputs: Vec<FgValue>,
    pub runs: FgRuns,
    pub assume_reflexive: bool,
}

impl FgLogrel {
    pub fn new(inputs: Vec<FgValue>, fuel: usize) -> Self {
        FgLogrel {
            inputs,
            runs: FgRuns::new(fuel),
            assume_reflexive: true,
        }
    }
}

impl StepClauses for FgLogrel {
    type Pair = (FgTerm, FgTerm);

    fn next_holds(&self, (p, q): &Self::Pair, prev: &mut dyn FnMut(&Self::Pair) -> bool) -> bool {
        if self.assume_reflexive && p == q {
            return true;
        }
        match (p, q) {
            (FgTerm::V(v), FgTerm::V(w)) => {
                for u in &self.inputs {
                    for z in &self.inputs {
                        if prev(&(FgTerm::V(u.clone()), FgTerm::V(z.clone())))
                            && !prev(&(
                                FgTerm::C(fg_apply_label(v, u)),
                                FgTerm::C(fg_apply_label(w, z)),
                            ))
                        {
                            return false;
                        }
                    }
                }
                true
            }
            // Backward steps on the right preserve the relation, so `q`
            // itself is the best computation to match against, and a value
            // can only be matched by the value `q` returns.
            (FgTerm::C(t), FgTerm::C(_)) => match fg_step(t) {
                e @ FgTerm::C(_) => prev(&(e, q.clone())),
                e @ FgTerm::V(_) => match self.runs.get(q).value() {
                    Some(w) => prev(&(e, FgTerm::V(w.clone()))),
                    None => false,
                },
            },
            _ => false,
        }
    }
}

/// Labels followed by the universe's values.
pub fn fg_logrel_inputs(universe: &[FgTerm], labels: &[FgValue]) -> Vec<FgValue> {
    let mut inputs = labels.to_vec();
    for t in universe {
        if let FgTerm::V(v) = t {
            if !inputs.contains(v) {
                inputs.push(v.clone());
            }
        }
    }
    inputs
}

/// `[L^0, …, L^depth]` restricted to the universe, per sort.
pub fn fg_logrel(
    universe: &[FgTerm],
    labels: &[FgValue],
    depth: usize,
    fuel: usize,
) -> Vec<FgRelation> {
    let mut rel = StepIndexed::new(FgLogrel::new(fg_logrel_inputs(universe, labels), fuel));
    let mut u: BTreeMap<Sort, Vec<FgTerm>> = BTreeMap::new();
    for t in universe {
        u.entry(t.sort()).or_default().push(t.clone());
    }
    stepindex_chain(&mut rel, &u, depth, |_, a, b| (a.clone(), b.clone()))
}
