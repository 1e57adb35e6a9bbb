use std::collections::BTreeMap;

use super::sim::{Runs, XclRelation};
use super::step::{apply_label, step, XclStep};
use super::term::XclTerm;
use crate::kernel::{stepindex_chain, StepClauses, StepIndexed};

/// Clauses of the step-indexed logical relation on xCL terms.
///
/// Function inputs `d, e` range over a finite set. With `assume_reflexive`
/// identical terms are related at every level; every level of the full
/// relation contains the diagonal, so this only short-cuts work.
pub struct XclLogrel {
    pub inputs: Vec<XclTerm>,
    pub runs: Runs,
    pub assume_reflexive: bool,
}

impl XclLogrel {
    pub fn new(inputs: Vec<XclTerm>, fuel: usize) -> Self {
        XclLogrel {
            inputs,
            runs: Runs::new(fuel),
            assume_reflexive: true,
        }
    }
}

impl StepClauses for XclLogrel {
    type Pair = (XclTerm, XclTerm);

    fn next_holds(&self, (p, q): &Self::Pair, prev: &mut dyn FnMut(&Self::Pair) -> bool) -> bool {
        if self.assume_reflexive && p == q {
            return true;
        }
        match step(p) {
            // Some `q ⇒ q2` with `L^n(p2, q2)` exists iff `L^n(p2, q)`, as the
            // relation is closed under backward steps on the right.
            XclStep::Reduces(p2) => prev(&(p2, q.clone())),
            XclStep::Terminal => {
                let qrun = self.runs.get(q);
                let Some(qbar) = qrun.terminal() else {
                    return false;
                };
                for d in &self.inputs {
                    for e in &self.inputs {
                        if prev(&(d.clone(), e.clone())) {
                            let pd = apply_label(p, d).expect("terminal");
                            let qe = apply_label(qbar, e).expect("terminal");
                            if !prev(&(pd, qe)) {
                                return false;
                            }
                        }
                    }
                }
                true
            }
        }
    }
}

/// Inputs for the termination clause: labels followed by universe members.
pub fn logrel_inputs(universe: &[XclTerm], labels: &[XclTerm]) -> Vec<XclTerm> {
    let mut inputs = labels.to_vec();
    for t in universe {
        if !inputs.contains(t) {
            inputs.push(t.clone());
        }
    }
    inputs
}

/// `[L^0, …, L^depth]` restricted to `universe²`.
pub fn logrel_xcl(
    universe: &[XclTerm],
    labels: &[XclTerm],
    depth: usize,
    fuel: usize,
) -> Vec<XclRelation> {
    let mut rel = StepIndexed::new(XclLogrel::new(logrel_inputs(universe, labels), fuel));
    let u = BTreeMap::from([((), universe.to_vec())]);
    stepindex_chain(&mut rel, &u, depth, |_, a, b| (a.clone(), b.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{is_antitone, stabilization_index};
    use crate::xcl::term::{app, kp, omega, XclTerm::*};

    #[test]
    fn omega_and_identity() {
        let u = vec![I, omega()];
        let chain = logrel_xcl(&u, &[I, K], 2, 200);
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[0].len(), 4);
        assert!(!chain[1].contains(&(), &I, &omega()));
        assert!(chain[2].contains(&(), &omega(), &I));
    }

    #[test]
    fn identity_related_to_its_expansion() {
        let t = app(kp(I), I);
        let u = vec![I, t.clone()];
        let chain = logrel_xcl(&u, &[I, K, S], 8, 100);
        assert!(chain
            .iter()
            .all(|l| l.contains(&(), &I, &t) && l.contains(&(), &t, &I)));
        assert!(is_antitone(&chain));
        assert!(stabilization_index(&chain).is_some());
    }
}
