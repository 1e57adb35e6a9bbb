use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::step::{apply_label, is_terminal, step, XclStep};
use super::term::XclTerm;
use crate::kernel::{
    simulation_fixpoint, FixpointRun, IndexedRelation, Verdict, VerdictBuilder, Witness,
};

pub type XclRelation = IndexedRelation<(), XclTerm>;

/// The deterministic run of a term, truncated at `fuel` steps.
#[derive(Debug)]
pub struct Run {
    pub states: Vec<XclTerm>,
    /// Whether the last state is terminal (as opposed to fuel running out).
    pub complete: bool,
}

impl Run {
    pub fn terminal(&self) -> Option<&XclTerm> {
        if self.complete {
            self.states.last()
        } else {
            None
        }
    }
}

/// Per-check cache of runs, keyed by start term.
#[derive(Debug)]
pub struct Runs {
    pub fuel: usize,
    cache: RefCell<HashMap<XclTerm, Rc<Run>>>,
}

impl Runs {
    pub fn new(fuel: usize) -> Self {
        Runs {
            fuel,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn get(&self, t: &XclTerm) -> Rc<Run> {
        if let Some(r) = self.cache.borrow().get(t) {
            return r.clone();
        }
        let mut states = vec![t.clone()];
        let mut complete = false;
        for _ in 0..self.fuel {
            match step(states.last().unwrap()) {
                XclStep::Reduces(n) => states.push(n),
                XclStep::Terminal => break,
            }
        }
        if is_terminal(states.last().unwrap()) {
            complete = true;
        }
        let run = Rc::new(Run { states, complete });
        self.cache.borrow_mut().insert(t.clone(), run.clone());
        run
    }
}

enum Clause {
    Ok,
    Violated(Witness),
    OutOfFuel(String),
}

fn check_pair(
    p: &XclTerm,
    q: &XclTerm,
    rel: &XclRelation,
    labels: &[XclTerm],
    runs: &Runs,
) -> Clause {
    if p == q && rel.has_diagonal_at(&()) {
        return Clause::Ok;
    }
    let qrun = runs.get(q);
    match step(p) {
        XclStep::Reduces(p2) => {
            if qrun.states.iter().any(|q2| rel.contains(&(), &p2, q2)) {
                Clause::Ok
            } else if !qrun.complete {
                Clause::OutOfFuel(format!("{q} did not settle in {} steps", runs.fuel))
            } else {
                Clause::Violated(Witness::new(p, q, "reduction").with_trace(vec![
                    format!("{p} -> {p2}"),
                    format!(
                        "no related state among {} weak reducts of {q}",
                        qrun.states.len()
                    ),
                ]))
            }
        }
        XclStep::Terminal => {
            let Some(qbar) = qrun.terminal() else {
                return Clause::OutOfFuel(format!("{q} did not terminate in {} steps", runs.fuel));
            };
            for t in labels {
                let pt = apply_label(p, t).expect("terminal");
                let qt = apply_label(qbar, t).expect("terminal");
                if !rel.contains(&(), &pt, &qt) {
                    return Clause::Violated(Witness::new(p, q, format!("label {t}")).with_trace(
                        vec![
                            format!("{p} -{t}-> {pt}"),
                            format!("{q} => {qbar} -{t}-> {qt}"),
                            format!("({pt}, {qt}) not in relation"),
                        ],
                    ));
                }
            }
            Clause::Ok
        }
    }
}

/// Checks that every listed pair of `rel` satisfies both simulation clauses.
/// Labels range over `labels` only, so a `Holds` is relative to that set.
pub fn check_applicative_simulation(rel: &XclRelation, labels: &[XclTerm], fuel: usize) -> Verdict {
    let runs = Runs::new(fuel);
    let mut out = VerdictBuilder::new();
    for (_, p, q) in rel.iter() {
        out.checked += 1;
        match check_pair(p, q, rel, labels, &runs) {
            Clause::Ok => {}
            Clause::Violated(w) => {
                out.fail(w);
                break;
            }
            Clause::OutOfFuel(msg) => out.unknown(msg),
        }
    }
    out.finish()
        .note(format!("relative to {} labels", labels.len()))
}

/// Greatest simulation inside `universe² ∪ Δ`.
pub fn greatest_simulation(
    universe: &[XclTerm],
    labels: &[XclTerm],
    fuel: usize,
) -> FixpointRun<(), XclTerm> {
    let runs = Runs::new(fuel);
    let u = BTreeMap::from([((), universe.to_vec())]);
    simulation_fixpoint(&u, true, |_, p, q, rel| {
        matches!(check_pair(p, q, rel, labels, &runs), Clause::Ok)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Status;
    use crate::xcl::term::{app, spp, XclTerm::*};

    #[test]
    fn k_is_not_simulated_by_i() {
        let mut r = XclRelation::new();
        r.insert((), K, I);
        let v = check_applicative_simulation(&r, &[I], 100);
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.witness.unwrap().clause, "label I");
    }

    #[test]
    fn trace_pairs_form_a_simulation() {
        let src = app(spp(K, I), S);
        let mut r = XclRelation::identity();
        r.insert((), src.clone(), S);
        r.insert((), app(app(K, S), app(I, S)), S);
        r.insert((), app(crate::xcl::term::kp(S), app(I, S)), S);
        let labels = crate::xcl::term::terms_up_to(2);
        assert!(check_applicative_simulation(&r, &labels, 50).is_holds());
    }

    #[test]
    fn fixpoint_drops_k_i_first() {
        let run = greatest_simulation(&[K, I], &[I], 50);
        assert!(run.removed[0].contains(&((), K, I)));
        assert!(!run.relation.contains(&(), &K, &I));
        assert!(run.relation.contains(&(), &K, &K));
    }
}
