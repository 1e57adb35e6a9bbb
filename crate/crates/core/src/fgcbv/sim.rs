use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::step::{fg_apply_label, fg_step, FgRun};
use super::term::{ret, FgTerm, FgValue, Sort};
use crate::kernel::{
    simulation_fixpoint, FixpointRun, IndexedRelation, Verdict, VerdictBuilder, Witness,
};

pub type FgRelation = IndexedRelation<Sort, FgTerm>;

#[derive(Debug)]
pub struct FgRuns {
    pub fuel: usize,
    cache: RefCell<HashMap<FgTerm, Rc<FgRun>>>,
}

impl FgRuns {
    pub fn new(fuel: usize) -> Self {
        FgRuns {
            fuel,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn get(&self, t: &FgTerm) -> Rc<FgRun> {
        if let Some(r) = self.cache.borrow().get(t) {
            return r.clone();
        }
        let run = Rc::new(FgRun::new(t, self.fuel));
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
    sort: Sort,
    p: &FgTerm,
    q: &FgTerm,
    rel: &FgRelation,
    labels: &[FgValue],
    runs: &FgRuns,
) -> Clause {
    if p.sort() != sort || q.sort() != sort {
        return Clause::Violated(Witness::new(p, q, format!("sort {sort}")));
    }
    if p == q && rel.has_diagonal_at(&sort) {
        return Clause::Ok;
    }
    match (p, q) {
        (FgTerm::V(v), FgTerm::V(w)) => {
            for u in labels {
                let t = FgTerm::C(fg_apply_label(v, u));
                let s = FgTerm::C(fg_apply_label(w, u));
                if !rel.contains(&Sort::Computation, &t, &s) {
                    return Clause::Violated(
                        Witness::new(p, q, format!("value label {u}"))
                            .with_trace(vec![format!("{v} -{u}-> {t}"), format!("{w} -{u}-> {s}")]),
                    );
                }
            }
            Clause::Ok
        }
        (FgTerm::C(t), _) => {
            let e = fg_step(t);
            let run = runs.get(q);
            let target = e.sort();
            if run
                .states
                .iter()
                .any(|e2| e2.sort() == target && rel.contains(&target, &e, e2))
            {
                return Clause::Ok;
            }
            if !run.complete {
                return Clause::OutOfFuel(format!("{q} did not settle in {} steps", runs.fuel));
            }
            let clause = if target == Sort::Value {
                "computation to value"
            } else {
                "computation to computation"
            };
            Clause::Violated(Witness::new(p, q, clause).with_trace(vec![
                format!("{t} -> {e}"),
                format!(
                    "no related {target} among {} weak reducts of {q}",
                    run.states.len()
                ),
            ]))
        }
        _ => unreachable!("sorts checked above"),
    }
}

/// The diagonal is a simulation only when present at both sorts: `[v] → v`
/// ties computations to values, and `v —u→ t` ties values to computations.
fn diagonal_consistent(rel: &FgRelation, labels: &[FgValue]) -> Result<(), Witness> {
    let dv = rel.has_diagonal_at(&Sort::Value);
    let dc = rel.has_diagonal_at(&Sort::Computation);
    if dc && !dv {
        let t = FgTerm::C(ret(FgValue::I));
        return Err(
            Witness::new(&t, &t, "computation to value").with_trace(vec![
                "diagonal at computations without diagonal at values".into(),
                "[I] -> I, and [I] => w only for w in {[I], I}, but no value pair is related"
                    .into(),
            ]),
        );
    }
    if dv && !dc {
        if let Some(u) = labels.first() {
            let t = FgTerm::C(ret(u.clone()));
            return Err(
                Witness::new(FgValue::I, FgValue::I, format!("value label {u}")).with_trace(vec![
                    "diagonal at values without diagonal at computations".into(),
                    format!("I -{u}-> {t} on both sides, but ({t}, {t}) is not related"),
                ]),
            );
        }
    }
    Ok(())
}

/// Checks the three simulation clauses on every listed pair, labels ranging
/// over `labels` only.
pub fn fg_check_simulation(rel: &FgRelation, labels: &[FgValue], fuel: usize) -> Verdict {
    if let Err(w) = diagonal_consistent(rel, labels) {
        return Verdict::fails(w);
    }
    let runs = FgRuns::new(fuel);
    let mut out = VerdictBuilder::new();
    for (sort, p, q) in rel.iter() {
        out.checked += 1;
        match check_pair(*sort, p, q, rel, labels, &runs) {
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

/// Greatest simulation inside `universe² ∪ Δ`, per sort.
pub fn fg_greatest_simulation(
    universe: &[FgTerm],
    labels: &[FgValue],
    fuel: usize,
) -> FixpointRun<Sort, FgTerm> {
    let runs = FgRuns::new(fuel);
    let mut u: BTreeMap<Sort, Vec<FgTerm>> = BTreeMap::new();
    for t in universe {
        u.entry(t.sort()).or_default().push(t.clone());
    }
    simulation_fixpoint(&u, true, |s, p, q, rel| {
        matches!(check_pair(*s, p, q, rel, labels, &runs), Clause::Ok)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgcbv::term::{kp, vv, FgValue::*};
    use crate::kernel::{Diagonal, Status};

    fn labels() -> Vec<FgValue> {
        vec![I, K, S]
    }

    #[test]
    fn return_i_not_below_return_k() {
        let mut r = FgRelation::new();
        r.insert(Sort::Computation, FgTerm::C(ret(I)), FgTerm::C(ret(K)));
        let v = fg_check_simulation(&r, &labels(), 50);
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.witness.unwrap().clause, "computation to value");
    }

    #[test]
    fn beta_with_full_diagonal() {
        let (v, w) = (K, I);
        let t = fg_apply_label(&v, &w);
        let mut r = FgRelation::identity();
        r.insert(
            Sort::Computation,
            FgTerm::C(vv(v.clone(), w.clone())),
            FgTerm::C(t.clone()),
        );
        assert!(fg_check_simulation(&r, &labels(), 50).is_holds());
        let mut r = FgRelation::identity();
        r.insert(Sort::Computation, FgTerm::C(t), FgTerm::C(vv(v, w)));
        assert!(fg_check_simulation(&r, &labels(), 50).is_holds());
    }

    #[test]
    fn computation_diagonal_alone_is_not_a_simulation() {
        let mut r = FgRelation::new().with_diagonal(Diagonal::At([Sort::Computation].into()));
        r.insert(
            Sort::Computation,
            FgTerm::C(vv(K, I)),
            FgTerm::C(ret(kp(ret(I)))),
        );
        assert_eq!(fg_check_simulation(&r, &labels(), 50).status, Status::Fails);
    }
}
