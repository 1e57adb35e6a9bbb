use super::term::{cc, cv, fix, kp, ret, sp, spp, vc, vv, FgComp, FgTerm, FgValue};
use crate::kernel::{weak_closure, Semantics, WeakClosure};

/// The unique reduct of a computation.
pub fn fg_step(t: &FgComp) -> FgTerm {
    match t {
        FgComp::Ret(v) => FgTerm::V((**v).clone()),
        FgComp::AppCC(t, s) => FgTerm::C(match fg_step(t) {
            FgTerm::C(t2) => cc(t2, (**s).clone()),
            FgTerm::V(v) => vc(v, (**s).clone()),
        }),
        FgComp::AppCV(t, w) => FgTerm::C(match fg_step(t) {
            FgTerm::C(t2) => cv(t2, (**w).clone()),
            FgTerm::V(v) => vv(v, (**w).clone()),
        }),
        FgComp::AppVC(v, s) => FgTerm::C(match fg_step(s) {
            FgTerm::C(s2) => vc((**v).clone(), s2),
            FgTerm::V(w) => vv((**v).clone(), w),
        }),
        FgComp::AppVV(v, w) => FgTerm::C(fg_apply_label(v, w)),
        // fix(t) → t ◐ S″(K ∘ I, fix(t))
        FgComp::Fix(body) => FgTerm::C(cv(
            (**body).clone(),
            spp(vv(FgValue::K, FgValue::I), fix((**body).clone())),
        )),
    }
}

/// `v —w→ t`.
pub fn fg_apply_label(v: &FgValue, w: &FgValue) -> FgComp {
    match v {
        FgValue::S => ret(sp(ret(w.clone()))),
        FgValue::Sp(t) => ret(spp((**t).clone(), ret(w.clone()))),
        FgValue::Spp(t, s) => cc(cv((**t).clone(), w.clone()), cv((**s).clone(), w.clone())),
        FgValue::K => ret(kp(ret(w.clone()))),
        FgValue::Kp(t) => (**t).clone(),
        FgValue::I => ret(w.clone()),
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Fg;

impl Semantics for Fg {
    type Term = FgTerm;
    type Obs = ();

    fn successors(&self, t: &FgTerm) -> Vec<FgTerm> {
        match t {
            FgTerm::C(c) => vec![fg_step(c)],
            FgTerm::V(_) => vec![],
        }
    }

    fn observe(&self, t: &FgTerm) -> Option<()> {
        matches!(t, FgTerm::V(_)).then_some(())
    }
}

pub fn fg_closure(t: &FgTerm, fuel: usize) -> WeakClosure<FgTerm> {
    weak_closure(&Fg, t, fuel)
}

/// The run of a term: every state until a value, a repeated state, or fuel.
#[derive(Debug)]
pub struct FgRun {
    pub states: Vec<FgTerm>,
    /// No further states exist beyond those listed (value reached or cycle closed).
    pub complete: bool,
}

impl FgRun {
    pub fn new(t: &FgTerm, fuel: usize) -> FgRun {
        let mut states = vec![t.clone()];
        let mut seen = std::collections::HashSet::from([t.clone()]);
        for _ in 0..fuel {
            let FgTerm::C(c) = states.last().unwrap() else {
                return FgRun {
                    states,
                    complete: true,
                };
            };
            let next = fg_step(c);
            if !seen.insert(next.clone()) {
                return FgRun {
                    states,
                    complete: true,
                };
            }
            states.push(next);
        }
        let complete = matches!(states.last(), Some(FgTerm::V(_)));
        FgRun { states, complete }
    }

    pub fn value(&self) -> Option<&FgValue> {
        match self.states.last() {
            Some(FgTerm::V(v)) => Some(v),
            _ => None,
        }
    }
}
