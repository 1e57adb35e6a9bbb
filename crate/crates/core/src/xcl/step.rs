use thiserror::Error;

use super::term::{app, kp, sp, spp, XclTerm};
use crate::kernel::{weak_closure, Semantics, WeakClosure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XclStep {
    Reduces(XclTerm),
    /// The term only has labelled transitions; see [`apply_label`].
    Terminal,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum XclError {
    #[error("term {0} reduces and has no labelled transitions")]
    NotTerminal(XclTerm),
}

/// One unlabelled transition: left congruence through the spine, or firing
/// a terminal head on its argument.
pub fn step(p: &XclTerm) -> XclStep {
    match p {
        XclTerm::App(f, a) => match step(f) {
            XclStep::Reduces(f2) => XclStep::Reduces(XclTerm::App(Box::new(f2), a.clone())),
            XclStep::Terminal => XclStep::Reduces(fire(f, a)),
        },
        _ => XclStep::Terminal,
    }
}

pub fn apply_label(p: &XclTerm, t: &XclTerm) -> Result<XclTerm, XclError> {
    match p {
        XclTerm::App(..) => Err(XclError::NotTerminal(p.clone())),
        _ => Ok(fire(p, t)),
    }
}

fn fire(p: &XclTerm, t: &XclTerm) -> XclTerm {
    use XclTerm::*;
    match p {
        S => sp(t.clone()),
        Sp(q) => spp((**q).clone(), t.clone()),
        Spp(q, r) => app(app((**q).clone(), t.clone()), app((**r).clone(), t.clone())),
        K => kp(t.clone()),
        Kp(q) => (**q).clone(),
        I => t.clone(),
        App(..) => unreachable!("fire on reducing term"),
    }
}

pub fn is_terminal(p: &XclTerm) -> bool {
    !matches!(p, XclTerm::App(..))
}

/// Runs `p` for at most `fuel` steps; returns the last state and the steps taken.
pub fn run(p: &XclTerm, fuel: usize) -> (XclTerm, usize) {
    let mut cur = p.clone();
    for n in 0..fuel {
        match step(&cur) {
            XclStep::Reduces(next) => cur = next,
            XclStep::Terminal => return (cur, n),
        }
    }
    (cur, fuel)
}

/// xCL as a transition system. Divergence proofs use the pumping preorder
/// `C[a⃗] ⊒ C[b⃗]` whenever each `aᵢ ⇒ bᵢ`: the left side then needs at least
/// as many steps to terminate as the right, so a run that reaches a state
/// pumping one of its ancestors cannot terminate sooner than that ancestor.
#[derive(Clone, Copy, Debug)]
pub struct Xcl {
    /// Steps allowed when checking `aᵢ ⇒ bᵢ` inside the preorder.
    pub pump_fuel: usize,
}

impl Default for Xcl {
    fn default() -> Self {
        Xcl { pump_fuel: 8 }
    }
}

impl Semantics for Xcl {
    type Term = XclTerm;
    type Obs = ();

    fn successors(&self, t: &XclTerm) -> Vec<XclTerm> {
        match step(t) {
            XclStep::Reduces(n) => vec![n],
            XclStep::Terminal => vec![],
        }
    }

    fn observe(&self, t: &XclTerm) -> Option<()> {
        is_terminal(t).then_some(())
    }

    fn subsumes(&self, later: &XclTerm, earlier: &XclTerm) -> bool {
        pumps(later, earlier, self.pump_fuel)
    }

    fn subsumption_key(&self, t: &XclTerm) -> u64 {
        t.spine_key()
    }
}

fn pumps(a: &XclTerm, b: &XclTerm, fuel: usize) -> bool {
    use XclTerm::*;
    if a == b {
        return true;
    }
    let structural = match (a, b) {
        (Sp(x), Sp(y)) | (Kp(x), Kp(y)) => pumps(x, y, fuel),
        (Spp(x1, x2), Spp(y1, y2)) | (App(x1, x2), App(y1, y2)) => {
            pumps(x1, y1, fuel) && pumps(x2, y2, fuel)
        }
        _ => false,
    };
    structural || reaches_within(a, b, fuel)
}

fn reaches_within(a: &XclTerm, b: &XclTerm, fuel: usize) -> bool {
    let mut cur = a.clone();
    for _ in 0..fuel {
        match step(&cur) {
            XclStep::Reduces(next) => cur = next,
            XclStep::Terminal => return false,
        }
        if &cur == b {
            return true;
        }
    }
    false
}

pub fn xcl_closure(t: &XclTerm, fuel: usize) -> WeakClosure<XclTerm> {
    weak_closure(&Xcl::default(), t, fuel)
}

/// `{q′ | q ⇒ q̄ —label→ q′}` within `fuel` reduction steps.
pub fn weak_labelled(q: &XclTerm, label: &XclTerm, fuel: usize) -> Vec<XclTerm> {
    let (end, _) = run(q, fuel);
    if is_terminal(&end) {
        vec![fire(&end, label)]
    } else {
        vec![]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{may_terminate, Termination};
    use crate::xcl::term::{omega, XclTerm::*};

    #[test]
    fn paper_trace() {
        let t0 = app(app(S, K), I);
        let XclStep::Reduces(t1) = step(&t0) else {
            panic!()
        };
        assert_eq!(t1, app(sp(K), I));
        let XclStep::Reduces(t2) = step(&t1) else {
            panic!()
        };
        assert_eq!(t2, spp(K, I));
        assert_eq!(step(&t2), XclStep::Terminal);
        let t3 = apply_label(&t2, &I).unwrap();
        assert_eq!(t3, app(app(K, I), app(I, I)));
        let (end, n) = run(&t3, 10);
        assert_eq!((end, n), (I, 2));
    }

    #[test]
    fn apply_label_errors_on_application() {
        assert!(apply_label(&app(I, I), &K).is_err());
        assert_eq!(apply_label(&K, &K), Ok(kp(K)));
    }

    #[test]
    fn omega_is_proved_divergent() {
        match may_terminate(&Xcl::default(), &omega(), 500) {
            Termination::Diverges {
                witness: Some((later, earlier)),
                ..
            } => {
                assert!(pumps(&later, &earlier, 8));
            }
            other => panic!("{other:?}"),
        }
        let w = xcl_closure(&omega(), 50);
        assert!(!w.frontier_exhausted);
        assert_eq!(w.reachable.len(), 51);
    }
}
