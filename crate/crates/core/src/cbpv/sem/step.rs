use crate::cbpv::syntax::CbpvTerm::{self, *};
use crate::cbpv::syntax::{
    app, fst, lam, shift, snd, subst_top, swap01, to, unfold, CompType, ValType,
};
use crate::kernel::{may_terminate, weak_closure, Semantics, Termination, WeakClosure};

/// Reading of the small-step rules that differ between presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StepConfig {
    /// Fire `s to x in t` when `s` steps to `prod(v)` (one-step lookahead)
    /// instead of when `s` is `prod(v)`.
    pub literal_to: bool,
}

impl Default for StepConfig {
    fn default() -> Self {
        StepConfig { literal_to: false }
    }
}

/// Name of the rule behind a transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    AppCong,
    AppBeta,
    FstCong,
    FstBeta,
    SndCong,
    SndBeta,
    ChoiceLeft,
    ChoiceRight,
    ToCong,
    ToProd,
    CaseInl,
    CaseInr,
    ForceThunk,
    PmPair,
    UnfoldCong,
    UnfoldFold,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::AppCong => "app-cong",
            Rule::AppBeta => "app-beta",
            Rule::FstCong => "fst-cong",
            Rule::FstBeta => "fst-pair",
            Rule::SndCong => "snd-cong",
            Rule::SndBeta => "snd-pair",
            Rule::ChoiceLeft => "choice-left",
            Rule::ChoiceRight => "choice-right",
            Rule::ToCong => "to-cong",
            Rule::ToProd => "to-prod",
            Rule::CaseInl => "case-inl",
            Rule::CaseInr => "case-inr",
            Rule::ForceThunk => "force-thunk",
            Rule::PmPair => "pm-pair",
            Rule::UnfoldCong => "unfold-cong",
            Rule::UnfoldFold => "unfold-fold",
        }
    }
}

/// `app(lam x:φ. t, v)`.
pub fn administrative(phi: &ValType, body: &CbpvTerm, v: &CbpvTerm) -> CbpvTerm {
    app(lam(phi.clone(), body.clone()), v.clone())
}

/// The `pm` reduct `app(lam y. app(lam x. t, v), w)`. In `t` the bound `y`
/// is index 0; under `lam y. lam x` it must be index 1, hence the swap.
pub fn pm_reduct(v: &CbpvTerm, w: &CbpvTerm, p1: &ValType, p2: &ValType, t: &CbpvTerm) -> CbpvTerm {
    let inner = app(lam(p1.clone(), swap01(t)), shift(v, 1, 0));
    app(lam(p2.clone(), inner), w.clone())
}

/// All one-step reducts of `t` with the rule used. Values and stuck terms
/// (including terms blocked on a variable) have none.
pub fn step_rules(t: &CbpvTerm, cfg: StepConfig) -> Vec<(Rule, CbpvTerm)> {
    let mut out = Vec::new();
    match t {
        App(s, v) => {
            for (_, s2) in step_rules(s, cfg) {
                out.push((Rule::AppCong, app(s2, (**v).clone())));
            }
            if let Lam(_, body) = &**s {
                out.push((Rule::AppBeta, subst_top(body, v)));
            }
        }
        Fst(s) | Snd(s) => {
            let is_fst = matches!(t, Fst(_));
            for (_, s2) in step_rules(s, cfg) {
                out.push(if is_fst {
                    (Rule::FstCong, fst(s2))
                } else {
                    (Rule::SndCong, snd(s2))
                });
            }
            if let PairC(a, c) = &**s {
                out.push(if is_fst {
                    (Rule::FstBeta, (**a).clone())
                } else {
                    (Rule::SndBeta, (**c).clone())
                });
            }
        }
        Choice(a, c) => {
            out.push((Rule::ChoiceLeft, (**a).clone()));
            out.push((Rule::ChoiceRight, (**c).clone()));
        }
        To(s, phi, body) => {
            for (_, s2) in step_rules(s, cfg) {
                if cfg.literal_to {
                    if let Prod(v) = &s2 {
                        out.push((Rule::ToProd, administrative(phi, body, v)));
                    }
                }
                out.push((Rule::ToCong, to(s2, phi.clone(), (**body).clone())));
            }
            if !cfg.literal_to {
                if let Prod(v) = &**s {
                    out.push((Rule::ToProd, administrative(phi, body, v)));
                }
            }
        }
        Case(v, p1, s, p2, r) => match &**v {
            Inl(_, _, w) => out.push((Rule::CaseInl, administrative(p1, s, w))),
            Inr(_, _, w) => out.push((Rule::CaseInr, administrative(p2, r, w))),
            _ => {}
        },
        Force(v) => {
            if let Thunk(s) = &**v {
                out.push((Rule::ForceThunk, (**s).clone()));
            }
        }
        Pm(v, p1, p2, body) => {
            if let PairV(a, c) = &**v {
                out.push((Rule::PmPair, pm_reduct(a, c, p1, p2, body)));
            }
        }
        Unfold(s) => {
            for (_, s2) in step_rules(s, cfg) {
                out.push((Rule::UnfoldCong, unfold(s2)));
            }
            if let Fold(_, body) = &**s {
                out.push((Rule::UnfoldFold, (**body).clone()));
            }
        }
        _ => {}
    }
    out
}

pub fn successors(t: &CbpvTerm) -> Vec<CbpvTerm> {
    successors_with(t, StepConfig::default())
}

pub fn successors_with(t: &CbpvTerm, cfg: StepConfig) -> Vec<CbpvTerm> {
    step_rules(t, cfg).into_iter().map(|(_, s)| s).collect()
}

/// Terminal behaviour of a head form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Observation {
    Unit,
    Inl(CbpvTerm),
    Inr(CbpvTerm),
    PairV(CbpvTerm, CbpvTerm),
    Thunk(CbpvTerm),
    Producer(CbpvTerm),
    /// `lam x:φ. M`; apply with [`apply_value`].
    Fun(ValType, CbpvTerm),
    Tensor(CbpvTerm, CbpvTerm),
    Fold(CompType, CbpvTerm),
}

pub fn observe(t: &CbpvTerm) -> Option<Observation> {
    Some(match t {
        Star => Observation::Unit,
        Inl(_, _, v) => Observation::Inl((**v).clone()),
        Inr(_, _, v) => Observation::Inr((**v).clone()),
        PairV(a, c) => Observation::PairV((**a).clone(), (**c).clone()),
        Thunk(s) => Observation::Thunk((**s).clone()),
        Prod(v) => Observation::Producer((**v).clone()),
        Lam(phi, m) => Observation::Fun(phi.clone(), (**m).clone()),
        PairC(a, c) => Observation::Tensor((**a).clone(), (**c).clone()),
        Fold(k, s) => Observation::Fold(k.clone(), (**s).clone()),
        _ => return None,
    })
}

/// `lam x.M —v→ M[v/x]`.
pub fn apply_value(t: &CbpvTerm, v: &CbpvTerm) -> Option<CbpvTerm> {
    match t {
        Lam(_, m) => Some(subst_top(m, v)),
        _ => None,
    }
}

/// The CBPV reduction relation as a transition system.
#[derive(Clone, Copy, Debug, Default)]
pub struct Cbpv {
    pub cfg: StepConfig,
}

impl Semantics for Cbpv {
    type Term = CbpvTerm;
    type Obs = Observation;

    fn successors(&self, t: &CbpvTerm) -> Vec<CbpvTerm> {
        successors_with(t, self.cfg)
    }

    fn observe(&self, t: &CbpvTerm) -> Option<Observation> {
        observe(t)
    }
}

pub fn cbpv_closure(t: &CbpvTerm, fuel: usize) -> WeakClosure<CbpvTerm> {
    weak_closure(&Cbpv::default(), t, fuel)
}

/// May-termination: some path reaches a term without reducts.
pub fn may_terminates(t: &CbpvTerm, fuel: usize) -> Termination<CbpvTerm> {
    may_terminate(&Cbpv::default(), t, fuel)
}

/// One transition `term --rule--> successor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub term: CbpvTerm,
    pub rule: Rule,
    pub successor: CbpvTerm,
}

/// Breadth-first transition records from `t`, expanding at most
/// `max_states` distinct states. Each state is expanded once.
pub fn trace_cbpv(t: &CbpvTerm, cfg: StepConfig, max_states: usize) -> Vec<TraceRecord> {
    let mut seen = std::collections::HashSet::from([t.clone()]);
    let mut queue = std::collections::VecDeque::from([t.clone()]);
    let mut out = Vec::new();
    let mut expanded = 0;
    while let Some(u) = queue.pop_front() {
        if expanded == max_states {
            break;
        }
        expanded += 1;
        for (rule, v) in step_rules(&u, cfg) {
            if seen.insert(v.clone()) {
                queue.push_back(v.clone());
            }
            out.push(TraceRecord {
                term: u.clone(),
                rule,
                successor: v,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbpv::syntax::*;

    #[test]
    fn force_thunk_and_choice() {
        let t = prod_c(star());
        assert_eq!(successors(&force(thunk(t.clone()))), vec![t.clone()]);
        let s = prod_c(inl(unit(), unit(), star()));
        assert_eq!(
            successors(&choice(t.clone(), s.clone())),
            vec![t.clone(), s]
        );
        assert_eq!(successors(&choice(t.clone(), t.clone())).len(), 2);
    }

    #[test]
    fn pm_builds_administrative_redexes() {
        let phi = u(f(unit()));
        let v = star();
        let w = thunk(prod_c(star()));
        // pm(pair(v, w), (x, y). force y)
        let t = pm(
            pair_v(v.clone(), w.clone()),
            unit(),
            phi.clone(),
            force(var(0)),
        );
        let expected = app(
            lam(phi.clone(), app(lam(unit(), force(var(1))), v.clone())),
            w.clone(),
        );
        assert_eq!(successors(&t), vec![expected.clone()]);
        // and it runs to force(w)
        let s1 = successors(&expected);
        assert_eq!(s1, vec![app(lam(unit(), force(w.clone())), v)]);
        assert_eq!(successors(&s1[0]), vec![force(w)]);
    }

    #[test]
    fn lookahead_to_rule() {
        let body = prod_c(var(0));
        let s = force(thunk(prod_c(star())));
        let t = to(s.clone(), unit(), body.clone());
        let gsos = successors(&t);
        assert_eq!(gsos, vec![to(prod_c(star()), unit(), body.clone())]);
        let literal = successors_with(&t, StepConfig { literal_to: true });
        assert!(literal.contains(&administrative(&unit(), &body, &star())));
        // the literal reading leaves to(prod v, x.t) stuck
        let stuck = to(prod_c(star()), unit(), body.clone());
        assert!(successors_with(&stuck, StepConfig { literal_to: true }).is_empty());
        assert_eq!(
            successors(&stuck),
            vec![administrative(&unit(), &body, &star())]
        );
    }

    #[test]
    fn diverge_cycles() {
        let d = diverge(&f(unit()));
        match may_terminates(&d, 100) {
            Termination::Diverges { witness, .. } => assert!(witness.is_some()),
            other => panic!("{other:?}"),
        }
        let t = choice(d, prod_c(star()));
        assert!(matches!(
            may_terminates(&t, 100),
            Termination::Terminates { .. }
        ));
    }

    #[test]
    fn trace_of_cycle() {
        let d = diverge(&f(unit()));
        let recs = trace_cbpv(&d, StepConfig::default(), 10);
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0].rule, Rule::AppCong);
        assert_eq!(recs[2].successor, d);
    }

    #[test]
    fn observations() {
        assert_eq!(
            observe(&prod_c(star())),
            Some(Observation::Producer(star()))
        );
        assert_eq!(observe(&star()), Some(Observation::Unit));
        assert_eq!(observe(&var(0)), None);
        assert_eq!(
            apply_value(&lam(unit(), prod_c(var(0))), &star()),
            Some(prod_c(star()))
        );
    }
}
