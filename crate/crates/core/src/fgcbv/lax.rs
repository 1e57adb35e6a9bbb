use super::step::fg_closure;
use super::term::{cc, cv, vc, vv, FgComp, FgTerm};
use crate::kernel::{Verdict, VerdictBuilder, Witness};

/// Weakened application rules on every computation in `universe`:
///
/// * `t ⇒ t′` gives `t • s ⇒ t′ • s`; `t ⇒ v` gives `t • s ⇒ v ◑ s`;
/// * `t ⇒ t′` gives `t ◐ w ⇒ t′ ◐ w`; `t ⇒ v` gives `t ◐ w ⇒ v ∘ w`;
/// * `s ⇒ s′` gives `v ◑ s ⇒ v ◑ s′`; `s ⇒ w` gives `v ◑ s ⇒ v ∘ w`.
///
/// Each conclusion must be reachable in no more steps than its premise.
/// The remaining rules (`[v]`, `∘`, value labels, `fix`) have no premises.
pub fn fg_lax_bialgebra_check(universe: &[FgTerm], fuel: usize) -> Verdict {
    let mut out = VerdictBuilder::new();
    for term in universe {
        let FgTerm::C(c) = term else { continue };
        let (inner, rebuild): (&FgComp, Box<dyn Fn(&FgTerm) -> FgComp>) = match c {
            FgComp::AppCC(t, s) => (
                t,
                Box::new(|e: &FgTerm| match e {
                    FgTerm::C(t2) => cc(t2.clone(), (**s).clone()),
                    FgTerm::V(v) => vc(v.clone(), (**s).clone()),
                }),
            ),
            FgComp::AppCV(t, w) => (
                t,
                Box::new(|e: &FgTerm| match e {
                    FgTerm::C(t2) => cv(t2.clone(), (**w).clone()),
                    FgTerm::V(v) => vv(v.clone(), (**w).clone()),
                }),
            ),
            FgComp::AppVC(v, s) => (
                s,
                Box::new(|e: &FgTerm| match e {
                    FgTerm::C(s2) => vc((**v).clone(), s2.clone()),
                    FgTerm::V(w) => vv((**v).clone(), w.clone()),
                }),
            ),
            _ => continue,
        };
        let premise = fg_closure(&FgTerm::C(inner.clone()), fuel);
        let whole = fg_closure(term, fuel);
        for e in &premise.reachable {
            if e == &FgTerm::C(inner.clone()) {
                continue;
            }
            out.checked += 1;
            let target = FgTerm::C(rebuild(e));
            let ok = whole
                .distance
                .get(&target)
                .is_some_and(|d| *d <= premise.distance[e]);
            if !ok {
                let rule = if matches!(e, FgTerm::V(_)) {
                    "weak fire"
                } else {
                    "weak congruence"
                };
                out.fail(Witness::new(term, &target, rule));
                break;
            }
        }
        if out.has_failed() {
            break;
        }
    }
    out.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgcbv::term::{ret, FgTables, FgValue::*};

    #[test]
    fn seeded_from_return() {
        let t = FgTerm::C(cc(ret(I), ret(K)));
        assert!(fg_lax_bialgebra_check(&[t], 10).is_holds());
    }

    #[test]
    fn small_universe() {
        let universe = FgTables::new(5, true).terms_up_to(5);
        assert!(fg_lax_bialgebra_check(&universe, 30).is_holds());
    }
}
