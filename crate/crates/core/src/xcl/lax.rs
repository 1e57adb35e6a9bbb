use super::step::{apply_label, xcl_closure};
use super::term::{app, XclTerm};
use crate::kernel::{Verdict, VerdictBuilder, Witness};

/// Weakened rules hold on every application in `universe`:
///
/// * `t ⇒ t′` gives `t s ⇒ t′ s` in no more steps;
/// * `t ⇒ t̄ —s→ t′` gives `t s ⇒ t′`.
///
/// The combinator rules have no premises and hold as they stand.
pub fn lax_bialgebra_check_xcl(universe: &[XclTerm], fuel: usize) -> Verdict {
    let mut out = VerdictBuilder::new();
    for term in universe {
        let XclTerm::App(t, s) = term else { continue };
        let wt = xcl_closure(t, fuel);
        let whole = xcl_closure(term, fuel + 1);
        for t2 in &wt.reachable {
            out.checked += 1;
            let target = app(t2.clone(), (**s).clone());
            let ok = whole
                .distance
                .get(&target)
                .is_some_and(|d| *d <= wt.distance[t2]);
            if !ok {
                out.fail(Witness::new(term, &target, "weak app congruence"));
            }
        }
        for tbar in &wt.terminals {
            out.checked += 1;
            let target = apply_label(tbar, s).expect("terminal");
            if !whole.contains(&target) {
                out.fail(Witness::new(term, &target, "weak app fire"));
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
    use crate::xcl::term::{terms_up_to, XclTerm::*};

    #[test]
    fn trace_instance() {
        assert!(lax_bialgebra_check_xcl(&[app(app(app(S, K), I), I)], 10).is_holds());
    }

    #[test]
    fn small_terms() {
        assert!(lax_bialgebra_check_xcl(&terms_up_to(4), 20).is_holds());
    }
}
