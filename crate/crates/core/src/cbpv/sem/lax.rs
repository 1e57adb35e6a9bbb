use super::step::administrative;
use super::step::{apply_value, cbpv_closure};
use crate::cbpv::syntax::CbpvTerm::{self, *};
use crate::cbpv::syntax::{app, fst, snd, to, unfold};
use crate::kernel::{Verdict, VerdictBuilder, Witness};

/// The operand a weak rule inspects, how to rebuild the term around a
/// reduct of it, and what the rule fires to when the reduct is a head form.
fn premise(
    t: &CbpvTerm,
) -> Option<(
    &'static str,
    &CbpvTerm,
    Box<dyn Fn(&CbpvTerm) -> CbpvTerm + '_>,
    Box<dyn Fn(&CbpvTerm) -> Option<CbpvTerm> + '_>,
)> {
    Some(match t {
        Fst(s) => (
            "fst",
            &**s,
            Box::new(|e: &CbpvTerm| fst(e.clone())),
            Box::new(|e: &CbpvTerm| match e {
                PairC(a, _) => Some((**a).clone()),
                _ => None,
            }),
        ),
        Snd(s) => (
            "snd",
            &**s,
            Box::new(|e: &CbpvTerm| snd(e.clone())),
            Box::new(|e: &CbpvTerm| match e {
                PairC(_, b) => Some((**b).clone()),
                _ => None,
            }),
        ),
        App(s, v) => (
            "app",
            &**s,
            Box::new(move |e: &CbpvTerm| app(e.clone(), (**v).clone())),
            Box::new(move |e: &CbpvTerm| apply_value(e, v)),
        ),
        To(s, phi, body) => (
            "to",
            &**s,
            Box::new(move |e: &CbpvTerm| to(e.clone(), phi.clone(), (**body).clone())),
            Box::new(move |e: &CbpvTerm| match e {
                Prod(v) => Some(administrative(phi, body, v)),
                _ => None,
            }),
        ),
        Unfold(s) => (
            "unfold",
            &**s,
            Box::new(|e: &CbpvTerm| unfold(e.clone())),
            Box::new(|e: &CbpvTerm| match e {
                Fold(_, body) => Some((**body).clone()),
                _ => None,
            }),
        ),
        _ => return None,
    })
}

/// Weak versions of the `fst`, `snd`, `app`, `to` and `unfold` rules on
/// every term of `universe`: from `t ⇒ t′` in `d` steps, the congruence
/// conclusion must be reachable in at most `d` steps, and the firing
/// conclusion (when `t′` is the matching head form) in at most `d + 1`.
pub fn cbpv_lax_check(universe: &[CbpvTerm], fuel: usize) -> Verdict {
    let mut out = VerdictBuilder::new();
    for term in universe {
        let Some((op, inner, rebuild, fire)) = premise(term) else {
            continue;
        };
        let prem = cbpv_closure(inner, fuel);
        let whole = cbpv_closure(term, fuel + 1);
        for (e, d) in &prem.distance {
            let mut conclusions = Vec::new();
            if *d > 0 {
                conclusions.push(("congruence", rebuild(e), *d));
            }
            if let Some(r) = fire(e) {
                conclusions.push(("fire", r, d + 1));
            }
            for (kind, target, bound) in conclusions {
                out.checked += 1;
                if !whole.distance.get(&target).is_some_and(|k| *k <= bound) {
                    out.fail(
                        Witness::new(term, &target, format!("weak {op} {kind}")).with_trace(vec![
                            format!("{inner} => {e} in {d} steps"),
                            format!("{target} not reached from {term} within {bound} steps"),
                        ]),
                    );
                    break;
                }
            }
            if out.has_failed() {
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
    use crate::cbpv::syntax::*;

    #[test]
    fn closed_terms_up_to_five() {
        let e = Enumerator::new(TypePool::default());
        let terms: Vec<CbpvTerm> = e
            .closed_computations(5)
            .into_iter()
            .map(|(_, t)| t)
            .collect();
        for head in ["app", "to", "unfold"] {
            assert!(terms.iter().any(|t| t.head() == head), "{head}");
        }
        assert!(cbpv_lax_check(&terms, 40).is_holds());
    }

    #[test]
    fn smallest_projections() {
        // a closed fst/snd needs at least six nodes
        let e = Enumerator::new(TypePool::default());
        let k = tensor(f(unit()), f(unit()));
        let terms: Vec<CbpvTerm> = e
            .up_to(&Ty::C(k), &vec![], 6)
            .into_iter()
            .flat_map(|t| [fst(t.clone()), snd(t)])
            .collect();
        assert!(!terms.is_empty());
        assert!(cbpv_lax_check(&terms, 40).is_holds());
    }

    #[test]
    fn fst_of_reducing_pair() {
        let p = pair_c(prod_c(star()), diverge(&f(unit())));
        let t = fst(force(thunk(p)));
        assert!(cbpv_lax_check(&[t], 20).is_holds());
    }
}
