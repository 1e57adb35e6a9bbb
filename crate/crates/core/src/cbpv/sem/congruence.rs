use std::collections::BTreeMap;

use super::clauses::CbpvIndex;
use super::sim::CbpvRelation;
use crate::cbpv::syntax::CbpvTerm::{self, *};
use crate::cbpv::syntax::{typecheck, CompType, Ctx, ValType};
use crate::kernel::{Verdict, VerdictBuilder, Witness};

/// Operator with its annotations, for deciding whether two terms share a head.
#[derive(PartialEq, Eq, Debug)]
enum Key<'a> {
    Var(usize),
    Plain(&'static str),
    Val(&'static str, Vec<&'a ValType>),
    Comp(&'static str, &'a CompType),
}

/// Operator key and operands, each with the variables its binder adds.
fn decompose(t: &CbpvTerm) -> (Key<'_>, Vec<(Vec<ValType>, &CbpvTerm)>) {
    fn no(s: &CbpvTerm) -> (Vec<ValType>, &CbpvTerm) {
        (Vec::new(), s)
    }
    let head = t.head();
    let plain = Key::Plain(head);
    match t {
        Var(j) => (Key::Var(*j), vec![]),
        Star => (plain, vec![]),
        Inl(p1, p2, v) | Inr(p1, p2, v) => (Key::Val(head, vec![p1, p2]), vec![no(v)]),
        Thunk(s) | Prod(s) | Force(s) | Unfold(s) | Fst(s) | Snd(s) => (plain, vec![no(s)]),
        PairV(a, b) | PairC(a, b) | Choice(a, b) | App(a, b) => (plain, vec![no(a), no(b)]),
        Fold(k, s) => (Key::Comp(head, k), vec![no(s)]),
        Lam(phi, body) => (
            Key::Val(head, vec![phi]),
            vec![(vec![phi.clone()], &**body)],
        ),
        To(s, phi, body) => (
            Key::Val(head, vec![phi]),
            vec![no(s), (vec![phi.clone()], &**body)],
        ),
        Case(v, p1, s, p2, r) => (
            Key::Val(head, vec![p1, p2]),
            vec![no(v), (vec![p1.clone()], &**s), (vec![p2.clone()], &**r)],
        ),
        Pm(v, p1, p2, body) => (
            Key::Val(head, vec![p1, p2]),
            vec![no(v), (vec![p1.clone(), p2.clone()], &**body)],
        ),
    }
}

fn operand_index(ctx: &Ctx, extra: &[ValType], s: &CbpvTerm) -> Option<CbpvIndex> {
    let mut c = ctx.clone();
    c.extend(extra.iter().cloned());
    let ty = typecheck(&c, s).ok()?;
    Some(CbpvIndex::new(c, ty))
}

/// Checks that `rel` is closed under every operator instance built from
/// same-head pairs of universe terms at a common index: related operands
/// must give related results. Nullary heads (`star`, variables) must be
/// related to themselves. The clause id of a failure is the operator name.
pub fn congruence_check(
    rel: &CbpvRelation,
    universe: &BTreeMap<CbpvIndex, Vec<CbpvTerm>>,
) -> Verdict {
    let mut out = VerdictBuilder::new();
    'outer: for (idx, terms) in universe {
        for t in terms {
            for s in terms {
                let (kt, ops_t) = decompose(t);
                let (ks, ops_s) = decompose(s);
                if kt != ks {
                    continue;
                }
                out.checked += 1;
                let mut premises = true;
                for ((extra, a), (_, b)) in ops_t.iter().zip(&ops_s) {
                    let Some(i) = operand_index(&idx.ctx, extra, a) else {
                        premises = false;
                        break;
                    };
                    if !rel.contains(&i, a, b) {
                        premises = false;
                        break;
                    }
                }
                if premises && !rel.contains(idx, t, s) {
                    let n = idx.ctx.len();
                    let w =
                        Witness::new(t.display_in(n), s.display_in(n), t.head()).with_trace(vec![
                            format!("at {idx}"),
                            "operands related, result not".into(),
                        ]);
                    out.fail(w);
                    break 'outer;
                }
            }
        }
    }
    out.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbpv::syntax::*;
    use crate::kernel::Status;

    fn universe() -> BTreeMap<CbpvIndex, Vec<CbpvTerm>> {
        let k = f(unit());
        let comps = vec![prod_c(star()), force(thunk(prod_c(star())))];
        let vals = comps.iter().map(|c| thunk(c.clone())).collect();
        BTreeMap::from([
            (CbpvIndex::closed(Ty::C(k.clone())), comps),
            (CbpvIndex::closed(Ty::V(u(k))), vals),
            (CbpvIndex::closed(Ty::V(unit())), vec![star()]),
        ])
    }

    #[test]
    fn identity_and_full() {
        let u = universe();
        assert!(congruence_check(&CbpvRelation::identity(), &u).is_holds());
        let mut full = CbpvRelation::new();
        for (i, ts) in &u {
            for a in ts {
                for b in ts {
                    full.insert(i.clone(), a.clone(), b.clone());
                }
            }
        }
        assert!(congruence_check(&full, &u).is_holds());
    }

    #[test]
    fn missing_thunk_instance() {
        let u = universe();
        let k = f(unit());
        let (a, b) = (prod_c(star()), force(thunk(prod_c(star()))));
        let mut r = CbpvRelation::identity();
        r.insert(CbpvIndex::closed(Ty::C(k)), a, b);
        let v = congruence_check(&r, &u);
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.witness.unwrap().clause, "thunk");
    }
}
