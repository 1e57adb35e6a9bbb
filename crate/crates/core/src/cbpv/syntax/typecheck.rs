use thiserror::Error;

use super::term::CbpvTerm::{self, *};
use super::types::{arrow, f, mu, prod, sum, tensor, u, unfold_mu, CompType, Ctx, Ty, ValType};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable #{0}")]
    Unbound(usize),
    #[error("{rule}: expected {expected}, found {found}")]
    Mismatch {
        rule: &'static str,
        expected: String,
        found: String,
    },
    #[error("{rule}: annotation {annotation} does not match operand type {found}")]
    Annotation {
        rule: &'static str,
        annotation: String,
        found: String,
    },
    #[error("{rule}: annotation {0} is not closed", rule = .1)]
    OpenAnnotation(String, &'static str),
}

fn mismatch(rule: &'static str, expected: impl ToString, found: &Ty) -> TypeError {
    TypeError::Mismatch {
        rule,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn closed_val(rule: &'static str, t: &ValType) -> Result<(), TypeError> {
    if t.is_closed() {
        Ok(())
    } else {
        Err(TypeError::OpenAnnotation(t.to_string(), rule))
    }
}

fn value(ctx: &mut Ctx, t: &CbpvTerm, rule: &'static str) -> Result<ValType, TypeError> {
    match typecheck_in(ctx, t)? {
        Ty::V(v) => Ok(v),
        other => Err(mismatch(rule, "a value", &other)),
    }
}

fn comp(ctx: &mut Ctx, t: &CbpvTerm, rule: &'static str) -> Result<CompType, TypeError> {
    match typecheck_in(ctx, t)? {
        Ty::C(k) => Ok(k),
        other => Err(mismatch(rule, "a computation", &other)),
    }
}

fn under<R>(ctx: &mut Ctx, extra: &[ValType], body: impl FnOnce(&mut Ctx) -> R) -> R {
    let n = ctx.len();
    ctx.extend(extra.iter().cloned());
    let r = body(ctx);
    ctx.truncate(n);
    r
}

/// The unique type of `t` in `ctx`.
pub fn typecheck(ctx: &Ctx, t: &CbpvTerm) -> Result<Ty, TypeError> {
    let mut ctx = ctx.clone();
    typecheck_in(&mut ctx, t)
}

fn typecheck_in(ctx: &mut Ctx, t: &CbpvTerm) -> Result<Ty, TypeError> {
    Ok(match t {
        Var(i) => {
            let n = ctx.len();
            if *i >= n {
                return Err(TypeError::Unbound(*i));
            }
            Ty::V(ctx[n - 1 - i].clone())
        }
        Star => Ty::V(ValType::Unit),
        Inl(p1, p2, v) | Inr(p1, p2, v) => {
            let rule = t.head();
            closed_val(rule, p1)?;
            closed_val(rule, p2)?;
            let found = value(ctx, v, rule)?;
            let expected = if matches!(t, Inl(..)) { p1 } else { p2 };
            if &found != expected {
                return Err(TypeError::Annotation {
                    rule,
                    annotation: expected.to_string(),
                    found: found.to_string(),
                });
            }
            Ty::V(sum(p1.clone(), p2.clone()))
        }
        Thunk(s) => Ty::V(u(comp(ctx, s, "thunk")?)),
        PairV(a, b) => Ty::V(prod(value(ctx, a, "pair")?, value(ctx, b, "pair")?)),
        Prod(v) => Ty::C(f(value(ctx, v, "prod")?)),
        Force(v) => match value(ctx, v, "force")? {
            ValType::Thunk(k) => Ty::C(*k),
            other => return Err(mismatch("force", "U κ", &Ty::V(other))),
        },
        App(s, v) => {
            let k = comp(ctx, s, "app")?;
            let CompType::Arrow(dom, cod) = k else {
                return Err(mismatch("app", "φ → κ", &Ty::C(k)));
            };
            let found = value(ctx, v, "app")?;
            if found != *dom {
                return Err(mismatch("app", dom, &Ty::V(found)));
            }
            Ty::C(*cod)
        }
        Fold(body, s) => {
            let whole = mu(body.clone());
            if !whole.is_closed() {
                return Err(TypeError::OpenAnnotation(whole.to_string(), "fold"));
            }
            let found = comp(ctx, s, "fold")?;
            let expected = unfold_mu(body);
            if found != expected {
                return Err(mismatch("fold", expected, &Ty::C(found)));
            }
            Ty::C(whole)
        }
        Unfold(s) => match comp(ctx, s, "unfold")? {
            CompType::Mu(body) => Ty::C(unfold_mu(&body)),
            other => return Err(mismatch("unfold", "μα.κ", &Ty::C(other))),
        },
        Lam(dom, body) => {
            closed_val("lam", dom)?;
            let cod = under(ctx, std::slice::from_ref(dom), |c| comp(c, body, "lam"))?;
            Ty::C(arrow(dom.clone(), cod))
        }
        Choice(a, b) => {
            let ka = comp(ctx, a, "choice")?;
            let kb = comp(ctx, b, "choice")?;
            if ka != kb {
                return Err(mismatch("choice", ka, &Ty::C(kb)));
            }
            Ty::C(ka)
        }
        To(s, phi, body) => {
            closed_val("to", phi)?;
            match comp(ctx, s, "to")? {
                CompType::F(found) if *found == *phi => {}
                CompType::F(found) => {
                    return Err(TypeError::Annotation {
                        rule: "to",
                        annotation: phi.to_string(),
                        found: found.to_string(),
                    })
                }
                other => return Err(mismatch("to", "F φ", &Ty::C(other))),
            }
            Ty::C(under(ctx, std::slice::from_ref(phi), |c| {
                comp(c, body, "to")
            })?)
        }
        Case(v, p1, s, p2, r) => {
            closed_val("case", p1)?;
            closed_val("case", p2)?;
            let found = value(ctx, v, "case")?;
            let expected = sum(p1.clone(), p2.clone());
            if found != expected {
                return Err(TypeError::Annotation {
                    rule: "case",
                    annotation: expected.to_string(),
                    found: found.to_string(),
                });
            }
            let ks = under(ctx, std::slice::from_ref(p1), |c| comp(c, s, "case"))?;
            let kr = under(ctx, std::slice::from_ref(p2), |c| comp(c, r, "case"))?;
            if ks != kr {
                return Err(mismatch("case", ks, &Ty::C(kr)));
            }
            Ty::C(ks)
        }
        Fst(s) | Snd(s) => {
            let rule = t.head();
            match comp(ctx, s, rule)? {
                CompType::Tensor(a, b) => Ty::C(if matches!(t, Fst(_)) { *a } else { *b }),
                other => return Err(mismatch(rule, "κ₁ ⊗ κ₂", &Ty::C(other))),
            }
        }
        PairC(a, b) => Ty::C(tensor(comp(ctx, a, "pair")?, comp(ctx, b, "pair")?)),
        Pm(v, p1, p2, body) => {
            closed_val("pm", p1)?;
            closed_val("pm", p2)?;
            let found = value(ctx, v, "pm")?;
            let expected = prod(p1.clone(), p2.clone());
            if found != expected {
                return Err(TypeError::Annotation {
                    rule: "pm",
                    annotation: expected.to_string(),
                    found: found.to_string(),
                });
            }
            Ty::C(under(ctx, &[p1.clone(), p2.clone()], |c| {
                comp(c, body, "pm")
            })?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbpv::syntax::term::*;
    use crate::cbpv::syntax::types::unit;

    #[test]
    fn thunk_and_star() {
        let t = prod_c(star());
        assert_eq!(typecheck(&vec![], &thunk(t)), Ok(Ty::V(u(f(unit())))));
        assert_eq!(typecheck(&vec![], &star()), Ok(Ty::V(unit())));
    }

    #[test]
    fn force_of_star_is_rejected() {
        let err = typecheck(&vec![], &force(star())).unwrap_err();
        assert!(matches!(err, TypeError::Mismatch { rule: "force", .. }));
    }

    #[test]
    fn variables_follow_de_bruijn() {
        let ctx = vec![unit(), u(f(unit()))];
        assert_eq!(typecheck(&ctx, &var(0)), Ok(Ty::V(u(f(unit())))));
        assert_eq!(typecheck(&ctx, &var(1)), Ok(Ty::V(unit())));
        assert_eq!(typecheck(&ctx, &var(2)), Err(TypeError::Unbound(2)));
    }

    #[test]
    fn pm_binds_second_component_innermost() {
        let t = pm(
            pair_v(star(), thunk(prod_c(star()))),
            unit(),
            u(f(unit())),
            force(var(0)),
        );
        assert_eq!(typecheck(&vec![], &t), Ok(Ty::C(f(unit()))));
        let bad = pm(pair_v(star(), star()), unit(), unit(), force(var(0)));
        assert!(typecheck(&vec![], &bad).is_err());
    }

    #[test]
    fn fold_requires_unfolded_body() {
        let body = arrow(unit(), CompType::Var(0));
        // fold(lam x:unit. t) needs t : μα.(unit → α)
        let t = fold(body.clone(), lam(unit(), force(var(1))));
        let ctx = vec![u(mu(body.clone()))];
        assert_eq!(typecheck(&ctx, &t), Ok(Ty::C(mu(body.clone()))));
        assert_eq!(typecheck(&ctx, &unfold(t)), Ok(Ty::C(unfold_mu(&body))));
    }
}
