use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use super::clauses::CbpvIndex;
use super::step::Cbpv;
use crate::cbpv::syntax::{
    compositions, shapes, weaken, CbpvTerm, Ctx, Enumerator, Shape, Ty, TypePool,
};
use crate::kernel::{context_oracle, Verdict};

/// A one-hole context. The hole sits under the binders crossed on the way
/// down; a term from a prefix of that context is weakened when plugged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CbpvContext {
    Hole {
        ctx: Ctx,
        ty: Ty,
        weaken: usize,
    },
    Frame {
        shape: Shape,
        slot: usize,
        args: Vec<CbpvTerm>,
        inner: Rc<CbpvContext>,
    },
}

const MARK: usize = 1 << 30;

impl CbpvContext {
    pub fn plug(&self, t: &CbpvTerm) -> CbpvTerm {
        match self {
            CbpvContext::Hole { weaken: k, .. } => weaken(t, *k),
            CbpvContext::Frame {
                shape,
                slot,
                args,
                inner,
            } => {
                let mut all = args.clone();
                all.insert(*slot, inner.plug(t));
                shape.build(all)
            }
        }
    }

    fn plug_raw(&self, t: &CbpvTerm) -> CbpvTerm {
        match self {
            CbpvContext::Hole { .. } => t.clone(),
            CbpvContext::Frame {
                shape,
                slot,
                args,
                inner,
            } => {
                let mut all = args.clone();
                all.insert(*slot, inner.plug_raw(t));
                shape.build(all)
            }
        }
    }

    fn hole_depth(&self) -> usize {
        match self {
            CbpvContext::Hole { ctx, .. } => ctx.len(),
            CbpvContext::Frame { inner, .. } => inner.hole_depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            CbpvContext::Hole { .. } => 1,
            CbpvContext::Frame { args, inner, .. } => {
                1 + inner.size() + args.iter().map(|a| a.size()).sum::<usize>()
            }
        }
    }
}

impl fmt::Display for CbpvContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self
            .plug_raw(&CbpvTerm::Var(MARK))
            .display_in(0)
            .to_string();
        f.write_str(&shown.replace(&format!("#{}", MARK - self.hole_depth()), "[.]"))
    }
}

type Key = (Ty, Ctx, usize);

/// Type-directed context enumeration over a type pool.
pub struct ContextEnumerator {
    terms: Enumerator,
    hole: CbpvIndex,
    memo: RefCell<HashMap<Key, Rc<Vec<Rc<CbpvContext>>>>>,
}

impl ContextEnumerator {
    pub fn new(pool: TypePool, hole: CbpvIndex) -> Self {
        ContextEnumerator {
            terms: Enumerator::new(pool),
            hole,
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// Contexts with exactly `size` nodes (the hole counts one) producing
    /// `ty` in `ctx`.
    pub fn of_size(&self, ty: &Ty, ctx: &Ctx, size: usize) -> Rc<Vec<Rc<CbpvContext>>> {
        let key = (ty.clone(), ctx.clone(), size);
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 && *ty == self.hole.ty && ctx.starts_with(&self.hole.ctx) {
            out.push(Rc::new(CbpvContext::Hole {
                ctx: ctx.clone(),
                ty: ty.clone(),
                weaken: ctx.len() - self.hole.ctx.len(),
            }));
        }
        if size >= 2 {
            for sh in shapes(ty, ctx, &self.terms.pool) {
                let n = sh.slots.len();
                for slot in 0..n {
                    for split in compositions(size - 1, n) {
                        if split[slot] == 0 {
                            continue;
                        }
                        let (hty, hctx) = &sh.slots[slot];
                        let inner = self.of_size(hty, hctx, split[slot]);
                        if inner.is_empty() {
                            continue;
                        }
                        let others: Vec<Rc<Vec<CbpvTerm>>> = (0..n)
                            .filter(|i| *i != slot)
                            .map(|i| self.terms.of_size(&sh.slots[i].0, &sh.slots[i].1, split[i]))
                            .collect();
                        if others.iter().any(|o| o.is_empty()) {
                            continue;
                        }
                        for c in inner.iter() {
                            for args in product(&others) {
                                out.push(Rc::new(CbpvContext::Frame {
                                    shape: sh.clone(),
                                    slot,
                                    args,
                                    inner: c.clone(),
                                }));
                            }
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn up_to(&self, ty: &Ty, ctx: &Ctx, max_size: usize) -> Vec<Rc<CbpvContext>> {
        (1..=max_size)
            .flat_map(|n| self.of_size(ty, ctx, n).iter().cloned().collect::<Vec<_>>())
            .collect()
    }
}

fn product(sets: &[Rc<Vec<CbpvTerm>>]) -> Vec<Vec<CbpvTerm>> {
    let mut out = vec![Vec::new()];
    for s in sets {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                s.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Closed contexts of type `result` with the hole at `hole_ty` in `hole_ctx`,
/// up to `max_size` nodes, smallest first.
pub fn enumerate_contexts_cbpv(
    hole_ty: &Ty,
    hole_ctx: &Ctx,
    result: &Ty,
    max_size: usize,
) -> Vec<Rc<CbpvContext>> {
    enumerate_contexts_with(&TypePool::default(), hole_ty, hole_ctx, result, max_size)
}

pub fn enumerate_contexts_with(
    pool: &TypePool,
    hole_ty: &Ty,
    hole_ctx: &Ctx,
    result: &Ty,
    max_size: usize,
) -> Vec<Rc<CbpvContext>> {
    let e = ContextEnumerator::new(
        pool.clone(),
        CbpvIndex::new(hole_ctx.clone(), hole_ty.clone()),
    );
    e.up_to(result, &Vec::new(), max_size)
}

/// Contextual preorder check for `p`, `q` at `idx`: closed contexts of every
/// pool computation type, compared by may-termination.
pub fn context_oracle_cbpv(
    idx: &CbpvIndex,
    p: &CbpvTerm,
    q: &CbpvTerm,
    pool: &TypePool,
    max_ctx_size: usize,
    fuel: usize,
) -> Verdict {
    let e = ContextEnumerator::new(pool.clone(), idx.clone());
    let contexts: Vec<Rc<CbpvContext>> = pool
        .comps
        .iter()
        .flat_map(|k| e.up_to(&Ty::C(k.clone()), &Vec::new(), max_ctx_size))
        .collect();
    context_oracle(&Cbpv::default(), contexts, |c, t| c.plug(t), p, q, fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbpv::syntax::*;
    use crate::kernel::Status;

    #[test]
    fn size_one_is_the_hole() {
        let k = Ty::C(f(unit()));
        let cs = enumerate_contexts_cbpv(&k, &vec![], &k, 1);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].to_string(), "[.]");
        assert!(
            enumerate_contexts_cbpv(&k, &vec![], &Ty::C(arrow(unit(), f(unit()))), 1).is_empty()
        );
    }

    #[test]
    fn plugged_terms_typecheck() {
        let hole = Ty::C(f(unit()));
        for result in TypePool::default().comps {
            for c in enumerate_contexts_cbpv(&hole, &vec![], &Ty::C(result.clone()), 4) {
                let t = c.plug(&prod_c(star()));
                assert_eq!(typecheck(&vec![], &t), Ok(Ty::C(result.clone())), "{c}");
                assert_eq!(t.size(), c.size() - 1 + 2);
            }
        }
    }

    #[test]
    fn open_holes_are_closed_by_binders() {
        let hole = Ty::C(f(unit()));
        let cs = enumerate_contexts_cbpv(&hole, &vec![unit()], &Ty::C(arrow(unit(), f(unit()))), 2);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].to_string(), "lam (x0:unit). [.]");
        let t = cs[0].plug(&prod_c(var(0)));
        assert!(t.is_closed());
    }

    #[test]
    fn separates_termination() {
        let k = f(unit());
        let idx = CbpvIndex::closed(Ty::C(k.clone()));
        let v = context_oracle_cbpv(
            &idx,
            &prod_c(star()),
            &diverge(&k),
            &TypePool::default(),
            3,
            200,
        );
        assert_eq!(v.status, Status::Fails);
        let v = context_oracle_cbpv(
            &idx,
            &diverge(&k),
            &prod_c(star()),
            &TypePool::default(),
            3,
            200,
        );
        assert_eq!(v.status, Status::Holds);
    }
}
