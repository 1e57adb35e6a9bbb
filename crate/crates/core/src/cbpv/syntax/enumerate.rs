use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use rand::Rng;

use super::term::{self, diverge, CbpvTerm};
use super::types::{f, mu, prod, sum, tensor, u, unfold_mu, unit, CompType, Ctx, Ty, ValType};

/// The finite stock of types that enumeration may pick for positions whose
/// type is not fixed by the result: the argument of `app`, the bound value
/// of `to`, the scrutinee of `case` and `pm`, the other half of `fst`/`snd`
/// and the operand of `unfold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePool {
    pub values: Vec<ValType>,
    pub comps: Vec<CompType>,
}

impl Default for TypePool {
    fn default() -> Self {
        TypePool {
            values: vec![
                unit(),
                sum(unit(), unit()),
                prod(unit(), unit()),
                u(f(unit())),
            ],
            comps: vec![
                f(unit()),
                super::types::arrow(unit(), f(unit())),
                tensor(f(unit()), f(unit())),
                mu(f(unit())),
            ],
        }
    }
}

impl TypePool {
    /// Value types only: computations are all `F unit`.
    pub fn minimal() -> Self {
        TypePool {
            values: vec![unit()],
            comps: vec![f(unit())],
        }
    }

    pub fn all_types(&self) -> Vec<Ty> {
        let mut out: Vec<Ty> = self.values.iter().cloned().map(Ty::V).collect();
        out.extend(self.comps.iter().cloned().map(Ty::C));
        out
    }
}

/// A constructor together with its annotations; the operands come from
/// [`Shape::slots`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    Var(usize),
    Star,
    Inl(ValType, ValType),
    Inr(ValType, ValType),
    Thunk,
    PairV,
    Prod,
    Force,
    App,
    Fold(CompType),
    Unfold,
    Lam(ValType),
    Choice,
    To(ValType),
    Case(ValType, ValType),
    Fst,
    Snd,
    PairC,
    Pm(ValType, ValType),
}

/// One way of building a term of a requested type: each slot is the type and
/// context its operand must have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub kind: ShapeKind,
    pub slots: Vec<(Ty, Ctx)>,
}

impl Shape {
    pub fn build(&self, mut args: Vec<CbpvTerm>) -> CbpvTerm {
        assert_eq!(args.len(), self.slots.len(), "operand count");
        let mut next = || args.remove(0);
        match &self.kind {
            ShapeKind::Var(i) => term::var(*i),
            ShapeKind::Star => term::star(),
            ShapeKind::Inl(a, b) => term::inl(a.clone(), b.clone(), next()),
            ShapeKind::Inr(a, b) => term::inr(a.clone(), b.clone(), next()),
            ShapeKind::Thunk => term::thunk(next()),
            ShapeKind::PairV => {
                let a = next();
                term::pair_v(a, next())
            }
            ShapeKind::Prod => term::prod_c(next()),
            ShapeKind::Force => term::force(next()),
            ShapeKind::App => {
                let t = next();
                term::app(t, next())
            }
            ShapeKind::Fold(body) => term::fold(body.clone(), next()),
            ShapeKind::Unfold => term::unfold(next()),
            ShapeKind::Lam(dom) => term::lam(dom.clone(), next()),
            ShapeKind::Choice => {
                let t = next();
                term::choice(t, next())
            }
            ShapeKind::To(phi) => {
                let s = next();
                term::to(s, phi.clone(), next())
            }
            ShapeKind::Case(p1, p2) => {
                let v = next();
                let s = next();
                term::case(v, p1.clone(), s, p2.clone(), next())
            }
            ShapeKind::Fst => term::fst(next()),
            ShapeKind::Snd => term::snd(next()),
            ShapeKind::PairC => {
                let t = next();
                term::pair_c(t, next())
            }
            ShapeKind::Pm(p1, p2) => {
                let v = next();
                term::pm(v, p1.clone(), p2.clone(), next())
            }
        }
    }
}

fn extend(ctx: &Ctx, extra: &[ValType]) -> Ctx {
    let mut c = ctx.clone();
    c.extend(extra.iter().cloned());
    c
}

/// Every constructor that can produce a term of type `ty` in `ctx`.
pub fn shapes(ty: &Ty, ctx: &Ctx, pool: &TypePool) -> Vec<Shape> {
    let n = ctx.len();
    let mut out = Vec::new();
    let shape = |kind, slots| Shape { kind, slots };
    match ty {
        Ty::V(phi) => {
            for (pos, psi) in ctx.iter().enumerate() {
                if psi == phi {
                    out.push(shape(ShapeKind::Var(n - 1 - pos), vec![]));
                }
            }
            match phi {
                ValType::Unit => out.push(shape(ShapeKind::Star, vec![])),
                ValType::Sum(a, b) => {
                    out.push(shape(
                        ShapeKind::Inl((**a).clone(), (**b).clone()),
                        vec![(Ty::V((**a).clone()), ctx.clone())],
                    ));
                    out.push(shape(
                        ShapeKind::Inr((**a).clone(), (**b).clone()),
                        vec![(Ty::V((**b).clone()), ctx.clone())],
                    ));
                }
                ValType::Prod(a, b) => out.push(shape(
                    ShapeKind::PairV,
                    vec![
                        (Ty::V((**a).clone()), ctx.clone()),
                        (Ty::V((**b).clone()), ctx.clone()),
                    ],
                )),
                ValType::Thunk(k) => out.push(shape(
                    ShapeKind::Thunk,
                    vec![(Ty::C((**k).clone()), ctx.clone())],
                )),
            }
        }
        Ty::C(kappa) => {
            match kappa {
                CompType::F(phi) => out.push(shape(
                    ShapeKind::Prod,
                    vec![(Ty::V((**phi).clone()), ctx.clone())],
                )),
                CompType::Arrow(dom, cod) => out.push(shape(
                    ShapeKind::Lam((**dom).clone()),
                    vec![(Ty::C((**cod).clone()), extend(ctx, &[(**dom).clone()]))],
                )),
                CompType::Tensor(a, b) => out.push(shape(
                    ShapeKind::PairC,
                    vec![
                        (Ty::C((**a).clone()), ctx.clone()),
                        (Ty::C((**b).clone()), ctx.clone()),
                    ],
                )),
                CompType::Mu(body) => out.push(shape(
                    ShapeKind::Fold((**body).clone()),
                    vec![(Ty::C(unfold_mu(body)), ctx.clone())],
                )),
                CompType::Var(_) => return out,
            }
            let here = |k: &CompType| (Ty::C(k.clone()), ctx.clone());
            out.push(shape(
                ShapeKind::Force,
                vec![(Ty::V(u(kappa.clone())), ctx.clone())],
            ));
            for phi in &pool.values {
                out.push(shape(
                    ShapeKind::App,
                    vec![
                        here(&super::types::arrow(phi.clone(), kappa.clone())),
                        (Ty::V(phi.clone()), ctx.clone()),
                    ],
                ));
            }
            for k2 in &pool.comps {
                if let CompType::Mu(body) = k2 {
                    if unfold_mu(body) == *kappa {
                        out.push(shape(ShapeKind::Unfold, vec![here(k2)]));
                    }
                }
            }
            out.push(shape(ShapeKind::Choice, vec![here(kappa), here(kappa)]));
            for phi in &pool.values {
                out.push(shape(
                    ShapeKind::To(phi.clone()),
                    vec![
                        here(&f(phi.clone())),
                        (Ty::C(kappa.clone()), extend(ctx, &[phi.clone()])),
                    ],
                ));
            }
            for p1 in &pool.values {
                for p2 in &pool.values {
                    out.push(shape(
                        ShapeKind::Case(p1.clone(), p2.clone()),
                        vec![
                            (Ty::V(sum(p1.clone(), p2.clone())), ctx.clone()),
                            (Ty::C(kappa.clone()), extend(ctx, &[p1.clone()])),
                            (Ty::C(kappa.clone()), extend(ctx, &[p2.clone()])),
                        ],
                    ));
                }
            }
            for k2 in &pool.comps {
                out.push(shape(
                    ShapeKind::Fst,
                    vec![here(&tensor(kappa.clone(), k2.clone()))],
                ));
                out.push(shape(
                    ShapeKind::Snd,
                    vec![here(&tensor(k2.clone(), kappa.clone()))],
                ));
            }
            for p1 in &pool.values {
                for p2 in &pool.values {
                    out.push(shape(
                        ShapeKind::Pm(p1.clone(), p2.clone()),
                        vec![
                            (Ty::V(prod(p1.clone(), p2.clone())), ctx.clone()),
                            (Ty::C(kappa.clone()), extend(ctx, &[p1.clone(), p2.clone()])),
                        ],
                    ));
                }
            }
        }
    }
    out
}

/// No term of type `ty` in `ctx` has fewer nodes.
pub(crate) fn lower_bound(ty: &Ty, ctx: &Ctx) -> usize {
    match ty {
        // prod, force, lam, fold, pair and app all need an operand
        Ty::C(_) => 2,
        Ty::V(phi) if ctx.contains(phi) => 1,
        Ty::V(ValType::Unit) => 1,
        Ty::V(ValType::Sum(a, b)) => {
            1 + lower_bound(&Ty::V((**a).clone()), ctx).min(lower_bound(&Ty::V((**b).clone()), ctx))
        }
        Ty::V(ValType::Prod(a, b)) => {
            1 + lower_bound(&Ty::V((**a).clone()), ctx) + lower_bound(&Ty::V((**b).clone()), ctx)
        }
        Ty::V(ValType::Thunk(_)) => 3,
    }
}

/// Ways to write `total` as an ordered sum of `parts` positive integers.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

type Key = (Ty, Ctx, usize);

/// Exhaustive, memoized, type-directed enumeration of well-typed terms.
pub struct Enumerator {
    pub pool: TypePool,
    memo: RefCell<HashMap<Key, Rc<Vec<CbpvTerm>>>>,
}

impl Enumerator {
    pub fn new(pool: TypePool) -> Self {
        Enumerator {
            pool,
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// Terms of type `ty` in `ctx` with exactly `size` nodes.
    pub fn of_size(&self, ty: &Ty, ctx: &Ctx, size: usize) -> Rc<Vec<CbpvTerm>> {
        let key = (ty.clone(), ctx.clone(), size);
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size > 0 {
            for sh in shapes(ty, ctx, &self.pool) {
                let bounds: Vec<usize> = sh.slots.iter().map(|(t, c)| lower_bound(t, c)).collect();
                for split in compositions(size - 1, sh.slots.len()) {
                    if split.iter().zip(&bounds).any(|(n, b)| n < b) {
                        continue;
                    }
                    let operands: Vec<Rc<Vec<CbpvTerm>>> = sh
                        .slots
                        .iter()
                        .zip(&split)
                        .map(|((t, c), n)| self.of_size(t, c, *n))
                        .collect();
                    if operands.iter().any(|o| o.is_empty()) {
                        continue;
                    }
                    let mut idx = vec![0usize; operands.len()];
                    'odometer: loop {
                        out.push(
                            sh.build(
                                idx.iter()
                                    .zip(&operands)
                                    .map(|(i, o)| o[*i].clone())
                                    .collect(),
                            ),
                        );
                        let mut k = operands.len();
                        loop {
                            if k == 0 {
                                break 'odometer;
                            }
                            k -= 1;
                            idx[k] += 1;
                            if idx[k] < operands[k].len() {
                                break;
                            }
                            idx[k] = 0;
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn up_to(&self, ty: &Ty, ctx: &Ctx, max_size: usize) -> Vec<CbpvTerm> {
        (1..=max_size)
            .flat_map(|n| self.of_size(ty, ctx, n).iter().cloned().collect::<Vec<_>>())
            .collect()
    }

    /// Closed values of type `phi` up to `max_size`.
    pub fn values(&self, phi: &ValType, max_size: usize) -> Vec<CbpvTerm> {
        self.up_to(&Ty::V(phi.clone()), &Vec::new(), max_size)
    }

    /// Closed computations of every pool computation type, paired with their type.
    pub fn closed_computations(&self, max_size: usize) -> Vec<(CompType, CbpvTerm)> {
        let mut out = Vec::new();
        for k in &self.pool.comps {
            for t in self.up_to(&Ty::C(k.clone()), &Vec::new(), max_size) {
                out.push((k.clone(), t));
            }
        }
        out
    }
}

/// Closed values of type `phi` up to `max_size` under the default pool.
pub fn enumerate_values(phi: &ValType, max_size: usize) -> Vec<CbpvTerm> {
    Enumerator::new(TypePool::default()).values(phi, max_size)
}

/// A small term of type `ty` in `ctx`, preferring variables.
pub fn inhabitant(ty: &Ty, ctx: &Ctx) -> CbpvTerm {
    let n = ctx.len();
    match ty {
        Ty::V(phi) => {
            if let Some(pos) = ctx.iter().rposition(|p| p == phi) {
                return term::var(n - 1 - pos);
            }
            match phi {
                ValType::Unit => term::star(),
                ValType::Sum(a, b) => term::inl(
                    (**a).clone(),
                    (**b).clone(),
                    inhabitant(&Ty::V((**a).clone()), ctx),
                ),
                ValType::Prod(a, b) => term::pair_v(
                    inhabitant(&Ty::V((**a).clone()), ctx),
                    inhabitant(&Ty::V((**b).clone()), ctx),
                ),
                ValType::Thunk(k) => term::thunk(inhabitant(&Ty::C((**k).clone()), ctx)),
            }
        }
        Ty::C(kappa) => match kappa {
            CompType::F(phi) => term::prod_c(inhabitant(&Ty::V((**phi).clone()), ctx)),
            CompType::Arrow(dom, cod) => term::lam(
                (**dom).clone(),
                inhabitant(&Ty::C((**cod).clone()), &extend(ctx, &[(**dom).clone()])),
            ),
            CompType::Tensor(a, b) => term::pair_c(
                inhabitant(&Ty::C((**a).clone()), ctx),
                inhabitant(&Ty::C((**b).clone()), ctx),
            ),
            CompType::Mu(_) => diverge(kappa),
            CompType::Var(_) => panic!("no terms of an open type"),
        },
    }
}

/// A random term of type `ty` in `ctx` with roughly `budget` nodes.
pub fn random_term<R: Rng>(
    rng: &mut R,
    ty: &Ty,
    ctx: &Ctx,
    budget: usize,
    pool: &TypePool,
) -> CbpvTerm {
    let candidates: Vec<Shape> = shapes(ty, ctx, pool)
        .into_iter()
        .filter(|s| s.slots.len() < budget || s.slots.is_empty())
        .collect();
    if budget <= 1 || candidates.is_empty() {
        let leaves: Vec<&Shape> = candidates.iter().filter(|s| s.slots.is_empty()).collect();
        if !leaves.is_empty() {
            return leaves[rng.gen_range(0..leaves.len())].build(vec![]);
        }
        return inhabitant(ty, ctx);
    }
    let sh = &candidates[rng.gen_range(0..candidates.len())];
    let k = sh.slots.len();
    if k == 0 {
        return sh.build(vec![]);
    }
    // split budget - 1 into k positive parts
    let mut cuts: Vec<usize> = (0..k - 1).map(|_| rng.gen_range(1..budget - 1)).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts.iter().chain(std::iter::once(&(budget - 1))) {
        parts.push((c - prev).max(1));
        prev = *c;
    }
    let args = sh
        .slots
        .iter()
        .zip(parts)
        .map(|((t, c), n)| random_term(rng, t, c, n, pool))
        .collect();
    sh.build(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbpv::syntax::typecheck::typecheck;
    use crate::rng::seeded;

    #[test]
    fn unit_and_bool_values() {
        assert_eq!(enumerate_values(&unit(), 4), vec![term::star()]);
        let b = sum(unit(), unit());
        let two = enumerate_values(&b, 2);
        assert_eq!(
            two,
            vec![
                term::inl(unit(), unit(), term::star()),
                term::inr(unit(), unit(), term::star())
            ]
        );
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2).len(), 3);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(compositions(1, 2).is_empty());
    }

    #[test]
    fn enumerated_terms_typecheck() {
        let e = Enumerator::new(TypePool::default());
        for ty in e.pool.all_types() {
            for t in e.up_to(&ty, &vec![], 4) {
                assert_eq!(typecheck(&vec![], &t).as_ref(), Ok(&ty), "{t}");
                assert!(t.size() <= 4);
            }
        }
    }

    #[test]
    fn random_terms_typecheck() {
        let mut rng = seeded(7);
        let pool = TypePool::default();
        for ty in pool.all_types() {
            for _ in 0..50 {
                let t = random_term(&mut rng, &ty, &vec![], 12, &pool);
                assert_eq!(typecheck(&vec![], &t).as_ref(), Ok(&ty), "{t}");
            }
        }
    }

    #[test]
    fn inhabitants_typecheck() {
        let pool = TypePool::default();
        for ty in pool.all_types() {
            assert_eq!(typecheck(&vec![], &inhabitant(&ty, &vec![])), Ok(ty));
        }
    }
}
