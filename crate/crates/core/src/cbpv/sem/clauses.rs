use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use super::step::{observe, successors, Cbpv, Observation};
use crate::cbpv::syntax::{
    force, subst_sim, subst_top, unfold_mu, var, CbpvTerm, CompType, Ctx, Enumerator, Ty, TypePool,
    ValType,
};
use crate::kernel::{weak_closure, WeakClosure, Witness};

/// A typing judgement `Γ ⊢ τ` indexing a relation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CbpvIndex {
    pub ctx: Ctx,
    pub ty: Ty,
}

impl CbpvIndex {
    pub fn new(ctx: Ctx, ty: Ty) -> Self {
        CbpvIndex { ctx, ty }
    }

    pub fn closed(ty: Ty) -> Self {
        CbpvIndex {
            ctx: Vec::new(),
            ty,
        }
    }

    pub fn comp(ctx: &Ctx, k: &CompType) -> Self {
        CbpvIndex {
            ctx: ctx.clone(),
            ty: Ty::C(k.clone()),
        }
    }

    pub fn val(ctx: &Ctx, phi: &ValType) -> Self {
        CbpvIndex {
            ctx: ctx.clone(),
            ty: Ty::V(phi.clone()),
        }
    }
}

impl fmt::Display for CbpvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, phi) in self.ctx.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{i}:{phi}")?;
        }
        if !self.ctx.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.ty)
    }
}

/// Bounds and flags shared by the simulation and logical-relation checks.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Weak closures explore at most this many steps.
    pub fuel: usize,
    /// Closed values up to this size instantiate substitutions and `lam` arguments.
    pub value_size: usize,
    /// A value `v : Uκ` additionally exposes `force(v)`.
    pub testing_weakening: bool,
    pub pool: TypePool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            fuel: 1000,
            value_size: 3,
            testing_weakening: false,
            pool: TypePool::default(),
        }
    }
}

/// Caches closed values per type and weak closures per term.
pub struct Env {
    pub cfg: CheckConfig,
    enumerator: Enumerator,
    closures: RefCell<HashMap<CbpvTerm, Rc<WeakClosure<CbpvTerm>>>>,
}

impl Env {
    pub fn new(cfg: CheckConfig) -> Self {
        let enumerator = Enumerator::new(cfg.pool.clone());
        Env {
            cfg,
            enumerator,
            closures: RefCell::new(HashMap::new()),
        }
    }

    pub fn closed_values(&self, phi: &ValType) -> Vec<CbpvTerm> {
        self.enumerator.values(phi, self.cfg.value_size)
    }

    /// Closed values of `phi` followed by the variables of `ctx` at `phi`.
    pub fn arguments(&self, ctx: &Ctx, phi: &ValType) -> Vec<CbpvTerm> {
        let mut out = self.closed_values(phi);
        let n = ctx.len();
        for (pos, p) in ctx.iter().enumerate() {
            if p == phi {
                out.push(var(n - 1 - pos));
            }
        }
        out
    }

    pub fn closure(&self, t: &CbpvTerm) -> Rc<WeakClosure<CbpvTerm>> {
        if let Some(c) = self.closures.borrow().get(t) {
            return c.clone();
        }
        let c = Rc::new(weak_closure(&Cbpv::default(), t, self.cfg.fuel));
        self.closures.borrow_mut().insert(t.clone(), c.clone());
        c
    }

    /// All closed substitutions for `ctx`, position `i` ranging over
    /// `closed_values(ctx[i])`.
    pub fn substitutions(&self, ctx: &Ctx) -> Vec<Vec<CbpvTerm>> {
        let mut out = vec![Vec::new()];
        for phi in ctx {
            let vals = self.closed_values(phi);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    vals.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        out
    }
}

/// How function clauses and substitutions pick arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arguments {
    /// The same argument on both sides (simulation).
    Same,
    /// Any pair of related arguments (logical relation).
    Related,
}

pub enum Outcome {
    Ok,
    Fail(Witness),
    Unknown(String),
}

impl Outcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, Outcome::Ok)
    }
}

pub type RelFn<'a> = dyn FnMut(&CbpvIndex, &CbpvTerm, &CbpvTerm) -> bool + 'a;

fn fail(idx: &CbpvIndex, t: &CbpvTerm, s: &CbpvTerm, clause: &str, trace: Vec<String>) -> Outcome {
    let n = idx.ctx.len();
    Outcome::Fail(
        Witness::new(t.display_in(n), s.display_in(n), clause)
            .with_trace(std::iter::once(format!("at {idx}")).chain(trace).collect()),
    )
}

/// Components of a head observation with the index each pair is compared at,
/// or `None` when the two observations have different shapes.
fn components(
    idx: &CbpvIndex,
    a: &Observation,
    b: &Observation,
) -> Option<Vec<(CbpvIndex, CbpvTerm, CbpvTerm)>> {
    use Observation as O;
    let ctx = &idx.ctx;
    let v = |phi: &ValType| CbpvIndex::val(ctx, phi);
    let c = |k: &CompType| CbpvIndex::comp(ctx, k);
    let out = match (&idx.ty, a, b) {
        (_, O::Unit, O::Unit) => vec![],
        (Ty::V(ValType::Sum(p1, _)), O::Inl(x), O::Inl(y)) => vec![(v(p1), x.clone(), y.clone())],
        (Ty::V(ValType::Sum(_, p2)), O::Inr(x), O::Inr(y)) => vec![(v(p2), x.clone(), y.clone())],
        (Ty::V(ValType::Prod(p1, p2)), O::PairV(x1, x2), O::PairV(y1, y2)) => {
            vec![
                (v(p1), x1.clone(), y1.clone()),
                (v(p2), x2.clone(), y2.clone()),
            ]
        }
        (Ty::V(ValType::Thunk(k)), O::Thunk(x), O::Thunk(y)) => vec![(c(k), x.clone(), y.clone())],
        (Ty::C(CompType::F(phi)), O::Producer(x), O::Producer(y)) => {
            vec![(v(phi), x.clone(), y.clone())]
        }
        (Ty::C(CompType::Tensor(k1, k2)), O::Tensor(x1, x2), O::Tensor(y1, y2)) => {
            vec![
                (c(k1), x1.clone(), y1.clone()),
                (c(k2), x2.clone(), y2.clone()),
            ]
        }
        (Ty::C(CompType::Mu(body)), O::Fold(_, x), O::Fold(_, y)) => {
            vec![(c(&unfold_mu(body)), x.clone(), y.clone())]
        }
        _ => return None,
    };
    Some(out)
}

fn clause_name(o: &Observation) -> &'static str {
    match o {
        Observation::Unit => "unit",
        Observation::Thunk(_) => "thunk",
        Observation::Inl(_) => "inl",
        Observation::Inr(_) => "inr",
        Observation::PairV(..) => "value pair",
        Observation::Tensor(..) => "computation pair",
        Observation::Fold(..) => "fold",
        Observation::Fun(..) => "lam",
        Observation::Producer(_) => "prod",
    }
}

/// Whether `lam x.M` and `lam x.N` send (related) arguments to related bodies.
fn functions_related(
    env: &Env,
    args: Arguments,
    ctx: &Ctx,
    phi: &ValType,
    k: &CompType,
    m: &CbpvTerm,
    n: &CbpvTerm,
    rel: &mut RelFn<'_>,
) -> Result<(), String> {
    let candidates = env.arguments(ctx, phi);
    let at_k = CbpvIndex::comp(ctx, k);
    match args {
        Arguments::Same => {
            for a in &candidates {
                if !rel(&at_k, &subst_top(m, a), &subst_top(n, a)) {
                    return Err(format!("argument {}", a.display_in(ctx.len())));
                }
            }
        }
        Arguments::Related => {
            let at_phi = CbpvIndex::val(ctx, phi);
            for a in &candidates {
                for b in &candidates {
                    if rel(&at_phi, a, b) && !rel(&at_k, &subst_top(m, a), &subst_top(n, b)) {
                        let l = ctx.len();
                        return Err(format!(
                            "arguments {} and {}",
                            a.display_in(l),
                            b.display_in(l)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn heads_related(
    env: &Env,
    args: Arguments,
    idx: &CbpvIndex,
    a: &Observation,
    b: &Observation,
    rel: &mut RelFn<'_>,
) -> Result<(), String> {
    if let (Observation::Fun(phi, m), Observation::Fun(_, n)) = (a, b) {
        let Ty::C(CompType::Arrow(_, k)) = &idx.ty else {
            return Err("function at a non-arrow type".into());
        };
        return functions_related(env, args, &idx.ctx, phi, k, m, n, rel);
    }
    let Some(parts) = components(idx, a, b) else {
        return Err("different head forms".into());
    };
    for (i, x, y) in parts {
        if !rel(&i, &x, &y) {
            let n = i.ctx.len();
            return Err(format!(
                "components {} and {} unrelated",
                x.display_in(n),
                y.display_in(n)
            ));
        }
    }
    Ok(())
}

/// Behaviour set of a value `v : Uκ` under the testing weakening.
fn testing_behaviour(v: &CbpvTerm) -> Vec<CbpvTerm> {
    let mut out = Vec::new();
    if let CbpvTerm::Thunk(t) = v {
        out.push((**t).clone());
    }
    out.push(force(v.clone()));
    out
}

/// All clauses except the substitution clause for one pair.
pub fn local_clauses(
    env: &Env,
    args: Arguments,
    idx: &CbpvIndex,
    t: &CbpvTerm,
    s: &CbpvTerm,
    rel: &mut RelFn<'_>,
) -> Outcome {
    let n = idx.ctx.len();
    match &idx.ty {
        Ty::V(phi) => {
            if env.cfg.testing_weakening {
                if let ValType::Thunk(k) = phi {
                    let at_k = CbpvIndex::comp(&idx.ctx, k);
                    let right = testing_behaviour(s);
                    for a in testing_behaviour(t) {
                        if !right.iter().any(|b| rel(&at_k, &a, b)) {
                            return fail(
                                idx,
                                t,
                                s,
                                "thunk",
                                vec![format!(
                                    "behaviour {} unmatched on the right",
                                    a.display_in(n)
                                )],
                            );
                        }
                    }
                    return Outcome::Ok;
                }
            }
            let Some(a) = observe(t) else {
                return Outcome::Ok;
            };
            let Some(b) = observe(s) else {
                return fail(
                    idx,
                    t,
                    s,
                    clause_name(&a),
                    vec![format!("{} has no head form", s.display_in(n))],
                );
            };
            match heads_related(env, args, idx, &a, &b, rel) {
                Ok(()) => Outcome::Ok,
                Err(msg) => fail(idx, t, s, clause_name(&a), vec![msg]),
            }
        }
        Ty::C(_) => {
            let closure = env.closure(s);
            for t2 in successors(t) {
                if !closure.reachable.iter().any(|s2| rel(idx, &t2, s2)) {
                    if !closure.frontier_exhausted {
                        return Outcome::Unknown(format!(
                            "{} did not settle in {} steps",
                            s.display_in(n),
                            env.cfg.fuel
                        ));
                    }
                    return fail(
                        idx,
                        t,
                        s,
                        "reduction",
                        vec![
                            format!("{} -> {}", t.display_in(n), t2.display_in(n)),
                            format!(
                                "no related state among {} weak reducts",
                                closure.reachable.len()
                            ),
                        ],
                    );
                }
            }
            let Some(a) = observe(t) else {
                return Outcome::Ok;
            };
            let mut last = String::from("no head form reachable");
            for s2 in &closure.reachable {
                if let Some(b) = observe(s2) {
                    match heads_related(env, args, idx, &a, &b, rel) {
                        Ok(()) => return Outcome::Ok,
                        Err(msg) => last = format!("{}: {msg}", s2.display_in(n)),
                    }
                }
            }
            if !closure.frontier_exhausted {
                return Outcome::Unknown(format!(
                    "{} did not settle in {} steps",
                    s.display_in(n),
                    env.cfg.fuel
                ));
            }
            fail(idx, t, s, clause_name(&a), vec![last])
        }
    }
}

/// The substitution clause: closed instances of the pair are related.
pub fn substitution_clause(
    env: &Env,
    args: Arguments,
    idx: &CbpvIndex,
    t: &CbpvTerm,
    s: &CbpvTerm,
    rel: &mut RelFn<'_>,
) -> Outcome {
    if idx.ctx.is_empty() {
        return Outcome::Ok;
    }
    let closed = CbpvIndex::closed(idx.ty.clone());
    let subs = env.substitutions(&idx.ctx);
    let show = |us: &[CbpvTerm]| {
        us.iter()
            .map(|u| u.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    for us in &subs {
        match args {
            Arguments::Same => {
                if !rel(&closed, &subst_sim(t, us), &subst_sim(s, us)) {
                    return fail(
                        idx,
                        t,
                        s,
                        "substitution",
                        vec![format!("under [{}]", show(us))],
                    );
                }
            }
            Arguments::Related => {
                for ws in &subs {
                    let related = idx
                        .ctx
                        .iter()
                        .zip(us.iter().zip(ws))
                        .all(|(phi, (u, w))| rel(&CbpvIndex::closed(Ty::V(phi.clone())), u, w));
                    if related && !rel(&closed, &subst_sim(t, us), &subst_sim(s, ws)) {
                        return fail(
                            idx,
                            t,
                            s,
                            "substitution",
                            vec![format!("under [{}] and [{}]", show(us), show(ws))],
                        );
                    }
                }
            }
        }
    }
    Outcome::Ok
}

pub fn all_clauses(
    env: &Env,
    args: Arguments,
    idx: &CbpvIndex,
    t: &CbpvTerm,
    s: &CbpvTerm,
    rel: &mut RelFn<'_>,
) -> Outcome {
    match substitution_clause(env, args, idx, t, s, rel) {
        Outcome::Ok => local_clauses(env, args, idx, t, s, rel),
        other => other,
    }
}
