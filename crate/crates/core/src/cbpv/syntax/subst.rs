use thiserror::Error;

use super::term::CbpvTerm::{self, *};
use super::typecheck::{typecheck, TypeError};
use super::types::{Ctx, Ty};

/// Rebuilds `t` with every free de Bruijn index `j` replaced by `leaf(j, depth)`,
/// where `depth` counts the binders crossed so far.
fn map_free(t: &CbpvTerm, depth: usize, leaf: &dyn Fn(usize, usize) -> CbpvTerm) -> CbpvTerm {
    let go = |s: &CbpvTerm| Box::new(map_free(s, depth, leaf));
    let go_under = |s: &CbpvTerm, k: usize| Box::new(map_free(s, depth + k, leaf));
    match t {
        Var(j) if *j < depth => Var(*j),
        Var(j) => leaf(j - depth, depth),
        Star => Star,
        Inl(a, c, v) => Inl(a.clone(), c.clone(), go(v)),
        Inr(a, c, v) => Inr(a.clone(), c.clone(), go(v)),
        Thunk(s) => Thunk(go(s)),
        PairV(a, c) => PairV(go(a), go(c)),
        Prod(v) => Prod(go(v)),
        Force(v) => Force(go(v)),
        App(s, v) => App(go(s), go(v)),
        Fold(k, s) => Fold(k.clone(), go(s)),
        Unfold(s) => Unfold(go(s)),
        Lam(p, s) => Lam(p.clone(), go_under(s, 1)),
        Choice(a, c) => Choice(go(a), go(c)),
        To(s, p, body) => To(go(s), p.clone(), go_under(body, 1)),
        Case(v, p1, s, p2, r) => Case(
            go(v),
            p1.clone(),
            go_under(s, 1),
            p2.clone(),
            go_under(r, 1),
        ),
        Fst(s) => Fst(go(s)),
        Snd(s) => Snd(go(s)),
        PairC(a, c) => PairC(go(a), go(c)),
        Pm(v, p1, p2, body) => Pm(go(v), p1.clone(), p2.clone(), go_under(body, 2)),
    }
}

/// Adds `by` to every free index at or above `cutoff`.
pub fn shift(t: &CbpvTerm, by: usize, cutoff: usize) -> CbpvTerm {
    if by == 0 {
        return t.clone();
    }
    map_free(t, 0, &|j, depth| {
        if j >= cutoff {
            Var(j + by + depth)
        } else {
            Var(j + depth)
        }
    })
}

/// `Γ ⊢ t` regarded in `Γ + Δ` with `|Δ| = n`.
pub fn weaken(t: &CbpvTerm, n: usize) -> CbpvTerm {
    shift(t, n, 0)
}

/// Renaming along `r : Γ → Δ` on context positions (`Γ(i) = Δ(r(i))`).
pub fn rename(
    t: &CbpvTerm,
    gamma_len: usize,
    delta_len: usize,
    r: &dyn Fn(usize) -> usize,
) -> CbpvTerm {
    map_free(t, 0, &|j, depth| {
        assert!(
            j < gamma_len,
            "free index {j} outside a context of {gamma_len}"
        );
        let pos = r(gamma_len - 1 - j);
        assert!(
            pos < delta_len,
            "renaming target {pos} outside a context of {delta_len}"
        );
        Var(delta_len - 1 - pos + depth)
    })
}

/// Exchanges the two innermost free variables.
pub fn swap01(t: &CbpvTerm) -> CbpvTerm {
    map_free(t, 0, &|j, depth| {
        let k = match j {
            0 => 1,
            1 => 0,
            k => k,
        };
        Var(k + depth)
    })
}

/// Simultaneous substitution `t[ū]`: `t` lives in a context of `us.len()`
/// variables, position `i` receiving `us[i]`; every `us[i]` lives in the
/// same target context. Terms crossing a binder are shifted at the leaves.
///
/// Panics if `t` has a free variable outside the tuple.
pub fn subst_sim(t: &CbpvTerm, us: &[CbpvTerm]) -> CbpvTerm {
    let n = us.len();
    map_free(t, 0, &|j, depth| {
        assert!(j < n, "free index {j} outside a substitution of {n}");
        shift(&us[n - 1 - j], depth, 0)
    })
}

/// `t[v/x]` for the variable at de Bruijn index `slot`; the other variables
/// are kept, closing the gap left by the slot. `v` lives in the context
/// without the slot.
pub fn subst_single(t: &CbpvTerm, v: &CbpvTerm, slot: usize) -> CbpvTerm {
    map_free(t, 0, &|j, depth| {
        if j == slot {
            shift(v, depth, 0)
        } else if j > slot {
            Var(j - 1 + depth)
        } else {
            Var(j + depth)
        }
    })
}

/// `t[v/x]` for the innermost variable, as in `app(lam x.t, v) → t[v/x]`.
pub fn subst_top(t: &CbpvTerm, v: &CbpvTerm) -> CbpvTerm {
    subst_single(t, v, 0)
}

/// The variables of a context of length `n`, by position.
pub fn identity_tuple(n: usize) -> Vec<CbpvTerm> {
    (0..n).map(|i| Var(n - 1 - i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substitution has {found} entries for a context of {expected}")]
    Arity { expected: usize, found: usize },
    #[error("entry {position}: expected {expected}, found {found}")]
    EntryType {
        position: usize,
        expected: String,
        found: String,
    },
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// [`subst_sim`] after checking that each entry has its slot's type in `delta`.
pub fn subst_checked(
    gamma: &Ctx,
    t: &CbpvTerm,
    delta: &Ctx,
    us: &[CbpvTerm],
) -> Result<CbpvTerm, SubstError> {
    if gamma.len() != us.len() {
        return Err(SubstError::Arity {
            expected: gamma.len(),
            found: us.len(),
        });
    }
    for (i, (phi, u)) in gamma.iter().zip(us).enumerate() {
        let ty = typecheck(delta, u)?;
        if ty != Ty::V(phi.clone()) {
            return Err(SubstError::EntryType {
                position: i,
                expected: phi.to_string(),
                found: ty.to_string(),
            });
        }
    }
    Ok(subst_sim(t, us))
}
