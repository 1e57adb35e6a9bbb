use std::collections::BTreeMap;

use super::clauses::{all_clauses, Arguments, CbpvIndex, CheckConfig, Env, Outcome};
use crate::cbpv::syntax::{typecheck, CbpvTerm, Ty, TypeError};
use crate::kernel::{simulation_fixpoint, FixpointRun, IndexedRelation, Verdict, VerdictBuilder};

pub type CbpvRelation = IndexedRelation<CbpvIndex, CbpvTerm>;

#[derive(Debug, thiserror::Error)]
pub enum IndexError {
    #[error("{side} term {term} at {index}: {source}")]
    IllTyped {
        side: &'static str,
        term: String,
        index: String,
        source: TypeError,
    },
    #[error("{side} term {term} has type {found}, but the index is {index}")]
    Mismatch {
        side: &'static str,
        term: String,
        found: Ty,
        index: String,
    },
}

/// Every listed pair is well typed at its index.
pub fn check_indices(rel: &CbpvRelation) -> Result<(), IndexError> {
    for (idx, t, s) in rel.iter() {
        for (side, term) in [("left", t), ("right", s)] {
            let shown = || term.display_in(idx.ctx.len()).to_string();
            match typecheck(&idx.ctx, term) {
                Ok(ty) if ty == idx.ty => {}
                Ok(found) => {
                    return Err(IndexError::Mismatch {
                        side,
                        term: shown(),
                        found,
                        index: idx.to_string(),
                    })
                }
                Err(source) => {
                    return Err(IndexError::IllTyped {
                        side,
                        term: shown(),
                        index: idx.to_string(),
                        source,
                    })
                }
            }
        }
    }
    Ok(())
}

/// Checks the weak-simulation clauses on every listed pair. Substitutions
/// and `lam` arguments range over closed values up to `cfg.value_size`
/// (plus context variables for arguments).
pub fn check_weak_simulation(rel: &CbpvRelation, cfg: &CheckConfig) -> Result<Verdict, IndexError> {
    check_indices(rel)?;
    let env = Env::new(cfg.clone());
    let mut out = VerdictBuilder::new();
    for (idx, t, s) in rel.iter() {
        out.checked += 1;
        let mut r = |i: &CbpvIndex, a: &CbpvTerm, b: &CbpvTerm| rel.contains(i, a, b);
        match all_clauses(&env, Arguments::Same, idx, t, s, &mut r) {
            Outcome::Ok => {}
            Outcome::Fail(w) => {
                out.fail(w);
                break;
            }
            Outcome::Unknown(msg) => out.unknown(msg),
        }
    }
    Ok(out
        .finish()
        .note(format!("closed values up to size {}", cfg.value_size)))
}

/// Greatest weak simulation inside `universe² ∪ Δ`, per index. Pairs whose
/// check runs out of fuel are dropped.
pub fn cbpv_greatest_simulation(
    universe: &BTreeMap<CbpvIndex, Vec<CbpvTerm>>,
    cfg: &CheckConfig,
) -> FixpointRun<CbpvIndex, CbpvTerm> {
    let env = Env::new(cfg.clone());
    simulation_fixpoint(universe, true, |idx, t, s, rel| {
        let mut r = |i: &CbpvIndex, a: &CbpvTerm, b: &CbpvTerm| rel.contains(i, a, b);
        all_clauses(&env, Arguments::Same, idx, t, s, &mut r).is_ok()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbpv::sem::cbpv_closure;
    use crate::cbpv::syntax::*;
    use crate::kernel::Status;

    fn at(k: CompType) -> CbpvIndex {
        CbpvIndex::closed(Ty::C(k))
    }

    #[test]
    fn identity_holds() {
        let mut r = CbpvRelation::identity();
        r.insert(at(f(unit())), prod_c(star()), prod_c(star()));
        assert!(check_weak_simulation(&r, &CheckConfig::default())
            .unwrap()
            .is_holds());
    }

    #[test]
    fn force_thunk_beta() {
        let t = choice(prod_c(star()), diverge(&f(unit())));
        let k = f(unit());
        let mut r = CbpvRelation::identity();
        r.insert(at(k.clone()), t.clone(), force(thunk(t.clone())));
        assert!(check_weak_simulation(&r, &CheckConfig::default())
            .unwrap()
            .is_holds());
        let mut r = CbpvRelation::identity();
        r.insert(at(k), force(thunk(t.clone())), t);
        assert!(check_weak_simulation(&r, &CheckConfig::default())
            .unwrap()
            .is_holds());
    }

    #[test]
    fn mismatched_producers_fail() {
        let bool_t = sum(unit(), unit());
        let k = f(bool_t.clone());
        let mut r = CbpvRelation::identity();
        r.insert(
            at(k),
            prod_c(inl(unit(), unit(), star())),
            prod_c(inr(unit(), unit(), star())),
        );
        let v = check_weak_simulation(&r, &CheckConfig::default()).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.witness.unwrap().clause, "prod");
    }

    #[test]
    fn cross_typed_pair_is_an_error() {
        let mut r = CbpvRelation::new();
        r.insert(
            at(f(unit())),
            prod_c(star()),
            prod_c(inl(unit(), unit(), star())),
        );
        assert!(matches!(
            check_weak_simulation(&r, &CheckConfig::default()),
            Err(IndexError::Mismatch { .. })
        ));
    }

    #[test]
    fn lam_clause_uses_same_argument() {
        // lam x. prod x  vs  lam x. prod x  under different spellings
        let phi = unit();
        let k = arrow(phi.clone(), f(phi.clone()));
        let m = lam(phi.clone(), prod_c(var(0)));
        let n = lam(phi.clone(), force(thunk(prod_c(var(0)))));
        let mut r = CbpvRelation::identity();
        r.insert(at(k), m, n.clone());
        r.insert(
            at(f(phi.clone())),
            prod_c(star()),
            force(thunk(prod_c(star()))),
        );
        assert!(check_weak_simulation(&r, &CheckConfig::default())
            .unwrap()
            .is_holds());
    }

    #[test]
    fn greatest_simulation_keeps_beta_pair() {
        let k = f(unit());
        let t = prod_c(star());
        // the divergent term's whole cycle must be present to be matched
        let mut terms: Vec<CbpvTerm> = cbpv_closure(&diverge(&k), 10)
            .reachable
            .into_iter()
            .collect();
        terms.extend([t.clone(), force(thunk(t.clone()))]);
        let u = BTreeMap::from([(at(k.clone()), terms)]);
        let run = cbpv_greatest_simulation(&u, &CheckConfig::default());
        let rel = &run.relation;
        assert!(rel.contains(&at(k.clone()), &t, &force(thunk(t.clone()))));
        assert!(rel.contains(&at(k.clone()), &diverge(&k), &t));
        assert!(!rel.contains(&at(k.clone()), &t, &diverge(&k)));
    }
}
