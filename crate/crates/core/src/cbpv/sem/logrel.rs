use std::collections::BTreeMap;

use super::clauses::{all_clauses, Arguments, CbpvIndex, CheckConfig, Env};
use super::sim::CbpvRelation;
use crate::cbpv::syntax::CbpvTerm;
use crate::kernel::{stepindex_chain, StepClauses, StepIndexed};

pub type CbpvPair = (CbpvIndex, CbpvTerm, CbpvTerm);

/// Clauses of the step-indexed logical relation. Unsettled weak closures
/// count as violations, so truncated levels are approximated from below.
pub struct CbpvLogrel {
    pub env: Env,
    pub assume_reflexive: bool,
}

impl CbpvLogrel {
    pub fn new(cfg: CheckConfig) -> Self {
        CbpvLogrel {
            env: Env::new(cfg),
            assume_reflexive: true,
        }
    }
}

impl StepClauses for CbpvLogrel {
    type Pair = CbpvPair;

    fn next_holds(&self, (idx, t, s): &CbpvPair, prev: &mut dyn FnMut(&CbpvPair) -> bool) -> bool {
        if self.assume_reflexive && t == s {
            return true;
        }
        let mut r = |i: &CbpvIndex, a: &CbpvTerm, b: &CbpvTerm| {
            (self.assume_reflexive && a == b) || prev(&(i.clone(), a.clone(), b.clone()))
        };
        all_clauses(&self.env, Arguments::Related, idx, t, s, &mut r).is_ok()
    }
}

/// `[L^0, …, L^depth]` restricted to the universe, per index.
pub fn logrel_cbpv(
    universe: &BTreeMap<CbpvIndex, Vec<CbpvTerm>>,
    depth: usize,
    cfg: &CheckConfig,
) -> Vec<CbpvRelation> {
    let mut rel = StepIndexed::new(CbpvLogrel::new(cfg.clone()));
    stepindex_chain(&mut rel, universe, depth, |i, a, b| {
        (i.clone(), a.clone(), b.clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cbpv::syntax::*;
    use crate::kernel::{is_antitone, stabilization_index};

    fn level(
        rel: &mut StepIndexed<CbpvLogrel>,
        depth: usize,
        idx: &CbpvIndex,
        a: &CbpvTerm,
        b: &CbpvTerm,
    ) -> usize {
        rel.max_level(depth, &(idx.clone(), a.clone(), b.clone()))
    }

    #[test]
    fn beta_laws() {
        let k = f(unit());
        let idx = CbpvIndex::closed(Ty::C(k.clone()));
        let mut rel = StepIndexed::new(CbpvLogrel::new(CheckConfig::default()));
        for t in [
            prod_c(star()),
            choice(prod_c(star()), diverge(&k)),
            diverge(&k),
        ] {
            let ft = force(thunk(t.clone()));
            assert_eq!(level(&mut rel, 16, &idx, &t, &ft), 16);
            assert_eq!(level(&mut rel, 16, &idx, &ft, &t), 16);
        }
    }

    #[test]
    fn thunk_eta_closed() {
        let k = f(unit());
        let idx = CbpvIndex::closed(Ty::V(u(k.clone())));
        let mut rel = StepIndexed::new(CbpvLogrel::new(CheckConfig::default()));
        let v = thunk(choice(prod_c(star()), diverge(&k)));
        let eta = thunk(force(v.clone()));
        assert_eq!(level(&mut rel, 16, &idx, &v, &eta), 16);
        assert_eq!(level(&mut rel, 16, &idx, &eta, &v), 16);
    }

    #[test]
    fn thunk_eta_open_needs_testing() {
        let phi = u(f(unit()));
        let idx = CbpvIndex::val(&vec![phi.clone()], &phi);
        let (x, eta) = (var(0), thunk(force(var(0))));
        let mut plain = StepIndexed::new(CbpvLogrel::new(CheckConfig::default()));
        assert_eq!(level(&mut plain, 8, &idx, &x, &eta), 8);
        assert_eq!(level(&mut plain, 8, &idx, &eta, &x), 0);
        let cfg = CheckConfig {
            testing_weakening: true,
            ..CheckConfig::default()
        };
        let mut testing = StepIndexed::new(CbpvLogrel::new(cfg));
        assert_eq!(level(&mut testing, 8, &idx, &x, &eta), 8);
        assert_eq!(level(&mut testing, 8, &idx, &eta, &x), 8);
    }

    #[test]
    fn chain_on_small_universe() {
        let k = f(sum(unit(), unit()));
        let idx = CbpvIndex::closed(Ty::C(k.clone()));
        let l = prod_c(inl(unit(), unit(), star()));
        let r = prod_c(inr(unit(), unit(), star()));
        let terms = vec![
            l.clone(),
            r.clone(),
            choice(l.clone(), r.clone()),
            diverge(&k),
            force(thunk(l.clone())),
        ];
        let u = BTreeMap::from([(idx.clone(), terms)]);
        let chain = logrel_cbpv(&u, 6, &CheckConfig::default());
        assert!(is_antitone(&chain));
        assert!(stabilization_index(&chain).is_some());
        let last = chain.last().unwrap();
        assert!(last.contains(&idx, &l, &choice(l.clone(), r.clone())));
        assert!(!last.contains(&idx, &choice(l.clone(), r.clone()), &l));
        assert!(last.contains(&idx, &diverge(&k), &l));
        assert!(!last.contains(&idx, &l, &r));
    }
}
