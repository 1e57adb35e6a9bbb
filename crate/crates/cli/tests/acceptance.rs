//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p workbench --test acceptance -- --nocapture` to see
//! the lines. Criteria listed in `KNOWN_RED` are expected to fail; the test
//! asserts that they still do, so a fix forces the list to be updated.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use clap::Parser as _;
use rand::Rng as _;
use workbench::{run, RunConfig};
use workbench_core::cbpv::sem::{
    cbpv_greatest_simulation, cbpv_lax_check, context_oracle_cbpv, logrel_cbpv, may_terminates,
    observe, rho1_subst, rho2_agreement_with, successors, Agreement, CbpvIndex, CbpvLogrel,
    CheckConfig,
};
use workbench_core::cbpv::syntax::{
    self as cs, choice, diverge, force, prod_c, star, subst_sim, thunk, typecheck, u, var,
    CbpvTerm, CompType, Enumerator, Ty, TypePool,
};
use workbench_core::fgcbv::{
    context_oracle_fg, cv, fg_apply_label, fg_check_simulation, fg_greatest_simulation,
    fg_lax_bialgebra_check, fg_logrel, fg_step, kp, random_comp, random_value, ret, spp, vc, vv,
    FgComp, FgLogrel, FgRelation, FgRun, FgTables, FgTerm, FgValue, Sort,
};
use workbench_core::kernel::{
    is_antitone, stabilization_index, Diagonal, StepIndexed, Termination,
};
use workbench_core::rng::{env_seed, seeded, Rng};
use workbench_core::xcl::{
    app as xapp, context_oracle_xcl, greatest_simulation, kp as xkp, lax_bialgebra_check_xcl,
    logrel_xcl, omega, terms_up_to, XclTerm,
};

/// Criteria that cannot pass as stated. Criterion 2 checks the first β-law
/// relation as written, which lacks the value diagonal and so is not closed
/// under the clauses (its own diagonal pair `([u], [u])` steps to `(u, u)`).
const KNOWN_RED: &[usize] = &[2];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

// ---- 1 ----

fn ascii(s: &str) -> String {
    s.replace('″', "''")
        .replace('′', "'")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect()
}

fn c1() -> Outcome {
    let args = [
        "workbench",
        "trace",
        "--lang",
        "xcl",
        "(S K) I",
        "--label",
        "I",
    ];
    let rep = run(&RunConfig::try_parse_from(args).unwrap());
    let steps: Vec<_> = rep
        .records
        .iter()
        .filter(|r| r["record"] == "step")
        .collect();
    let Some(first) = steps.first() else {
        return outcome(false, "no steps");
    };
    let mut got = first["from"].as_str().unwrap().to_string();
    for s in &steps {
        match s["label"].as_str() {
            Some(l) => got.push_str(&format!(" —{l}→ ")),
            None => got.push_str(" → "),
        }
        got.push_str(s["to"].as_str().unwrap());
    }
    let expected = "(S K) I → S′(K) I → S″(K,I) —t→ (K t)(I t) → K′(t)(I t) → t";
    let with_i: String = expected
        .chars()
        .map(|c| if c == 't' { 'I' } else { c })
        .collect();
    outcome(ascii(&got) == ascii(&with_i), got)
}

// ---- 2 ----

fn beta_instances(rng: &mut Rng, n: usize) -> Vec<(FgValue, FgValue, FgComp)> {
    (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=4);
            let v = random_value(rng, size, false);
            let size = rng.gen_range(1..=3);
            let w = random_value(rng, size, false);
            let t = fg_apply_label(&v, &w);
            (v, w, t)
        })
        .collect()
}

fn c2(rng: &mut Rng) -> Outcome {
    let labels = FgTables::new(2, false).values_up_to(2);
    let mut fails_i = 0;
    let mut fails_ii = 0;
    let mut fails_fixed = 0;
    let cases = beta_instances(rng, 20);
    for (v, w, t) in &cases {
        let vw = FgTerm::C(vv(v.clone(), w.clone()));
        let t = FgTerm::C(t.clone());
        let mut first = FgRelation::new();
        first.add_diagonal_at(Sort::Computation);
        first.insert(Sort::Computation, vw.clone(), t.clone());
        let mut fixed = first.clone();
        fixed.set_diagonal(Diagonal::All);
        let mut second = FgRelation::new();
        second.set_diagonal(Diagonal::All);
        second.insert(Sort::Computation, t, vw);
        fails_i += usize::from(!fg_check_simulation(&first, &labels, 500).is_holds());
        fails_fixed += usize::from(!fg_check_simulation(&fixed, &labels, 500).is_holds());
        fails_ii += usize::from(!fg_check_simulation(&second, &labels, 500).is_holds());
    }
    outcome(
        fails_i + fails_ii == 0,
        format!(
            "{} instances: (i) as written fails {fails_i}, (ii) fails {fails_ii}, \
             (i) with value diagonal fails {fails_fixed}",
            cases.len()
        ),
    )
}

// ---- 3 ----

fn c3(rng: &mut Rng) -> Outcome {
    let mut drops = 0;
    let mut evals = 0;
    for _ in 0..10 {
        let size = rng.gen_range(1..=4);
        let v = random_value(rng, size, false);
        let inputs = vec![FgValue::I, FgValue::K, FgValue::S, v.clone()];
        let mut rel = StepIndexed::new(FgLogrel::new(inputs, 1000));
        let eta1 = FgTerm::V(spp(ret(kp(ret(FgValue::I))), ret(v.clone())));
        let eta2 = FgTerm::C(cv(vc(FgValue::S, vv(FgValue::K, FgValue::I)), v.clone()));
        let vv_ = FgTerm::V(v.clone());
        let rv = FgTerm::C(ret(v.clone()));
        for pair in [
            (vv_.clone(), eta1.clone()),
            (eta1, vv_),
            (rv.clone(), eta2.clone()),
            (eta2, rv),
        ] {
            if rel.max_level(16, &pair) < 16 {
                drops += 1;
            }
        }
        evals += rel.evaluations();
    }
    outcome(
        drops == 0,
        format!("10 values, 40 pairs, {drops} drops, {evals} clause evaluations"),
    )
}

// ---- 4 ----

fn c4(rng: &mut Rng) -> Outcome {
    let inputs = vec![FgValue::I, FgValue::K, FgValue::S];
    let mut rel = StepIndexed::new(FgLogrel::new(inputs.clone(), 200));
    let mut violations = 0;
    let mut related = 0;
    let mut cases = 0;
    while cases < 1000 {
        let size = rng.gen_range(2..=8);
        let c = random_comp(rng, size, false);
        let run = FgRun::new(&FgTerm::C(c), 50);
        let comps: Vec<FgComp> = run
            .states
            .iter()
            .filter_map(|s| match s {
                FgTerm::C(c) => Some(c.clone()),
                FgTerm::V(_) => None,
            })
            .collect();
        // partners come from the same run, from an unrelated term, or are a
        // divergent computation, which separates pairs in one direction
        let w = spp(ret(FgValue::I), ret(FgValue::I));
        let omega = vv(w.clone(), w);
        let pick = |rng: &mut Rng| match rng.gen_range(0..4) {
            0 | 1 => comps[rng.gen_range(0..comps.len())].clone(),
            2 => {
                let size = rng.gen_range(2..=8);
                random_comp(rng, size, false)
            }
            _ => omega.clone(),
        };
        let (t, s) = (pick(rng), pick(rng));
        let n = rng.gen_range(1..=8);
        let pair = (FgTerm::C(t.clone()), FgTerm::C(s.clone()));
        cases += 1;
        if !rel.holds(n, &pair) {
            continue;
        }
        related += 1;
        // predecessors: K'(t) ∘ w → t for any w, and a random computation
        // stepping to t when there is one in the run
        let w = inputs[rng.gen_range(0..inputs.len())].clone();
        let mut preds_t = vec![vv(kp(t.clone()), w.clone())];
        let mut preds_s = vec![vv(kp(s.clone()), w)];
        let partner = FgRun::new(&FgTerm::C(s.clone()), 1);
        if let [_, FgTerm::C(_)] = partner.states.as_slice() {
            // s itself as the predecessor of its own reduct, on the left
            let FgTerm::C(next) = &partner.states[1] else {
                unreachable!()
            };
            let pair = (FgTerm::C(next.clone()), FgTerm::C(t.clone()));
            if rel.holds(n, &pair) {
                violations +=
                    usize::from(!rel.holds(n, &(FgTerm::C(s.clone()), FgTerm::C(t.clone()))));
            }
        }
        for (a, b) in comps.iter().zip(comps.iter().skip(1)) {
            if fg_step(a) == FgTerm::C(b.clone()) {
                if *b == t {
                    preds_t.push(a.clone());
                }
                if *b == s {
                    preds_s.push(a.clone());
                }
            }
        }
        for p in &preds_t {
            debug_assert_eq!(fg_step(p), FgTerm::C(t.clone()));
            violations += usize::from(!rel.holds(n, &(FgTerm::C(p.clone()), FgTerm::C(s.clone()))));
        }
        for p in &preds_s {
            violations += usize::from(!rel.holds(n, &(FgTerm::C(t.clone()), FgTerm::C(p.clone()))));
        }
    }
    outcome(
        violations == 0 && related > 0,
        format!("{cases} pairs, {related} related, {violations} violations"),
    )
}

// ---- 5 ----

fn c5(rng: &mut Rng) -> Outcome {
    let pool = TypePool::default();
    let plain = CheckConfig::default();
    let testing = CheckConfig {
        testing_weakening: true,
        ..CheckConfig::default()
    };
    let mut drops = 0;
    let mut pairs = 0;
    let mut rels = BTreeMap::new();
    for i in 0..20 {
        let k: CompType = pool.comps[i % pool.comps.len()].clone();
        let size = rng.gen_range(2..=7);
        let t = cs::random_term(rng, &Ty::C(k.clone()), &Vec::new(), size, &pool);
        let at_k = CbpvIndex::closed(Ty::C(k.clone()));
        let at_uk = CbpvIndex::closed(Ty::V(u(k.clone())));
        let ft = force(thunk(t.clone()));
        let v = thunk(t.clone());
        let eta = thunk(force(v.clone()));
        for (name, cfg) in [("plain", &plain), ("testing", &testing)] {
            let rel = rels
                .entry(name)
                .or_insert_with(|| StepIndexed::new(CbpvLogrel::new(cfg.clone())));
            for pair in [
                (at_k.clone(), t.clone(), ft.clone()),
                (at_k.clone(), ft.clone(), t.clone()),
                (at_uk.clone(), v.clone(), eta.clone()),
            ] {
                pairs += 1;
                drops += usize::from(rel.max_level(16, &pair) < 16);
            }
        }
    }
    // the reverse thunk-η pair on an open thunk needs the testing weakening
    let phi = u(cs::f(cs::unit()));
    let idx = CbpvIndex::new(vec![phi.clone()], Ty::V(phi));
    let reverse = (idx, thunk(force(var(0))), var(0));
    let with = rels.get_mut("testing").unwrap().max_level(16, &reverse);
    let without = rels.get_mut("plain").unwrap().max_level(16, &reverse);
    outcome(
        drops == 0 && with == 16 && without < 16,
        format!(
            "{pairs} pairs, {drops} drops; open reverse thunk-η reaches level {with} with \
             testing weakening, {without} without"
        ),
    )
}

// ---- 6 ----

fn c6(rng: &mut Rng) -> Outcome {
    let pool = TypePool::default();
    let types = pool.all_types();
    let mut rho1_bad = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3);
        let ctx: Vec<_> = (0..n)
            .map(|_| pool.values[rng.gen_range(0..pool.values.len())].clone())
            .collect();
        let ty = &types[rng.gen_range(0..types.len())];
        let size = rng.gen_range(2..=10);
        let t = cs::random_term(rng, ty, &ctx, size, &pool);
        assert_eq!(typecheck(&ctx, &t).as_ref(), Ok(ty), "{t}");
        let us: Vec<CbpvTerm> = ctx
            .iter()
            .map(|phi| cs::random_term(rng, &Ty::V(phi.clone()), &Vec::new(), 3, &pool))
            .collect();
        rho1_bad += usize::from(rho1_subst(&t, &us) != subst_sim(&t, &us));
    }
    let e = Enumerator::new(pool.clone());
    let mut terms: Vec<CbpvTerm> = e
        .closed_computations(5)
        .into_iter()
        .map(|(_, t)| t)
        .collect();
    let exhaustive = terms.len();
    for _ in 0..1000 {
        let k = &pool.comps[rng.gen_range(0..pool.comps.len())];
        let size = rng.gen_range(6..=12);
        terms.push(cs::random_term(
            rng,
            &Ty::C(k.clone()),
            &Vec::new(),
            size,
            &pool,
        ));
    }
    let (mut flagged, mut disagree) = (0, 0);
    for t in &terms {
        match rho2_agreement_with(0, t, &e) {
            Agreement::Agree => {}
            Agreement::Flagged(_) => flagged += 1,
            Agreement::Disagree(_) => disagree += 1,
        }
    }
    outcome(
        rho1_bad == 0 && disagree == 0,
        format!(
            "rho1: 1000 cases, {rho1_bad} mismatches; rho2: {exhaustive} exhaustive + 1000 \
             random, {disagree} disagreements, {flagged} flagged (unfold congruence)"
        ),
    )
}

// ---- 7 ----

fn c7() -> Outcome {
    let x = lax_bialgebra_check_xcl(&terms_up_to(5), 200);
    let fg = fg_lax_bialgebra_check(&FgTables::new(5, false).terms_up_to(5), 200);
    let e = Enumerator::new(TypePool::default());
    // fst and snd need a tensor, whose smallest terms have 6 nodes
    let universe: Vec<CbpvTerm> = e
        .closed_computations(6)
        .into_iter()
        .map(|(_, t)| t)
        .collect();
    let cb = cbpv_lax_check(&universe, 200);
    let ok = x.is_holds() && fg.is_holds() && cb.is_holds();
    outcome(
        ok,
        format!(
            "xcl {} ({}), fgcbv {} ({}), cbpv {} ({})",
            x.status,
            x.diagnostics.join("; "),
            fg.status,
            fg.diagnostics.join("; "),
            cb.status,
            cb.diagnostics.join("; ")
        ),
    )
}

// ---- 8 ----

fn c8() -> Outcome {
    let (ctx, fuel) = (5, 500);
    let mut bad = Vec::new();
    let mut checked = [0usize; 3];
    let u = terms_up_to(4);
    let sim = greatest_simulation(&u, &terms_up_to(2), fuel);
    for (_, p, q) in sim.relation.iter() {
        if p != q {
            checked[0] += 1;
            if context_oracle_xcl(p, q, ctx, fuel).is_fails() {
                bad.push(format!("xcl {p} ~ {q}"));
            }
        }
    }
    let tables = FgTables::new(4, false);
    let sim = fg_greatest_simulation(&tables.terms_up_to(4), &tables.values_up_to(2), fuel);
    for (_, p, q) in sim.relation.iter() {
        if p != q {
            checked[1] += 1;
            if context_oracle_fg(p, q, ctx, fuel, false).is_fails() {
                bad.push(format!("fgcbv {p} ~ {q}"));
            }
        }
    }
    let pool = TypePool::default();
    let e = Enumerator::new(pool.clone());
    let mut universe: BTreeMap<CbpvIndex, Vec<CbpvTerm>> = BTreeMap::new();
    for ty in pool.all_types() {
        let terms = e.up_to(&ty, &Vec::new(), 4);
        if !terms.is_empty() {
            universe.insert(CbpvIndex::closed(ty), terms);
        }
    }
    let cfg = CheckConfig {
        fuel,
        ..CheckConfig::default()
    };
    let sim = cbpv_greatest_simulation(&universe, &cfg);
    for (idx, p, q) in sim.relation.iter() {
        if p != q {
            checked[2] += 1;
            if context_oracle_cbpv(idx, p, q, &pool, ctx, fuel).is_fails() {
                bad.push(format!("cbpv {idx}: {p} ~ {q}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "non-diagonal retained pairs: xcl {}, fgcbv {}, cbpv {}; counterexamples {}{}",
            checked[0],
            checked[1],
            checked[2],
            bad.len(),
            bad.first()
                .map(|b| format!(", first {b}"))
                .unwrap_or_default()
        ),
    )
}

// ---- 9 ----

fn c9() -> Outcome {
    let k = cs::f(cs::unit());
    let d = diverge(&k);
    let either = choice(d.clone(), prod_c(star()));
    let runs: Vec<_> = (0..10)
        .map(|_| (may_terminates(&either, 1000), may_terminates(&d, 1000)))
        .collect();
    let deterministic = runs.iter().all(|r| r == &runs[0]);
    let (yes, no) = &runs[0];
    let yes_ok = matches!(yes, Termination::Terminates { state, .. } if *state == prod_c(star()));
    let no_ok = matches!(
        no,
        Termination::Diverges {
            witness: Some(_),
            ..
        }
    );
    outcome(
        deterministic && yes_ok && no_ok,
        format!("choice terminates: {yes_ok}, diverge has cycle witness: {no_ok}, 10 runs identical: {deterministic}"),
    )
}

// ---- 10 ----

fn c10(rng: &mut Rng) -> Outcome {
    let pool = TypePool::default();
    let e = Enumerator::new(pool.clone());
    let mut terms = e.closed_computations(5);
    let exhaustive = terms.len();
    for _ in 0..10_000 {
        let k = pool.comps[rng.gen_range(0..pool.comps.len())].clone();
        let size = rng.gen_range(2..=12);
        let t = cs::random_term(rng, &Ty::C(k.clone()), &Vec::new(), size, &pool);
        terms.push((k, t));
    }
    let mut violations = Vec::new();
    for (k, t) in &terms {
        let want = Ok(Ty::C(k.clone()));
        if typecheck(&Vec::new(), t) != want {
            violations.push(format!("{t} is ill-typed"));
        }
        let succ = successors(t);
        if succ.is_empty() && observe(t).is_none() {
            violations.push(format!("{t} is stuck"));
        }
        for s in succ {
            if typecheck(&Vec::new(), &s) != want {
                violations.push(format!("{t} -> {s} changes type"));
            }
        }
    }
    let mut chains_bad = 0;
    let x = vec![
        XclTerm::I,
        XclTerm::K,
        xkp(XclTerm::I),
        xapp(XclTerm::I, XclTerm::K),
        xapp(XclTerm::K, XclTerm::I),
        omega(),
    ];
    let chain = logrel_xcl(&x, &[], 16, 200);
    chains_bad += usize::from(!is_antitone(&chain) || stabilization_index(&chain).is_none());
    let fu = FgTables::new(2, false).terms_up_to(2);
    let chain = fg_logrel(&fu, &[FgValue::I, FgValue::K], 8, 200);
    chains_bad += usize::from(!is_antitone(&chain) || stabilization_index(&chain).is_none());
    let k = cs::f(cs::sum(cs::unit(), cs::unit()));
    let cu = BTreeMap::from([(
        CbpvIndex::closed(Ty::C(k.clone())),
        e.up_to(&Ty::C(k.clone()), &Vec::new(), 5),
    )]);
    let chain = logrel_cbpv(&cu, 8, &CheckConfig::default());
    chains_bad += usize::from(!is_antitone(&chain) || stabilization_index(&chain).is_none());
    outcome(
        violations.is_empty() && chains_bad == 0,
        format!(
            "{exhaustive} exhaustive + 10000 random terms, {} violations{}; 3 chains, {chains_bad} bad",
            violations.len(),
            violations.first().map(|v| format!(", first {v}")).unwrap_or_default()
        ),
    )
}

#[test]
fn acceptance() {
    let seed = env_seed();
    let mut rng = seeded(seed);
    let secs = Duration::from_secs;
    let criteria: Vec<(usize, &str, Duration, Box<dyn FnOnce(&mut Rng) -> Outcome>)> = vec![
        (1, "xcl trace golden", secs(1), Box::new(|_| c1())),
        (2, "beta-law simulations", secs(10), Box::new(c2)),
        (3, "eta law via logical relation", secs(60), Box::new(c3)),
        (4, "backward beta", secs(60), Box::new(c4)),
        (5, "cbpv beta/eta goldens", secs(120), Box::new(c5)),
        (6, "rho1/rho2 agreement", secs(120), Box::new(c6)),
        (
            7,
            "lax-bialgebra desk checks",
            secs(120),
            Box::new(|_| c7()),
        ),
        (8, "soundness spot check", secs(600), Box::new(|_| c8())),
        (9, "may-termination", secs(10), Box::new(|_| c9())),
        (10, "structural suites", secs(300), Box::new(c10)),
    ];
    println!("seed {seed}");
    let mut unexpected = Vec::new();
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let out = f(&mut rng);
        let elapsed = start.elapsed();
        let pass = out.ok && elapsed < limit;
        println!(
            "{} {n:>2} {name}: {} [{:.2}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if pass == KNOWN_RED.contains(&n) {
            unexpected.push(n);
        }
    }
    assert!(
        unexpected.is_empty(),
        "criteria with unexpected outcome: {unexpected:?}"
    );
}
