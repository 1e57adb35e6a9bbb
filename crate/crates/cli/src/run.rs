use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use workbench_core::cbpv::sem::{
    check_indices, check_weak_simulation, context_oracle_cbpv, trace_cbpv, Cbpv as CbpvSem,
    CbpvIndex, CbpvLogrel, CheckConfig, StepConfig,
};
use workbench_core::cbpv::syntax::{typecheck, CbpvTerm, Ty, TypePool};
use workbench_core::fgcbv::{
    context_oracle_fg, fg_apply_label, fg_check_simulation, fg_logrel_inputs, fg_step, Fg as FgSem,
    FgLogrel, FgTables, FgTerm, FgValue, Sort,
};
use workbench_core::kernel::{
    may_terminate, Semantics, StepClauses, StepIndexed, Termination, Verdict, Witness,
};
use workbench_core::xcl::{
    apply_label, check_applicative_simulation, context_oracle_xcl, logrel_inputs, step,
    terms_up_to, Xcl as XclSem, XclLogrel, XclStep, XclTerm,
};

use crate::config::{Command, Flag, Language, RunConfig};
use crate::files::{read_relation, read_universe, InputError, RelationFile};
use crate::lang::{sort_name, Cbpv, Fg, Lang, Xcl};
use crate::lex::ParseError;
use crate::parse::{parse_cbpv_in, parse_fg, parse_xcl, Scope};
use crate::report::{verdict_json, Exit, Report};

/// Runs one command. The report always starts with the configuration echo
/// and ends with a (non-canonical) timing record.
pub fn run(cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let mut rep = Report::new();
    rep.push(cfg.echo());
    rep.exit = match dispatch(cfg, &mut rep) {
        Ok(exit) => exit,
        Err(e) => {
            rep.push(json!({"record": "error", "message": e.to_string()}));
            Exit::InputError
        }
    };
    rep.push(json!({
        "record": "timing",
        "wall_ms": start.elapsed().as_millis() as u64,
    }));
    rep
}

fn dispatch(cfg: &RunConfig, rep: &mut Report) -> Result<Exit, InputError> {
    cfg.validate().map_err(InputError::Invalid)?;
    if cfg.command == Command::Selftest {
        return Ok(crate::selftest::selftest(cfg, rep));
    }
    match cfg.language.expect("validated") {
        Language::Xcl => xcl(cfg, rep),
        Language::Fgcbv => fg(cfg, rep),
        Language::Cbpv => cbpv_cmd(cfg, rep),
    }
}

fn invalid(msg: impl Into<String>) -> InputError {
    InputError::Invalid(msg.into())
}

fn arg_error(i: usize, e: ParseError) -> InputError {
    InputError::parse(&format!("<input {}>", i + 1), e)
}

/// Term inputs: literal terms, or `@path` universe files.
fn term_inputs<L: Lang>(
    cfg: &RunConfig,
    literal: impl Fn(&str) -> Result<(L::Index, L::Term), ParseError>,
) -> Result<Vec<(L::Index, L::Term)>, InputError> {
    if cfg.inputs.is_empty() {
        return Err(invalid("no input terms given"));
    }
    let mut out = Vec::new();
    for (i, s) in cfg.inputs.iter().enumerate() {
        match s.strip_prefix('@') {
            Some(path) => out.extend(read_universe::<L>(Path::new(path))?),
            None => out.push(literal(s).map_err(|e| arg_error(i, e))?),
        }
    }
    Ok(out)
}

fn single<T>(mut ts: Vec<T>, what: &str) -> Result<T, InputError> {
    if ts.len() != 1 {
        return Err(invalid(format!("{what} takes exactly one term")));
    }
    Ok(ts.pop().unwrap())
}

fn relation_input<L: Lang>(cfg: &RunConfig) -> Result<RelationFile<L>, InputError> {
    match cfg.inputs.as_slice() {
        [path] => read_relation::<L>(Path::new(path)),
        _ => Err(invalid("expected exactly one relation file")),
    }
}

/// Pairs for the context oracle: two terms, or every pair of a relation file.
fn oracle_pairs<L: Lang>(
    cfg: &RunConfig,
    literal: impl Fn(&str) -> Result<(L::Index, L::Term), ParseError>,
) -> Result<Vec<(L::Index, L::Term, L::Term)>, InputError> {
    match cfg.inputs.len() {
        1 => Ok(relation_input::<L>(cfg)?.pairs),
        2 => {
            let ts = term_inputs::<L>(cfg, literal)?;
            let [(i, p), (j, q)]: [(L::Index, L::Term); 2] =
                ts.try_into().map_err(|_| invalid("expected two terms"))?;
            if i != j {
                return Err(invalid(format!(
                    "terms have different indices: {} and {}",
                    L::show_index(&i),
                    L::show_index(&j)
                )));
            }
            Ok(vec![(i, p, q)])
        }
        _ => Err(invalid("expected two terms or one relation file")),
    }
}

fn labels_unsupported(cfg: &RunConfig) -> Result<(), InputError> {
    if cfg.trace_labels.is_empty() {
        Ok(())
    } else {
        Err(invalid("--label is only used by trace"))
    }
}

// ---- shared reporting ----

fn step_record(n: usize, from: String, to: String, label: Option<String>) -> Value {
    let mut r = json!({"record": "step", "n": n, "from": from, "to": to});
    if let Some(l) = label {
        r["label"] = Value::String(l);
    }
    r
}

fn verdict_exit(rep: &mut Report, v: &Verdict) -> Exit {
    rep.push(verdict_json(v));
    v.status.into()
}

fn normalize_report<S: Semantics>(
    rep: &mut Report,
    sem: &S,
    t: &S::Term,
    fuel: usize,
    show: impl Fn(&S::Term) -> String,
) -> Exit
where
    S::Term: Display,
{
    match may_terminate(sem, t, fuel) {
        Termination::Terminates { state, steps } => {
            rep.push(json!({"record": "normal-form", "term": show(&state), "steps": steps}));
            rep.push(
                json!({"record": "verdict", "status": "holds", "witness": null, "diagnostics": []}),
            );
            Exit::Holds
        }
        Termination::Diverges { explored, witness } => {
            let mut w = Witness::new(show(t), "no terminal state", "divergence");
            if let Some((later, earlier)) = witness {
                w = w.with_trace(vec![
                    format!("ancestor: {}", show(&earlier)),
                    format!("pruned state: {}", show(&later)),
                ]);
            }
            rep.push(json!({"record": "stats", "states_explored": explored}));
            verdict_exit(rep, &Verdict::fails(w))
        }
        Termination::Unknown { explored } => {
            rep.push(json!({"record": "stats", "states_explored": explored}));
            verdict_exit(
                rep,
                &Verdict::unknown(format!("fuel {fuel} exhausted after {explored} states")),
            )
        }
    }
}

fn sim_report<L: Lang>(rep: &mut Report, file: &RelationFile<L>, v: &Verdict) -> Exit {
    rep.push(json!({
        "record": "relation",
        "pairs": file.pairs.len(),
        "indices": file.universe.keys().map(L::show_index).collect::<Vec<_>>(),
    }));
    verdict_exit(rep, v)
}

/// Per-pair deepest level of the step-indexed chain, up to `depth`.
fn logrel_report<L: Lang, C: StepClauses>(
    rep: &mut Report,
    file: &RelationFile<L>,
    rel: &mut StepIndexed<C>,
    depth: usize,
    make_pair: impl Fn(&L::Index, &L::Term, &L::Term) -> C::Pair,
) -> Exit {
    let mut first_drop = None;
    for (idx, a, b) in &file.pairs {
        let level = rel.max_level(depth, &make_pair(idx, a, b));
        let (lhs, rhs) = (L::show(idx, a), L::show(idx, b));
        rep.push(json!({
            "record": "pair",
            "index": L::show_index(idx),
            "lhs": lhs,
            "rhs": rhs,
            "level": level,
            "retained": level == depth,
        }));
        if level < depth && first_drop.is_none() {
            first_drop = Some(
                Witness::new(lhs, rhs, format!("dropped at level {}", level + 1))
                    .with_trace(vec![format!("index {}", L::show_index(idx))]),
            );
        }
    }
    rep.push(json!({
        "record": "stats",
        "pairs_checked": file.pairs.len(),
        "clause_evaluations": rel.evaluations(),
    }));
    let v = match first_drop {
        Some(w) => Verdict::fails(w),
        None => Verdict::holds(),
    }
    .note(format!("depth {depth}"));
    verdict_exit(rep, &v)
}

/// Runs the oracle on each pair; the first failure decides the verdict.
fn oracle_report<L: Lang>(
    rep: &mut Report,
    pairs: &[(L::Index, L::Term, L::Term)],
    mut oracle: impl FnMut(&L::Index, &L::Term, &L::Term) -> Verdict,
) -> Exit {
    let mut exit = Exit::Holds;
    let mut first: Option<Verdict> = None;
    for (idx, p, q) in pairs {
        let v = oracle(idx, p, q);
        rep.push(json!({
            "record": "pair",
            "index": L::show_index(idx),
            "lhs": L::show(idx, p),
            "rhs": L::show(idx, q),
            "status": v.status.to_string(),
        }));
        let e = Exit::from(v.status);
        if e.join(exit) != exit || first.is_none() && e != Exit::Holds {
            first = Some(v);
        }
        exit = exit.join(e);
    }
    rep.push(verdict_json(&first.unwrap_or_else(Verdict::holds)));
    exit
}

// ---- xcl ----

fn xcl_literal(s: &str) -> Result<((), XclTerm), ParseError> {
    Ok(((), parse_xcl(s)?))
}

fn xcl(cfg: &RunConfig, rep: &mut Report) -> Result<Exit, InputError> {
    if cfg.command != Command::Trace {
        labels_unsupported(cfg)?;
    }
    let labels = || terms_up_to(cfg.label_size);
    Ok(match cfg.command {
        Command::Typecheck => {
            for (_, t) in term_inputs::<Xcl>(cfg, xcl_literal)? {
                rep.push(json!({"record": "term", "term": t.to_string(), "size": t.size()}));
            }
            Exit::Holds
        }
        Command::Trace => {
            let (_, t) = single(term_inputs::<Xcl>(cfg, xcl_literal)?, "trace")?;
            let mut labels = Vec::new();
            for (i, l) in cfg.trace_labels.iter().enumerate() {
                labels.push(
                    parse_xcl(l)
                        .map_err(|e| InputError::parse(&format!("<label {}>", i + 1), e))?,
                );
            }
            xcl_trace(rep, t, &labels, cfg.fuel)
        }
        Command::Normalize => {
            let (_, t) = single(term_inputs::<Xcl>(cfg, xcl_literal)?, "normalize")?;
            normalize_report(rep, &XclSem::default(), &t, cfg.fuel, |t| t.to_string())
        }
        Command::CheckSim => {
            let file = relation_input::<Xcl>(cfg)?;
            let v = check_applicative_simulation(&file.relation, &labels(), cfg.fuel);
            sim_report(rep, &file, &v)
        }
        Command::Logrel => {
            let mut file = relation_input::<Xcl>(cfg)?;
            extend_universe::<Xcl>(cfg, &mut file)?;
            let universe: Vec<XclTerm> = file.universe.values().flatten().cloned().collect();
            let inputs = logrel_inputs(&universe, &labels());
            let mut rel = StepIndexed::new(XclLogrel::new(inputs, cfg.fuel));
            logrel_report(rep, &file, &mut rel, cfg.depth, |_, a, b| {
                (a.clone(), b.clone())
            })
        }
        Command::CtxOracle => {
            let pairs = oracle_pairs::<Xcl>(cfg, xcl_literal)?;
            oracle_report::<Xcl>(rep, &pairs, |_, p, q| {
                context_oracle_xcl(p, q, cfg.ctx_size, cfg.fuel)
            })
        }
        Command::Selftest => unreachable!(),
    })
}

fn xcl_trace(rep: &mut Report, t: XclTerm, labels: &[XclTerm], fuel: usize) -> Exit {
    let mut cur = t;
    let mut used = 0;
    let mut n = 0;
    while n < fuel {
        let next = match step(&cur) {
            XclStep::Reduces(next) => {
                rep.push(step_record(n + 1, cur.to_string(), next.to_string(), None));
                next
            }
            XclStep::Terminal if used < labels.len() => {
                let l = &labels[used];
                used += 1;
                let next = apply_label(&cur, l).expect("terminal");
                rep.push(step_record(
                    n + 1,
                    cur.to_string(),
                    next.to_string(),
                    Some(l.to_string()),
                ));
                next
            }
            XclStep::Terminal => break,
        };
        cur = next;
        n += 1;
    }
    trace_result(rep, cur.to_string(), n, fuel, used, labels.len())
}

fn trace_result(
    rep: &mut Report,
    last: String,
    steps: usize,
    fuel: usize,
    used: usize,
    labels: usize,
) -> Exit {
    let done = steps < fuel;
    rep.push(json!({
        "record": "result",
        "term": last,
        "steps": steps,
        "terminal": done,
        "labels_applied": used,
    }));
    let v = if done && used == labels {
        Verdict::holds()
    } else if done {
        Verdict::unknown(format!("terminal after {used} of {labels} labels"))
    } else {
        Verdict::unknown(format!("fuel {fuel} exhausted"))
    };
    verdict_exit(rep, &v)
}

fn extend_universe<L: Lang>(cfg: &RunConfig, file: &mut RelationFile<L>) -> Result<(), InputError> {
    if let Some(path) = &cfg.universe {
        for (idx, t) in read_universe::<L>(path)? {
            let terms = file.universe.entry(idx).or_default();
            if !terms.contains(&t) {
                terms.push(t);
            }
        }
    }
    Ok(())
}

// ---- fgcbv ----

fn fg_literal(s: &str) -> Result<(Sort, FgTerm), ParseError> {
    let t = parse_fg(s)?;
    Ok((t.sort(), t))
}

fn fg_require_fix<'a>(
    cfg: &RunConfig,
    terms: impl IntoIterator<Item = &'a FgTerm>,
) -> Result<(), InputError> {
    if cfg.has(Flag::Fix) {
        return Ok(());
    }
    for t in terms {
        if t.has_fix() {
            return Err(invalid(format!("{t} uses fix; pass --flag fix")));
        }
    }
    Ok(())
}

fn fg(cfg: &RunConfig, rep: &mut Report) -> Result<Exit, InputError> {
    if cfg.command != Command::Trace {
        labels_unsupported(cfg)?;
    }
    let with_fix = cfg.has(Flag::Fix);
    let labels = || FgTables::new(cfg.label_size, with_fix).values_up_to(cfg.label_size);
    Ok(match cfg.command {
        Command::Typecheck => {
            let ts = term_inputs::<Fg>(cfg, fg_literal)?;
            fg_require_fix(cfg, ts.iter().map(|(_, t)| t))?;
            for (s, t) in ts {
                rep.push(json!({
                    "record": "term",
                    "term": t.to_string(),
                    "sort": sort_name(s),
                    "size": t.size(),
                }));
            }
            Exit::Holds
        }
        Command::Trace => {
            let (_, t) = single(term_inputs::<Fg>(cfg, fg_literal)?, "trace")?;
            let mut labels = Vec::new();
            for (i, l) in cfg.trace_labels.iter().enumerate() {
                let name = format!("<label {}>", i + 1);
                match parse_fg(l).map_err(|e| InputError::parse(&name, e))? {
                    FgTerm::V(v) => labels.push(v),
                    FgTerm::C(c) => return Err(invalid(format!("label {c} is not a value"))),
                }
            }
            fg_require_fix(cfg, [&t])?;
            fg_trace(rep, t, &labels, cfg.fuel)
        }
        Command::Normalize => {
            let (_, t) = single(term_inputs::<Fg>(cfg, fg_literal)?, "normalize")?;
            fg_require_fix(cfg, [&t])?;
            normalize_report(rep, &FgSem, &t, cfg.fuel, |t| t.to_string())
        }
        Command::CheckSim => {
            let file = relation_input::<Fg>(cfg)?;
            fg_require_fix(cfg, file.universe.values().flatten())?;
            let v = fg_check_simulation(&file.relation, &labels(), cfg.fuel);
            sim_report(rep, &file, &v)
        }
        Command::Logrel => {
            let mut file = relation_input::<Fg>(cfg)?;
            extend_universe::<Fg>(cfg, &mut file)?;
            fg_require_fix(cfg, file.universe.values().flatten())?;
            let universe: Vec<FgTerm> = file.universe.values().flatten().cloned().collect();
            let inputs = fg_logrel_inputs(&universe, &labels());
            let mut rel = StepIndexed::new(FgLogrel::new(inputs, cfg.fuel));
            logrel_report(rep, &file, &mut rel, cfg.depth, |_, a, b| {
                (a.clone(), b.clone())
            })
        }
        Command::CtxOracle => {
            let pairs = oracle_pairs::<Fg>(cfg, fg_literal)?;
            fg_require_fix(cfg, pairs.iter().flat_map(|(_, p, q)| [p, q]))?;
            oracle_report::<Fg>(rep, &pairs, |_, p, q| {
                context_oracle_fg(p, q, cfg.ctx_size, cfg.fuel, with_fix)
            })
        }
        Command::Selftest => unreachable!(),
    })
}

fn fg_trace(rep: &mut Report, t: FgTerm, labels: &[FgValue], fuel: usize) -> Exit {
    let mut cur = t;
    let mut used = 0;
    let mut n = 0;
    while n < fuel {
        let next = match &cur {
            FgTerm::C(c) => {
                let next = fg_step(c);
                rep.push(step_record(n + 1, cur.to_string(), next.to_string(), None));
                next
            }
            FgTerm::V(v) if used < labels.len() => {
                let l = &labels[used];
                used += 1;
                let next = FgTerm::C(fg_apply_label(v, l));
                rep.push(step_record(
                    n + 1,
                    cur.to_string(),
                    next.to_string(),
                    Some(l.to_string()),
                ));
                next
            }
            FgTerm::V(_) => break,
        };
        cur = next;
        n += 1;
    }
    trace_result(rep, cur.to_string(), n, fuel, used, labels.len())
}

// ---- cbpv ----

fn cbpv_index(cfg: &RunConfig) -> Result<Option<(Scope, Ty)>, InputError> {
    let Some(src) = &cfg.index else {
        return Ok(None);
    };
    let mut p = crate::lex::Parser::new(src, 1).map_err(|e| InputError::parse("<index>", e))?;
    let r = crate::lang::cbpv_index(&mut p).map_err(|e| InputError::parse("<index>", e))?;
    p.end().map_err(|e| InputError::parse("<index>", e))?;
    Ok(Some(r))
}

fn cbpv_terms(cfg: &RunConfig) -> Result<Vec<(CbpvIndex, CbpvTerm)>, InputError> {
    let index = cbpv_index(cfg)?;
    term_inputs::<Cbpv>(cfg, |s| {
        let (mut scope, want) = match &index {
            Some((scope, ty)) => (scope.clone(), Some(ty)),
            None => (Scope::default(), None),
        };
        let (t, ty) = parse_cbpv_in(s, &mut scope, want)?;
        Ok((CbpvIndex::new(scope.ctx(), ty), t))
    })
}

fn check_config(cfg: &RunConfig) -> CheckConfig {
    CheckConfig {
        fuel: cfg.fuel,
        value_size: cfg.label_size,
        testing_weakening: cfg.has(Flag::TestingWeakening),
        pool: TypePool::default(),
    }
}

fn step_config(cfg: &RunConfig) -> StepConfig {
    StepConfig {
        literal_to: cfg.has(Flag::LiteralToRule),
    }
}

/// The default pool, extended with the types of `idx` so that contexts
/// can be built around a hole of that type.
fn pool_for(idx: &CbpvIndex) -> TypePool {
    let mut pool = TypePool::default();
    let mut add = |t: &Ty| match t {
        Ty::V(v) if !pool.values.contains(v) => pool.values.push(v.clone()),
        Ty::C(k) if !pool.comps.contains(k) => pool.comps.push(k.clone()),
        _ => {}
    };
    add(&idx.ty);
    for phi in &idx.ctx {
        add(&Ty::V(phi.clone()));
    }
    pool
}

fn cbpv_cmd(cfg: &RunConfig, rep: &mut Report) -> Result<Exit, InputError> {
    labels_unsupported(cfg)?;
    Ok(match cfg.command {
        Command::Typecheck => {
            for (idx, t) in cbpv_terms(cfg)? {
                // elaboration is bidirectional; the core checker must agree
                let ty = typecheck(&idx.ctx, &t).map_err(|e| invalid(e.to_string()))?;
                debug_assert_eq!(ty, idx.ty);
                rep.push(json!({
                    "record": "term",
                    "term": t.display_in(idx.ctx.len()).to_string(),
                    "index": idx.to_string(),
                    "type": ty.to_string(),
                    "size": t.size(),
                }));
            }
            Exit::Holds
        }
        Command::Trace => {
            let (idx, t) = single(cbpv_terms(cfg)?, "trace")?;
            let n = idx.ctx.len();
            let records = trace_cbpv(&t, step_config(cfg), cfg.fuel);
            let mut sources: Vec<&CbpvTerm> = records.iter().map(|r| &r.term).collect();
            sources.dedup();
            for (i, r) in records.iter().enumerate() {
                let mut rec = step_record(
                    i + 1,
                    r.term.display_in(n).to_string(),
                    r.successor.display_in(n).to_string(),
                    None,
                );
                rec["rule"] = Value::String(r.rule.name().to_string());
                rep.push(rec);
            }
            rep.push(json!({"record": "stats", "transitions": records.len()}));
            let v = if sources.len() >= cfg.fuel {
                Verdict::unknown(format!("stopped after expanding {} states", cfg.fuel))
            } else {
                Verdict::holds()
            };
            verdict_exit(rep, &v)
        }
        Command::Normalize => {
            let (idx, t) = single(cbpv_terms(cfg)?, "normalize")?;
            let sem = CbpvSem {
                cfg: step_config(cfg),
            };
            let n = idx.ctx.len();
            normalize_report(rep, &sem, &t, cfg.fuel, |t| t.display_in(n).to_string())
        }
        Command::CheckSim => {
            let file = relation_input::<Cbpv>(cfg)?;
            let v = check_weak_simulation(&file.relation, &check_config(cfg))
                .map_err(|e| invalid(e.to_string()))?;
            sim_report(rep, &file, &v)
        }
        Command::Logrel => {
            let mut file = relation_input::<Cbpv>(cfg)?;
            extend_universe::<Cbpv>(cfg, &mut file)?;
            check_indices(&file.relation).map_err(|e| invalid(e.to_string()))?;
            let mut rel = StepIndexed::new(CbpvLogrel::new(check_config(cfg)));
            logrel_report(rep, &file, &mut rel, cfg.depth, |i, a, b| {
                (i.clone(), a.clone(), b.clone())
            })
        }
        Command::CtxOracle => {
            let index = cbpv_index(cfg)?;
            let pairs = oracle_pairs::<Cbpv>(cfg, |s| {
                let (mut scope, want) = match &index {
                    Some((scope, ty)) => (scope.clone(), Some(ty)),
                    None => (Scope::default(), None),
                };
                let (t, ty) = parse_cbpv_in(s, &mut scope, want)?;
                Ok((CbpvIndex::new(scope.ctx(), ty), t))
            })?;
            let mut checked = BTreeMap::new();
            oracle_report::<Cbpv>(rep, &pairs, |idx, p, q| {
                let pool = checked.entry(idx.clone()).or_insert_with(|| pool_for(idx));
                context_oracle_cbpv(idx, p, q, pool, cfg.ctx_size, cfg.fuel)
            })
        }
        Command::Selftest => unreachable!(),
    })
}
