use std::fmt;

use super::step::Fg;
use super::term::{cc, cv, fix, kp, ret, sp, spp, vc, vv, FgComp, FgTables, FgTerm, FgValue, Sort};
use crate::kernel::{context_oracle, Verdict};

/// A two-sorted term with one hole. The hole sort and result sort are
/// implied by the constructors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FgContext {
    Hole(Sort),
    Kp(Box<FgContext>),
    Sp(Box<FgContext>),
    SppL(Box<FgContext>, FgComp),
    SppR(FgComp, Box<FgContext>),
    Ret(Box<FgContext>),
    CcL(Box<FgContext>, FgComp),
    CcR(FgComp, Box<FgContext>),
    VcL(Box<FgContext>, FgComp),
    VcR(FgValue, Box<FgContext>),
    CvL(Box<FgContext>, FgValue),
    CvR(FgComp, Box<FgContext>),
    VvL(Box<FgContext>, FgValue),
    VvR(FgValue, Box<FgContext>),
    Fix(Box<FgContext>),
}

fn as_comp(t: FgTerm) -> FgComp {
    match t {
        FgTerm::C(c) => c,
        FgTerm::V(v) => panic!("expected a computation, got value {v}"),
    }
}

fn as_value(t: FgTerm) -> FgValue {
    match t {
        FgTerm::V(v) => v,
        FgTerm::C(c) => panic!("expected a value, got computation {c}"),
    }
}

impl FgContext {
    pub fn hole_sort(&self) -> Sort {
        use FgContext::*;
        match self {
            Hole(s) => *s,
            Kp(c)
            | Sp(c)
            | SppL(c, _)
            | SppR(_, c)
            | Ret(c)
            | CcL(c, _)
            | CcR(_, c)
            | VcL(c, _)
            | VcR(_, c)
            | CvL(c, _)
            | CvR(_, c)
            | VvL(c, _)
            | VvR(_, c)
            | Fix(c) => c.hole_sort(),
        }
    }

    pub fn result_sort(&self) -> Sort {
        use FgContext::*;
        match self {
            Hole(s) => *s,
            Kp(_) | Sp(_) | SppL(..) | SppR(..) => Sort::Value,
            _ => Sort::Computation,
        }
    }

    /// Panics if `t` does not have the hole's sort.
    pub fn plug(&self, t: &FgTerm) -> FgTerm {
        use FgContext::*;
        let c = |x: &FgContext| as_comp(x.plug(t));
        let v = |x: &FgContext| as_value(x.plug(t));
        match self {
            Hole(s) => {
                assert_eq!(t.sort(), *s, "hole sort mismatch");
                t.clone()
            }
            Kp(x) => FgTerm::V(kp(c(x))),
            Sp(x) => FgTerm::V(sp(c(x))),
            SppL(x, s) => FgTerm::V(spp(c(x), s.clone())),
            SppR(s, x) => FgTerm::V(spp(s.clone(), c(x))),
            Ret(x) => FgTerm::C(ret(v(x))),
            CcL(x, s) => FgTerm::C(cc(c(x), s.clone())),
            CcR(s, x) => FgTerm::C(cc(s.clone(), c(x))),
            VcL(x, s) => FgTerm::C(vc(v(x), s.clone())),
            VcR(w, x) => FgTerm::C(vc(w.clone(), c(x))),
            CvL(x, w) => FgTerm::C(cv(c(x), w.clone())),
            CvR(s, x) => FgTerm::C(cv(s.clone(), v(x))),
            VvL(x, w) => FgTerm::C(vv(v(x), w.clone())),
            VvR(w, x) => FgTerm::C(vv(w.clone(), v(x))),
            Fix(x) => FgTerm::C(fix(c(x))),
        }
    }

    pub fn size(&self) -> usize {
        use FgContext::*;
        match self {
            Hole(_) => 1,
            Kp(x) | Sp(x) | Ret(x) | Fix(x) => 1 + x.size(),
            SppL(x, s) | SppR(s, x) | CcL(x, s) | CcR(s, x) | VcL(x, s) | CvR(s, x) => {
                1 + x.size() + s.size()
            }
            VcR(w, x) | CvL(x, w) | VvL(x, w) | VvR(w, x) => 1 + x.size() + w.size(),
        }
    }
}

fn binary(c: &FgContext) -> bool {
    !matches!(
        c,
        FgContext::Hole(_)
            | FgContext::Kp(_)
            | FgContext::Sp(_)
            | FgContext::SppL(..)
            | FgContext::SppR(..)
            | FgContext::Ret(_)
            | FgContext::Fix(_)
    )
}

impl fmt::Display for FgContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FgContext::*;
        let op = |f: &mut fmt::Formatter<'_>, x: &FgContext| {
            if binary(x) {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        };
        let opc = |f: &mut fmt::Formatter<'_>, s: &FgComp| {
            if s.is_binary() {
                write!(f, "({s})")
            } else {
                write!(f, "{s}")
            }
        };
        let bin = |f: &mut fmt::Formatter<'_>,
                   l: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result,
                   sym: &str,
                   r: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result| {
            l(f)?;
            write!(f, " {sym} ")?;
            r(f)
        };
        match self {
            Hole(_) => f.write_str("[.]"),
            Kp(x) => write!(f, "K'({x})"),
            Sp(x) => write!(f, "S'({x})"),
            SppL(x, s) => write!(f, "S''({x},{s})"),
            SppR(s, x) => write!(f, "S''({s},{x})"),
            Ret(x) => write!(f, "[{x}]"),
            Fix(x) => write!(f, "fix({x})"),
            CcL(x, s) => bin(f, &|f| op(f, x), ".", &|f| opc(f, s)),
            CcR(s, x) => bin(f, &|f| opc(f, s), ".", &|f| op(f, x)),
            VcL(x, s) => bin(f, &|f| op(f, x), ".>", &|f| opc(f, s)),
            VcR(w, x) => bin(f, &|f| write!(f, "{w}"), ".>", &|f| op(f, x)),
            CvL(x, w) => bin(f, &|f| op(f, x), "<.", &|f| write!(f, "{w}")),
            CvR(s, x) => bin(f, &|f| opc(f, s), "<.", &|f| op(f, x)),
            VvL(x, w) => bin(f, &|f| op(f, x), "o", &|f| write!(f, "{w}")),
            VvR(w, x) => bin(f, &|f| write!(f, "{w}"), "o", &|f| op(f, x)),
        }
    }
}

fn sort_slot(s: Sort) -> usize {
    match s {
        Sort::Value => 0,
        Sort::Computation => 1,
    }
}

/// Contexts with the hole at `hole_sort`, by exact size and result sort.
/// `ctx[n][r]` holds those of size `n` and result sort index `r` (value 0).
fn contexts_by_size(max_size: usize, hole_sort: Sort, with_fix: bool) -> Vec<[Vec<FgContext>; 2]> {
    let tables = FgTables::new(max_size, with_fix);
    let mut ctx: Vec<[Vec<FgContext>; 2]> = vec![[Vec::new(), Vec::new()]];
    for n in 1..=max_size {
        let mut out: [Vec<FgContext>; 2] = [Vec::new(), Vec::new()];
        if n == 1 {
            out[sort_slot(hole_sort)].push(FgContext::Hole(hole_sort));
            ctx.push(out);
            continue;
        }
        let b = |x: &FgContext| Box::new(x.clone());
        for x in &ctx[n - 1][1] {
            out[0].push(FgContext::Kp(b(x)));
            out[0].push(FgContext::Sp(b(x)));
            if with_fix {
                out[1].push(FgContext::Fix(b(x)));
            }
        }
        for x in &ctx[n - 1][0] {
            out[1].push(FgContext::Ret(b(x)));
        }
        for i in 1..n - 1 {
            let j = n - 1 - i;
            // hole on the left, size i; plain operand on the right, size j
            for x in &ctx[i][1] {
                for s in &tables.comps[j] {
                    out[0].push(FgContext::SppL(b(x), s.clone()));
                    out[1].push(FgContext::CcL(b(x), s.clone()));
                }
                for w in &tables.values[j] {
                    out[1].push(FgContext::CvL(b(x), w.clone()));
                }
            }
            for x in &ctx[i][0] {
                for s in &tables.comps[j] {
                    out[1].push(FgContext::VcL(b(x), s.clone()));
                }
                for w in &tables.values[j] {
                    out[1].push(FgContext::VvL(b(x), w.clone()));
                }
            }
            // plain operand on the left, size i; hole on the right, size j
            for x in &ctx[j][1] {
                for s in &tables.comps[i] {
                    out[0].push(FgContext::SppR(s.clone(), b(x)));
                    out[1].push(FgContext::CcR(s.clone(), b(x)));
                }
                for w in &tables.values[i] {
                    out[1].push(FgContext::VcR(w.clone(), b(x)));
                }
            }
            for x in &ctx[j][0] {
                for s in &tables.comps[i] {
                    out[1].push(FgContext::CvR(s.clone(), b(x)));
                }
                for w in &tables.values[i] {
                    out[1].push(FgContext::VvR(w.clone(), b(x)));
                }
            }
        }
        ctx.push(out);
    }
    ctx
}

/// All contexts up to `max_size` with the hole at `hole_sort`, both result
/// sorts, smallest first. `fix` is included only when `with_fix` is set.
pub fn enumerate_contexts_fg(max_size: usize, hole_sort: Sort, with_fix: bool) -> Vec<FgContext> {
    contexts_by_size(max_size, hole_sort, with_fix)
        .into_iter()
        .flat_map(|[v, c]| v.into_iter().chain(c))
        .collect()
}

/// Contextual preorder check. Value-sorted results are always related,
/// so only contexts returning computations can separate `p` from `q`.
pub fn context_oracle_fg(
    p: &FgTerm,
    q: &FgTerm,
    max_ctx_size: usize,
    fuel: usize,
    with_fix: bool,
) -> Verdict {
    assert_eq!(p.sort(), q.sort(), "terms of different sorts");
    let contexts: Vec<FgContext> = enumerate_contexts_fg(max_ctx_size, p.sort(), with_fix)
        .into_iter()
        .filter(|c| c.result_sort() == Sort::Computation)
        .collect();
    context_oracle(&Fg, contexts, |c, t| c.plug(t), p, q, fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgcbv::term::FgValue::*;
    use crate::kernel::Status;

    #[test]
    fn small_sizes() {
        assert_eq!(
            enumerate_contexts_fg(1, Sort::Computation, false),
            vec![FgContext::Hole(Sort::Computation)]
        );
        let two = enumerate_contexts_fg(2, Sort::Computation, false);
        assert_eq!(two.len(), 3);
        let two_v = enumerate_contexts_fg(2, Sort::Value, false);
        assert_eq!(
            two_v[1],
            FgContext::Ret(Box::new(FgContext::Hole(Sort::Value)))
        );
    }

    #[test]
    fn plug_is_well_sorted() {
        for hole in [Sort::Value, Sort::Computation] {
            let t = match hole {
                Sort::Value => FgTerm::V(I),
                Sort::Computation => FgTerm::C(ret(K)),
            };
            for c in enumerate_contexts_fg(5, hole, true) {
                let plugged = c.plug(&t);
                assert_eq!(plugged.sort(), c.result_sort());
                assert_eq!(plugged.size(), c.size() - 1 + t.size());
            }
        }
    }

    #[test]
    fn identical_terms_hold() {
        let t = FgTerm::V(kp(ret(I)));
        assert_eq!(
            context_oracle_fg(&t, &t, 4, 50, false).status,
            Status::Holds
        );
    }
}
