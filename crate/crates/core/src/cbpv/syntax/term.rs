use std::fmt;

use super::types::{arrow, mu, u, CompType, ValType};

/// CBPV terms in de Bruijn form: `Var(0)` is the innermost binder, and a
/// context position `i` of a context of length `n` is index `n - 1 - i`.
///
/// Nodes carry the annotations that cannot be synthesized from their
/// operands (`inl`, `inr`, `fold`) and the types of all bound variables, so
/// that reducts such as `app(lam x:φ.t, v)` can be built without typing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CbpvTerm {
    // values
    Var(usize),
    Star,
    /// `inl_{φ₁,φ₂}(v)`.
    Inl(ValType, ValType, Box<CbpvTerm>),
    /// `inr_{φ₁,φ₂}(v)`.
    Inr(ValType, ValType, Box<CbpvTerm>),
    Thunk(Box<CbpvTerm>),
    PairV(Box<CbpvTerm>, Box<CbpvTerm>),
    // computations
    Prod(Box<CbpvTerm>),
    Force(Box<CbpvTerm>),
    App(Box<CbpvTerm>, Box<CbpvTerm>),
    /// `fold(t)` at `μα.κ`, storing κ.
    Fold(CompType, Box<CbpvTerm>),
    Unfold(Box<CbpvTerm>),
    Lam(ValType, Box<CbpvTerm>),
    Choice(Box<CbpvTerm>, Box<CbpvTerm>),
    /// `s to x:φ in t`.
    To(Box<CbpvTerm>, ValType, Box<CbpvTerm>),
    /// `case(v, x:φ₁.s, y:φ₂.r)`.
    Case(
        Box<CbpvTerm>,
        ValType,
        Box<CbpvTerm>,
        ValType,
        Box<CbpvTerm>,
    ),
    Fst(Box<CbpvTerm>),
    Snd(Box<CbpvTerm>),
    PairC(Box<CbpvTerm>, Box<CbpvTerm>),
    /// `pm(v, (x:φ₁, y:φ₂).t)`; in `t`, `y` is index 0 and `x` index 1.
    Pm(Box<CbpvTerm>, ValType, ValType, Box<CbpvTerm>),
}

use CbpvTerm::*;

fn b(t: CbpvTerm) -> Box<CbpvTerm> {
    Box::new(t)
}

pub fn var(i: usize) -> CbpvTerm {
    Var(i)
}
pub fn star() -> CbpvTerm {
    Star
}
pub fn inl(p1: ValType, p2: ValType, v: CbpvTerm) -> CbpvTerm {
    Inl(p1, p2, b(v))
}
pub fn inr(p1: ValType, p2: ValType, v: CbpvTerm) -> CbpvTerm {
    Inr(p1, p2, b(v))
}
pub fn thunk(t: CbpvTerm) -> CbpvTerm {
    Thunk(b(t))
}
pub fn pair_v(v: CbpvTerm, w: CbpvTerm) -> CbpvTerm {
    PairV(b(v), b(w))
}
pub fn prod_c(v: CbpvTerm) -> CbpvTerm {
    Prod(b(v))
}
pub fn force(v: CbpvTerm) -> CbpvTerm {
    Force(b(v))
}
pub fn app(t: CbpvTerm, v: CbpvTerm) -> CbpvTerm {
    App(b(t), b(v))
}
pub fn fold(body: CompType, t: CbpvTerm) -> CbpvTerm {
    Fold(body, b(t))
}
pub fn unfold(t: CbpvTerm) -> CbpvTerm {
    Unfold(b(t))
}
pub fn lam(dom: ValType, t: CbpvTerm) -> CbpvTerm {
    Lam(dom, b(t))
}
pub fn choice(t: CbpvTerm, s: CbpvTerm) -> CbpvTerm {
    Choice(b(t), b(s))
}
pub fn to(s: CbpvTerm, phi: ValType, t: CbpvTerm) -> CbpvTerm {
    To(b(s), phi, b(t))
}
pub fn case(v: CbpvTerm, p1: ValType, s: CbpvTerm, p2: ValType, r: CbpvTerm) -> CbpvTerm {
    Case(b(v), p1, b(s), p2, b(r))
}
pub fn fst(t: CbpvTerm) -> CbpvTerm {
    Fst(b(t))
}
pub fn snd(t: CbpvTerm) -> CbpvTerm {
    Snd(b(t))
}
pub fn pair_c(t: CbpvTerm, s: CbpvTerm) -> CbpvTerm {
    PairC(b(t), b(s))
}
pub fn pm(v: CbpvTerm, p1: ValType, p2: ValType, t: CbpvTerm) -> CbpvTerm {
    Pm(b(v), p1, p2, b(t))
}

/// A closed computation of type `kappa` whose only run is a cycle:
/// `app(unfold(δ), thunk δ)` with `δ = fold(lam x:U κω. app(unfold(force x), x))`
/// and `κω = μα.(U α → κ)`.
pub fn diverge(kappa: &CompType) -> CbpvTerm {
    assert!(kappa.is_closed(), "diverge needs a closed type");
    let body = arrow(u(CompType::Var(0)), kappa.clone());
    let omega = mu(body.clone());
    let delta = fold(body, lam(u(omega), app(unfold(force(var(0))), var(0))));
    app(unfold(delta.clone()), thunk(delta))
}

impl CbpvTerm {
    pub fn is_value(&self) -> bool {
        matches!(
            self,
            Var(_) | Star | Inl(..) | Inr(..) | Thunk(_) | PairV(..)
        )
    }

    /// Number of constructor nodes; annotations are not counted.
    pub fn size(&self) -> usize {
        match self {
            Var(_) | Star => 1,
            Inl(_, _, t)
            | Inr(_, _, t)
            | Thunk(t)
            | Prod(t)
            | Force(t)
            | Fold(_, t)
            | Unfold(t)
            | Lam(_, t)
            | Fst(t)
            | Snd(t) => 1 + t.size(),
            PairV(a, c) | App(a, c) | Choice(a, c) | To(a, _, c) | PairC(a, c) | Pm(a, _, _, c) => {
                1 + a.size() + c.size()
            }
            Case(v, _, s, _, r) => 1 + v.size() + s.size() + r.size(),
        }
    }

    /// One more than the largest free de Bruijn index; 0 for closed terms.
    pub fn free_bound(&self) -> usize {
        fn go(t: &CbpvTerm, depth: usize) -> usize {
            match t {
                Var(i) => (i + 1).saturating_sub(depth),
                Star => 0,
                Inl(_, _, t)
                | Inr(_, _, t)
                | Thunk(t)
                | Prod(t)
                | Force(t)
                | Fold(_, t)
                | Unfold(t)
                | Fst(t)
                | Snd(t) => go(t, depth),
                Lam(_, t) => go(t, depth + 1),
                PairV(a, c) | App(a, c) | Choice(a, c) | PairC(a, c) => {
                    go(a, depth).max(go(c, depth))
                }
                To(s, _, t) => go(s, depth).max(go(t, depth + 1)),
                Case(v, _, s, _, r) => go(v, depth).max(go(s, depth + 1)).max(go(r, depth + 1)),
                Pm(v, _, _, t) => go(v, depth).max(go(t, depth + 2)),
            }
        }
        go(self, 0)
    }

    pub fn is_closed(&self) -> bool {
        self.free_bound() == 0
    }

    /// Head constructor name, as used in clause identifiers.
    pub fn head(&self) -> &'static str {
        match self {
            Var(_) => "var",
            Star => "star",
            Inl(..) => "inl",
            Inr(..) => "inr",
            Thunk(_) => "thunk",
            PairV(..) => "pair",
            Prod(_) => "prod",
            Force(_) => "force",
            App(..) => "app",
            Fold(..) => "fold",
            Unfold(_) => "unfold",
            Lam(..) => "lam",
            Choice(..) => "choice",
            To(..) => "to",
            Case(..) => "case",
            Fst(_) => "fst",
            Snd(_) => "snd",
            PairC(..) => "pair",
            Pm(..) => "pm",
        }
    }

    /// Printer in the surface syntax, naming the variable at context
    /// position `i` as `x{i}`, for a context of `ctx_len` variables.
    pub fn display_in(&self, ctx_len: usize) -> impl fmt::Display + '_ {
        InCtx(self, ctx_len)
    }
}

struct InCtx<'a>(&'a CbpvTerm, usize);

fn name(level: usize) -> String {
    format!("x{level}")
}

fn atomic(t: &CbpvTerm) -> bool {
    matches!(
        t,
        Var(_) | Star | PairV(..) | PairC(..) | Inl(..) | Inr(..) | Fold(..)
    )
}

impl fmt::Display for InCtx<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.1;
        let sub = |f: &mut fmt::Formatter<'_>, t: &CbpvTerm, extra: usize| {
            let inner = InCtx(t, n + extra);
            if atomic(t) {
                write!(f, "{inner}")
            } else {
                write!(f, "({inner})")
            }
        };
        match self.0 {
            Var(i) if *i < n => f.write_str(&name(n - 1 - i)),
            Var(i) => write!(f, "#{}", i - n),
            Star => f.write_str("star"),
            Inl(p1, p2, v) => {
                f.write_str("(inl ")?;
                sub(f, v, 0)?;
                write!(f, " : {} (+) {})", Paren(p1), Paren(p2))
            }
            Inr(p1, p2, v) => {
                f.write_str("(inr ")?;
                sub(f, v, 0)?;
                write!(f, " : {} (+) {})", Paren(p1), Paren(p2))
            }
            Thunk(t) => {
                f.write_str("thunk ")?;
                sub(f, t, 0)
            }
            PairV(a, c) | PairC(a, c) => {
                f.write_str("pair(")?;
                write!(f, "{}", InCtx(a, n))?;
                f.write_str(", ")?;
                write!(f, "{}", InCtx(c, n))?;
                f.write_str(")")
            }
            Prod(v) => {
                f.write_str("prod ")?;
                sub(f, v, 0)
            }
            Force(v) => {
                f.write_str("force ")?;
                sub(f, v, 0)
            }
            App(t, v) => {
                sub(f, t, 0)?;
                f.write_str(" @ ")?;
                sub(f, v, 0)
            }
            Fold(body, t) => {
                f.write_str("(fold ")?;
                sub(f, t, 0)?;
                write!(f, " : {})", CompType::Mu(Box::new(body.clone())))
            }
            Unfold(t) => {
                f.write_str("unfold ")?;
                sub(f, t, 0)
            }
            Lam(dom, t) => {
                write!(f, "lam ({}:{}). ", name(n), dom)?;
                sub(f, t, 1)
            }
            Choice(t, s) => {
                sub(f, t, 0)?;
                f.write_str(" (+) ")?;
                sub(f, s, 0)
            }
            To(s, _, t) => {
                sub(f, s, 0)?;
                write!(f, " to {} in ", name(n))?;
                sub(f, t, 1)
            }
            Case(v, _, s, _, r) => {
                f.write_str("case ")?;
                sub(f, v, 0)?;
                write!(f, " of {{inl {} -> ", name(n))?;
                sub(f, s, 1)?;
                write!(f, " | inr {} -> ", name(n))?;
                sub(f, r, 1)?;
                f.write_str("}")
            }
            Fst(t) => {
                f.write_str("fst ")?;
                sub(f, t, 0)
            }
            Snd(t) => {
                f.write_str("snd ")?;
                sub(f, t, 0)
            }
            Pm(v, _, _, t) => {
                f.write_str("pm ")?;
                sub(f, v, 0)?;
                write!(f, " as ({}, {}) in ", name(n), name(n + 1))?;
                sub(f, t, 2)
            }
        }
    }
}

/// A value type wrapped in parentheses unless atomic.
struct Paren<'a>(&'a ValType);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            ValType::Unit => write!(f, "unit"),
            v => write!(f, "({v})"),
        }
    }
}

impl fmt::Display for CbpvTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        InCtx(self, self.free_bound()).fmt(f)
    }
}
