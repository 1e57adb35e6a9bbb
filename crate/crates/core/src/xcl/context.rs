use std::fmt;

use super::step::Xcl;
use super::term::{app, kp, sp, spp, terms_of_size, XclTerm};
use crate::kernel::{context_oracle, Verdict};

/// A term with exactly one hole.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum XclContext {
    Hole,
    Sp(Box<XclContext>),
    Kp(Box<XclContext>),
    SppL(Box<XclContext>, XclTerm),
    SppR(XclTerm, Box<XclContext>),
    AppL(Box<XclContext>, XclTerm),
    AppR(XclTerm, Box<XclContext>),
}

impl XclContext {
    pub fn plug(&self, t: &XclTerm) -> XclTerm {
        use XclContext::*;
        match self {
            Hole => t.clone(),
            Sp(c) => sp(c.plug(t)),
            Kp(c) => kp(c.plug(t)),
            SppL(c, s) => spp(c.plug(t), s.clone()),
            SppR(s, c) => spp(s.clone(), c.plug(t)),
            AppL(c, s) => app(c.plug(t), s.clone()),
            AppR(s, c) => app(s.clone(), c.plug(t)),
        }
    }

    pub fn size(&self) -> usize {
        use XclContext::*;
        match self {
            Hole => 1,
            Sp(c) | Kp(c) => 1 + c.size(),
            SppL(c, s) | SppR(s, c) | AppL(c, s) | AppR(s, c) => 1 + c.size() + s.size(),
        }
    }
}

impl fmt::Display for XclContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use XclContext::*;
        let operand = |f: &mut fmt::Formatter<'_>, c: &XclContext| match c {
            AppL(..) | AppR(..) => write!(f, "({c})"),
            _ => write!(f, "{c}"),
        };
        let term = |f: &mut fmt::Formatter<'_>, t: &XclTerm| match t {
            XclTerm::App(..) => write!(f, "({t})"),
            _ => write!(f, "{t}"),
        };
        match self {
            Hole => f.write_str("[.]"),
            Sp(c) => write!(f, "S'({c})"),
            Kp(c) => write!(f, "K'({c})"),
            SppL(c, s) => write!(f, "S''({c},{s})"),
            SppR(s, c) => write!(f, "S''({s},{c})"),
            AppL(c, s) => {
                operand(f, c)?;
                f.write_str(" ")?;
                term(f, s)
            }
            AppR(s, c) => {
                term(f, s)?;
                f.write_str(" ")?;
                operand(f, c)
            }
        }
    }
}

/// Contexts of exactly `size` constructors, hole included.
pub fn contexts_of_size(size: usize) -> Vec<XclContext> {
    let mut ctx: Vec<Vec<XclContext>> = vec![Vec::new(), vec![XclContext::Hole]];
    let terms: Vec<Vec<XclTerm>> = (0..=size)
        .map(|n| if n == 0 { Vec::new() } else { terms_of_size(n) })
        .collect();
    for n in 2..=size {
        let mut out = Vec::new();
        for c in &ctx[n - 1] {
            out.push(XclContext::Sp(Box::new(c.clone())));
            out.push(XclContext::Kp(Box::new(c.clone())));
        }
        for i in 1..n - 1 {
            let j = n - 1 - i;
            for c in &ctx[i] {
                for t in &terms[j] {
                    out.push(XclContext::SppL(Box::new(c.clone()), t.clone()));
                    out.push(XclContext::AppL(Box::new(c.clone()), t.clone()));
                }
            }
            for t in &terms[i] {
                for c in &ctx[j] {
                    out.push(XclContext::SppR(t.clone(), Box::new(c.clone())));
                    out.push(XclContext::AppR(t.clone(), Box::new(c.clone())));
                }
            }
        }
        ctx.push(out);
    }
    if size == 0 {
        Vec::new()
    } else {
        ctx.swap_remove(size)
    }
}

pub fn enumerate_contexts_xcl(max_size: usize) -> Vec<XclContext> {
    (1..=max_size).flat_map(contexts_of_size).collect()
}

/// Contextual preorder check over every context of size at most `max_ctx_size`.
pub fn context_oracle_xcl(p: &XclTerm, q: &XclTerm, max_ctx_size: usize, fuel: usize) -> Verdict {
    context_oracle(
        &Xcl::default(),
        enumerate_contexts_xcl(max_ctx_size),
        |c, t| c.plug(t),
        p,
        q,
        fuel,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Status;
    use crate::xcl::term::XclTerm::*;

    #[test]
    fn small_sizes() {
        assert_eq!(enumerate_contexts_xcl(1), vec![XclContext::Hole]);
        assert_eq!(contexts_of_size(2).len(), 2);
        assert!(contexts_of_size(2)
            .iter()
            .all(|c| !matches!(c, XclContext::AppL(..) | XclContext::AppR(..))));
    }

    #[test]
    fn plugging_preserves_size() {
        for c in enumerate_contexts_xcl(4) {
            assert_eq!(c.plug(&app(K, I)).size(), c.size() + 2);
        }
    }

    #[test]
    fn k_is_not_below_i() {
        assert_eq!(context_oracle_xcl(&K, &I, 6, 500).status, Status::Holds);
        let v = context_oracle_xcl(&K, &I, 7, 500);
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.witness.unwrap().trace[0], "context S''([.],I) S''(I,I)");
    }

    #[test]
    fn omega_context_separates_k_from_i() {
        let c = XclContext::AppL(
            Box::new(XclContext::AppL(Box::new(XclContext::Hole), I)),
            crate::xcl::term::omega(),
        );
        let v = context_oracle(&Xcl::default(), [c], |c, t| c.plug(t), &K, &I, 500);
        assert_eq!(v.status, Status::Fails);
    }
}
