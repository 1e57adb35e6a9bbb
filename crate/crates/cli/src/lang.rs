use std::fmt::Debug;

use workbench_core::cbpv::sem::CbpvIndex;
use workbench_core::cbpv::syntax::{CbpvTerm, Ty};
use workbench_core::fgcbv::{FgTerm, Sort};
use workbench_core::xcl::XclTerm;

use crate::lex::{ParseError, Parser, Tok};
use crate::parse::{cbpv, fg, xcl, Scope};

/// What the file readers need from a surface syntax: entries of the form
/// `[index ::] t1 ~ … ~ tn` and a printer for terms at an index.
pub trait Lang {
    type Index: Ord + Clone + Debug;
    type Term: Ord + Clone + Debug;

    /// Parses one entry with exactly `arity` terms, up to the end of input.
    fn entry(p: &mut Parser, arity: usize) -> Result<(Self::Index, Vec<Self::Term>), ParseError>;

    /// An index written after `DELTA`, or `None` when the text is not one.
    fn delta_index(src: &str) -> Option<Self::Index>;

    fn show(idx: &Self::Index, t: &Self::Term) -> String;

    fn show_index(idx: &Self::Index) -> String;
}

fn terms<T>(
    p: &mut Parser,
    arity: usize,
    mut one: impl FnMut(&mut Parser) -> Result<T, ParseError>,
) -> Result<Vec<T>, ParseError> {
    let mut out: Vec<T> = Vec::with_capacity(arity);
    for i in 0..arity {
        if i > 0 {
            p.expect(&Tok::Tilde)?;
        }
        let t = one(p)?;
        out.push(t);
    }
    p.end()?;
    Ok(out)
}

pub struct Xcl;

impl Lang for Xcl {
    type Index = ();
    type Term = XclTerm;

    fn entry(p: &mut Parser, arity: usize) -> Result<((), Vec<XclTerm>), ParseError> {
        Ok(((), terms(p, arity, xcl::term)?))
    }

    fn delta_index(_: &str) -> Option<()> {
        None
    }

    fn show(_: &(), t: &XclTerm) -> String {
        t.to_string()
    }

    fn show_index(_: &()) -> String {
        String::new()
    }
}

pub struct Fg;

fn sort_word(w: &str) -> Option<Sort> {
    match w {
        "v" | "value" => Some(Sort::Value),
        "c" | "computation" => Some(Sort::Computation),
        _ => None,
    }
}

pub fn sort_name(s: Sort) -> &'static str {
    match s {
        Sort::Value => "v",
        Sort::Computation => "c",
    }
}

impl Lang for Fg {
    type Index = Sort;
    type Term = FgTerm;

    fn entry(p: &mut Parser, arity: usize) -> Result<(Sort, Vec<FgTerm>), ParseError> {
        let declared = match p.peek().clone() {
            Tok::Ident(w) if *p.peek_at(1) == Tok::ColonColon => {
                let Some(s) = sort_word(&w) else {
                    return Err(p.error(format!("unknown sort `{w}`; use v or c")));
                };
                p.bump();
                p.bump();
                Some(s)
            }
            _ => None,
        };
        let mut sort = declared;
        let ts = terms(p, arity, |p| {
            let pos = p.pos();
            let t = fg::term(p)?;
            match sort {
                Some(s) if s != t.sort() => Err(ParseError::new(
                    pos,
                    format!("term {t} is not of sort {}", sort_name(s)),
                )),
                _ => {
                    sort = Some(t.sort());
                    Ok(t)
                }
            }
        })?;
        Ok((sort.expect("arity > 0"), ts))
    }

    fn delta_index(src: &str) -> Option<Sort> {
        sort_word(src.trim())
    }

    fn show(_: &Sort, t: &FgTerm) -> String {
        t.to_string()
    }

    fn show_index(s: &Sort) -> String {
        sort_name(*s).to_string()
    }
}

pub struct Cbpv;

fn has_colon_colon(p: &Parser) -> bool {
    let mut k = 0;
    loop {
        match p.peek_at(k) {
            Tok::ColonColon => return true,
            Tok::Eof => return false,
            _ => k += 1,
        }
    }
}

/// `[x:phi, … ] |- type` or a bare type (closed context).
pub fn cbpv_index(p: &mut Parser) -> Result<(Scope, Ty), ParseError> {
    let scope = cbpv::context(p)?.unwrap_or_default();
    let ty = cbpv::ty(p)?;
    Ok((scope, ty))
}

impl Lang for Cbpv {
    type Index = CbpvIndex;
    type Term = CbpvTerm;

    /// Without an index the first term's type is inferred in the empty
    /// context and the others are checked against it.
    fn entry(p: &mut Parser, arity: usize) -> Result<(CbpvIndex, Vec<CbpvTerm>), ParseError> {
        let (mut scope, mut want) = if has_colon_colon(p) {
            let (scope, ty) = cbpv_index(p)?;
            p.expect(&Tok::ColonColon)?;
            (scope, Some(ty))
        } else {
            (Scope::default(), None)
        };
        let ts = terms(p, arity, |p| {
            let (t, ty) = cbpv::term(p, &mut scope, want.as_ref())?;
            want.get_or_insert(ty);
            Ok(t)
        })?;
        Ok((CbpvIndex::new(scope.ctx(), want.expect("arity > 0")), ts))
    }

    fn delta_index(src: &str) -> Option<CbpvIndex> {
        if !src.contains("|-") && !src.contains('⊢') {
            return None;
        }
        let mut p = Parser::new(src, 1).ok()?;
        let (scope, ty) = cbpv_index(&mut p).ok()?;
        p.end().ok()?;
        Some(CbpvIndex::new(scope.ctx(), ty))
    }

    fn show(idx: &CbpvIndex, t: &CbpvTerm) -> String {
        t.display_in(idx.ctx.len()).to_string()
    }

    fn show_index(idx: &CbpvIndex) -> String {
        idx.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use workbench_core::cbpv::syntax::*;

    fn entry<L: Lang>(src: &str, n: usize) -> Result<(L::Index, Vec<L::Term>), ParseError> {
        let mut p = Parser::new(src, 1)?;
        L::entry(&mut p, n)
    }

    #[test]
    fn fg_sorts() {
        let (s, ts) = entry::<Fg>("c :: [I] ~ I o I", 2).unwrap();
        assert_eq!(s, Sort::Computation);
        assert_eq!(ts.len(), 2);
        assert!(entry::<Fg>("v :: [I] ~ I", 2).is_err());
        assert!(entry::<Fg>("[I] ~ I", 2).is_err());
    }

    #[test]
    fn cbpv_indices() {
        let (idx, ts) =
            entry::<Cbpv>("x:unit |- F unit :: prod x ~ force (thunk (prod x))", 2).unwrap();
        assert_eq!(idx, CbpvIndex::new(vec![unit()], Ty::C(f(unit()))));
        assert_eq!(ts[0], prod_c(var(0)));
        let (idx, _) = entry::<Cbpv>("prod star ~ prod star", 2).unwrap();
        assert_eq!(idx, CbpvIndex::closed(Ty::C(f(unit()))));
        let (idx, _) = entry::<Cbpv>("F (unit (+) unit) :: prod (inl star)", 1).unwrap();
        assert_eq!(idx.ty, Ty::C(f(sum(unit(), unit()))));
    }

    #[test]
    fn delta_indices() {
        assert_eq!(Fg::delta_index(" v "), Some(Sort::Value));
        assert_eq!(
            Cbpv::delta_index("|- F unit"),
            Some(CbpvIndex::closed(Ty::C(f(unit()))))
        );
        assert_eq!(Cbpv::delta_index("universe.txt"), None);
    }
}
