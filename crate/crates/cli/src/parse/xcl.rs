use workbench_core::xcl::{app, kp, sp, spp, XclTerm};

use crate::lex::{ParseError, Parser, Tok};

/// `t s` is left-associative application.
pub fn term(p: &mut Parser) -> Result<XclTerm, ParseError> {
    let mut t = atom(p)?;
    while starts_atom(p) {
        t = app(t, atom(p)?);
    }
    Ok(t)
}

fn starts_atom(p: &Parser) -> bool {
    match p.peek() {
        Tok::LParen => true,
        Tok::Ident(w) => matches!(w.as_str(), "S" | "K" | "I" | "S'" | "K'" | "S''"),
        _ => false,
    }
}

fn atom(p: &mut Parser) -> Result<XclTerm, ParseError> {
    match p.peek().clone() {
        Tok::LParen => {
            p.bump();
            let t = term(p)?;
            p.expect(&Tok::RParen)?;
            Ok(t)
        }
        Tok::Ident(w) => {
            let t = match w.as_str() {
                "S" => XclTerm::S,
                "K" => XclTerm::K,
                "I" => XclTerm::I,
                "S'" | "K'" => {
                    p.bump();
                    p.expect(&Tok::LParen)?;
                    let t = term(p)?;
                    p.expect(&Tok::RParen)?;
                    return Ok(if w == "S'" { sp(t) } else { kp(t) });
                }
                "S''" => {
                    p.bump();
                    p.expect(&Tok::LParen)?;
                    let t = term(p)?;
                    p.expect(&Tok::Comma)?;
                    let s = term(p)?;
                    p.expect(&Tok::RParen)?;
                    return Ok(spp(t, s));
                }
                _ => return Err(p.error(format!("unknown combinator `{w}`"))),
            };
            p.bump();
            Ok(t)
        }
        _ => Err(p.unexpected("a combinator")),
    }
}

pub fn parse_xcl(src: &str) -> Result<XclTerm, ParseError> {
    let mut p = Parser::new(src, 1)?;
    let t = term(&mut p)?;
    p.end()?;
    Ok(t)
}
