use workbench_core::fgcbv::{cc, cv, fix, kp, ret, sp, spp, vc, vv, FgComp, FgTerm, FgValue};

use crate::lex::{ParseError, Parser, Pos, Tok};

/// Binary operators are left-associative and share one precedence level;
/// each fixes the sorts of its operands: `.` (c, c), `.>` (v, c), `<.`
/// (c, v) and `o` (v, v).
pub fn term(p: &mut Parser) -> Result<FgTerm, ParseError> {
    let mut lhs = operand(p)?;
    loop {
        let pos = p.pos();
        let op = match p.peek() {
            Tok::Dot => ".",
            Tok::DotGt => ".>",
            Tok::LtDot => "<.",
            Tok::Ident(w) if w == "o" => "o",
            _ => return Ok(lhs),
        };
        p.bump();
        let rhs = operand(p)?;
        lhs = FgTerm::C(match (op, lhs, rhs) {
            (".", FgTerm::C(t), FgTerm::C(s)) => cc(t, s),
            (".>", FgTerm::V(v), FgTerm::C(s)) => vc(v, s),
            ("<.", FgTerm::C(t), FgTerm::V(w)) => cv(t, w),
            ("o", FgTerm::V(v), FgTerm::V(w)) => vv(v, w),
            (op, l, r) => {
                return Err(ParseError::new(
                    pos,
                    format!(
                        "`{op}` cannot combine a {} with a {}",
                        sort_name(&l),
                        sort_name(&r)
                    ),
                ))
            }
        });
    }
}

fn sort_name(t: &FgTerm) -> &'static str {
    match t {
        FgTerm::V(_) => "value",
        FgTerm::C(_) => "computation",
    }
}

pub fn comp(p: &mut Parser) -> Result<FgComp, ParseError> {
    let pos = p.pos();
    match term(p)? {
        FgTerm::C(c) => Ok(c),
        FgTerm::V(v) => Err(ParseError::new(
            pos,
            format!("expected a computation, found value {v}"),
        )),
    }
}

fn value(p: &mut Parser, pos: Pos) -> Result<FgValue, ParseError> {
    match term(p)? {
        FgTerm::V(v) => Ok(v),
        FgTerm::C(c) => Err(ParseError::new(
            pos,
            format!("expected a value, found computation {c}"),
        )),
    }
}

fn operand(p: &mut Parser) -> Result<FgTerm, ParseError> {
    match p.peek().clone() {
        Tok::LParen => {
            p.bump();
            let t = term(p)?;
            p.expect(&Tok::RParen)?;
            Ok(t)
        }
        Tok::LBrack => {
            p.bump();
            let pos = p.pos();
            let v = value(p, pos)?;
            p.expect(&Tok::RBrack)?;
            Ok(FgTerm::C(ret(v)))
        }
        Tok::Ident(w) => {
            p.bump();
            let v = match w.as_str() {
                "I" => FgValue::I,
                "K" => FgValue::K,
                "S" => FgValue::S,
                "K'" | "S'" | "fix" => {
                    p.expect(&Tok::LParen)?;
                    let t = comp(p)?;
                    p.expect(&Tok::RParen)?;
                    return Ok(match w.as_str() {
                        "K'" => FgTerm::V(kp(t)),
                        "S'" => FgTerm::V(sp(t)),
                        _ => FgTerm::C(fix(t)),
                    });
                }
                "S''" => {
                    p.expect(&Tok::LParen)?;
                    let t = comp(p)?;
                    p.expect(&Tok::Comma)?;
                    let s = comp(p)?;
                    p.expect(&Tok::RParen)?;
                    spp(t, s)
                }
                _ => return Err(p.error(format!("unknown name `{w}`"))),
            };
            Ok(FgTerm::V(v))
        }
        _ => Err(p.unexpected("a value or computation")),
    }
}

pub fn parse_fg(src: &str) -> Result<FgTerm, ParseError> {
    let mut p = Parser::new(src, 1)?;
    let t = term(&mut p)?;
    p.end()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use workbench_core::fgcbv::FgValue::*;

    #[test]
    fn returns_and_application() {
        assert_eq!(
            parse_fg("[K] . [I]").unwrap(),
            FgTerm::C(cc(ret(K), ret(I)))
        );
        assert_eq!(
            parse_fg("S''([K], [I]) o K").unwrap(),
            FgTerm::C(vv(spp(ret(K), ret(I)), K))
        );
    }

    #[test]
    fn sorts_are_checked() {
        let e = parse_fg("K . [I]").unwrap_err();
        assert!(e.message.contains("`.`"), "{e}");
        assert!(parse_fg("[[K]]").is_err());
    }

    #[test]
    fn mixed_operators() {
        assert_eq!(
            parse_fg("(S .> [I]) <. K").unwrap(),
            FgTerm::C(cv(vc(S, ret(I)), K))
        );
        assert_eq!(parse_fg("fix([I])").unwrap(), FgTerm::C(fix(ret(I))));
    }
}
