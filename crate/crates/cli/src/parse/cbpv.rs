use workbench_core::cbpv::syntax::{
    self as s, arrow, f, mu, prod, sum, tensor, u, unfold_mu, unit, CbpvTerm, CompType, Ctx, Ty,
    ValType,
};

use crate::lex::{ParseError, Parser, Pos, Tok};

const KEYWORDS: &[&str] = &[
    "lam", "to", "in", "case", "of", "inl", "inr", "pm", "as", "pair", "thunk", "force", "prod",
    "unfold", "fst", "snd", "fold", "star", "unit", "U", "F", "mu",
];

fn is_keyword(w: &str) -> bool {
    KEYWORDS.contains(&w)
}

fn binder(p: &mut Parser) -> Result<(String, Pos), ParseError> {
    let (name, pos) = p.ident()?;
    if is_keyword(&name) {
        return Err(ParseError::new(pos, format!("`{name}` is a keyword")));
    }
    Ok((name, pos))
}

// ---- types ----

/// Parses a value or computation type; the two are told apart by syntax.
pub fn ty(p: &mut Parser) -> Result<Ty, ParseError> {
    ty_in(p, &mut Vec::new())
}

fn ty_in(p: &mut Parser, tvars: &mut Vec<String>) -> Result<Ty, ParseError> {
    if p.eat_word("mu") {
        let (a, _) = binder(p)?;
        p.expect(&Tok::Dot)?;
        tvars.push(a);
        let pos = p.pos();
        let body = ty_in(p, tvars);
        tvars.pop();
        return Ok(Ty::C(mu(want_comp(body?, pos)?)));
    }
    let pos = p.pos();
    let lhs = sum_ty(p, tvars)?;
    if p.eat(&Tok::Arrow) {
        let dom = want_val(lhs, pos)?;
        let pos = p.pos();
        let cod = want_comp(ty_in(p, tvars)?, pos)?;
        return Ok(Ty::C(arrow(dom, cod)));
    }
    Ok(lhs)
}

fn want_val(t: Ty, pos: Pos) -> Result<ValType, ParseError> {
    match t {
        Ty::V(v) => Ok(v),
        Ty::C(k) => Err(ParseError::new(
            pos,
            format!("expected a value type, found computation type {k}"),
        )),
    }
}

fn want_comp(t: Ty, pos: Pos) -> Result<CompType, ParseError> {
    match t {
        Ty::C(k) => Ok(k),
        Ty::V(v) => Err(ParseError::new(
            pos,
            format!("expected a computation type, found value type {v}"),
        )),
    }
}

fn sum_ty(p: &mut Parser, tvars: &mut Vec<String>) -> Result<Ty, ParseError> {
    let pos = p.pos();
    let mut t = prod_ty(p, tvars)?;
    while p.eat(&Tok::Plus) {
        let rpos = p.pos();
        let r = prod_ty(p, tvars)?;
        t = Ty::V(sum(want_val(t, pos)?, want_val(r, rpos)?));
    }
    Ok(t)
}

fn prod_ty(p: &mut Parser, tvars: &mut Vec<String>) -> Result<Ty, ParseError> {
    let pos = p.pos();
    let mut t = tensor_ty(p, tvars)?;
    while p.eat(&Tok::Times) {
        let rpos = p.pos();
        let r = tensor_ty(p, tvars)?;
        t = Ty::V(prod(want_val(t, pos)?, want_val(r, rpos)?));
    }
    Ok(t)
}

fn at_tensor(p: &Parser) -> bool {
    p.is(&Tok::LParen)
        && matches!(p.peek_at(1), Tok::Ident(w) if w == "x")
        && *p.peek_at(2) == Tok::RParen
}

fn tensor_ty(p: &mut Parser, tvars: &mut Vec<String>) -> Result<Ty, ParseError> {
    let pos = p.pos();
    let mut t = atom_ty(p, tvars)?;
    while at_tensor(p) {
        for _ in 0..3 {
            p.bump();
        }
        let rpos = p.pos();
        let r = atom_ty(p, tvars)?;
        t = Ty::C(tensor(want_comp(t, pos)?, want_comp(r, rpos)?));
    }
    Ok(t)
}

fn atom_ty(p: &mut Parser, tvars: &mut Vec<String>) -> Result<Ty, ParseError> {
    let pos = p.pos();
    match p.peek().clone() {
        Tok::LParen => {
            p.bump();
            let t = ty_in(p, tvars)?;
            p.expect(&Tok::RParen)?;
            Ok(t)
        }
        Tok::Ident(w) => {
            p.bump();
            match w.as_str() {
                "unit" => Ok(Ty::V(unit())),
                "U" => {
                    let pos = p.pos();
                    Ok(Ty::V(u(want_comp(atom_ty(p, tvars)?, pos)?)))
                }
                "F" => {
                    let pos = p.pos();
                    Ok(Ty::C(f(want_val(atom_ty(p, tvars)?, pos)?)))
                }
                "mu" => Err(ParseError::new(pos, "parenthesize `mu` types here")),
                w if is_keyword(w) => Err(ParseError::new(pos, format!("unexpected `{w}`"))),
                w => match tvars.iter().rposition(|a| a == w) {
                    Some(i) => Ok(Ty::C(CompType::Var(tvars.len() - 1 - i))),
                    None => Err(ParseError::new(pos, format!("unbound type variable `{w}`"))),
                },
            }
        }
        _ => Err(p.unexpected("a type")),
    }
}

pub fn val_ty(p: &mut Parser) -> Result<ValType, ParseError> {
    let pos = p.pos();
    want_val(ty(p)?, pos)
}

// ---- surface terms ----

#[derive(Clone, Debug)]
enum Surf {
    Var(String),
    Star,
    Ann(Box<Node>, Ty),
    Inl(Box<Node>),
    Inr(Box<Node>),
    Fold(Box<Node>),
    Thunk(Box<Node>),
    Prod(Box<Node>),
    Force(Box<Node>),
    Unfold(Box<Node>),
    Fst(Box<Node>),
    Snd(Box<Node>),
    Pair(Box<Node>, Box<Node>),
    App(Box<Node>, Box<Node>),
    Choice(Box<Node>, Box<Node>),
    Lam(String, ValType, Box<Node>),
    To(Box<Node>, String, Box<Node>),
    Case(Box<Node>, String, Box<Node>, String, Box<Node>),
    Pm(Box<Node>, String, String, Box<Node>),
}

#[derive(Clone, Debug)]
struct Node {
    pos: Pos,
    t: Surf,
}

fn node(pos: Pos, t: Surf) -> Box<Node> {
    Box::new(Node { pos, t })
}

fn expr(p: &mut Parser) -> Result<Box<Node>, ParseError> {
    let pos = p.pos();
    if p.eat_word("lam") {
        p.expect(&Tok::LParen)?;
        let (x, _) = binder(p)?;
        p.expect(&Tok::Colon)?;
        let dom = val_ty(p)?;
        p.expect(&Tok::RParen)?;
        p.expect(&Tok::Dot)?;
        let body = expr(p)?;
        return Ok(node(pos, Surf::Lam(x, dom, body)));
    }
    let s = choice_expr(p)?;
    if p.eat_word("to") {
        let (x, _) = binder(p)?;
        p.expect_word("in")?;
        let t = expr(p)?;
        return Ok(node(pos, Surf::To(s, x, t)));
    }
    Ok(s)
}

fn choice_expr(p: &mut Parser) -> Result<Box<Node>, ParseError> {
    let pos = p.pos();
    let mut t = app_expr(p)?;
    while p.eat(&Tok::Plus) {
        let r = app_expr(p)?;
        t = node(pos, Surf::Choice(t, r));
    }
    Ok(t)
}

fn app_expr(p: &mut Parser) -> Result<Box<Node>, ParseError> {
    let pos = p.pos();
    let mut t = prefix(p)?;
    while p.eat(&Tok::At) {
        let v = prefix(p)?;
        t = node(pos, Surf::App(t, v));
    }
    Ok(t)
}

fn prefix(p: &mut Parser) -> Result<Box<Node>, ParseError> {
    let pos = p.pos();
    let Tok::Ident(w) = p.peek().clone() else {
        return atom(p);
    };
    let wrap: fn(Box<Node>) -> Surf = match w.as_str() {
        "thunk" => Surf::Thunk,
        "force" => Surf::Force,
        "prod" => Surf::Prod,
        "unfold" => Surf::Unfold,
        "fst" => Surf::Fst,
        "snd" => Surf::Snd,
        "inl" => Surf::Inl,
        "inr" => Surf::Inr,
        "fold" => Surf::Fold,
        "case" => {
            p.bump();
            let v = expr(p)?;
            p.expect_word("of")?;
            p.expect(&Tok::LBrace)?;
            p.expect_word("inl")?;
            let (x, _) = binder(p)?;
            p.expect(&Tok::Arrow)?;
            let l = expr(p)?;
            p.expect(&Tok::Bar)?;
            p.expect_word("inr")?;
            let (y, _) = binder(p)?;
            p.expect(&Tok::Arrow)?;
            let r = expr(p)?;
            p.expect(&Tok::RBrace)?;
            return Ok(node(pos, Surf::Case(v, x, l, y, r)));
        }
        "pm" => {
            p.bump();
            let v = expr(p)?;
            p.expect_word("as")?;
            p.expect(&Tok::LParen)?;
            let (x, _) = binder(p)?;
            p.expect(&Tok::Comma)?;
            let (y, _) = binder(p)?;
            p.expect(&Tok::RParen)?;
            p.expect_word("in")?;
            let t = expr(p)?;
            return Ok(node(pos, Surf::Pm(v, x, y, t)));
        }
        _ => return atom(p),
    };
    p.bump();
    // `thunk lam (x:T). t` takes the whole abstraction
    let operand = if p.is_word("lam") {
        expr(p)?
    } else {
        prefix(p)?
    };
    Ok(node(pos, wrap(operand)))
}

fn atom(p: &mut Parser) -> Result<Box<Node>, ParseError> {
    let pos = p.pos();
    match p.peek().clone() {
        Tok::LParen => {
            p.bump();
            let e = expr(p)?;
            let e = if p.eat(&Tok::Colon) {
                let t = ty(p)?;
                node(pos, Surf::Ann(e, t))
            } else {
                e
            };
            p.expect(&Tok::RParen)?;
            Ok(e)
        }
        Tok::Ident(w) if w == "star" => {
            p.bump();
            Ok(node(pos, Surf::Star))
        }
        Tok::Ident(w) if w == "pair" => {
            p.bump();
            p.expect(&Tok::LParen)?;
            let a = expr(p)?;
            p.expect(&Tok::Comma)?;
            let b = expr(p)?;
            p.expect(&Tok::RParen)?;
            Ok(node(pos, Surf::Pair(a, b)))
        }
        Tok::Ident(w) if !is_keyword(&w) => {
            p.bump();
            Ok(node(pos, Surf::Var(w)))
        }
        _ => Err(p.unexpected("a term")),
    }
}

// ---- elaboration ----

/// Named typing context; later entries shadow earlier ones and position
/// `i` becomes de Bruijn index `len - 1 - i`.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    names: Vec<(String, ValType)>,
}

impl Scope {
    pub fn new(names: Vec<(String, ValType)>) -> Self {
        Scope { names }
    }

    /// `x0 : ctx[0], x1 : ctx[1], …`, the names the printer uses.
    pub fn printed(ctx: &Ctx) -> Self {
        Scope {
            names: ctx
                .iter()
                .enumerate()
                .map(|(i, t)| (format!("x{i}"), t.clone()))
                .collect(),
        }
    }

    pub fn ctx(&self) -> Ctx {
        self.names.iter().map(|(_, t)| t.clone()).collect()
    }

    fn lookup(&self, x: &str) -> Option<(usize, &ValType)> {
        let i = self.names.iter().rposition(|(n, _)| n == x)?;
        Some((self.names.len() - 1 - i, &self.names[i].1))
    }

    fn with<R>(&mut self, extra: &[(&str, &ValType)], body: impl FnOnce(&mut Self) -> R) -> R {
        let n = self.names.len();
        for (x, t) in extra {
            self.names.push((x.to_string(), (*t).clone()));
        }
        let r = body(self);
        self.names.truncate(n);
        r
    }
}

type Elab = Result<(CbpvTerm, Ty), ParseError>;

fn err(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError::new(pos, message)
}

fn as_val(n: &Node, scope: &mut Scope, what: &str) -> Result<(CbpvTerm, ValType), ParseError> {
    match synth(n, scope)? {
        (t, Ty::V(v)) => Ok((t, v)),
        (_, Ty::C(k)) => Err(err(
            n.pos,
            format!("{what}: expected a value, found a computation of type {k}"),
        )),
    }
}

fn as_comp(n: &Node, scope: &mut Scope, what: &str) -> Result<(CbpvTerm, CompType), ParseError> {
    match synth(n, scope)? {
        (t, Ty::C(k)) => Ok((t, k)),
        (_, Ty::V(v)) => Err(err(
            n.pos,
            format!("{what}: expected a computation, found a value of type {v}"),
        )),
    }
}

fn synth(n: &Node, scope: &mut Scope) -> Elab {
    let pos = n.pos;
    Ok(match &n.t {
        Surf::Var(x) => match scope.lookup(x) {
            Some((i, t)) => (s::var(i), Ty::V(t.clone())),
            None => return Err(err(pos, format!("unbound name `{x}`"))),
        },
        Surf::Star => (s::star(), Ty::V(unit())),
        Surf::Ann(e, t) => (check(e, t, scope)?, t.clone()),
        Surf::Inl(_) | Surf::Inr(_) | Surf::Fold(_) => {
            return Err(err(
                pos,
                "cannot infer the type of an injection or fold; annotate it as `(e : T)`",
            ))
        }
        Surf::Thunk(e) => {
            let (t, k) = as_comp(e, scope, "thunk")?;
            (s::thunk(t), Ty::V(u(k)))
        }
        Surf::Prod(e) => {
            let (v, phi) = as_val(e, scope, "prod")?;
            (s::prod_c(v), Ty::C(f(phi)))
        }
        Surf::Force(e) => match as_val(e, scope, "force")? {
            (v, ValType::Thunk(k)) => (s::force(v), Ty::C(*k)),
            (_, other) => return Err(err(e.pos, format!("force: expected U k, found {other}"))),
        },
        Surf::Unfold(e) => match as_comp(e, scope, "unfold")? {
            (t, CompType::Mu(body)) => {
                let k = unfold_mu(&body);
                (s::unfold(t), Ty::C(k))
            }
            (_, other) => {
                return Err(err(
                    e.pos,
                    format!("unfold: expected a mu type, found {other}"),
                ))
            }
        },
        Surf::Fst(e) | Surf::Snd(e) => {
            let first = matches!(n.t, Surf::Fst(_));
            match as_comp(e, scope, "projection")? {
                (t, CompType::Tensor(a, b)) => {
                    if first {
                        (s::fst(t), Ty::C(*a))
                    } else {
                        (s::snd(t), Ty::C(*b))
                    }
                }
                (_, other) => {
                    return Err(err(
                        e.pos,
                        format!("projection: expected k1 (x) k2, found {other}"),
                    ))
                }
            }
        }
        Surf::Pair(a, b) => match synth(a, scope)? {
            (x, Ty::V(p1)) => {
                let (y, p2) = as_val(b, scope, "pair")?;
                (s::pair_v(x, y), Ty::V(prod(p1, p2)))
            }
            (x, Ty::C(k1)) => {
                let (y, k2) = as_comp(b, scope, "pair")?;
                (s::pair_c(x, y), Ty::C(tensor(k1, k2)))
            }
        },
        Surf::App(t, v) => match as_comp(t, scope, "application")? {
            (t2, CompType::Arrow(dom, cod)) => {
                let v2 = check(v, &Ty::V(*dom), scope)?;
                (s::app(t2, v2), Ty::C(*cod))
            }
            (_, other) => {
                return Err(err(
                    t.pos,
                    format!("application: expected a function type, found {other}"),
                ))
            }
        },
        Surf::Choice(a, b) => {
            let (x, k) = as_comp(a, scope, "choice")?;
            let y = check(b, &Ty::C(k.clone()), scope)?;
            (s::choice(x, y), Ty::C(k))
        }
        Surf::Lam(x, dom, body) => {
            let (b, k) = scope.with(&[(x, dom)], |sc| as_comp(body, sc, "lam body"))?;
            (s::lam(dom.clone(), b), Ty::C(arrow(dom.clone(), k)))
        }
        Surf::To(e, x, body) => {
            let (m, phi) = producer(e, scope)?;
            let (b, k) = scope.with(&[(x, &phi)], |sc| as_comp(body, sc, "to body"))?;
            (s::to(m, phi, b), Ty::C(k))
        }
        Surf::Case(v, x, l, y, r) => {
            let (w, p1, p2) = scrutinee(v, scope, true)?;
            let (lt, k) = scope.with(&[(x, &p1)], |sc| as_comp(l, sc, "case branch"))?;
            let ty = Ty::C(k);
            let rt = scope.with(&[(y, &p2)], |sc| check(r, &ty, sc))?;
            (s::case(w, p1, lt, p2, rt), ty)
        }
        Surf::Pm(v, x, y, body) => {
            let (w, p1, p2) = scrutinee(v, scope, false)?;
            let (b, k) = scope.with(&[(x, &p1), (y, &p2)], |sc| as_comp(body, sc, "pm body"))?;
            (s::pm(w, p1, p2, b), Ty::C(k))
        }
    })
}

fn producer(e: &Node, scope: &mut Scope) -> Result<(CbpvTerm, ValType), ParseError> {
    match as_comp(e, scope, "to")? {
        (m, CompType::F(phi)) => Ok((m, *phi)),
        (_, other) => Err(err(e.pos, format!("to: expected F phi, found {other}"))),
    }
}

fn scrutinee(
    v: &Node,
    scope: &mut Scope,
    is_case: bool,
) -> Result<(CbpvTerm, ValType, ValType), ParseError> {
    match (
        as_val(v, scope, if is_case { "case" } else { "pm" })?,
        is_case,
    ) {
        ((w, ValType::Sum(a, b)), true) | ((w, ValType::Prod(a, b)), false) => Ok((w, *a, *b)),
        ((_, other), true) => Err(err(v.pos, format!("case: expected a sum, found {other}"))),
        ((_, other), false) => Err(err(v.pos, format!("pm: expected a product, found {other}"))),
    }
}

fn check(n: &Node, want: &Ty, scope: &mut Scope) -> Result<CbpvTerm, ParseError> {
    let pos = n.pos;
    match (&n.t, want) {
        (Surf::Inl(e) | Surf::Inr(e), Ty::V(ValType::Sum(a, b))) => {
            let left = matches!(n.t, Surf::Inl(_));
            let side = if left { a } else { b };
            let v = check(e, &Ty::V((**side).clone()), scope)?;
            let (a, b) = ((**a).clone(), (**b).clone());
            Ok(if left {
                s::inl(a, b, v)
            } else {
                s::inr(a, b, v)
            })
        }
        (Surf::Inl(_) | Surf::Inr(_), other) => {
            Err(err(pos, format!("an injection cannot have type {other}")))
        }
        (Surf::Fold(e), Ty::C(CompType::Mu(body))) => {
            let t = check(e, &Ty::C(unfold_mu(body)), scope)?;
            Ok(s::fold((**body).clone(), t))
        }
        (Surf::Fold(_), other) => Err(err(pos, format!("fold cannot have type {other}"))),
        (Surf::Thunk(e), Ty::V(ValType::Thunk(k))) => {
            Ok(s::thunk(check(e, &Ty::C((**k).clone()), scope)?))
        }
        (Surf::Prod(e), Ty::C(CompType::F(phi))) => {
            Ok(s::prod_c(check(e, &Ty::V((**phi).clone()), scope)?))
        }
        (Surf::Pair(a, b), Ty::V(ValType::Prod(p1, p2))) => Ok(s::pair_v(
            check(a, &Ty::V((**p1).clone()), scope)?,
            check(b, &Ty::V((**p2).clone()), scope)?,
        )),
        (Surf::Pair(a, b), Ty::C(CompType::Tensor(k1, k2))) => Ok(s::pair_c(
            check(a, &Ty::C((**k1).clone()), scope)?,
            check(b, &Ty::C((**k2).clone()), scope)?,
        )),
        (Surf::Choice(a, b), Ty::C(_)) => {
            Ok(s::choice(check(a, want, scope)?, check(b, want, scope)?))
        }
        (Surf::Lam(x, dom, body), Ty::C(CompType::Arrow(d, k))) if dom == &**d => {
            let k = Ty::C((**k).clone());
            let b = scope.with(&[(x, dom)], |sc| check(body, &k, sc))?;
            Ok(s::lam(dom.clone(), b))
        }
        (Surf::To(e, x, body), Ty::C(_)) => {
            let (m, phi) = producer(e, scope)?;
            let b = scope.with(&[(x, &phi)], |sc| check(body, want, sc))?;
            Ok(s::to(m, phi, b))
        }
        (Surf::Case(v, x, l, y, r), Ty::C(_)) => {
            let (w, p1, p2) = scrutinee(v, scope, true)?;
            let lt = scope.with(&[(x, &p1)], |sc| check(l, want, sc))?;
            let rt = scope.with(&[(y, &p2)], |sc| check(r, want, sc))?;
            Ok(s::case(w, p1, lt, p2, rt))
        }
        (Surf::Pm(v, x, y, body), Ty::C(_)) => {
            let (w, p1, p2) = scrutinee(v, scope, false)?;
            let b = scope.with(&[(x, &p1), (y, &p2)], |sc| check(body, want, sc))?;
            Ok(s::pm(w, p1, p2, b))
        }
        _ => {
            let (t, found) = synth(n, scope)?;
            if &found == want {
                Ok(t)
            } else {
                Err(err(pos, format!("expected type {want}, found {found}")))
            }
        }
    }
}

/// Parses one term. With `want`, the term is checked against it, which
/// lets bare `inl`, `inr` and `fold` be used; otherwise its type is inferred.
pub fn term(p: &mut Parser, scope: &mut Scope, want: Option<&Ty>) -> Elab {
    let n = expr(p)?;
    match want {
        Some(t) => Ok((check(&n, t, scope)?, t.clone())),
        None => synth(&n, scope),
    }
}

/// `x:phi, y:psi |-`, or nothing. Returns the scope it introduces.
pub fn context(p: &mut Parser) -> Result<Option<Scope>, ParseError> {
    if p.eat(&Tok::Turnstile) {
        return Ok(Some(Scope::default()));
    }
    let is_ctx = matches!(p.peek(), Tok::Ident(w) if !is_keyword(w)) && *p.peek_at(1) == Tok::Colon;
    if !is_ctx {
        return Ok(None);
    }
    let mut names = Vec::new();
    loop {
        let (x, _) = binder(p)?;
        p.expect(&Tok::Colon)?;
        names.push((x, val_ty(p)?));
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    p.expect(&Tok::Turnstile)?;
    Ok(Some(Scope::new(names)))
}

pub fn parse_cbpv_type(src: &str) -> Result<Ty, ParseError> {
    let mut p = Parser::new(src, 1)?;
    let t = ty(&mut p)?;
    p.end()?;
    Ok(t)
}

/// A closed term, type inferred.
pub fn parse_cbpv(src: &str) -> Result<(CbpvTerm, Ty), ParseError> {
    parse_cbpv_in(src, &mut Scope::default(), None)
}

pub fn parse_cbpv_in(src: &str, scope: &mut Scope, want: Option<&Ty>) -> Elab {
    let mut p = Parser::new(src, 1)?;
    let r = term(&mut p, scope, want)?;
    p.end()?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use workbench_core::cbpv::syntax::*;

    #[test]
    fn force_thunk_prod() {
        let (t, ty) = parse_cbpv("force (thunk (prod star))").unwrap();
        assert_eq!(t, force(thunk(prod_c(star()))));
        assert_eq!(ty, Ty::C(f(unit())));
    }

    #[test]
    fn types() {
        assert_eq!(
            parse_cbpv_type("U (F unit) -> F unit").unwrap(),
            Ty::C(arrow(u(f(unit())), f(unit())))
        );
        assert_eq!(
            parse_cbpv_type("F unit (x) F unit").unwrap(),
            Ty::C(tensor(f(unit()), f(unit())))
        );
        assert_eq!(
            parse_cbpv_type("mu a. U a -> F unit").unwrap(),
            Ty::C(mu(arrow(u(CompType::Var(0)), f(unit()))))
        );
        assert_eq!(
            parse_cbpv_type("unit (+) unit (*) unit").unwrap(),
            Ty::V(sum(unit(), prod(unit(), unit())))
        );
        assert!(parse_cbpv_type("F b").is_err());
        assert!(parse_cbpv_type("U unit").is_err());
    }

    #[test]
    fn binders_are_de_bruijn() {
        let (t, _) = parse_cbpv("lam (x:unit). lam (y:unit). prod x").unwrap();
        assert_eq!(t, lam(unit(), lam(unit(), prod_c(var(1)))));
        let (t, _) = parse_cbpv("pm pair(star, star) as (a, b) in prod pair(a, b)").unwrap();
        assert_eq!(
            t,
            pm(
                pair_v(star(), star()),
                unit(),
                unit(),
                prod_c(pair_v(var(1), var(0)))
            )
        );
    }

    #[test]
    fn checking_mode_fills_annotations() {
        let b = sum(unit(), unit());
        let want = Ty::C(f(b.clone()));
        let mut sc = Scope::default();
        let (t, _) = parse_cbpv_in("prod (inl star)", &mut sc, Some(&want)).unwrap();
        assert_eq!(t, prod_c(inl(unit(), unit(), star())));
        let (t, _) = parse_cbpv("(lam (x:unit (+) unit). prod x) @ inr star").unwrap();
        assert_eq!(
            t,
            app(lam(b.clone(), prod_c(var(0))), inr(unit(), unit(), star()))
        );
    }

    #[test]
    fn diverge_round_trips() {
        let k = f(unit());
        let d = diverge(&k);
        let printed = d.to_string();
        let (back, ty) = parse_cbpv(&printed).unwrap();
        assert_eq!(back, d, "{printed}");
        assert_eq!(ty, Ty::C(k));
    }

    #[test]
    fn unbound_names_are_reported() {
        let e = parse_cbpv("prod y").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (1, 6));
        assert!(e.message.contains("unbound name `y`"));
        assert!(parse_cbpv("inl star").is_err());
    }

    #[test]
    fn contexts() {
        let mut p = Parser::new("x:unit, y:U (F unit) |- F unit", 1).unwrap();
        let sc = context(&mut p).unwrap().unwrap();
        assert_eq!(sc.ctx(), vec![unit(), u(f(unit()))]);
        assert_eq!(ty(&mut p).unwrap(), Ty::C(f(unit())));
    }
}
