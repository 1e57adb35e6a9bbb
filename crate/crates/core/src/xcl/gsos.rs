//! A second xCL interpreter driven by the rule table of the higher-order
//! GSOS law. Each operator sees its operands together with their
//! behaviours, the table produces an open term over operands (`X`) and
//! operand results (`Y`), and flattening turns that back into a term.

use std::rc::Rc;

use super::step::XclStep;
use super::term::XclTerm;

/// `B(Λ, Λ) = Λ + Λ^Λ`: a reduct, or a function from labels to results.
#[derive(Clone)]
pub enum Behaviour {
    Reduces(XclTerm),
    Applies(Rc<dyn Fn(&XclTerm) -> XclTerm>),
}

/// Terms over `X + Y`: rule right-hand sides before flattening.
#[derive(Clone, Debug)]
enum Open {
    X(XclTerm),
    Y(XclTerm),
    Sp(Box<Open>),
    Spp(Box<Open>, Box<Open>),
    Kp(Box<Open>),
    App(Box<Open>, Box<Open>),
}

enum RuleOut {
    Reduces(Open),
    Applies(Rc<dyn Fn(&XclTerm) -> Open>),
}

/// One operator layer whose operands carry their behaviour.
enum Layer<'a> {
    S,
    K,
    I,
    Sp(&'a XclTerm),
    Kp(&'a XclTerm),
    Spp(&'a XclTerm, &'a XclTerm),
    App((&'a XclTerm, Behaviour), &'a XclTerm),
}

fn x(t: &XclTerm) -> Box<Open> {
    Box::new(Open::X(t.clone()))
}

/// The rule table. Operand behaviours marked `−` in the law are not used and
/// are not even computed.
fn rho0(layer: Layer<'_>) -> RuleOut {
    match layer {
        // S ↦ λx. S′(x)
        Layer::S => RuleOut::Applies(Rc::new(|a| Open::Sp(x(a)))),
        // S′(x, −) ↦ λx′. S″(x, x′)
        Layer::Sp(t) => {
            let t = t.clone();
            RuleOut::Applies(Rc::new(move |a| Open::Spp(x(&t), x(a))))
        }
        // S″((x, −), (x′, −)) ↦ λx″. app(app(x, x″), app(x′, x″))
        Layer::Spp(t, s) => {
            let (t, s) = (t.clone(), s.clone());
            RuleOut::Applies(Rc::new(move |a| {
                Open::App(
                    Box::new(Open::App(x(&t), x(a))),
                    Box::new(Open::App(x(&s), x(a))),
                )
            }))
        }
        // K ↦ λx. K′(x)
        Layer::K => RuleOut::Applies(Rc::new(|a| Open::Kp(x(a)))),
        // K′(x, −) ↦ λx′. x
        Layer::Kp(t) => {
            let t = t.clone();
            RuleOut::Applies(Rc::new(move |_| Open::X(t.clone())))
        }
        // I ↦ λx. x
        Layer::I => RuleOut::Applies(Rc::new(|a| Open::X(a.clone()))),
        // app((x, y), (x′, −)) ↦ app(y, x′)
        Layer::App((_, Behaviour::Reduces(y)), arg) => {
            RuleOut::Reduces(Open::App(Box::new(Open::Y(y)), x(arg)))
        }
        // app((x, f), (x′, −)) ↦ f(x′)
        Layer::App((_, Behaviour::Applies(f)), arg) => RuleOut::Reduces(Open::Y(f(arg))),
    }
}

fn flatten(t: Open) -> XclTerm {
    match t {
        Open::X(t) | Open::Y(t) => t,
        Open::Sp(a) => XclTerm::Sp(Box::new(flatten(*a))),
        Open::Kp(a) => XclTerm::Kp(Box::new(flatten(*a))),
        Open::Spp(a, b) => XclTerm::Spp(Box::new(flatten(*a)), Box::new(flatten(*b))),
        Open::App(a, b) => XclTerm::App(Box::new(flatten(*a)), Box::new(flatten(*b))),
    }
}

/// The operational model: destructure, recurse into operands, apply the
/// table, flatten.
pub fn gsos_behaviour(p: &XclTerm) -> Behaviour {
    let layer = match p {
        XclTerm::S => Layer::S,
        XclTerm::K => Layer::K,
        XclTerm::I => Layer::I,
        XclTerm::Sp(t) => Layer::Sp(t),
        XclTerm::Kp(t) => Layer::Kp(t),
        XclTerm::Spp(t, s) => Layer::Spp(t, s),
        XclTerm::App(t, s) => Layer::App((t, gsos_behaviour(t)), s),
    };
    match rho0(layer) {
        RuleOut::Reduces(o) => Behaviour::Reduces(flatten(o)),
        RuleOut::Applies(f) => Behaviour::Applies(Rc::new(move |a| flatten(f(a)))),
    }
}

pub fn gsos_step(p: &XclTerm) -> XclStep {
    match gsos_behaviour(p) {
        Behaviour::Reduces(t) => XclStep::Reduces(t),
        Behaviour::Applies(_) => XclStep::Terminal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xcl::term::{app, sp, XclTerm::*};

    #[test]
    fn first_step_of_trace() {
        assert_eq!(
            gsos_step(&app(app(S, K), I)),
            XclStep::Reduces(app(sp(K), I))
        );
    }

    #[test]
    fn identity_behaviour() {
        match gsos_behaviour(&I) {
            Behaviour::Applies(f) => assert_eq!(f(&K), K),
            Behaviour::Reduces(_) => panic!("I is terminal"),
        }
    }
}
