use std::fmt;

/// Value types. Type variables only occur below a `Thunk` inside some μ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ValType {
    Thunk(Box<CompType>),
    Unit,
    Sum(Box<ValType>, Box<ValType>),
    Prod(Box<ValType>, Box<ValType>),
}

/// Computation types. `Var(i)` is a de Bruijn index: 0 names the nearest
/// enclosing μ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CompType {
    Var(usize),
    F(Box<ValType>),
    Arrow(Box<ValType>, Box<CompType>),
    Tensor(Box<CompType>, Box<CompType>),
    Mu(Box<CompType>),
}

/// Either sort of type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Ty {
    V(ValType),
    C(CompType),
}

pub type Ctx = Vec<ValType>;

pub fn unit() -> ValType {
    ValType::Unit
}

pub fn u(k: CompType) -> ValType {
    ValType::Thunk(Box::new(k))
}

pub fn sum(a: ValType, b: ValType) -> ValType {
    ValType::Sum(Box::new(a), Box::new(b))
}

pub fn prod(a: ValType, b: ValType) -> ValType {
    ValType::Prod(Box::new(a), Box::new(b))
}

pub fn f(a: ValType) -> CompType {
    CompType::F(Box::new(a))
}

pub fn arrow(a: ValType, k: CompType) -> CompType {
    CompType::Arrow(Box::new(a), Box::new(k))
}

pub fn tensor(a: CompType, b: CompType) -> CompType {
    CompType::Tensor(Box::new(a), Box::new(b))
}

pub fn mu(body: CompType) -> CompType {
    CompType::Mu(Box::new(body))
}

impl ValType {
    fn subst(&self, depth: usize, with: &CompType) -> ValType {
        match self {
            ValType::Thunk(k) => u(k.subst(depth, with)),
            ValType::Unit => ValType::Unit,
            ValType::Sum(a, b) => sum(a.subst(depth, with), b.subst(depth, with)),
            ValType::Prod(a, b) => prod(a.subst(depth, with), b.subst(depth, with)),
        }
    }

    fn shift(&self, cutoff: usize) -> ValType {
        match self {
            ValType::Thunk(k) => u(k.shift(cutoff)),
            ValType::Unit => ValType::Unit,
            ValType::Sum(a, b) => sum(a.shift(cutoff), b.shift(cutoff)),
            ValType::Prod(a, b) => prod(a.shift(cutoff), b.shift(cutoff)),
        }
    }

    /// Free type variables are at most `bound` deep.
    fn closed_below(&self, bound: usize) -> bool {
        match self {
            ValType::Thunk(k) => k.closed_below(bound),
            ValType::Unit => true,
            ValType::Sum(a, b) | ValType::Prod(a, b) => {
                a.closed_below(bound) && b.closed_below(bound)
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.closed_below(0)
    }
}

impl CompType {
    fn subst(&self, depth: usize, with: &CompType) -> CompType {
        match self {
            CompType::Var(i) if *i == depth => with.shift_by(depth),
            CompType::Var(i) if *i > depth => CompType::Var(i - 1),
            CompType::Var(i) => CompType::Var(*i),
            CompType::F(a) => f(a.subst(depth, with)),
            CompType::Arrow(a, k) => arrow(a.subst(depth, with), k.subst(depth, with)),
            CompType::Tensor(a, b) => tensor(a.subst(depth, with), b.subst(depth, with)),
            CompType::Mu(k) => mu(k.subst(depth + 1, with)),
        }
    }

    fn shift(&self, cutoff: usize) -> CompType {
        match self {
            CompType::Var(i) if *i >= cutoff => CompType::Var(i + 1),
            CompType::Var(i) => CompType::Var(*i),
            CompType::F(a) => f(a.shift(cutoff)),
            CompType::Arrow(a, k) => arrow(a.shift(cutoff), k.shift(cutoff)),
            CompType::Tensor(a, b) => tensor(a.shift(cutoff), b.shift(cutoff)),
            CompType::Mu(k) => mu(k.shift(cutoff + 1)),
        }
    }

    fn shift_by(&self, n: usize) -> CompType {
        (0..n).fold(self.clone(), |k, _| k.shift(0))
    }

    fn closed_below(&self, bound: usize) -> bool {
        match self {
            CompType::Var(i) => *i < bound,
            CompType::F(a) => a.closed_below(bound),
            CompType::Arrow(a, k) => a.closed_below(bound) && k.closed_below(bound),
            CompType::Tensor(a, b) => a.closed_below(bound) && b.closed_below(bound),
            CompType::Mu(k) => k.closed_below(bound + 1),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.closed_below(0)
    }
}

/// `κ[μα.κ/α]`, where `body` is κ (with α free as index 0).
pub fn type_subst(kappa: &CompType, mu_body: &CompType) -> CompType {
    kappa.subst(0, &mu(mu_body.clone()))
}

/// One-step unfolding of `μα.κ` given κ.
pub fn unfold_mu(body: &CompType) -> CompType {
    type_subst(body, body)
}

impl Ty {
    pub fn is_value(&self) -> bool {
        matches!(self, Ty::V(_))
    }
}

fn tyvar_name(level: usize) -> String {
    const NAMES: [&str; 4] = ["a", "b", "c", "d"];
    NAMES
        .get(level)
        .map_or_else(|| format!("a{level}"), |s| s.to_string())
}

struct ValIn<'a>(&'a ValType, usize);
struct CompIn<'a>(&'a CompType, usize);

impl ValIn<'_> {
    fn atomic(&self) -> bool {
        matches!(self.0, ValType::Unit)
    }
}

impl CompIn<'_> {
    fn atomic(&self) -> bool {
        matches!(self.0, CompType::Var(_))
    }
}

impl fmt::Display for ValIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.1;
        let val = |f: &mut fmt::Formatter<'_>, v: &ValType| {
            let v = ValIn(v, d);
            if v.atomic() {
                write!(f, "{v}")
            } else {
                write!(f, "({v})")
            }
        };
        match self.0 {
            ValType::Unit => f.write_str("unit"),
            ValType::Thunk(k) => {
                let k = CompIn(k, d);
                if k.atomic() {
                    write!(f, "U {k}")
                } else {
                    write!(f, "U ({k})")
                }
            }
            ValType::Sum(a, b) => {
                val(f, a)?;
                f.write_str(" (+) ")?;
                val(f, b)
            }
            ValType::Prod(a, b) => {
                val(f, a)?;
                f.write_str(" (*) ")?;
                val(f, b)
            }
        }
    }
}

impl fmt::Display for CompIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.1;
        let comp = |f: &mut fmt::Formatter<'_>, k: &CompType| {
            let k = CompIn(k, d);
            if k.atomic() {
                write!(f, "{k}")
            } else {
                write!(f, "({k})")
            }
        };
        match self.0 {
            CompType::Var(i) if *i < d => f.write_str(&tyvar_name(d - 1 - i)),
            CompType::Var(i) => write!(f, "?{}", i - d),
            CompType::F(a) => {
                let a = ValIn(a, d);
                if a.atomic() {
                    write!(f, "F {a}")
                } else {
                    write!(f, "F ({a})")
                }
            }
            CompType::Arrow(a, k) => {
                let a = ValIn(a, d);
                if a.atomic() {
                    write!(f, "{a}")?
                } else {
                    write!(f, "({a})")?
                }
                f.write_str(" -> ")?;
                comp(f, k)
            }
            CompType::Tensor(a, b) => {
                comp(f, a)?;
                f.write_str(" (x) ")?;
                comp(f, b)
            }
            CompType::Mu(k) => write!(f, "mu {}. {}", tyvar_name(d), CompIn(k, d + 1)),
        }
    }
}

impl fmt::Display for ValType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ValIn(self, 0).fmt(f)
    }
}

impl fmt::Display for CompType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        CompIn(self, 0).fmt(f)
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::V(v) => v.fmt(f),
            Ty::C(k) => k.fmt(f),
        }
    }
}
