use std::fmt;

use rand::Rng;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FgValue {
    I,
    K,
    S,
    Kp(Box<FgComp>),
    Sp(Box<FgComp>),
    Spp(Box<FgComp>, Box<FgComp>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FgComp {
    /// `[v]`
    Ret(Box<FgValue>),
    /// `t • s`
    AppCC(Box<FgComp>, Box<FgComp>),
    /// `v ◑ s`
    AppVC(Box<FgValue>, Box<FgComp>),
    /// `t ◐ v`
    AppCV(Box<FgComp>, Box<FgValue>),
    /// `v ∘ w`
    AppVV(Box<FgValue>, Box<FgValue>),
    /// Fixpoint extension; only parsed and generated when enabled.
    Fix(Box<FgComp>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FgTerm {
    V(FgValue),
    C(FgComp),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sort {
    Value,
    Computation,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Value => "v",
            Sort::Computation => "c",
        })
    }
}

pub fn ret(v: FgValue) -> FgComp {
    FgComp::Ret(Box::new(v))
}

pub fn cc(t: FgComp, s: FgComp) -> FgComp {
    FgComp::AppCC(Box::new(t), Box::new(s))
}

pub fn vc(v: FgValue, s: FgComp) -> FgComp {
    FgComp::AppVC(Box::new(v), Box::new(s))
}

pub fn cv(t: FgComp, v: FgValue) -> FgComp {
    FgComp::AppCV(Box::new(t), Box::new(v))
}

pub fn vv(v: FgValue, w: FgValue) -> FgComp {
    FgComp::AppVV(Box::new(v), Box::new(w))
}

pub fn fix(t: FgComp) -> FgComp {
    FgComp::Fix(Box::new(t))
}

pub fn kp(t: FgComp) -> FgValue {
    FgValue::Kp(Box::new(t))
}

pub fn sp(t: FgComp) -> FgValue {
    FgValue::Sp(Box::new(t))
}

pub fn spp(t: FgComp, s: FgComp) -> FgValue {
    FgValue::Spp(Box::new(t), Box::new(s))
}

impl FgValue {
    pub fn size(&self) -> usize {
        match self {
            FgValue::I | FgValue::K | FgValue::S => 1,
            FgValue::Kp(t) | FgValue::Sp(t) => 1 + t.size(),
            FgValue::Spp(t, s) => 1 + t.size() + s.size(),
        }
    }

    pub fn has_fix(&self) -> bool {
        match self {
            FgValue::I | FgValue::K | FgValue::S => false,
            FgValue::Kp(t) | FgValue::Sp(t) => t.has_fix(),
            FgValue::Spp(t, s) => t.has_fix() || s.has_fix(),
        }
    }
}

impl FgComp {
    pub fn size(&self) -> usize {
        match self {
            FgComp::Ret(v) => 1 + v.size(),
            FgComp::Fix(t) => 1 + t.size(),
            FgComp::AppCC(t, s) => 1 + t.size() + s.size(),
            FgComp::AppVC(v, s) => 1 + v.size() + s.size(),
            FgComp::AppCV(t, v) => 1 + t.size() + v.size(),
            FgComp::AppVV(v, w) => 1 + v.size() + w.size(),
        }
    }

    pub fn has_fix(&self) -> bool {
        match self {
            FgComp::Fix(_) => true,
            FgComp::Ret(v) => v.has_fix(),
            FgComp::AppCC(t, s) => t.has_fix() || s.has_fix(),
            FgComp::AppVC(v, s) => v.has_fix() || s.has_fix(),
            FgComp::AppCV(t, v) => t.has_fix() || v.has_fix(),
            FgComp::AppVV(v, w) => v.has_fix() || w.has_fix(),
        }
    }

    pub(crate) fn is_binary(&self) -> bool {
        !matches!(self, FgComp::Ret(_) | FgComp::Fix(_))
    }
}

impl FgTerm {
    pub fn sort(&self) -> Sort {
        match self {
            FgTerm::V(_) => Sort::Value,
            FgTerm::C(_) => Sort::Computation,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FgTerm::V(v) => v.size(),
            FgTerm::C(c) => c.size(),
        }
    }

    pub fn has_fix(&self) -> bool {
        match self {
            FgTerm::V(v) => v.has_fix(),
            FgTerm::C(c) => c.has_fix(),
        }
    }
}

impl fmt::Display for FgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FgValue::I => f.write_str("I"),
            FgValue::K => f.write_str("K"),
            FgValue::S => f.write_str("S"),
            FgValue::Kp(t) => write!(f, "K'({t})"),
            FgValue::Sp(t) => write!(f, "S'({t})"),
            FgValue::Spp(t, s) => write!(f, "S''({t},{s})"),
        }
    }
}

pub(crate) fn comp_operand(c: &FgComp) -> String {
    if c.is_binary() {
        format!("({c})")
    } else {
        c.to_string()
    }
}

impl fmt::Display for FgComp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FgComp::Ret(v) => write!(f, "[{v}]"),
            FgComp::Fix(t) => write!(f, "fix({t})"),
            FgComp::AppCC(t, s) => write!(f, "{} . {}", comp_operand(t), comp_operand(s)),
            FgComp::AppVC(v, s) => write!(f, "{v} .> {}", comp_operand(s)),
            FgComp::AppCV(t, v) => write!(f, "{} <. {v}", comp_operand(t)),
            FgComp::AppVV(v, w) => write!(f, "{v} o {w}"),
        }
    }
}

impl fmt::Display for FgTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FgTerm::V(v) => v.fmt(f),
            FgTerm::C(c) => c.fmt(f),
        }
    }
}

/// All values and computations by exact size.
pub struct FgTables {
    pub values: Vec<Vec<FgValue>>,
    pub comps: Vec<Vec<FgComp>>,
}

impl FgTables {
    pub fn new(max_size: usize, with_fix: bool) -> Self {
        let mut values: Vec<Vec<FgValue>> = vec![Vec::new()];
        let mut comps: Vec<Vec<FgComp>> = vec![Vec::new()];
        for n in 1..=max_size {
            let mut vs = Vec::new();
            let mut cs = Vec::new();
            if n == 1 {
                vs.extend([FgValue::I, FgValue::K, FgValue::S]);
            } else {
                for t in &comps[n - 1] {
                    vs.push(kp(t.clone()));
                    vs.push(sp(t.clone()));
                    if with_fix {
                        cs.push(fix(t.clone()));
                    }
                }
                for v in &values[n - 1] {
                    cs.push(ret(v.clone()));
                }
                for i in 1..n - 1 {
                    let j = n - 1 - i;
                    for a in &comps[i] {
                        for b in &comps[j] {
                            vs.push(spp(a.clone(), b.clone()));
                            cs.push(cc(a.clone(), b.clone()));
                        }
                        for w in &values[j] {
                            cs.push(cv(a.clone(), w.clone()));
                        }
                    }
                    for v in &values[i] {
                        for b in &comps[j] {
                            cs.push(vc(v.clone(), b.clone()));
                        }
                        for w in &values[j] {
                            cs.push(vv(v.clone(), w.clone()));
                        }
                    }
                }
            }
            values.push(vs);
            comps.push(cs);
        }
        FgTables { values, comps }
    }

    pub fn values_up_to(&self, n: usize) -> Vec<FgValue> {
        self.values.iter().take(n + 1).flatten().cloned().collect()
    }

    pub fn comps_up_to(&self, n: usize) -> Vec<FgComp> {
        self.comps.iter().take(n + 1).flatten().cloned().collect()
    }

    /// Both sorts up to size `n`, values first.
    pub fn terms_up_to(&self, n: usize) -> Vec<FgTerm> {
        let mut out: Vec<FgTerm> = self.values_up_to(n).into_iter().map(FgTerm::V).collect();
        out.extend(self.comps_up_to(n).into_iter().map(FgTerm::C));
        out
    }
}

/// Random value of size at most `budget` (values of every size ≥ 1 except 2 exist).
pub fn random_value<R: Rng>(rng: &mut R, budget: usize, with_fix: bool) -> FgValue {
    if budget < 3 || rng.gen_ratio(1, 4) {
        return [FgValue::I, FgValue::K, FgValue::S][rng.gen_range(0..3)].clone();
    }
    match rng.gen_range(0..3) {
        0 => kp(random_comp(rng, budget - 1, with_fix)),
        1 => sp(random_comp(rng, budget - 1, with_fix)),
        _ if budget >= 5 => {
            let left = rng.gen_range(2..=budget - 3);
            spp(
                random_comp(rng, left, with_fix),
                random_comp(rng, budget - 1 - left, with_fix),
            )
        }
        _ => kp(random_comp(rng, budget - 1, with_fix)),
    }
}

/// Random computation of size at most `budget` (at least 2).
pub fn random_comp<R: Rng>(rng: &mut R, budget: usize, with_fix: bool) -> FgComp {
    let budget = budget.max(2);
    if budget < 3 {
        return ret(random_value(rng, 1, with_fix));
    }
    // Sizes for two operands with the given minimal sizes.
    let split = |rng: &mut R, lo_left: usize, lo_right: usize| -> (usize, usize) {
        let rest = budget - 1;
        let left = rng.gen_range(lo_left..=rest - lo_right);
        (left, rest - left)
    };
    match rng.gen_range(0..if with_fix { 6 } else { 5 }) {
        0 => ret(random_value(rng, budget - 1, with_fix)),
        1 if budget >= 5 => {
            let (a, b) = split(rng, 2, 2);
            cc(random_comp(rng, a, with_fix), random_comp(rng, b, with_fix))
        }
        2 if budget >= 4 => {
            let (a, b) = split(rng, 1, 2);
            vc(
                random_value(rng, a, with_fix),
                random_comp(rng, b, with_fix),
            )
        }
        3 if budget >= 4 => {
            let (a, b) = split(rng, 2, 1);
            cv(
                random_comp(rng, a, with_fix),
                random_value(rng, b, with_fix),
            )
        }
        5 => fix(random_comp(rng, budget - 1, with_fix)),
        _ => {
            let (a, b) = split(rng, 1, 1);
            vv(
                random_value(rng, a, with_fix),
                random_value(rng, b, with_fix),
            )
        }
    }
}
