use std::fmt;

use rand::Rng;

/// Extended combinatory logic terms. Closed by construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum XclTerm {
    S,
    K,
    I,
    Sp(Box<XclTerm>),
    Kp(Box<XclTerm>),
    Spp(Box<XclTerm>, Box<XclTerm>),
    App(Box<XclTerm>, Box<XclTerm>),
}

use XclTerm::*;

pub fn app(f: XclTerm, a: XclTerm) -> XclTerm {
    App(Box::new(f), Box::new(a))
}

pub fn sp(t: XclTerm) -> XclTerm {
    Sp(Box::new(t))
}

pub fn kp(t: XclTerm) -> XclTerm {
    Kp(Box::new(t))
}

pub fn spp(t: XclTerm, s: XclTerm) -> XclTerm {
    Spp(Box::new(t), Box::new(s))
}

/// `S I I`
pub fn omega_half() -> XclTerm {
    app(app(S, I), I)
}

/// `(S I I) (S I I)`, which reduces forever without revisiting a state.
pub fn omega() -> XclTerm {
    app(omega_half(), omega_half())
}

impl XclTerm {
    pub fn size(&self) -> usize {
        match self {
            S | K | I => 1,
            Sp(t) | Kp(t) => 1 + t.size(),
            Spp(t, s) | App(t, s) => 1 + t.size() + s.size(),
        }
    }

    /// Head of the application spine and the number of arguments applied to it.
    pub fn spine(&self) -> (&XclTerm, usize) {
        let mut t = self;
        let mut n = 0;
        while let App(f, _) = t {
            t = f;
            n += 1;
        }
        (t, n)
    }

    fn tag(&self) -> u64 {
        match self {
            S => 0,
            K => 1,
            I => 2,
            Sp(_) => 3,
            Kp(_) => 4,
            Spp(..) => 5,
            App(..) => 6,
        }
    }

    pub(crate) fn spine_key(&self) -> u64 {
        let (h, n) = self.spine();
        (n as u64) << 3 | h.tag()
    }
}

impl fmt::Display for XclTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S => f.write_str("S"),
            K => f.write_str("K"),
            I => f.write_str("I"),
            Sp(t) => write!(f, "S'({t})"),
            Kp(t) => write!(f, "K'({t})"),
            Spp(t, s) => write!(f, "S''({t},{s})"),
            App(t, s) => {
                write_operand(f, t)?;
                f.write_str(" ")?;
                write_operand(f, s)
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, t: &XclTerm) -> fmt::Result {
    match t {
        App(..) => write!(f, "({t})"),
        _ => write!(f, "{t}"),
    }
}

/// Every term of exactly `size` constructors, in a fixed order.
pub fn terms_of_size(size: usize) -> Vec<XclTerm> {
    let mut table: Vec<Vec<XclTerm>> = vec![Vec::new()];
    for n in 1..=size {
        let mut out = Vec::new();
        if n == 1 {
            out.extend([S, K, I]);
        } else {
            for t in &table[n - 1] {
                out.push(sp(t.clone()));
                out.push(kp(t.clone()));
            }
            for i in 1..n - 1 {
                for a in &table[i] {
                    for b in &table[n - 1 - i] {
                        out.push(spp(a.clone(), b.clone()));
                        out.push(app(a.clone(), b.clone()));
                    }
                }
            }
        }
        table.push(out);
    }
    table.swap_remove(size)
}

/// Every term of size at most `max_size`, smallest first.
pub fn terms_up_to(max_size: usize) -> Vec<XclTerm> {
    (1..=max_size).flat_map(terms_of_size).collect()
}

/// A random term with exactly `size` constructors (`size ≥ 1`).
pub fn random_term<R: Rng>(rng: &mut R, size: usize) -> XclTerm {
    match size {
        0 | 1 => [S, K, I][rng.gen_range(0..3)].clone(),
        2 => {
            let t = random_term(rng, 1);
            if rng.gen() {
                sp(t)
            } else {
                kp(t)
            }
        }
        n => match rng.gen_range(0..4) {
            0 => sp(random_term(rng, n - 1)),
            1 => kp(random_term(rng, n - 1)),
            k => {
                let left = rng.gen_range(1..n - 1);
                let (a, b) = (random_term(rng, left), random_term(rng, n - 1 - left));
                if k == 2 {
                    spp(a, b)
                } else {
                    app(a, b)
                }
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parenthesizes_nested_applications() {
        assert_eq!(app(app(S, K), I).to_string(), "(S K) I");
        assert_eq!(app(app(K, I), app(I, I)).to_string(), "(K I) (I I)");
        assert_eq!(spp(K, I).to_string(), "S''(K,I)");
    }

    #[test]
    fn sizes() {
        assert_eq!(omega().size(), 11);
        let counts: Vec<usize> = (1..=5).map(|n| terms_of_size(n).len()).collect();
        assert_eq!(counts, vec![3, 6, 30, 132, 696]);
    }
}
