use std::fmt::Display;

use super::closure::{may_terminate, Semantics, Termination};
use super::verdict::{Verdict, VerdictBuilder, Witness};

/// `∀a ∈ A. ∃b ∈ B. rel(a, b)`.
pub fn egli_milner_match<'a, A: 'a, B>(
    left: impl IntoIterator<Item = &'a A>,
    right: &[B],
    mut rel: impl FnMut(&A, &B) -> bool,
) -> bool {
    left.into_iter().all(|a| right.iter().any(|b| rel(a, b)))
}

/// Brute-force contextual preorder check: for every context `C`, if `C[p]`
/// may terminate within `fuel` then `C[q]` must too.
///
/// A context only refutes the pair when `C[q]` is proved divergent; a run
/// that exhausts its fuel makes the verdict unknown instead.
pub fn context_oracle<S, C>(
    sem: &S,
    contexts: impl IntoIterator<Item = C>,
    plug: impl Fn(&C, &S::Term) -> S::Term,
    p: &S::Term,
    q: &S::Term,
    fuel: usize,
) -> Verdict
where
    S: Semantics,
    S::Term: Display,
    C: Display,
{
    if p == q {
        return Verdict::holds().note("identical terms");
    }
    let mut out = VerdictBuilder::new();
    for c in contexts {
        out.checked += 1;
        let cp = plug(&c, p);
        match may_terminate(sem, &cp, fuel) {
            Termination::Diverges { .. } => continue,
            Termination::Unknown { .. } => {
                out.unknown(format!("context {c}: left run hit fuel {fuel}"));
                continue;
            }
            Termination::Terminates { .. } => {}
        }
        let cq = plug(&c, q);
        match may_terminate(sem, &cq, fuel) {
            Termination::Terminates { .. } => {}
            Termination::Unknown { .. } => {
                out.unknown(format!("context {c}: right run hit fuel {fuel}"))
            }
            Termination::Diverges { witness, .. } => {
                let mut trace = vec![
                    format!("context {c}"),
                    format!("{cp} terminates"),
                    format!("{cq} diverges"),
                ];
                if let Some((later, earlier)) = witness {
                    trace.push(format!("{later} revisits {earlier}"));
                }
                out.fail(Witness::new(p, q, "context").with_trace(trace));
                break;
            }
        }
    }
    out.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn egli_milner_basics() {
        let empty: [u8; 0] = [];
        assert!(egli_milner_match(&empty, &[1u8], |a, b| a == b));
        assert!(!egli_milner_match(&[1u8], &empty, |a, b| a == b));
        assert!(!egli_milner_match(&[1u8, 2], &[1u8], |a, b| a == b));
        assert!(egli_milner_match(&[1u8, 2], &[1u8, 2], |a, b| a == b));
    }
}
