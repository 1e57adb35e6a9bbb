//! Types, terms, typing and substitution.

mod enumerate;
mod subst;
mod term;
mod typecheck;
mod types;

pub use enumerate::{
    compositions, enumerate_values, inhabitant, random_term, shapes, Enumerator, Shape, ShapeKind,
    TypePool,
};
pub use subst::{
    identity_tuple, rename, shift, subst_checked, subst_sim, subst_single, subst_top, swap01,
    weaken, SubstError,
};
pub use term::*;
pub use typecheck::{typecheck, TypeError};
pub use types::{
    arrow, f, mu, prod, sum, tensor, type_subst, u, unfold_mu, unit, CompType, Ctx, Ty, ValType,
};
