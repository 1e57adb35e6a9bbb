//! Untyped extended combinatory logic with lazy head reduction.

mod context;
mod gsos;
mod lax;
mod logrel;
mod sim;
mod step;
mod term;

pub use context::{context_oracle_xcl, contexts_of_size, enumerate_contexts_xcl, XclContext};
pub use gsos::{gsos_behaviour, gsos_step, Behaviour};
pub use lax::lax_bialgebra_check_xcl;
pub use logrel::{logrel_inputs, logrel_xcl, XclLogrel};
pub use sim::{check_applicative_simulation, greatest_simulation, Run, Runs, XclRelation};
pub use step::{
    apply_label, is_terminal, run, step, weak_labelled, xcl_closure, Xcl, XclError, XclStep,
};
pub use term::{
    app, kp, omega, omega_half, random_term, sp, spp, terms_of_size, terms_up_to, XclTerm,
};
