//! Surface syntaxes of the three calculi.

pub mod cbpv;
pub mod fg;
pub mod xcl;

pub use cbpv::{parse_cbpv, parse_cbpv_in, parse_cbpv_type, Scope};
pub use fg::parse_fg;
pub use xcl::parse_xcl;
