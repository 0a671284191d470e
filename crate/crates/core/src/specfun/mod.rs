//! Special functions: Gamma, Kummer M and U, repeated erfc integrals and the E_n/F_n pair.
//!
//! Everything here is a pure function of its arguments.

mod erfc;
mod gamma;
mod kummer;
pub mod quadrature;

pub use erfc::{en_fn, erf, erfc, inerfc, MAX_ORDER};
pub use gamma::{gamma, pochhammer, recip_gamma};
pub use kummer::{
    kummer_m, kummer_u, kummer_u_detailed, KummerArgs, UEvaluation, UMethod, MAX_TERMS,
};
