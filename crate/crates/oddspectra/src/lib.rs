//! Differential and boomerang analysis of quadratic-character binomials
//! F(x) = x^r (1 + u*chi(x)) over F_q with q = 3 (mod 4) and r = (q+1)/4,
//! plus the exact character-sum machinery their spectra reduce to.
//!
//! Everything here is exact integer arithmetic over explicitly enumerated
//! fields; no floats, no sampling. The `verify` module cross-checks the
//! closed-form predictions against brute force and reports any disagreement.

pub mod boom;
pub mod charsum;
pub mod diff;
pub mod error;
pub mod field;
pub mod funcs;
pub mod output;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, MAX_Q};
