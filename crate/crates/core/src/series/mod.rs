//! Exact arithmetic substrate.
//!
//! Every truncated value carries its truncation and every binary operation
//! propagates the smaller one, so answers never claim more precision than
//! their inputs support.

mod cyclotomic;
mod laurent;
mod linalg;
mod multi;
mod ring;
mod scalar;

pub use cyclotomic::Zeta3;
pub use laurent::{Laurent, QLaurent, EXACT};
pub use linalg::{solve_exact, LinearSystem, Solution, SolveOutcome};
pub use multi::{Monomial, MultiSeries};
pub use ring::{Coeff, Field, RingTag};
pub use scalar::{is_3_local, is_integral, rat, Rational};
