//! Exact arithmetic for level-3 elliptic cohomology.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`series`]: big rationals, truncated Laurent series in `q`, sparse
//!   multivariate truncated power series and exact linear algebra.
//! * [`graded`]: the ring `Q[a1, a3, Δ^-1]` of level-3 modular forms.
//! * [`curve`]: Weierstrass curves, their formal group laws, logarithms and
//!   2-typical Hazewinkel generators.
//! * [`modular`]: Eisenstein series, the Tate curve, the order-3 point on
//!   `Tate(q^3)` and the q-expansion map.
//! * [`classes`]: Chern roots on maximal tori and Pontryagin classes.
//! * [`lift`]: Miller, Chern and Dold characters, the lift test from
//!   `K_Tate` classes, and the Witten genus.
//! * [`jacobi`]: the Weierstrass Φ-function, slash actions on Jacobi forms
//!   and the loop-group character pipeline.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classes;
pub mod curve;
pub mod error;
pub mod graded;
pub mod jacobi;
pub mod lift;
pub mod modular;
pub mod series;

pub use error::{Error, Result};
pub use graded::GradedMf;
pub use series::{Coeff, Laurent, MultiSeries, QLaurent, Rational, Zeta3};
