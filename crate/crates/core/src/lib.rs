//! Exact computations around the Luroth invariant of plane quartics.

pub mod exactalg;
pub mod clebsch;
pub mod covariants;
pub mod relfind;
pub mod sampling;

pub use covariants::{DixmierOhno, InvariantTuple, TernaryQuartic, GENERATOR_DEGREES, GENERATOR_NAMES};
pub use exactalg::{Field, PrimeField, Rationals};
pub use relfind::{ExponentVector, InvariantExpression, RelfindError};
