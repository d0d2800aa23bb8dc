//! Exact coefficient arithmetic: big rationals, Laurent polynomials in the
//! three spectral variables, univariate polynomials and truncated power
//! series in the zeta variable `u`, and dense small-matrix linear algebra
//! over these rings.

pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod series;
pub mod upoly;

pub use laurent::{LaurentPoly, Var};
pub use matrix::{Mat, RingElem, RingMatrix, SeriesError};
pub use rational::{parse_rat, pow_p, rat, ratio, val_p, Rat};
pub use series::{PowerSeries, SeriesConstantTerm};
pub use upoly::{poly_divides, UPoly};
