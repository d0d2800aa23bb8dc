//! Exact-arithmetic verification of the combinatorics and spectral theory of
//! the rank-2 symplectic building.
//!
//! The crate builds the desk-scale part of the Bruhat-Tits building of
//! `Sp4(Q_p)` from lattice classes, checks the explicit coset decompositions
//! behind the five adjacency operators (two vertex operators, two edge
//! operators, one chamber operator), computes the symbolic spectra of those
//! operators on all fifteen Iwahori-spherical representation types, and
//! verifies the two closed-form zeta identities together with the Ramanujan
//! classification bands.
//!
//! Everything is exact: big rationals, Laurent polynomials in `v = q^(1/2)`
//! and the unramified character values, and truncated power series over them.

pub mod cosetver;
pub mod exactring;
pub mod latticegeo;
pub mod localgroup;
pub mod reptheory;
pub mod zetaeng;

#[cfg(test)]
pub(crate) mod testutil;
