//! Pointed and multi-pointed partition posets of types A and B.
//!
//! The crate enumerates the families, builds them as finite posets, and
//! computes Möbius functions, characteristic polynomials, integral homology of
//! order complexes and the coproduct of the incidence Hopf algebra, all with
//! exact arithmetic. Closed forms for every family can be checked against the
//! computed values.

pub mod cli;
pub mod exactalg;
pub mod partitions;
pub mod homology;
pub mod hopf;
pub mod identities;
pub mod posetcore;
