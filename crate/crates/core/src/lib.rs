//! Exact classical and quantum cohomology of the symmetric product `Σ_d` of a
//! genus-`g` curve, restricted to the subring generated by `η` and `θ`.
//!
//! - [`ring`]: the `η`–`θ` subring with cup product, pairing and reduction.
//! - [`chern`]: Chern/Segre calculus on the Jacobian and the determinantal
//!   evaluation over `G^r_d`, used as an independent oracle.
//! - [`gw`]: closed-form three-point Gromov–Witten invariants and the regime
//!   classifier.
//! - [`series`] and [`quantum`]: truncated Novikov series, the quantum
//!   product and the relation/associativity checks.
//! - [`table`] and [`cli`]: serialized multiplication tables and the
//!   command-line front end.

pub mod arith;
pub mod chern;
pub mod cli;
pub mod error;
pub mod gw;
pub mod quantum;
pub mod ring;
pub mod series;
pub mod table;
pub mod verify;

pub use arith::Rational;
pub use error::{Error, Result};
pub use ring::{Ambient, CohClass, Monomial};
