//! valentkit: geometric covering invariants of finite planar sets and the
//! analytic inequalities they control.
//!
//! The library computes the (d, alpha)-Cartan measure, covering numbers and
//! their derived invariants, certified polynomial maxima, Taylor-domination
//! profiles and coefficient recurrences, argument-principle zero counts with
//! empirical valency probing, and Remez-type bounds for polynomials and for
//! analytic functions with finitely many zeros in the unit disk.
//!
//! Everything is deterministic: randomized harnesses are seeded, and the
//! branch-and-bound solvers return the same optimum as exhaustive
//! enumeration, bit for bit.

pub mod cartan;
pub mod error;
pub mod geom;
pub mod io;
pub mod polyops;
pub mod remez;
pub mod taylor;
pub mod valency;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
