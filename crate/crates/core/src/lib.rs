//! Exact arithmetic for the generalized gcd `(r,s)_b` and lcm `[r,s]_b`,
//! their arithmetic/harmonic/geometric means, bulk sieved evaluation,
//! the asymptotic constants attached to their mean values, and numeric
//! verification of those mean-value asymptotics.

pub mod analytic;
pub mod arith;
pub mod error;
pub mod factored;
pub mod oracle;
pub mod rational;
pub mod sieve;
pub mod verify;

pub use arith::Exponent;
pub use error::{Error, Result};
pub use factored::FactoredInteger;
pub use rational::Rational;
pub use sieve::{BatchFn, Checkpoint, SieveTable, SummatorySeries};
