//! Mechanical verification of congruences for Σ C(2k,k)²C(3k,k)m^{−k},
//! Legendre polynomials at special points, and cubic character sums.

pub mod binomial;
pub mod context;
pub mod curve;
pub mod exact;
pub mod modular;
pub mod poly;
pub mod primes;
pub mod quadform;
pub mod verifier;

pub use context::PrimeCtx;
pub use modular::{ArithError, Modulus, QuadExtElem, Residue};
