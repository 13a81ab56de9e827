//! Lower bounds on the family complexity of Legendre sequences built from
//! irreducible polynomials over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`ntheory`]: Möbius function, Gauss's irreducible count, subfield counts,
//!   primality, big-integer logarithms.
//! - [`lambertw`]: principal branch of the Lambert W function (real, log-domain
//!   and complex).
//! - [`gf`]: prime-field polynomials, extension fields, norm/trace/quadratic
//!   character, Frobenius twists and the character pattern counter.
//! - [`legendre_seq`]: Legendre symbols, Legendre sequences and the family of
//!   sequences generated by monic irreducibles.
//! - [`fcomplexity`]: exact brute-force family complexity.
//! - [`bounds`]: the Lambert-W lower bound, Gyarmati's bound, the trivial
//!   upper bound and the positivity crossover search.
//! - [`verify`]: named invariant suites shared by the CLI and the tests.

pub mod bounds;
pub mod error;
pub mod fcomplexity;
pub mod gf;
pub mod lambertw;
pub mod legendre_seq;
pub mod ntheory;
pub mod verify;

pub use error::{Error, Result};
