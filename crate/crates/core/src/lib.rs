//! Exact arithmetic for level-one modular forms: q-expansions, Hecke
//! matrices, and certificates that Hecke eigenforms are non-ordinary at
//! prescribed primes.
//!
//! ```
//! use modform_core::{classical, hecke, BigRational};
//!
//! let j = classical::j_invariant(2);
//! assert_eq!(j.coefficient(1).unwrap(), BigRational::from_integer(196884.into()));
//! let (nonordinary, _) = hecke::is_nonordinary_space(26, 19).unwrap();
//! assert!(nonordinary);
//! ```

pub mod arith;
pub mod classical;
mod error;
pub mod hecke;
pub mod nonordinary;
pub mod qseries;

pub use error::{Error, Result};
pub use hecke::{FormSpace, HeckeData};
pub use nonordinary::{Certificate, CertificateKind, Check, Criterion, NonordinaryTable};
pub use qseries::{ModPSeries, QSeries};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
