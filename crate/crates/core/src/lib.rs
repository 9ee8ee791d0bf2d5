//! Exact potent plus square-zero decompositions of square matrices over
//! finite commutative rings.
//!
//! A matrix `A` splits as `A = P + N` with `P^k = P` for some `k >= 2` and
//! `N^2 = 0`. The constructions cover finite fields, `Z/p^2`,
//! `F_p[t]/(t^2)` and, through the Chinese remainder theorem, every `Z/m`;
//! over `Z/p^r` with `r > 2` the square of `N` is only guaranteed to vanish
//! modulo `p^2`.
//!
//! ```
//! use potentsq::{decompose::decompose, matrix::Matrix, rings::Ring};
//!
//! let z4 = Ring::integers_mod(4).unwrap();
//! let a = Matrix::from_ints(&z4, &[[2, 1], [0, 2]]);
//! let d = decompose(&a).unwrap();
//! assert_eq!(&d.potent + &d.nilpotent, a);
//! assert!((&d.nilpotent * &d.nilpotent).is_zero());
//! assert!(d.certificate.passed());
//! ```
//!
//! Modules, bottom-up:
//!
//! - [`rings`]: `Z/m`, `GF(p^k)`, `Z/m[x]/(f)` and dual numbers; potency, CRT, reductions.
//! - [`poly`]: polynomials over finite fields and their factorization.
//! - [`matrix`]: dense matrices, inverses, companion matrices, orders.
//! - [`canonical`]: primary rational canonical form and square-zero frames.
//! - [`decompose`]: field decomposition, lifting, and the ring-level drivers.
//! - [`oracle`]: exhaustive searches, independent verification, sweeps.
//! - [`parse`], [`doc`], [`cli`]: text formats, JSON documents, the command line.
//!
//! The `examples/` directory has one runnable program per capability.

pub mod canonical;
pub mod cli;
pub mod decompose;
pub mod doc;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod rings;

pub use error::{Error, Result};
