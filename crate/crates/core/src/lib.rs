//! Executable algebra for height-m fragments of picture languages.
//!
//! The crate is organised bottom-up:
//!
//! * [`boolmat`]: Boolean matrices, the relation monoid `B_n`, and the
//!   `code`/`fold` encodings between top rows and square matrices.
//! * [`automata`]: NFAs and DFAs over indexed alphabets, with letters grouped
//!   into behaviour classes so that column alphabets of height `m` stay cheap.
//! * [`semigroup`]: finite monoids given by Cayley tables or lazily by
//!   generators, aperiodicity, maximal groups, syntactic quotients, and
//!   direct, bilateral semidirect and block products.
//! * [`picture`]: attributed column alphabets, fragment languages, the
//!   Boolean-matrix witness languages with their semantic oracles, the `B_n`
//!   embedding and the block-product recognizer for first-order projection.
//! * [`mso`]: brute-force evaluation of MSO formulas over small pictures.
//! * [`verify`]: the named verification suites used by the CLI and tests.

pub mod automata;
pub mod boolmat;
pub mod error;
pub mod mso;
pub mod picture;
pub mod semigroup;
pub mod verify;

pub use error::{Error, Result};

/// Crate version, embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
