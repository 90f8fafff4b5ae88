//! Locally repairable codes over GF(2^m).
//!
//! * [`field`] and [`linalg`]: extension-field arithmetic and exact rank.
//! * [`code`]: linear codes, the entropy-as-rank oracle and brute-force
//!   minimum distance.
//! * [`regset`]: regenerating sets, nontrivial unions, Φ and ρ, and the
//!   locality checker.
//! * [`bounds`]: closed-form distance bounds.
//! * [`square`]: the square-code construction and its verifiers.
//! * [`repair`]: erasure repair planning and execution.
//! * [`io`] and [`cli`]: file formats and the `locrep` command.
//!
//! ```
//! use locrep::square::SquareCode;
//! use locrep::regset::PhiSearch;
//!
//! let sc = SquareCode::build(2, 3, None)?;
//! assert_eq!(sc.code().min_distance()?, 6);
//! let profile = PhiSearch::new(sc.code()).profile(2)?;
//! assert_eq!(profile.phi, vec![0, 3, 5]);
//! assert_eq!(profile.rho, 1);
//! # Ok::<(), locrep::Error>(())
//! ```

pub mod bounds;
pub mod cli;
pub mod code;
pub mod coords;
pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod regset;
pub mod repair;
pub mod square;

pub use code::{EntropyOracle, LinearCode};
pub use coords::CoordSet;
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
