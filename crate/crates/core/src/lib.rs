//! Balanced spreads and covering stars of PG(n-1, 2), their equivalence
//! fingerprints, and a pruned collineation search deciding isomorphism.
//!
//! Points of the geometry are the nonzero effects of a `2^n` factorial
//! experiment, written as letter words (`A`, `BC`, `ABD`, ...). A spread
//! partitions the points into flats of equal size; a covering star is a set
//! of flats sharing a common nucleus and covering every point. Both model
//! multistage randomization structures.
//!
//! ```
//! use pgiso_core::{fixtures, iso::{iso_spreads, IsoOptions}};
//!
//! let res = iso_spreads(&fixtures::psi1(), &fixtures::psi2(), &IsoOptions::deterministic()).unwrap();
//! assert!(res.is_isomorphic());
//! ```

pub mod classify;
pub mod counts;
pub mod design;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod format;
pub mod gf2;
pub mod iso;
pub mod signature;

pub use design::{Design, Flat, Spread, Star};
pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Point};
pub use signature::{Signature, SignatureMode};
