//! Schur rings over cyclic groups.
//!
//! The crate decides separability of S-rings over `Z_n` through outer
//! multipliers: an S-ring is first extended at its singular classes until
//! it is quasidense, and then it is separable exactly when every outer
//! multiplier is the coset image of an ordinary multiplier. A brute-force
//! isomorphism oracle, exact character-sum duality and an S-ring enumerator
//! back the verification suites in [`verify`].

pub mod bitset;
pub mod duality;
pub mod error;
pub mod modarith;
pub mod multiplier;
pub mod oracle;
pub mod report;
pub mod section;
pub mod similarity;
pub mod sring;
pub mod verify;

pub use bitset::ResidueSet;
pub use error::{Error, Result};
pub use section::Section;
pub use sring::SRing;
