//! Finite-field codes and the planted/null hypothesis-testing machinery built on them.
//!
//! The crate is `no_std` (with `alloc`): everything here is pure computation over
//! explicit RNG streams. File formats, the command line and parallel trial
//! runners live in the `planted-harness` crate.
//!
//! Layout:
//!
//! * [`field`]: GF(p^m) arithmetic with log/antilog tables.
//! * [`poly`] and [`matrix`]: polynomials and dense matrices over a [`Field`].
//! * [`linear_code`]: generator/parity-check pairs, duals, brute-force distances and
//!   the rank criterion for marginal uniformity.
//! * [`reed_solomon`]: RS codes with an errors-and-erasures decoder.
//! * [`bch`]: narrow-sense binary BCH codes behind the [`BinaryCode`] interface.
//! * [`planted`]: the null and planted distributions, including the tuple-in-a-real
//!   encoding.
//! * [`noise`]: resampling noise, adversarial corruption and wraparound noise.
//! * [`distinguish`]: the decoding-based tests and their feasibility checks.
//! * [`audit`]: quantitative checks of the supporting bounds.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod audit;
pub mod bch;
pub mod distinguish;
mod error;
pub mod field;
pub mod linear_code;
pub mod matrix;
pub mod noise;
pub mod planted;
pub mod poly;
pub mod reed_solomon;
pub mod stats;
pub mod stream;

pub use bch::{BchCode, BinaryCode, DualBound, DualBoundKind};
pub use error::{CodeError, FieldError, NoiseError, PlantedError};
pub use field::{Field, FieldElement};
pub use linear_code::LinearCode;
pub use reed_solomon::{ReceivedWord, ReedSolomon, RsParams};
