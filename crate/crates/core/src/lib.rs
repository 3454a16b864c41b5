//! Exact algorithms over effective Bézout rings: stable-element selection,
//! certified diagonal reduction, and unimodular row completion.

pub mod completion;
pub mod descriptor;
pub mod element;
pub mod error;
pub mod matred;
pub mod matrix;
pub mod registry;
pub mod ring;
pub mod rings;
pub mod stability;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use ring::{BezoutCertificate, Ring};
pub use rings::{DynElem, DynRing};

/// Arbitrary-precision integers.
pub type ZBig = rings::Integers<num_bigint::BigInt>;
/// Machine integers; arithmetic panics on overflow.
pub type Zi64 = rings::Integers<i64>;
