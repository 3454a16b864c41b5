//! Concrete rings.

mod dynamic;
mod gfpoly;
mod int_rat;
mod integers;
mod product;
mod series;
mod trivial_ext;
mod zmod;

pub use dynamic::{DynCarrier, DynElem, DynRing};
pub use gfpoly::{GfPoly, Poly};
pub use int_rat::{IntRat, IntRatExt};
pub use integers::{extended_gcd, IntScalar, Integers};
pub use product::Product;
pub use series::{SeriesElem, TruncatedSeries};
pub use trivial_ext::TrivialExt;
pub use zmod::Zmod;
