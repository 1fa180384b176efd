//! Exact arithmetic for pointed and unpointed rational functions on the
//! projective line, their Bézout forms, and naive homotopy classes.

pub mod bezout;
pub mod certify;
pub mod classify;
pub mod error;
pub mod factor;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod quadform;
pub mod ratmap;
pub mod resultant;
pub mod ring;
pub mod squares;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use field::{Fe, Field};
pub use matrix::Mat;
pub use poly::{Poly, TPoly};
pub use ring::Ring;
