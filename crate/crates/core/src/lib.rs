//! Exact construction and certification of reversers for nilpotent and
//! unipotent upper-triangular matrices.
//!
//! A *reverser* of a strictly upper-triangular `X` is a `g` with
//! `g X g^{-1} = -X`; for a unipotent `u` it is an `h` with
//! `h u h^{-1} = u^{-1}`. Scalars range over `Q`, `Q(i)` and the rational
//! quaternions, and every claim is checked by exact equality.
//!
//! - [`reverser`] builds reversers inside the signed group `U_n^{+-1}`.
//! - [`jordan`] explains, via Jordan chains, why no unipotent reverser of a
//!   nonzero `X` exists.
//! - [`oracle`] decides reverser existence independently by exact linear
//!   feasibility.

pub mod campaign;
pub mod certificate;
pub mod error;
pub mod expmap;
pub mod jordan;
pub mod linsolve;
pub mod nilmat;
pub mod oracle;
pub mod random;
pub mod reverser;
pub mod scalar;
pub mod text;

pub use error::{Error, ParseError, Result};
pub use nilmat::{GroupTag, Level, Matrix, NilpotentUpper, Sign, SignedUnipotent};
pub use scalar::{GaussianRational, Rational, RationalQuaternion, Ring, Scalar};
