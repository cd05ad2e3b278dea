//! Exact scalars: rationals, Gaussian rationals and rational quaternions.
//!
//! All three are division rings. Matrices act on column vectors from the
//! left and scalars act on vectors from the right, so two-sided equations
//! are linearized through [`Scalar::left_mul_matrix`] and
//! [`Scalar::right_mul_matrix`], which express `x -> q*x` and `x -> x*q` as
//! rational matrices on the coordinate vector of `x`.

mod gaussian;
mod literal;
mod quaternion;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use gaussian::GaussianRational;
pub use quaternion::RationalQuaternion;
pub use rational::Rational;

use crate::error::{Error, Result};
use crate::nilmat::Matrix;

/// Square matrix over the rationals, used for realified maps.
pub type RationalMatrix = Matrix<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Rat,
    Gauss,
    Quat,
}

impl Ring {
    pub const ALL: [Ring; 3] = [Ring::Rat, Ring::Gauss, Ring::Quat];

    /// Dimension over the rationals.
    pub fn dim(self) -> usize {
        match self {
            Ring::Rat => 1,
            Ring::Gauss => 2,
            Ring::Quat => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Ring::Rat => "rat",
            Ring::Gauss => "gauss",
            Ring::Quat => "quat",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Ring {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "rat" => Ok(Ring::Rat),
            "gauss" => Ok(Ring::Gauss),
            "quat" => Ok(Ring::Quat),
            other => Err(format!("unknown ring `{other}` (expected rat, gauss or quat)")),
        }
    }
}

/// An element of one of the exact division rings.
///
/// Arithmetic is exact and results are in canonical form, so `==` is
/// mathematical equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    const RING: Ring;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_rational(r: Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v))
    }

    /// Two-sided inverse.
    fn inverse(&self) -> Result<Self>;

    fn conj(&self) -> Self;

    /// Rational coordinates: `(a)`, `(re, im)` or `(a, b, c, d)`.
    fn coords(&self) -> Vec<Rational>;

    /// Inverse of [`Scalar::coords`]; `c` must have length `RING.dim()`.
    fn from_coords(c: &[Rational]) -> Self;

    /// Parse a literal in this ring's grammar.
    fn parse_literal(s: &str) -> std::result::Result<Self, String>;

    /// The rational basis `1, i, j, k` truncated to this ring's dimension.
    fn units() -> Vec<Self> {
        let dim = Self::RING.dim();
        (0..dim)
            .map(|m| {
                let c: Vec<Rational> =
                    (0..dim).map(|t| if t == m { Rational::one() } else { Rational::zero() }).collect();
                Self::from_coords(&c)
            })
            .collect()
    }

    /// Matrix `L` with `coords(self * x) = L * coords(x)`.
    fn left_mul_matrix(&self) -> RationalMatrix {
        realify_with(|u: &Self| self.clone() * u)
    }

    /// Matrix `R` with `coords(x * self) = R * coords(x)`.
    fn right_mul_matrix(&self) -> RationalMatrix {
        realify_with(|u: &Self| u.clone() * self)
    }

    /// `self * r` for a rational `r` (rationals are central).
    fn scale(&self, r: &Rational) -> Self {
        self.clone() * Self::from_rational(r.clone())
    }
}

/// Column `m` of the result holds `coords(f(unit_m))`.
fn realify_with<S: Scalar>(f: impl Fn(&S) -> S) -> RationalMatrix {
    let dim = S::RING.dim();
    let cols: Vec<Vec<Rational>> = S::units().iter().map(|u| f(u).coords()).collect();
    Matrix::from_fn(dim, |r, c| cols[c][r].clone())
}

impl Scalar for Rational {
    const RING: Ring = Ring::Rat;

    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn inverse(&self) -> Result<Self> {
        self.recip().ok_or(Error::ZeroInverse)
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn coords(&self) -> Vec<Rational> {
        vec![self.clone()]
    }

    fn from_coords(c: &[Rational]) -> Self {
        c[0].clone()
    }

    fn parse_literal(s: &str) -> std::result::Result<Self, String> {
        let [a, ..] = literal::parse_components(s, 1)?;
        Ok(a)
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse_and_conj() {
        assert_eq!(Rational::new(3, 4).inverse().unwrap(), Rational::new(4, 3));
        assert_eq!(Rational::zero().inverse(), Err(Error::ZeroInverse));
        assert_eq!(Rational::new(5, 2).conj(), Rational::new(5, 2));
    }

    #[test]
    fn rational_realification_is_scalar() {
        let m = Rational::from_integer(3).left_mul_matrix();
        assert_eq!(m.n(), 1);
        assert_eq!(m[(0, 0)], Rational::from_integer(3));
        assert_eq!(m, Rational::from_integer(3).right_mul_matrix());
    }

    #[test]
    fn ring_names_roundtrip() {
        for ring in Ring::ALL {
            assert_eq!(ring.as_str().parse::<Ring>().unwrap(), ring);
        }
        assert!("real".parse::<Ring>().is_err());
    }
}
