use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::literal;
use super::{Rational, Ring, Scalar};
use crate::error::{Error, Result};

/// `re + im*i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(re.into(), im.into())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::fmt_components(f, &[&self.re, &self.im])
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re + &rhs.re, self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re - &rhs.re, self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        let (p, pd) = Rational::over_common_denominator(&[&self.re, &self.im]);
        let (q, qd) = Rational::over_common_denominator(&[&rhs.re, &rhs.im]);
        let den = pd * qd;
        let re = &p[0] * &q[0] - &p[1] * &q[1];
        let im = &p[0] * &q[1] + &p[1] * &q[0];
        GaussianRational::new(Rational::from_big(re, den.clone()), Rational::from_big(im, den))
    }
}

macro_rules! owned_rhs {
    ($tr:ident, $method:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

owned_rhs!(Add, add);
owned_rhs!(Sub, sub);
owned_rhs!(Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Scalar for GaussianRational {
    const RING: Ring = Ring::Gauss;

    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::from_ints(1, 0)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    fn inverse(&self) -> Result<Self> {
        let inv_norm = self.norm().recip().ok_or(Error::ZeroInverse)?;
        Ok(Self::new(&self.re * &inv_norm, -(&self.im * &inv_norm)))
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    fn coords(&self) -> Vec<Rational> {
        vec![self.re.clone(), self.im.clone()]
    }

    fn from_coords(c: &[Rational]) -> Self {
        Self::new(c[0].clone(), c[1].clone())
    }

    fn parse_literal(s: &str) -> std::result::Result<Self, String> {
        let [re, im, ..] = literal::parse_components(s, 2)?;
        Ok(Self::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * &i, GaussianRational::from_ints(-1, 0));
        assert_eq!(
            GaussianRational::from_ints(1, 1) * GaussianRational::from_ints(1, -1),
            GaussianRational::from_ints(2, 0)
        );
    }

    #[test]
    fn inverse_and_conj() {
        assert_eq!(GaussianRational::i().inverse().unwrap(), GaussianRational::from_ints(0, -1));
        assert_eq!(GaussianRational::from_ints(2, 3).conj(), GaussianRational::from_ints(2, -3));
        assert_eq!(GaussianRational::zero().inverse(), Err(Error::ZeroInverse));
    }

    #[test]
    fn realification_of_i_is_rotation() {
        let m = GaussianRational::i().left_mul_matrix();
        let expected = [[0, -1], [1, 0]];
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(m[(r, c)], Rational::from_integer(expected[r][c]));
            }
        }
        assert_eq!(m, GaussianRational::i().right_mul_matrix());
    }

    #[test]
    fn display_roundtrip() {
        for (src, shown) in [("2+3i", "2+3i"), ("-i", "-i"), ("0", "0"), ("1/2 - 1/3 i", "1/2-1/3i")] {
            let g = GaussianRational::parse_literal(src).unwrap();
            assert_eq!(g.to_string(), shown);
            assert_eq!(GaussianRational::parse_literal(&g.to_string()).unwrap(), g);
        }
    }
}
