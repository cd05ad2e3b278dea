use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::literal;
use super::{Rational, Ring, Scalar};
use crate::error::{Error, Result};

/// `a + b*i + c*j + d*k` with rational components, where
/// `i^2 = j^2 = k^2 = ijk = -1`. Multiplication does not commute.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalQuaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl RationalQuaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    /// `a^2 + b^2 + c^2 + d^2`; zero only for the zero quaternion.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }
}

impl fmt::Display for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::fmt_components(f, &[&self.a, &self.b, &self.c, &self.d])
    }
}

impl fmt::Debug for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a RationalQuaternion> for RationalQuaternion {
    type Output = RationalQuaternion;
    fn add(self, rhs: &'a RationalQuaternion) -> RationalQuaternion {
        RationalQuaternion::new(self.a + &rhs.a, self.b + &rhs.b, self.c + &rhs.c, self.d + &rhs.d)
    }
}

impl<'a> Sub<&'a RationalQuaternion> for RationalQuaternion {
    type Output = RationalQuaternion;
    fn sub(self, rhs: &'a RationalQuaternion) -> RationalQuaternion {
        RationalQuaternion::new(self.a - &rhs.a, self.b - &rhs.b, self.c - &rhs.c, self.d - &rhs.d)
    }
}

impl<'a> Mul<&'a RationalQuaternion> for RationalQuaternion {
    type Output = RationalQuaternion;
    fn mul(self, q: &'a RationalQuaternion) -> RationalQuaternion {
        // Integer Hamilton product over common denominators: one reduction
        // per component instead of one per partial product.
        let (p, pd) = Rational::over_common_denominator(&[&self.a, &self.b, &self.c, &self.d]);
        let (q, qd) = Rational::over_common_denominator(&[&q.a, &q.b, &q.c, &q.d]);
        let den = pd * qd;
        let a = &p[0] * &q[0] - &p[1] * &q[1] - &p[2] * &q[2] - &p[3] * &q[3];
        let b = &p[0] * &q[1] + &p[1] * &q[0] + &p[2] * &q[3] - &p[3] * &q[2];
        let c = &p[0] * &q[2] - &p[1] * &q[3] + &p[2] * &q[0] + &p[3] * &q[1];
        let d = &p[0] * &q[3] + &p[1] * &q[2] - &p[2] * &q[1] + &p[3] * &q[0];
        RationalQuaternion::new(
            Rational::from_big(a, den.clone()),
            Rational::from_big(b, den.clone()),
            Rational::from_big(c, den.clone()),
            Rational::from_big(d, den),
        )
    }
}

macro_rules! owned_rhs {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalQuaternion {
            type Output = RationalQuaternion;
            fn $method(self, rhs: RationalQuaternion) -> RationalQuaternion {
                self.$method(&rhs)
            }
        }
    };
}

owned_rhs!(Add, add);
owned_rhs!(Sub, sub);
owned_rhs!(Mul, mul);

impl Neg for RationalQuaternion {
    type Output = RationalQuaternion;
    fn neg(self) -> RationalQuaternion {
        RationalQuaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Scalar for RationalQuaternion {
    const RING: Ring = Ring::Quat;

    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// `conj(q) / norm(q)`.
    fn inverse(&self) -> Result<Self> {
        let inv_norm = self.norm().recip().ok_or(Error::ZeroInverse)?;
        Ok(self.conj().scale(&inv_norm))
    }

    fn conj(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    fn coords(&self) -> Vec<Rational> {
        vec![self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    fn from_coords(c: &[Rational]) -> Self {
        Self::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }

    fn parse_literal(s: &str) -> std::result::Result<Self, String> {
        let [a, b, c, d] = literal::parse_components(s, 4)?;
        Ok(Self::new(a, b, c, d))
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = RationalQuaternion;

    #[test]
    fn unit_relations() {
        let (i, j, k) = (Q::i(), Q::j(), Q::k());
        let minus_one = -Q::one();
        assert_eq!(i.clone() * &j, k);
        assert_eq!(j.clone() * &i, -k.clone());
        assert_eq!(j.clone() * &k, i);
        assert_eq!(k.clone() * &i, j);
        for u in [&i, &j, &k] {
            assert_eq!(u.clone() * u, minus_one);
        }
        assert_eq!(i * &j * &k, minus_one);
    }

    #[test]
    fn inverse_of_one_plus_ijk() {
        let q = Q::from_ints(1, 1, 1, 1);
        let inv = q.inverse().unwrap();
        let quarter = Rational::new(1, 4);
        assert_eq!(inv, Q::new(quarter.clone(), -quarter.clone(), -quarter.clone(), -quarter));
        assert_eq!(inv.clone() * &q, Q::one());
        assert_eq!(q * &inv, Q::one());
        assert_eq!(Q::zero().inverse(), Err(Error::ZeroInverse));
    }

    #[test]
    fn conj_reverses_products() {
        let x = Q::from_ints(1, 2, 3, 4);
        assert_eq!(x.conj(), Q::from_ints(1, -2, -3, -4));
        let y = Q::from_ints(-2, 0, 5, 1);
        assert_eq!((x.clone() * &y).conj(), y.conj() * &x.conj());
    }

    #[test]
    fn realification_sides() {
        let coords_j = Q::j().coords();
        let apply = |m: &crate::scalar::RationalMatrix| -> Vec<Rational> {
            (0..4).map(|r| (0..4).fold(Rational::zero(), |acc, c| acc + &(&m[(r, c)] * &coords_j[c]))).collect()
        };
        // i*j = k and j*i = -k by direct multiplication
        assert_eq!(apply(&Q::i().left_mul_matrix()), (Q::i() * Q::j()).coords());
        assert_eq!(apply(&Q::i().left_mul_matrix()), Q::k().coords());
        assert_eq!(apply(&Q::i().right_mul_matrix()), (-Q::k()).coords());
    }

    #[test]
    fn display_roundtrip() {
        let q = Q::parse_literal("1/2-3i+k").unwrap();
        assert_eq!(q.to_string(), "1/2-3i+k");
        assert_eq!(Q::parse_literal(&q.to_string()).unwrap(), q);
        assert_eq!(Q::parse_literal("-j").unwrap().to_string(), "-j");
    }
}
