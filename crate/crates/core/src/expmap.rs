//! Exponential and logarithm between strictly upper-triangular and
//! unipotent upper-triangular matrices. Both series terminate after `n - 1`
//! terms because `X^n = 0`, so everything is exact.

use crate::error::{Error, Result};
use crate::nilmat::{Matrix, NilpotentUpper, SignedUnipotent};
use crate::scalar::{Rational, Scalar};

/// `sum_{k=0}^{n-1} X^k / k!`
pub fn exp<S: Scalar>(x: &NilpotentUpper<S>) -> SignedUnipotent<S> {
    let n = x.n();
    let x = x.as_matrix();
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    for k in 1..n {
        term = (&term * x).scale(&Rational::new(1, k as i64));
        sum = &sum + &term;
    }
    SignedUnipotent::new(sum).expect("exp of a strictly upper matrix is unipotent")
}

/// `sum_{k=1}^{n-1} (-1)^{k+1} (u - Id)^k / k`
pub fn log<S: Scalar>(u: &SignedUnipotent<S>) -> Result<NilpotentUpper<S>> {
    let n = u.n();
    if let Some(i) = (0..n).find(|&i| !u.as_matrix()[(i, i)].is_one()) {
        return Err(Error::NotUnipotent(i + 1));
    }
    let shifted = u.as_matrix() - &Matrix::identity(n);
    let mut power = Matrix::identity(n);
    let mut sum = Matrix::zeros(n);
    for k in 1..n {
        power = &power * &shifted;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        sum = &sum + &power.scale(&Rational::new(sign, k as i64));
    }
    NilpotentUpper::new(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilmat::Sign;
    use crate::scalar::RationalQuaternion as Q;

    type R = Rational;

    fn r(v: i64) -> R {
        R::from_integer(v)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert!(exp(&NilpotentUpper::<R>::zeros(4)).as_matrix().is_identity());
        assert!(log(&SignedUnipotent::<R>::identity(4)).unwrap().is_zero());
    }

    #[test]
    fn exp_of_full_block() {
        let x = NilpotentUpper::new(&Matrix::<R>::unit(3, 0, 1) + &Matrix::unit(3, 1, 2)).unwrap();
        let expected =
            Matrix::from_rows(vec![vec![r(1), r(1), R::new(1, 2)], vec![r(0), r(1), r(1)], vec![r(0), r(0), r(1)]])
                .unwrap();
        let u = exp(&x);
        assert_eq!(u.as_matrix(), &expected);
        assert_eq!(log(&u).unwrap(), x);
    }

    #[test]
    fn exp_respects_quaternion_order() {
        let mut m = Matrix::<Q>::zeros(3);
        m[(0, 1)] = Q::i();
        m[(1, 2)] = Q::j();
        let u = exp(&NilpotentUpper::new(m.clone()).unwrap());
        // (X^2)_{13} = i*j = k, halved
        assert_eq!(u.as_matrix()[(0, 2)], Q::k().scale(&R::new(1, 2)));
        assert_eq!(u.as_matrix()[(0, 2)], (&m * &m)[(0, 2)].scale(&R::new(1, 2)));
        assert_eq!(u.as_matrix()[(0, 1)], Q::i());
        assert_eq!(u.as_matrix()[(1, 2)], Q::j());
    }

    #[test]
    fn log_single_term() {
        let u = SignedUnipotent::new(Matrix::from_rows(vec![vec![r(1), r(1)], vec![r(0), r(1)]]).unwrap()).unwrap();
        assert_eq!(log(&u).unwrap().as_matrix(), &Matrix::unit(2, 0, 1));
    }

    #[test]
    fn log_rejects_signed_diagonal() {
        let g = SignedUnipotent::<R>::from_signs(&[Sign::Plus, Sign::Minus]);
        assert_eq!(log(&g), Err(Error::NotUnipotent(2)));
    }
}
