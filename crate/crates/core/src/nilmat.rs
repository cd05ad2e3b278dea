//! Square matrices over a [`Scalar`] ring and the typed subsets used
//! throughout the crate: strictly upper-triangular (nilpotent) matrices and
//! upper-triangular matrices with `+1`/`-1` on the diagonal.
//!
//! Indices are 0-based in code. Documentation and text output follow the
//! usual 1-based `(i, j)` convention.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Elementary matrix with a single 1 at 0-based `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = S::one();
        m
    }

    pub fn diagonal(diag: &[S]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i].clone() } else { S::zero() })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.n, right: other.n })
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b;
                    let slot = &mut out.entries[i * n + j];
                    *slot = std::mem::replace(slot, S::zero()) + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Self { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    /// Multiplies every entry by the (central) rational `r`.
    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|x| x.scale(r))
    }

    pub fn power(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.n, "vector length does not match matrix dimension");
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(S::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_upper(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self[(i, j)].is_zero()))
    }

    /// First 0-based `(i, i + 1)` whose entry is zero.
    pub fn first_zero_superdiagonal(&self) -> Option<(usize, usize)> {
        (0..self.n.saturating_sub(1)).find(|&i| self[(i, i + 1)].is_zero()).map(|i| (i, i + 1))
    }

    /// All entries `(i, i + 1)` are nonzero.
    pub fn is_star(&self) -> bool {
        self.first_zero_superdiagonal().is_none()
    }

    /// `(self - Id)` is nilpotent.
    pub fn is_unipotent(&self) -> bool {
        let shifted = self - &Self::identity(self.n);
        shifted.power(self.n as u32).is_zero()
    }

    /// Gauss-Jordan inverse using left row operations only, which is valid
    /// over noncommutative division rings.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p_inv = a[(col, col)].inverse()?;
            a.left_scale_row(col, &p_inv);
            inv.left_scale_row(col, &p_inv);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                a.sub_left_multiple(r, col, &factor);
                inv.sub_left_multiple(r, col, &factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 != r2 {
            for j in 0..self.n {
                self.entries.swap(r1 * self.n + j, r2 * self.n + j);
            }
        }
    }

    fn left_scale_row(&mut self, r: usize, c: &S) {
        for j in 0..self.n {
            let e = &mut self.entries[r * self.n + j];
            *e = c.clone() * &*e;
        }
    }

    /// `row[target] -= c * row[source]`.
    fn sub_left_multiple(&mut self, target: usize, source: usize, c: &S) {
        for j in 0..self.n {
            let s = &self.entries[source * self.n + j];
            if s.is_zero() {
                continue;
            }
            let delta = c.clone() * s;
            let e = &mut self.entries[target * self.n + j];
            *e = std::mem::replace(e, S::zero()) - delta;
        }
    }

    /// Rational matrix of `v -> self * v` on the `n * dim` coordinates of a
    /// column vector.
    pub fn realify(&self) -> Matrix<Rational> {
        let dim = S::RING.dim();
        let blocks: Vec<Matrix<Rational>> = self.entries.iter().map(|x| x.left_mul_matrix()).collect();
        Matrix::from_fn(self.n * dim, |r, c| blocks[(r / dim) * self.n + c / dim][(r % dim, c % dim)].clone())
    }

    /// Text form `a,b;c,d` (rows separated by `;`).
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range for n = {}", self.n);
        &self.entries[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range for n = {}", self.n);
        &mut self.entries[i * self.n + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(if k % self.n == 0 { ";" } else { "," })?;
            }
            write!(f, "{e:?}")?;
        }
        f.write_str("]")
    }
}

impl<S: fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(if k % self.n == 0 { ";" } else { "," })?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

// Operator forms panic on dimension mismatch; use the `try_` methods when
// dimensions are not known to agree.
impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(|x| -x.clone())
    }
}

/// A diagonal entry of a signed unipotent matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of<S: Scalar>(x: &S) -> Option<Sign> {
        if x.is_one() {
            Some(Sign::Plus)
        } else if (-x.clone()).is_one() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn to_scalar<S: Scalar>(self) -> S {
        match self {
            Sign::Plus => S::one(),
            Sign::Minus => -S::one(),
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Which group a reverser must come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupTag {
    /// `U_n(K)`: diagonal all `+1`.
    Unipotent,
    /// `U_n^{+-1}(K)`: diagonal entries `+1` or `-1`.
    SignedUnipotent,
}

impl GroupTag {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupTag::Unipotent => "unipotent",
            GroupTag::SignedUnipotent => "signed_unipotent",
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether a reversal acts on the Lie algebra (`gXg^-1 = -X`) or on the
/// group (`gug^-1 = u^-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Algebra,
    Group,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Algebra => "algebra",
            Level::Group => "group",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Element of the Lie algebra `u_n(K)`: strictly upper triangular.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NilpotentUpper<S>(Matrix<S>);

impl<S: Scalar> NilpotentUpper<S> {
    pub fn new(m: Matrix<S>) -> Result<Self> {
        if m.is_strictly_upper() {
            Ok(Self(m))
        } else {
            Err(Error::NotStrictlyUpper)
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self(Matrix::zeros(n))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn as_matrix(&self) -> &Matrix<S> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_star(&self) -> bool {
        self.0.is_star()
    }

    pub fn negated(&self) -> Self {
        Self(-&self.0)
    }
}

impl<S: fmt::Debug> fmt::Debug for NilpotentUpper<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

/// Element of `U_n^{+-1}(K)`: upper triangular with every diagonal entry
/// equal to `+1` or `-1`. With an all-plus diagonal it lies in `U_n(K)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedUnipotent<S>(Matrix<S>);

impl<S: Scalar> SignedUnipotent<S> {
    pub fn new(m: Matrix<S>) -> Result<Self> {
        let diag_ok = (0..m.n()).all(|i| Sign::of(&m[(i, i)]).is_some());
        if m.is_upper() && diag_ok {
            Ok(Self(m))
        } else {
            Err(Error::NotSignedUnipotent)
        }
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let diag: Vec<S> = signs.iter().map(|s| s.to_scalar()).collect();
        Self(Matrix::diagonal(&diag))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn as_matrix(&self) -> &Matrix<S> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.0
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.n()).map(|i| Sign::of(&self.0[(i, i)]).expect("diagonal entries are +-1")).collect()
    }

    /// All diagonal entries are `+1`, i.e. the element lies in `U_n(K)`.
    pub fn is_unipotent(&self) -> bool {
        self.signs().iter().all(|&s| s == Sign::Plus)
    }

    /// Inverse by back-substitution on `g * h = Id`, column by column.
    pub fn inverse(&self) -> Self {
        let n = self.n();
        let signs = self.signs();
        let g = &self.0;
        let mut h = Matrix::<S>::zeros(n);
        for j in 0..n {
            h[(j, j)] = signs[j].to_scalar();
            for i in (0..j).rev() {
                let mut acc = S::zero();
                for k in i + 1..=j {
                    if !g[(i, k)].is_zero() && !h[(k, j)].is_zero() {
                        acc = acc + g[(i, k)].clone() * &h[(k, j)];
                    }
                }
                // g_ii * h_ij = -acc and g_ii = g_ii^{-1} = +-1
                h[(i, j)] = match signs[i] {
                    Sign::Plus => -acc,
                    Sign::Minus => acc,
                };
            }
        }
        Self(h)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.try_mul(&other.0)?))
    }

    /// `Ad(g) X = g X g^{-1}`.
    pub fn conjugate(&self, x: &Matrix<S>) -> Result<Matrix<S>> {
        let gx = self.0.try_mul(x)?;
        gx.try_mul(&self.inverse().0)
    }

    pub fn is_involution(&self) -> bool {
        (&self.0 * &self.0).is_identity()
    }
}

impl<S: Scalar> TryFrom<Matrix<S>> for SignedUnipotent<S> {
    type Error = Error;
    fn try_from(m: Matrix<S>) -> Result<Self> {
        Self::new(m)
    }
}

impl<S: Scalar> TryFrom<Matrix<S>> for NilpotentUpper<S> {
    type Error = Error;
    fn try_from(m: Matrix<S>) -> Result<Self> {
        Self::new(m)
    }
}

impl<S: fmt::Debug> fmt::Debug for SignedUnipotent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{RationalQuaternion as Q, Scalar};

    type R = Rational;

    fn r(v: i64) -> R {
        R::from_integer(v)
    }

    #[test]
    fn elementary_product() {
        let e12 = Matrix::<R>::unit(3, 0, 1);
        let e23 = Matrix::<R>::unit(3, 1, 2);
        assert_eq!(&e12 * &e23, Matrix::unit(3, 0, 2));
        assert!((&e23 * &e12).is_zero());
    }

    #[test]
    fn nilpotency_from_shape() {
        let x =
            Matrix::from_rows(vec![vec![r(0), r(2), r(-3)], vec![r(0), r(0), r(5)], vec![r(0), r(0), r(0)]]).unwrap();
        assert!(!x.power(2).is_zero());
        assert!(x.power(3).is_zero());
    }

    #[test]
    fn quaternion_products_depend_on_order() {
        let di = Matrix::diagonal(&[Q::i(), Q::i()]);
        let dj = Matrix::diagonal(&[Q::j(), Q::j()]);
        assert_eq!(&di * &dj, Matrix::diagonal(&[Q::k(), Q::k()]));
        assert_eq!(&dj * &di, Matrix::diagonal(&[-Q::k(), -Q::k()]));
    }

    #[test]
    fn mismatched_dimensions() {
        let a = Matrix::<R>::identity(2);
        let b = Matrix::<R>::identity(3);
        assert_eq!(a.try_mul(&b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(Matrix::from_rows(vec![vec![r(0), r(1)], vec![r(0)]]).is_err());
    }

    #[test]
    fn signed_unipotent_inverse() {
        assert_eq!(SignedUnipotent::<R>::identity(3).inverse(), SignedUnipotent::identity(3));
        let g = SignedUnipotent::new(Matrix::from_rows(vec![vec![r(1), r(7)], vec![r(0), r(1)]]).unwrap()).unwrap();
        assert_eq!(g.inverse().as_matrix()[(0, 1)], r(-7));

        // diag(1, -1) with a quaternion corner is its own inverse
        let q = Q::from_ints(1, 2, -1, 3);
        let g = SignedUnipotent::new(
            Matrix::from_rows(vec![vec![Q::one(), q.clone()], vec![Q::zero(), -Q::one()]]).unwrap(),
        )
        .unwrap();
        let inv = g.inverse();
        assert_eq!(inv.as_matrix()[(0, 1)], q);
        assert!((g.as_matrix() * inv.as_matrix()).is_identity());
        assert!((inv.as_matrix() * g.as_matrix()).is_identity());
    }

    #[test]
    fn rejects_bad_shapes() {
        let lower = Matrix::from_rows(vec![vec![r(1), r(0)], vec![r(1), r(1)]]).unwrap();
        assert_eq!(SignedUnipotent::new(lower), Err(Error::NotSignedUnipotent));
        let two = Matrix::diagonal(&[r(1), r(2)]);
        assert_eq!(SignedUnipotent::new(two), Err(Error::NotSignedUnipotent));
        assert_eq!(NilpotentUpper::new(Matrix::<R>::identity(2)), Err(Error::NotStrictlyUpper));
    }

    #[test]
    fn conjugation_by_diag_negates_corner() {
        let g = SignedUnipotent::<R>::from_signs(&[Sign::Plus, Sign::Minus]);
        let x = Matrix::unit(2, 0, 1).scale(&R::new(5, 3));
        assert_eq!(g.conjugate(&x).unwrap(), -&x);
        assert!(g.is_involution());
        assert_eq!(g.conjugate(&x).unwrap(), -&x);
        assert_eq!(SignedUnipotent::<R>::identity(2).conjugate(&x).unwrap(), x);
    }

    #[test]
    fn involution_checks() {
        assert!(SignedUnipotent::<R>::from_signs(&[Sign::Plus, Sign::Minus, Sign::Plus]).is_involution());
        let shear = SignedUnipotent::new(Matrix::from_rows(vec![vec![r(1), r(1)], vec![r(0), r(1)]]).unwrap()).unwrap();
        assert!(!shear.is_involution());
        // closed form with p = 1, r = -1, corner -pr/2 = 1/2
        let g = SignedUnipotent::new(
            Matrix::from_rows(vec![vec![r(1), r(1), R::new(1, 2)], vec![r(0), r(-1), r(-1)], vec![r(0), r(0), r(1)]])
                .unwrap(),
        )
        .unwrap();
        assert!(g.is_involution());
    }

    #[test]
    fn general_inverse_over_quaternions() {
        let m =
            Matrix::from_rows(vec![vec![Q::i(), Q::from_ints(1, 1, 0, 0)], vec![Q::j(), Q::from_ints(2, 0, 0, -1)]])
                .unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
        assert_eq!(Matrix::<R>::unit(2, 0, 1).inverse(), Err(Error::Singular));
    }
}
