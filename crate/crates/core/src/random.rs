//! Seeded random generation of scalars and matrices for campaigns and
//! property tests. Rationals have numerator in `[-9, 9]` and denominator in
//! `[1, 9]`; every quaternion or Gaussian component is drawn the same way.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::jordan::Partition;
use crate::nilmat::{Matrix, NilpotentUpper, SignedUnipotent};
use crate::scalar::{Rational, Scalar};

/// Independent deterministic stream number `stream` under `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.random_range(-9..=9), rng.random_range(1..=9))
}

pub fn scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    let coords: Vec<Rational> = (0..S::RING.dim()).map(|_| rational(rng)).collect();
    S::from_coords(&coords)
}

pub fn nonzero_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    loop {
        let x = scalar::<S, R>(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Strictly upper triangular with a random density per matrix, so samples
/// mix sparse, dense, star and non-star shapes. May be zero.
pub fn nilpotent<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> NilpotentUpper<S> {
    let density = [0.2, 0.5, 0.8, 1.0][rng.random_range(0..4)];
    let m = Matrix::from_fn(n, |i, j| if j > i && rng.random_bool(density) { nonzero_scalar(rng) } else { S::zero() });
    NilpotentUpper::new(m).expect("strictly upper by construction")
}

pub fn nonzero_nilpotent<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> NilpotentUpper<S> {
    assert!(n >= 2, "u_1 has no nonzero elements");
    loop {
        let x = nilpotent(n, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Strictly upper triangular with every `(i, i+1)` entry nonzero. Entries
/// above the superdiagonal are dense or sparse with equal probability.
pub fn star<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> NilpotentUpper<S> {
    let dense = rng.random_bool(0.5);
    let m = Matrix::from_fn(n, |i, j| {
        if j == i + 1 {
            nonzero_scalar(rng)
        } else if j > i + 1 && (dense || rng.random_bool(0.25)) {
            scalar(rng)
        } else {
            S::zero()
        }
    });
    NilpotentUpper::new(m).expect("strictly upper by construction")
}

/// Unipotent (all-plus diagonal) with nonzero superdiagonal.
pub fn unipotent_star<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> SignedUnipotent<S> {
    let x = star::<S, R>(n, rng);
    let m = &Matrix::identity(n) + x.as_matrix();
    SignedUnipotent::new(m).expect("unipotent by construction")
}

/// Random element of `U_n^{+-1}`: uniform diagonal signs, random upper part.
pub fn signed_unipotent<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> SignedUnipotent<S> {
    let m = Matrix::from_fn(n, |i, j| {
        if i == j {
            if rng.random_bool(0.5) {
                S::one()
            } else {
                -S::one()
            }
        } else if j > i {
            scalar(rng)
        } else {
            S::zero()
        }
    });
    SignedUnipotent::new(m).expect("signed unipotent by construction")
}

/// Random partition of some `n <= n_max` with at least `min_distinct`
/// distinct part sizes.
pub fn partition<R: Rng + ?Sized>(n_max: usize, min_distinct: usize, rng: &mut R) -> Partition {
    loop {
        let n = rng.random_range(1..=n_max);
        let mut left = n;
        let mut sizes = Vec::new();
        while left > 0 {
            let d = rng.random_range(1..=left);
            sizes.push(d);
            left -= d;
        }
        let p = Partition::from_sizes(&sizes);
        if p.distinct() >= min_distinct {
            return p;
        }
    }
}
