//! Exact linear algebra over the rationals.
//!
//! Systems are cleared to integer rows and reduced to echelon form by
//! fraction-free (Bareiss) elimination, so every intermediate division is
//! exact. Rationals only reappear during back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Integer echelon form of a rational matrix, optionally augmented with a
/// right-hand side column.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<usize>,
    ncols: usize,
}

fn to_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| if x.is_zero() { BigInt::zero() } else { x.numer() * (&lcm / x.denom()) }).collect()
}

impl Echelon {
    /// Eliminates in columns `0..pivot_cols`; any further columns (an
    /// augmented right-hand side) are carried along.
    fn new(rows: &[Vec<Rational>], pivot_cols: usize) -> Self {
        let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| to_integer_row(r)).collect();
        let width = m.first().map_or(pivot_cols, Vec::len);
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == m.len() {
                break;
            }
            // smallest nonzero entry keeps intermediate growth down
            let Some(p) = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].bits()) else {
                continue;
            };
            m.swap(r, p);
            let (upper, lower) = m.split_at_mut(r + 1);
            let pivot_row = &upper[r];
            let pivot = &pivot_row[c];
            for row in lower.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..width {
                    let mut v = pivot * &row[j];
                    if !factor.is_zero() && !pivot_row[j].is_zero() {
                        v -= &factor * &pivot_row[j];
                    }
                    if !prev.is_one() && !v.is_zero() {
                        let (q, rem) = v.div_rem(&prev);
                        debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                        v = q;
                    }
                    row[j] = v;
                }
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        Echelon { rows: m, pivots, ncols: pivot_cols }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Back-substitutes with the given values for the free columns and a
    /// per-row constant (the augmented entry, or zero).
    fn back_substitute(&self, mut x: Vec<Rational>, constant: impl Fn(usize) -> Rational) -> Vec<Rational> {
        for (r, &pc) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[r];
            let mut acc = constant(r);
            for j in pc + 1..self.ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc = acc - Rational::from_big(row[j].clone(), BigInt::one()) * &x[j];
                }
            }
            x[pc] = acc * Rational::from_big(BigInt::one(), row[pc].clone());
        }
        x
    }
}

/// Rank of a rational matrix with `ncols` columns.
pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    Echelon::new(rows, ncols).rank()
}

/// Basis of `{x : A x = 0}`, one vector per free column in increasing
/// column order, with that free variable set to 1 and the others to 0.
pub fn kernel_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = Echelon::new(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            ech.back_substitute(x, |_| Rational::zero())
        })
        .collect()
}

/// A solution of `A x = b` with all free variables zero, or `None` if the
/// system is inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side entry per equation");
    // an equation with no unknowns and a nonzero constant needs no elimination
    if rows.iter().zip(rhs).any(|(row, b)| !b.is_zero() && row.iter().all(Rational::is_zero)) {
        return None;
    }
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            debug_assert_eq!(row.len(), ncols);
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let ech = Echelon::new(&augmented, ncols);
    if ech.rows[ech.rank()..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let x = vec![Rational::zero(); ncols];
    Some(ech.back_substitute(x, |r| Rational::from_big(ech.rows[r][ncols].clone(), BigInt::one())))
}

/// Incrementally built row-echelon basis of a rational subspace, for
/// membership tests.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = std::mem::take(x) - &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// Adds `v`; returns `false` (and leaves the basis unchanged) if it was
    /// already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    fn apply(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
        a.iter().map(|r| r.iter().zip(x).fold(Rational::zero(), |acc, (p, q)| acc + &(p * q))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        assert_eq!(rank(&a, 3), 2);
        let k = kernel_basis(&a, 3);
        assert_eq!(k.len(), 1);
        assert!(apply(&a, &k[0]).iter().all(Rational::is_zero));
        assert_eq!(k[0], row(&[-1, -1, 1]));
    }

    #[test]
    fn solve_with_fractions() {
        let a =
            vec![vec![Rational::new(1, 2), Rational::new(1, 3)], vec![Rational::new(2, 5), Rational::from_integer(-1)]];
        let b = vec![Rational::one(), Rational::new(3, 7)];
        let x = solve(&a, &b, 2).unwrap();
        assert_eq!(apply(&a, &x), b);
    }

    #[test]
    fn inconsistent_systems() {
        let a = vec![row(&[1, 1]), row(&[2, 2])];
        assert!(solve(&a, &row(&[1, 3]), 2).is_none());
        assert!(solve(&[row(&[0, 0])], &row(&[5]), 2).is_none());
        assert!(solve(&a, &row(&[1, 2]), 2).is_some());
    }

    #[test]
    fn underdetermined_sets_free_to_zero() {
        let a = vec![row(&[0, 1, 1, 0])];
        let x = solve(&a, &row(&[4]), 4).unwrap();
        assert_eq!(x, row(&[0, 4, 0, 0]));
    }

    #[test]
    fn echelon_membership() {
        let mut span = EchelonBasis::new(3);
        assert!(span.insert(&row(&[1, 1, 0])));
        assert!(span.insert(&row(&[0, 1, 1])));
        assert!(!span.insert(&row(&[1, 2, 1])));
        assert!(span.contains(&row(&[2, 0, -2])));
        assert!(!span.contains(&row(&[0, 0, 1])));
        assert_eq!(span.dim(), 2);
    }
}
