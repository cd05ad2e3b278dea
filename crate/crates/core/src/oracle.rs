//! Brute-force decision of reverser existence by exact linear feasibility.
//!
//! Write `g = D + N` with `D` a fixed diagonal sign pattern and `N` strictly
//! upper triangular. For each admissible `D` the reversal identity is
//! linear in `N`:
//!
//! - algebra level: `gX + Xg = 0`,
//! - group level: `gu - u^{-1}g = 0`.
//!
//! Each unknown entry of `N` is split into its rational coordinates; a term
//! `N_ik * c` contributes `right_mul_matrix(c)` and a term `c * N_kj`
//! contributes `left_mul_matrix(c)`. The resulting rational system is
//! decided exactly. This module only depends on `nilmat`, `scalar` and the
//! linear solver, never on the constructive reverser code.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linsolve;
use crate::nilmat::{GroupTag, Level, Matrix, NilpotentUpper, Sign, SignedUnipotent};
use crate::random;
use crate::scalar::{Rational, Ring, Scalar};

pub const DEFAULT_DIM_LIMIT: usize = 8;
pub const DIM_LIMIT_ENV: &str = "NILREV_DIM_LIMIT";

/// Which diagonal sign patterns to try for `U_n^{+-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// First sign fixed to `+1` (`g` and `-g` conjugate identically).
    Normalized,
    /// All `2^n` patterns.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status<S> {
    Feasible(SignedUnipotent<S>),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityResult<S> {
    pub status: Status<S>,
    pub patterns_tried: usize,
    pub level: Level,
}

impl<S> FeasibilityResult<S> {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, Status::Feasible(_))
    }

    pub fn reverser(&self) -> Option<&SignedUnipotent<S>> {
        match &self.status {
            Status::Feasible(g) => Some(g),
            Status::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    dim_limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { dim_limit: DEFAULT_DIM_LIMIT }
    }
}

impl Oracle {
    pub fn new(dim_limit: usize) -> Self {
        Self { dim_limit }
    }

    /// Bound from `NILREV_DIM_LIMIT` if set, otherwise the default.
    pub fn from_env() -> std::result::Result<Self, String> {
        match std::env::var(DIM_LIMIT_ENV) {
            Ok(v) => v.trim().parse::<usize>().map(Self::new).map_err(|e| format!("{DIM_LIMIT_ENV}={v}: {e}")),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn dim_limit(&self) -> usize {
        self.dim_limit
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n > self.dim_limit {
            Err(Error::DimensionTooLarge { n, limit: self.dim_limit })
        } else {
            Ok(())
        }
    }

    /// Is there `g` in the tagged group with `g X g^{-1} = -X`?
    pub fn reverser_feasible<S: Scalar>(&self, x: &NilpotentUpper<S>, group: GroupTag) -> Result<FeasibilityResult<S>> {
        self.reverser_feasible_with(x, group, Enumeration::Normalized)
    }

    pub fn reverser_feasible_with<S: Scalar>(
        &self,
        x: &NilpotentUpper<S>,
        group: GroupTag,
        enumeration: Enumeration,
    ) -> Result<FeasibilityResult<S>> {
        self.check_dim(x.n())?;
        let xm = x.as_matrix();
        let target = -xm;
        self.search(
            x.n(),
            group,
            enumeration,
            Level::Algebra,
            |signs| algebra_system(xm, signs),
            |g| g.conjugate(xm).map(|c| c == target),
        )
    }

    /// Is there `g` in the tagged group with `g u g^{-1} = u^{-1}`?
    pub fn group_reverser_feasible<S: Scalar>(
        &self,
        u: &SignedUnipotent<S>,
        group: GroupTag,
    ) -> Result<FeasibilityResult<S>> {
        self.check_dim(u.n())?;
        let um = u.as_matrix();
        let inv = u.inverse();
        let inv_m = inv.as_matrix();
        self.search(
            u.n(),
            group,
            Enumeration::Normalized,
            Level::Group,
            |signs| group_system(um, inv_m, signs),
            |g| g.conjugate(um).map(|c| &c == inv_m),
        )
    }

    fn search<S: Scalar>(
        &self,
        n: usize,
        group: GroupTag,
        enumeration: Enumeration,
        level: Level,
        system: impl Fn(&[Sign]) -> LinearSystem,
        verify: impl Fn(&SignedUnipotent<S>) -> Result<bool>,
    ) -> Result<FeasibilityResult<S>> {
        let mut tried = 0;
        for signs in sign_patterns(n, group, enumeration) {
            tried += 1;
            let sys = system(&signs);
            if let Some(sol) = linsolve::solve(&sys.rows, &sys.rhs, sys.unknowns) {
                let g = assemble::<S>(n, &signs, &sol);
                if !verify(&g)? {
                    return Err(Error::Internal("oracle solution fails the reversal identity".into()));
                }
                return Ok(FeasibilityResult { status: Status::Feasible(g), patterns_tried: tried, level });
            }
        }
        Ok(FeasibilityResult { status: Status::Infeasible, patterns_tried: tried, level })
    }

    /// Samples elements of `U_n^{+-1}` and reports any that the oracle finds
    /// not to be real in `U_n^{+-1}`.
    pub fn nonreal_search<S: Scalar, R: Rng + ?Sized>(
        &self,
        n: usize,
        budget: usize,
        rng: &mut R,
    ) -> Result<SearchReport> {
        self.check_dim(n)?;
        let mut report = SearchReport { n, ring: S::RING, budget, feasible: 0, infeasible: 0, candidates: Vec::new() };
        for _ in 0..budget {
            let u = random::signed_unipotent::<S, R>(n, rng);
            if self.group_reverser_feasible(&u, GroupTag::SignedUnipotent)?.is_feasible() {
                report.feasible += 1;
            } else {
                report.infeasible += 1;
                report.candidates.push(u.as_matrix().to_text());
            }
        }
        Ok(report)
    }
}

/// Outcome of [`Oracle::nonreal_search`]. `candidates` holds every sampled
/// element for which no reverser exists, in matrix text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub ring: Ring,
    pub budget: usize,
    pub feasible: usize,
    pub infeasible: usize,
    pub candidates: Vec<String>,
}

/// Diagonal sign patterns in Gray-code order starting from all-plus.
pub fn sign_patterns(n: usize, group: GroupTag, enumeration: Enumeration) -> Vec<Vec<Sign>> {
    match group {
        GroupTag::Unipotent => vec![vec![Sign::Plus; n]],
        GroupTag::SignedUnipotent => {
            let (fixed, free) = match enumeration {
                Enumeration::Normalized => (n.min(1), n.saturating_sub(1)),
                Enumeration::Full => (0, n),
            };
            (0u64..1 << free)
                .map(|m| {
                    let gray = m ^ (m >> 1);
                    let mut signs = vec![Sign::Plus; fixed];
                    signs.extend((0..free).map(|b| if gray >> b & 1 == 1 { Sign::Minus } else { Sign::Plus }));
                    signs
                })
                .collect()
        }
    }
}

struct LinearSystem {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    unknowns: usize,
}

/// Unknown index of the strictly upper entry `(i, j)`.
fn unknown_index(n: usize) -> HashMap<(usize, usize), usize> {
    let mut idx = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let next = idx.len();
            idx.insert((i, j), next);
        }
    }
    idx
}

struct Builder {
    dim: usize,
    unknowns: HashMap<(usize, usize), usize>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl Builder {
    fn new<S: Scalar>(n: usize) -> Self {
        Self { dim: S::RING.dim(), unknowns: unknown_index(n), rows: Vec::new(), rhs: Vec::new() }
    }

    fn width(&self) -> usize {
        self.unknowns.len() * self.dim
    }

    /// Starts the `dim` equations of one scalar entry with the given
    /// constant moved to the right-hand side.
    fn begin_entry(&mut self, constant: &[Rational]) -> usize {
        let start = self.rows.len();
        for c in constant {
            self.rows.push(vec![Rational::zero(); self.width()]);
            self.rhs.push(-c.clone());
        }
        start
    }

    fn add_block(&mut self, start: usize, unknown: (usize, usize), block: &Matrix<Rational>, negate: bool) {
        let col = self.unknowns[&unknown] * self.dim;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let v = &block[(r, c)];
                if v.is_zero() {
                    continue;
                }
                let slot = &mut self.rows[start + r][col + c];
                *slot = if negate { std::mem::take(slot) - v } else { std::mem::take(slot) + v };
            }
        }
    }

    fn finish(self) -> LinearSystem {
        let unknowns = self.width();
        LinearSystem { rows: self.rows, rhs: self.rhs, unknowns }
    }
}

/// `(D + N) X + X (D + N) = 0` for strictly upper `X`.
fn algebra_system<S: Scalar>(x: &Matrix<S>, signs: &[Sign]) -> LinearSystem {
    let n = x.n();
    let mut b = Builder::new::<S>(n);
    for i in 0..n {
        for j in i + 1..n {
            let eps = Rational::from_integer((signs[i].as_i8() + signs[j].as_i8()) as i64);
            let start = b.begin_entry(&x[(i, j)].scale(&eps).coords());
            for k in i + 1..j {
                if !x[(k, j)].is_zero() {
                    b.add_block(start, (i, k), &x[(k, j)].right_mul_matrix(), false);
                }
                if !x[(i, k)].is_zero() {
                    b.add_block(start, (k, j), &x[(i, k)].left_mul_matrix(), false);
                }
            }
        }
    }
    b.finish()
}

/// `(D + N) u - u^{-1} (D + N) = 0` for `u` in `U_n^{+-1}`.
fn group_system<S: Scalar>(u: &Matrix<S>, inv: &Matrix<S>, signs: &[Sign]) -> LinearSystem {
    let n = u.n();
    let mut b = Builder::new::<S>(n);
    for i in 0..n {
        for j in i + 1..n {
            let constant = signs[i].to_scalar::<S>() * &u[(i, j)] - inv[(i, j)].clone() * &signs[j].to_scalar::<S>();
            let start = b.begin_entry(&constant.coords());
            for k in i + 1..=j {
                if !u[(k, j)].is_zero() {
                    b.add_block(start, (i, k), &u[(k, j)].right_mul_matrix(), false);
                }
            }
            for k in i..j {
                if !inv[(i, k)].is_zero() {
                    b.add_block(start, (k, j), &inv[(i, k)].left_mul_matrix(), true);
                }
            }
        }
    }
    b.finish()
}

fn assemble<S: Scalar>(n: usize, signs: &[Sign], sol: &[Rational]) -> SignedUnipotent<S> {
    let dim = S::RING.dim();
    let idx = unknown_index(n);
    let m = Matrix::from_fn(n, |i, j| {
        if i == j {
            signs[i].to_scalar()
        } else if j > i {
            let at = idx[&(i, j)] * dim;
            S::from_coords(&sol[at..at + dim])
        } else {
            S::zero()
        }
    });
    SignedUnipotent::new(m).expect("upper with signed diagonal by construction")
}
