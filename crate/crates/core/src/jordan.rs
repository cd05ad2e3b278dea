//! Jordan structure of nilpotent matrices and the paired-block witness.
//!
//! For a nilpotent `X` we pick chain tops `w` so that the vectors
//! `X^l w` form a basis, and order that basis as follows: writing
//! `B^l(d)` for the vectors `X^l w` over the tops `w` of length `d`, the
//! ordered basis is `B(1) v B(2) v ... v B(d_1)` with
//! `B(j) = B^{d_1 - j}(d_1) v ... v B^{d_s - j}(d_s)` (negative powers give
//! empty segments). Any `g` with `gJ = -Jg` is block upper triangular in
//! this basis, one block per segment, and the block on `B^{d_1 - 2}(d_1)`
//! equals minus the block on `B^{d_1 - 1}(d_1)`. A unipotent `g` would make
//! both blocks unipotent, and `U` and `-U` cannot both be unipotent, so no
//! unipotent matrix sends a nonzero nilpotent matrix to its negative.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linsolve::{self, EchelonBasis};
use crate::nilmat::GroupTag;
use crate::nilmat::{Matrix, NilpotentUpper};
use crate::oracle::Oracle;
use crate::scalar::{Rational, Scalar};

/// Block sizes `[d_1^{t_1}, ..., d_s^{t_s}]` with `d_1 > ... > d_s > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    parts: Vec<(usize, usize)>,
}

impl Partition {
    /// `parts` are `(size, multiplicity)` pairs with strictly decreasing
    /// sizes and positive multiplicities.
    pub fn new(parts: Vec<(usize, usize)>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0].0 > w[1].0);
        let positive = parts.iter().all(|&(d, t)| d > 0 && t > 0);
        if decreasing && positive {
            Ok(Self { parts })
        } else {
            Err(Error::Internal(format!("invalid partition {parts:?}")))
        }
    }

    /// Groups block sizes given in any order.
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let mut sorted: Vec<usize> = sizes.iter().copied().filter(|&d| d > 0).collect();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<(usize, usize)> = Vec::new();
        for d in sorted {
            match parts.last_mut() {
                Some((size, count)) if *size == d => *count += 1,
                _ => parts.push((d, 1)),
            }
        }
        Self { parts }
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|&(d, t)| d * t).sum()
    }

    /// Number of distinct part sizes, `s`.
    pub fn distinct(&self) -> usize {
        self.parts.len()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().map_or(0, |p| p.0)
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.parts.iter().find(|p| p.0 == size).map_or(0, |p| p.1)
    }

    /// Block sizes in decreasing order, repeated by multiplicity.
    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().flat_map(|&(d, t)| std::iter::repeat_n(d, t)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(d, t)| format!("{d}^{t}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `J^power` applied to the top of chain `chain`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisVector {
    pub power: usize,
    pub chain: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTop<S> {
    pub length: usize,
    pub vector: Vec<S>,
}

#[derive(Debug, Clone)]
pub struct JordanData<S> {
    pub partition: Partition,
    /// Sorted by decreasing length.
    pub chain_tops: Vec<ChainTop<S>>,
    pub ordered_basis: Vec<BasisVector>,
    /// `beta * X * beta^{-1} = jordan_form`.
    pub beta: Matrix<S>,
    pub jordan_form: NilpotentUpper<S>,
}

impl<S: Scalar> JordanData<S> {
    pub fn chain_lengths(&self) -> Vec<usize> {
        self.chain_tops.iter().map(|c| c.length).collect()
    }

    /// Labels like `J^2e_3` for the ordered basis, with `e_m` the (1-based)
    /// Jordan coordinate of the chain top.
    pub fn ordered_basis_labels(&self) -> Vec<String> {
        let tops = top_positions(&self.chain_lengths());
        self.ordered_basis.iter().map(|b| basis_label(b, tops[b.chain])).collect()
    }
}

fn basis_label(b: &BasisVector, top: usize) -> String {
    match b.power {
        0 => format!("e_{}", top + 1),
        1 => format!("Je_{}", top + 1),
        p => format!("J^{p}e_{}", top + 1),
    }
}

/// 0-based position of each chain's top in Jordan coordinates, with the
/// chains laid out consecutively in the given order.
fn top_positions(lengths: &[usize]) -> Vec<usize> {
    lengths
        .iter()
        .scan(0, |start, &d| {
            *start += d;
            Some(*start - 1)
        })
        .collect()
}

/// The ordered basis for chains of the given lengths (any order), together
/// with the segment sizes that make up the diagonal block layout.
pub fn ordered_basis(lengths: &[usize]) -> (Vec<BasisVector>, Vec<usize>) {
    let partition = Partition::from_sizes(lengths);
    let mut basis = Vec::new();
    let mut layout = Vec::new();
    for j in 1..=partition.largest() {
        for &(d, _) in partition.parts() {
            if d < j {
                continue;
            }
            let before = basis.len();
            basis.extend(
                lengths
                    .iter()
                    .enumerate()
                    .filter(|&(_, &len)| len == d)
                    .map(|(chain, _)| BasisVector { power: d - j, chain }),
            );
            layout.push(basis.len() - before);
        }
    }
    (basis, layout)
}

/// Nilpotent Jordan matrix with blocks of the given lengths laid out in
/// order along the diagonal.
pub fn jordan_matrix<S: Scalar>(lengths: &[usize]) -> NilpotentUpper<S> {
    let n = lengths.iter().sum();
    let mut m = Matrix::zeros(n);
    let mut start = 0;
    for &d in lengths {
        for p in start..start + d - 1 {
            m[(p, p + 1)] = S::one();
        }
        start += d;
    }
    NilpotentUpper::new(m).expect("Jordan matrix is strictly upper")
}

/// Diagonal reverser of a Jordan matrix: `(-1)^l` on `J^l e_top` of every
/// chain.
pub fn alternating_chain_reverser<S: Scalar>(lengths: &[usize]) -> Matrix<S> {
    let mut diag = Vec::new();
    for &d in lengths {
        for offset in 0..d {
            let power = d - 1 - offset;
            diag.push(if power % 2 == 0 { S::one() } else { -S::one() });
        }
    }
    Matrix::diagonal(&diag)
}

/// Realified coordinates of a column vector.
fn realify_vector<S: Scalar>(v: &[S]) -> Vec<Rational> {
    v.iter().flat_map(Scalar::coords).collect()
}

fn vector_from_coords<S: Scalar>(c: &[Rational]) -> Vec<S> {
    c.chunks(S::RING.dim()).map(S::from_coords).collect()
}

/// Realified generators of the right `K`-span of `v`: `v*1, v*i, ...`.
fn right_span<S: Scalar>(v: &[S]) -> Vec<Vec<Rational>> {
    S::units().iter().map(|u| realify_vector(&v.iter().map(|x| x.clone() * u).collect::<Vec<_>>())).collect()
}

fn realified_rows<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<Rational>> {
    m.realify().rows().map(<[Rational]>::to_vec).collect()
}

/// `K`-rank of `m` (the realified rank divided by `dim K`).
pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    let dim = S::RING.dim();
    linsolve::rank(&realified_rows(m), m.n() * dim) / dim
}

/// Partition from the ranks of powers: the number of blocks of size
/// exactly `k` is `r_{k-1} - 2 r_k + r_{k+1}` with `r_k = rank(X^k)`.
pub fn partition_from_ranks<S: Scalar>(x: &NilpotentUpper<S>) -> Partition {
    let n = x.n();
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    for _ in 0..=n {
        power = &power * x.as_matrix();
        ranks.push(rank(&power));
    }
    let mut parts = Vec::new();
    for k in (1..=n).rev() {
        let count = ranks[k - 1] + ranks[k + 1] - 2 * ranks[k];
        if count > 0 {
            parts.push((k, count));
        }
    }
    Partition { parts }
}

/// Jordan chains, ordered basis and change of basis for `X`.
///
/// Chain tops are chosen from the top stratum down: at level `k`, kernel
/// basis vectors of `X^k` (in increasing free-column order) are taken
/// whenever they are independent of `ker X^{k-1}` plus the level-`k`
/// vectors of longer chains already chosen.
pub fn jordan_structure<S: Scalar>(x: &NilpotentUpper<S>) -> Result<JordanData<S>> {
    let n = x.n();
    let dim = S::RING.dim();
    let xm = x.as_matrix();
    let partition = partition_from_ranks(x);
    let depth = partition.largest();

    let mut powers = vec![Matrix::identity(n)];
    for k in 1..=depth {
        powers.push(&powers[k - 1] * xm);
    }
    let kernels: Vec<Vec<Vec<Rational>>> =
        powers.iter().map(|p| linsolve::kernel_basis(&realified_rows(p), n * dim)).collect();

    let mut tops: Vec<ChainTop<S>> = Vec::new();
    for k in (1..=depth).rev() {
        let mut span = EchelonBasis::new(n * dim);
        for v in &kernels[k - 1] {
            span.insert(v);
        }
        for top in &tops {
            let image = powers[top.length - k].mul_vec(&top.vector);
            for v in right_span(&image) {
                span.insert(&v);
            }
        }
        let before = tops.len();
        for cand in &kernels[k] {
            if span.contains(cand) {
                continue;
            }
            let vector: Vec<S> = vector_from_coords(cand);
            for v in right_span(&vector) {
                span.insert(&v);
            }
            tops.push(ChainTop { length: k, vector });
        }
        if tops.len() - before != partition.multiplicity(k) {
            return Err(Error::Internal(format!(
                "found {} chains of length {k}, ranks predict {}",
                tops.len() - before,
                partition.multiplicity(k)
            )));
        }
    }

    let lengths: Vec<usize> = tops.iter().map(|t| t.length).collect();
    let mut columns: Vec<Vec<S>> = Vec::with_capacity(n);
    for top in &tops {
        for l in (0..top.length).rev() {
            columns.push(powers[l].mul_vec(&top.vector));
        }
    }
    let chain_basis = Matrix::from_fn(n, |i, j| columns[j][i].clone());
    let beta = chain_basis.inverse().map_err(|_| Error::Internal("chain vectors are dependent".into()))?;
    let jordan_form = jordan_matrix::<S>(&lengths);
    if &(&beta * xm) * &chain_basis != *jordan_form.as_matrix() {
        return Err(Error::Internal("beta X beta^-1 differs from the Jordan form".into()));
    }
    let (ordered_basis, _) = ordered_basis(&lengths);
    Ok(JordanData { partition, chain_tops: tops, ordered_basis, beta, jordan_form })
}

/// Lengths of the Jordan blocks of `j`, in diagonal order, or `None` if
/// `j` is not a nilpotent Jordan matrix.
pub fn jordan_blocks<S: Scalar>(j: &Matrix<S>) -> Option<Vec<usize>> {
    let n = j.n();
    for r in 0..n {
        for c in 0..n {
            let e = &j[(r, c)];
            let ok = if c == r + 1 { e.is_zero() || e.is_one() } else { e.is_zero() };
            if !ok {
                return None;
            }
        }
    }
    let mut lengths = Vec::new();
    let mut len = 1;
    for p in 0..n {
        if p + 1 < n && j[(p, p + 1)].is_one() {
            len += 1;
        } else {
            lengths.push(len);
            len = 1;
        }
    }
    Some(lengths)
}

/// `[g]_B` for a reverser `g` of a Jordan matrix, with the diagonal blocks
/// that pair up under `gJ = -Jg`.
#[derive(Debug, Clone)]
pub struct PairedBlockWitness<S> {
    pub conjugator_in_basis: Matrix<S>,
    pub block_layout: Vec<usize>,
    pub first_block: Matrix<S>,
    pub paired_block: Matrix<S>,
    /// Number of distinct block sizes; `paired_block` is diagonal block `s + 1`.
    pub s: usize,
    pub ordered_basis: Vec<BasisVector>,
    pub basis_labels: Vec<String>,
}

fn submatrix<S: Scalar>(m: &Matrix<S>, start: usize, size: usize) -> Matrix<S> {
    Matrix::from_fn(size, |r, c| m[(start + r, start + c)].clone())
}

/// Expresses `g` in the ordered basis of the Jordan matrix `j` and checks
/// block upper-triangularity and `paired_block = -first_block`.
pub fn paired_block_witness<S: Scalar>(j: &NilpotentUpper<S>, g: &Matrix<S>) -> Result<PairedBlockWitness<S>> {
    let jm = j.as_matrix();
    if jm.n() != g.n() {
        return Err(Error::DimensionMismatch { left: jm.n(), right: g.n() });
    }
    if j.is_zero() {
        return Err(Error::NotApplicable);
    }
    let lengths = jordan_blocks(jm).ok_or(Error::NotJordanForm)?;
    if g * jm != -&(jm * g) {
        return Err(Error::NotAReverser);
    }

    let (basis, layout) = ordered_basis(&lengths);
    let tops = top_positions(&lengths);
    let positions: Vec<usize> = basis.iter().map(|b| tops[b.chain] - b.power).collect();
    let in_basis = Matrix::from_fn(g.n(), |a, c| g[(positions[a], positions[c])].clone());

    let block_of: Vec<usize> = layout.iter().enumerate().flat_map(|(b, &size)| std::iter::repeat_n(b, size)).collect();
    for a in 0..g.n() {
        for c in 0..a {
            if block_of[a] > block_of[c] && !in_basis[(a, c)].is_zero() {
                return Err(Error::WitnessViolation(format!(
                    "[g]_B has a nonzero entry at ({}, {}) below the diagonal blocks",
                    a + 1,
                    c + 1
                )));
            }
        }
    }

    let partition = Partition::from_sizes(&lengths);
    let s = partition.distinct();
    let first_size = layout[0];
    let paired_start: usize = layout[..s].iter().sum();
    if layout[s] != first_size {
        return Err(Error::WitnessViolation("block s + 1 has a different size from block 1".into()));
    }
    let first_block = submatrix(&in_basis, 0, first_size);
    let paired_block = submatrix(&in_basis, paired_start, first_size);
    if paired_block != -&first_block {
        return Err(Error::WitnessViolation("diagonal block s + 1 is not the negative of block 1".into()));
    }
    let basis_labels = basis.iter().map(|b| basis_label(b, tops[b.chain])).collect();
    Ok(PairedBlockWitness {
        conjugator_in_basis: in_basis,
        block_layout: layout,
        first_block,
        paired_block,
        s,
        ordered_basis: basis,
        basis_labels,
    })
}

/// Record explaining why a nonzero nilpotent `X` has no unipotent reverser.
///
/// If `alpha` were a unipotent reverser of `X`, then `beta alpha beta^{-1}`
/// would be a unipotent reverser of `J_X`, and its blocks `g_11` and
/// `g_{s+1,s+1} = -g_11` would both be unipotent. That is impossible:
/// if `g_11 = Id + N` with `N` nilpotent then `-g_11 - Id = -(2 Id + N)`
/// is invertible. The record carries the Jordan data, a concrete reverser
/// of `X` transported to `J_X` with its witness, and the oracle verdict.
#[derive(Debug, Clone)]
pub struct NoUnipotentReverser<S> {
    pub jordan: JordanData<S>,
    /// A reverser of `X` in `GL_n`: `beta^{-1} R beta` for the alternating
    /// chain reverser `R` of `J_X`.
    pub reverser_of_x: Matrix<S>,
    /// `beta * reverser_of_x * beta^{-1}`, a reverser of `J_X`.
    pub transported: Matrix<S>,
    pub witness: PairedBlockWitness<S>,
    pub first_block_unipotent: bool,
    pub paired_block_unipotent: bool,
    /// `Some(true)` when the exact oracle found no reverser in `U_n`;
    /// `None` when `n` exceeds the oracle bound.
    pub oracle_infeasible: Option<bool>,
}

pub fn no_unipotent_reverser_certificate<S: Scalar>(
    x: &NilpotentUpper<S>,
    oracle: &Oracle,
) -> Result<NoUnipotentReverser<S>> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let jordan = jordan_structure(x)?;
    let lengths = jordan.chain_lengths();
    let on_j = alternating_chain_reverser::<S>(&lengths);
    let beta_inv = jordan.beta.inverse()?;
    let reverser_of_x = &(&beta_inv * &on_j) * &jordan.beta;
    let xm = x.as_matrix();
    if &reverser_of_x * xm != -&(xm * &reverser_of_x) {
        return Err(Error::Internal("transported chain reverser does not reverse X".into()));
    }
    let transported = &(&jordan.beta * &reverser_of_x) * &beta_inv;
    let witness = paired_block_witness(&jordan.jordan_form, &transported)?;
    let first_block_unipotent = witness.first_block.is_unipotent();
    let paired_block_unipotent = witness.paired_block.is_unipotent();
    if first_block_unipotent && paired_block_unipotent {
        return Err(Error::Internal("U and -U both unipotent".into()));
    }
    let oracle_infeasible = if x.n() <= oracle.dim_limit() {
        let result = oracle.reverser_feasible(x, GroupTag::Unipotent)?;
        if result.is_feasible() {
            return Err(Error::Internal("oracle found a unipotent reverser of a nonzero X".into()));
        }
        Some(true)
    } else {
        None
    };
    Ok(NoUnipotentReverser {
        jordan,
        reverser_of_x,
        transported,
        witness,
        first_block_unipotent,
        paired_block_unipotent,
        oracle_infeasible,
    })
}
