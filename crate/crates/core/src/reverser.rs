//! Constructive reversers in `U_n^{+-1}(K)`.
//!
//! [`reverse_star`] builds `g` with `g X g^{-1} = -X` for every `X` whose
//! superdiagonal is nonzero, by induction on the size. Writing
//! `X = [[X', x], [0, 0]]` and `g = [[g', a], [0, eps]]`, the identity
//! reduces to `g' X' = -X' g'` (the previous step) and
//! `X' a = -(g' + eps Id) x`. Choosing `eps` as minus the last diagonal
//! entry of `g'` makes the last equation trivial, and the remaining ones
//! are triangular with the nonzero superdiagonal entries of `X'` as pivots.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expmap;
use crate::nilmat::{GroupTag, Level, Matrix, NilpotentUpper, Sign, SignedUnipotent};
use crate::scalar::{Rational, Ring, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProducedBy {
    Induction,
    Parity,
    Oracle,
    ClosedForm,
}

impl ProducedBy {
    pub fn as_str(self) -> &'static str {
        match self {
            ProducedBy::Induction => "induction",
            ProducedBy::Parity => "parity",
            ProducedBy::Oracle => "oracle",
            ProducedBy::ClosedForm => "closed_form",
        }
    }
}

/// Re-checkable claim that `g` reverses `subject`: `g X g^{-1} = -X` at the
/// algebra level, `g u g^{-1} = u^{-1}` at the group level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalCertificate<S> {
    pub n: usize,
    pub group: GroupTag,
    pub level: Level,
    pub subject: Matrix<S>,
    pub g: SignedUnipotent<S>,
    pub involution: bool,
    pub produced_by: ProducedBy,
}

impl<S: Scalar> ReversalCertificate<S> {
    pub fn ring(&self) -> Ring {
        S::RING
    }

    /// Builds a certificate for an already verified reverser; the group tag
    /// is the smallest group containing `g`.
    pub fn new(subject: Matrix<S>, g: SignedUnipotent<S>, level: Level, produced_by: ProducedBy) -> Self {
        let group = if g.is_unipotent() { GroupTag::Unipotent } else { GroupTag::SignedUnipotent };
        Self { n: subject.n(), group, level, involution: g.is_involution(), subject, g, produced_by }
    }
}

/// Recomputes the defining identity of `c` from scratch.
///
/// Returns `Ok(false)` when the certificate is well formed but the identity
/// or the involution flag is wrong, and `MalformedCertificate` when its
/// shape is inconsistent.
pub fn check_certificate<S: Scalar>(c: &ReversalCertificate<S>) -> Result<bool> {
    let malformed = |m: &str| Err(Error::MalformedCertificate(m.into()));
    if c.subject.n() != c.n || c.g.n() != c.n {
        return malformed("dimension does not match the matrices");
    }
    if c.group == GroupTag::Unipotent && !c.g.is_unipotent() {
        return malformed("group is unipotent but g has a -1 on the diagonal");
    }
    let holds = match c.level {
        Level::Algebra => {
            if !c.subject.is_strictly_upper() {
                return malformed("algebra-level subject is not strictly upper triangular");
            }
            c.g.conjugate(&c.subject)? == -&c.subject
        }
        Level::Group => {
            let Ok(u) = SignedUnipotent::new(c.subject.clone()) else {
                return malformed("group-level subject is not in U_n^{+-1}");
            };
            c.g.conjugate(&c.subject)? == *u.inverse().as_matrix()
        }
    };
    Ok(holds && c.involution == c.g.is_involution())
}

/// One step of the induction: the reverser `g` of the leading `k x k` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionStep<S> {
    pub k: usize,
    pub g: Matrix<S>,
    pub epsilon: Sign,
    /// New last column of `g` above the diagonal.
    pub a: Vec<S>,
    /// `-(g_{k-1} + eps Id) x`.
    pub b: Vec<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionTrace<S> {
    pub steps: Vec<InductionStep<S>>,
}

#[derive(Debug, Clone)]
pub struct StarReversal<S> {
    pub certificate: ReversalCertificate<S>,
    pub trace: InductionTrace<S>,
}

pub fn reverse_star<S: Scalar>(x: &NilpotentUpper<S>) -> Result<StarReversal<S>> {
    let xm = x.as_matrix();
    let n = xm.n();
    if let Some((i, j)) = xm.first_zero_superdiagonal() {
        return Err(Error::NotStar(i + 1, j + 1));
    }
    let mut g = Matrix::identity(n.min(1));
    let mut steps = Vec::new();
    for k in 2..=n {
        let m = k - 1;
        let last = Sign::of(&g[(m - 1, m - 1)]).expect("signed diagonal");
        let epsilon = last.flip();
        let eps = epsilon.to_scalar::<S>();
        let column: Vec<S> = (0..m).map(|i| xm[(i, m)].clone()).collect();
        let gx = g.mul_vec(&column);
        let b: Vec<S> = gx.into_iter().zip(&column).map(|(v, xi)| -(v + eps.clone() * xi)).collect();
        if !b[m - 1].is_zero() {
            return Err(Error::Internal(format!("b_{m} is nonzero at step {k}")));
        }
        let mut a = vec![S::zero(); m];
        for i in (0..m - 1).rev() {
            let mut rest = b[i].clone();
            for j in i + 2..m {
                if !xm[(i, j)].is_zero() && !a[j].is_zero() {
                    rest = rest - xm[(i, j)].clone() * &a[j];
                }
            }
            a[i + 1] = xm[(i, i + 1)].inverse()? * &rest;
        }
        let next = Matrix::from_fn(k, |r, c| match (r < m, c < m) {
            (true, true) => g[(r, c)].clone(),
            (true, false) => a[r].clone(),
            (false, false) => eps.clone(),
            (false, true) => S::zero(),
        });
        g = next;
        steps.push(InductionStep { k, g: g.clone(), epsilon, a, b });
    }
    let g = SignedUnipotent::new(g)?;
    if g.conjugate(xm)? != -xm {
        return Err(Error::Internal("induction result does not reverse X".into()));
    }
    Ok(StarReversal {
        certificate: ReversalCertificate::new(xm.clone(), g, Level::Algebra, ProducedBy::Induction),
        trace: InductionTrace { steps },
    })
}

/// Odd cycle in the constraint graph (1-based vertices in cycle order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddCycle {
    pub vertices: Vec<usize>,
}

impl OddCycle {
    /// Cycle edges as 1-based `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let v = &self.vertices;
        (0..v.len())
            .map(|p| {
                let (a, b) = (v[p], v[(p + 1) % v.len()]);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub enum ParityOutcome<S> {
    Reverser { certificate: ReversalCertificate<S>, signs: Vec<Sign> },
    Infeasible(OddCycle),
}

/// Diagonal sign reverser: `diag(eps) X diag(eps) = -X` exactly when
/// `eps_i eps_j = -1` for every nonzero `X_ij`. Solved by breadth-first
/// 2-coloring with each component rooted at its smallest vertex as `+1`.
pub fn diagonal_parity_reverser<S: Scalar>(x: &NilpotentUpper<S>) -> ParityOutcome<S> {
    let xm = x.as_matrix();
    let n = xm.n();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if !xm[(i, j)].is_zero() {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let mut color: Vec<Option<Sign>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(Sign::Plus);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(cu.flip());
                        parent[v] = Some(u);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return ParityOutcome::Infeasible(odd_cycle(&parent, u, v)),
                    Some(_) => {}
                }
            }
        }
    }
    let signs: Vec<Sign> = color.into_iter().map(|c| c.expect("all vertices colored")).collect();
    let g = SignedUnipotent::from_signs(&signs);
    ParityOutcome::Reverser {
        certificate: ReversalCertificate::new(xm.clone(), g, Level::Algebra, ProducedBy::Parity),
        signs,
    }
}

fn odd_cycle(parent: &[Option<usize>], u: usize, v: usize) -> OddCycle {
    let to_root = |mut w: usize| {
        let mut path = vec![w];
        while let Some(p) = parent[w] {
            path.push(p);
            w = p;
        }
        path
    };
    let pu = to_root(u);
    let pv = to_root(v);
    let (iu, iv) = pu
        .iter()
        .enumerate()
        .find_map(|(iu, w)| pv.iter().position(|y| y == w).map(|iv| (iu, iv)))
        .expect("both paths end at the component root");
    let mut vertices: Vec<usize> = pu[..=iu].iter().rev().copied().collect();
    vertices.extend(&pv[..iv]);
    OddCycle { vertices: vertices.into_iter().map(|w| w + 1).collect() }
}

/// Closed-form involutive reversers for `n = 2` and `n = 3`.
///
/// For `n = 3` and `X = [[0, a, b], [0, 0, c], [0, 0, 0]]`, the matrix
/// `[[1, p, -pr/2], [0, -1, r], [0, 0, 1]]` is an involution and reverses
/// `X` whenever `p c + a r + 2b = 0`. The free parameter is fixed as `p = 1`
/// when `a != 0`, otherwise `r = 0` when `c != 0`; when `a = c = 0` the
/// reverser is `diag(1, 1, -1)`.
pub fn closed_form_reverser<S: Scalar>(x: &NilpotentUpper<S>) -> Result<ReversalCertificate<S>> {
    let xm = x.as_matrix();
    let one = S::one;
    let g = match xm.n() {
        2 => SignedUnipotent::from_signs(&[Sign::Plus, Sign::Minus]),
        3 => {
            let (a, b, c) = (&xm[(0, 1)], &xm[(0, 2)], &xm[(1, 2)]);
            let two_b = b.clone() + b;
            let (p, r) = if !a.is_zero() {
                let p = one();
                let r = -(a.inverse()? * &(p.clone() * c + &two_b));
                (p, r)
            } else if !c.is_zero() {
                (-(two_b * &c.inverse()?), S::zero())
            } else {
                (S::zero(), S::zero())
            };
            if a.is_zero() && c.is_zero() {
                SignedUnipotent::from_signs(&[Sign::Plus, Sign::Plus, Sign::Minus])
            } else {
                let corner = -(p.clone() * &r).scale(&Rational::new(1, 2));
                let m = Matrix::from_rows(vec![
                    vec![one(), p, corner],
                    vec![S::zero(), -one(), r],
                    vec![S::zero(), S::zero(), one()],
                ])?;
                SignedUnipotent::new(m)?
            }
        }
        n => return Err(Error::DimensionMismatch { left: n, right: 3 }),
    };
    if g.conjugate(xm)? != -xm {
        return Err(Error::Internal("closed form does not reverse X".into()));
    }
    Ok(ReversalCertificate::new(xm.clone(), g, Level::Algebra, ProducedBy::ClosedForm))
}

/// `h` with `h u h^{-1} = u^{-1}` for unipotent `u` with nonzero
/// superdiagonal, obtained as the reverser of `log u`.
pub fn reverse_group_star<S: Scalar>(u: &SignedUnipotent<S>) -> Result<ReversalCertificate<S>> {
    let um = u.as_matrix();
    if let Some(i) = (0..um.n()).find(|&i| !um[(i, i)].is_one()) {
        return Err(Error::NotUnipotent(i + 1));
    }
    if let Some((i, j)) = um.first_zero_superdiagonal() {
        return Err(Error::NotStar(i + 1, j + 1));
    }
    let x = expmap::log(u)?;
    let h = reverse_star(&x)?.certificate.g;
    if h.conjugate(um)? != *u.inverse().as_matrix() {
        return Err(Error::Internal("log-transported reverser does not invert u".into()));
    }
    Ok(ReversalCertificate::new(um.clone(), h, Level::Group, ProducedBy::Induction))
}

/// Wraps a reverser found by the feasibility oracle as a certificate.
pub fn certificate_from_oracle<S: Scalar>(
    subject: &Matrix<S>,
    g: SignedUnipotent<S>,
    level: Level,
) -> ReversalCertificate<S> {
    ReversalCertificate::new(subject.clone(), g, level, ProducedBy::Oracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RationalQuaternion as Q;

    type R = Rational;

    fn r(v: i64) -> R {
        R::from_integer(v)
    }

    fn nil<S: Scalar>(m: Matrix<S>) -> NilpotentUpper<S> {
        NilpotentUpper::new(m).unwrap()
    }

    fn sum<S: Scalar>(terms: &[(usize, usize)], n: usize) -> Matrix<S> {
        terms.iter().fold(Matrix::zeros(n), |acc, &(i, j)| &acc + &Matrix::unit(n, i - 1, j - 1))
    }

    #[test]
    fn two_by_two_is_diag() {
        let x = nil(Matrix::<R>::unit(2, 0, 1).scale(&R::new(-4, 7)));
        let rev = reverse_star(&x).unwrap();
        assert_eq!(rev.certificate.g, SignedUnipotent::from_signs(&[Sign::Plus, Sign::Minus]));
        assert!(rev.certificate.involution);
        assert_eq!(rev.certificate.group, GroupTag::SignedUnipotent);
        assert!(check_certificate(&rev.certificate).unwrap());
    }

    #[test]
    fn three_by_three_induction_and_closed_form() {
        // a = 1, b = 0, c = 1
        let x = nil(sum::<R>(&[(1, 2), (2, 3)], 3));
        let rev = reverse_star(&x).unwrap();
        assert!(check_certificate(&rev.certificate).unwrap());
        let closed = closed_form_reverser(&x).unwrap();
        let expected =
            Matrix::from_rows(vec![vec![r(1), r(1), R::new(1, 2)], vec![r(0), r(-1), r(-1)], vec![r(0), r(0), r(1)]])
                .unwrap();
        assert_eq!(closed.g.as_matrix(), &expected);
        assert!(closed.involution);
        assert!(check_certificate(&closed).unwrap());
    }

    #[test]
    fn closed_form_degenerate_cases() {
        // a = c = 0, b != 0
        let x = nil(Matrix::<R>::unit(3, 0, 2));
        let c = closed_form_reverser(&x).unwrap();
        assert_eq!(c.g, SignedUnipotent::from_signs(&[Sign::Plus, Sign::Plus, Sign::Minus]));
        // a = 0, b, c != 0
        let x = nil(sum::<R>(&[(1, 3), (2, 3)], 3));
        let c = closed_form_reverser(&x).unwrap();
        assert!(c.involution && check_certificate(&c).unwrap());
        assert!(closed_form_reverser(&NilpotentUpper::<R>::zeros(4)).is_err());
    }

    #[test]
    fn quaternion_superdiagonal() {
        let mut m = Matrix::<Q>::zeros(4);
        m[(0, 1)] = Q::i();
        m[(1, 2)] = Q::j();
        m[(2, 3)] = Q::k();
        let rev = reverse_star(&nil(m)).unwrap();
        assert!(check_certificate(&rev.certificate).unwrap());
        assert_eq!(rev.trace.steps.len(), 3);
        let signs = rev.certificate.g.signs();
        assert_eq!(signs, [Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn not_star_rejected() {
        let x = nil(sum::<R>(&[(1, 2), (1, 3)], 3));
        assert_eq!(reverse_star(&x).unwrap_err(), Error::NotStar(2, 3));
    }

    #[test]
    fn parity_examples() {
        let path = nil(sum::<R>(&[(1, 2), (2, 3)], 3));
        match diagonal_parity_reverser(&path) {
            ParityOutcome::Reverser { signs, certificate } => {
                assert_eq!(signs, [Sign::Plus, Sign::Minus, Sign::Plus]);
                assert!(certificate.involution);
                assert!(check_certificate(&certificate).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
        let star = nil(sum::<R>(&[(1, 2), (1, 3)], 3));
        match diagonal_parity_reverser(&star) {
            ParityOutcome::Reverser { signs, .. } => assert_eq!(signs, [Sign::Plus, Sign::Minus, Sign::Minus]),
            other => panic!("unexpected {other:?}"),
        }
        let triangle = nil(sum::<R>(&[(1, 2), (2, 3), (1, 3)], 3));
        match diagonal_parity_reverser(&triangle) {
            ParityOutcome::Infeasible(cycle) => {
                assert_eq!(cycle.vertices, [1, 2, 3]);
                assert_eq!(cycle.edges(), [(1, 2), (2, 3), (1, 3)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        // diagonal insufficiency is not non-reality
        assert!(reverse_star(&triangle).is_ok());
    }

    #[test]
    fn group_level() {
        let u = SignedUnipotent::new(Matrix::from_rows(vec![vec![r(1), r(1)], vec![r(0), r(1)]]).unwrap()).unwrap();
        let c = reverse_group_star(&u).unwrap();
        assert_eq!(c.g, SignedUnipotent::from_signs(&[Sign::Plus, Sign::Minus]));
        assert_eq!(c.level, Level::Group);
        assert!(check_certificate(&c).unwrap());

        let u3 = expmap::exp(&nil(sum::<R>(&[(1, 2), (2, 3)], 3)));
        assert!(check_certificate(&reverse_group_star(&u3).unwrap()).unwrap());

        assert_eq!(reverse_group_star(&SignedUnipotent::<R>::identity(3)).unwrap_err(), Error::NotStar(1, 2));
        let signed = SignedUnipotent::<R>::from_signs(&[Sign::Plus, Sign::Minus]);
        assert_eq!(reverse_group_star(&signed).unwrap_err(), Error::NotUnipotent(2));
    }

    #[test]
    fn tampered_and_malformed_certificates() {
        let x = nil(sum::<R>(&[(1, 2), (2, 3), (1, 3)], 3));
        let good = reverse_star(&x).unwrap().certificate;
        assert!(check_certificate(&good).unwrap());

        let mut tampered = good.clone();
        let mut gm = tampered.g.as_matrix().clone();
        gm[(0, 2)] = gm[(0, 2)].clone() + R::one();
        tampered.g = SignedUnipotent::new(gm).unwrap();
        assert!(!check_certificate(&tampered).unwrap());

        let mut flag = good.clone();
        flag.involution = !flag.involution;
        assert!(!check_certificate(&flag).unwrap());

        let mut malformed = good;
        malformed.group = GroupTag::Unipotent;
        assert!(matches!(check_certificate(&malformed), Err(Error::MalformedCertificate(_))));
    }
}
