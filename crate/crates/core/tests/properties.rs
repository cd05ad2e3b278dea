use proptest::prelude::*;

use nilrev::certificate::{check_document, CertificateDocument};
use nilrev::expmap::{exp, log};
use nilrev::jordan::{jordan_blocks, jordan_structure, rank};
use nilrev::oracle::Oracle;
use nilrev::random::{self, rng_for};
use nilrev::reverser::{check_certificate, diagonal_parity_reverser, reverse_group_star, reverse_star, ParityOutcome};
use nilrev::text::parse_matrix;
use nilrev::{
    GaussianRational, GroupTag, Matrix, NilpotentUpper, Rational, RationalQuaternion, Scalar, Sign, SignedUnipotent,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| Rational::new(p, q))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::from_coords(&[re, im]))
}

fn quaternion() -> impl Strategy<Value = RationalQuaternion> {
    prop::collection::vec(rational(), 4).prop_map(|c| RationalQuaternion::from_coords(&c))
}

fn ring_laws<S: Scalar>(x: &S, y: &S, z: &S) -> Result<(), TestCaseError> {
    prop_assert_eq!((x.clone() * y) * z, x.clone() * &(y.clone() * z));
    prop_assert_eq!(x.clone() * &(y.clone() + z), x.clone() * y + x.clone() * z);
    prop_assert_eq!((y.clone() + z) * x, y.clone() * x + z.clone() * x);
    prop_assert_eq!(x.clone() + y, y.clone() + x);
    prop_assert_eq!(x.clone() - x, S::zero());
    prop_assert_eq!((x.clone() * y).conj(), y.conj() * &x.conj());
    if !x.is_zero() {
        let inv = x.inverse().unwrap();
        prop_assert!((x.clone() * &inv).is_one());
        prop_assert!((inv * x).is_one());
    } else {
        prop_assert!(x.inverse().is_err());
    }
    // realification is a homomorphism on the left, an anti-homomorphism on
    // the right, and the two actions commute
    let xy = x.clone() * y;
    prop_assert_eq!(xy.left_mul_matrix(), &x.left_mul_matrix() * &y.left_mul_matrix());
    prop_assert_eq!(xy.right_mul_matrix(), &y.right_mul_matrix() * &x.right_mul_matrix());
    prop_assert_eq!(&x.left_mul_matrix() * &y.right_mul_matrix(), &y.right_mul_matrix() * &x.left_mul_matrix());
    let text = x.to_string();
    prop_assert_eq!(&S::parse_literal(&text).unwrap(), x);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_laws(x in rational(), y in rational(), z in rational()) {
        ring_laws(&x, &y, &z)?;
    }

    #[test]
    fn gaussian_laws(x in gaussian(), y in gaussian(), z in gaussian()) {
        ring_laws(&x, &y, &z)?;
    }

    #[test]
    fn quaternion_laws(x in quaternion(), y in quaternion(), z in quaternion()) {
        ring_laws(&x, &y, &z)?;
        // the norm is multiplicative
        prop_assert_eq!((x.clone() * &y).norm(), x.norm() * y.norm());
    }
}

/// Checks over all three rings for a random instance drawn from `seed`.
macro_rules! all_rings {
    ($f:ident, $($arg:expr),*) => {{
        $f::<Rational>($($arg),*)?;
        $f::<GaussianRational>($($arg),*)?;
        $f::<RationalQuaternion>($($arg),*)?;
    }};
}

fn induction_sound<S: Scalar>(seed: u64, n: usize) -> Result<(), TestCaseError> {
    let x: NilpotentUpper<S> = random::star(n, &mut rng_for(seed, 0));
    let rev = reverse_star(&x).unwrap();
    let cert = &rev.certificate;
    prop_assert!(check_certificate(cert).unwrap());
    prop_assert_eq!(cert.g.conjugate(x.as_matrix()).unwrap(), -x.as_matrix());
    let alternating: Vec<Sign> = (0..n).map(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus }).collect();
    prop_assert_eq!(cert.g.signs(), alternating);
    if n >= 2 {
        prop_assert!(!cert.g.is_unipotent());
    }
    // each traced level reverses the leading block
    for step in &rev.trace.steps {
        let k = step.k;
        let xk = Matrix::from_fn(k, |i, j| x.as_matrix()[(i, j)].clone());
        prop_assert_eq!(&step.g * &xk, -&(&xk * &step.g));
        prop_assert!(step.b[k - 2].is_zero());
    }
    Ok(())
}

fn group_transport<S: Scalar>(seed: u64, n: usize) -> Result<(), TestCaseError> {
    let u: SignedUnipotent<S> = random::unipotent_star(n, &mut rng_for(seed, 1));
    let cert = reverse_group_star(&u).unwrap();
    prop_assert!(check_certificate(&cert).unwrap());
    prop_assert_eq!(cert.g.conjugate(u.as_matrix()).unwrap(), u.as_matrix().inverse().unwrap());
    Ok(())
}

fn exp_log_inverse<S: Scalar>(seed: u64, n: usize) -> Result<(), TestCaseError> {
    let x: NilpotentUpper<S> = random::nilpotent(n, &mut rng_for(seed, 2));
    let u = exp(&x);
    prop_assert!(u.is_unipotent());
    prop_assert_eq!(log(&u).unwrap(), x.clone());
    prop_assert_eq!(x.is_star(), u.as_matrix().is_star());
    // exp(-X) = exp(X)^-1
    prop_assert_eq!(exp(&x.negated()), u.inverse());
    Ok(())
}

fn jordan_consistent<S: Scalar>(seed: u64, n: usize) -> Result<(), TestCaseError> {
    let x: NilpotentUpper<S> = random::nilpotent(n, &mut rng_for(seed, 3));
    let data = jordan_structure(&x).unwrap();
    prop_assert_eq!(data.partition.n(), n);
    let blocks = jordan_blocks(data.jordan_form.as_matrix()).unwrap();
    prop_assert_eq!(&blocks, &data.chain_lengths());
    let beta = &data.beta;
    prop_assert_eq!(beta * x.as_matrix(), data.jordan_form.as_matrix() * beta);
    // number of blocks of size >= k is rank(X^(k-1)) - rank(X^k)
    let mut power = Matrix::identity(n);
    let mut prev = n;
    for k in 1..=n {
        power = &power * x.as_matrix();
        let r = rank(&power);
        prop_assert_eq!(blocks.iter().filter(|&&d| d >= k).count(), prev - r);
        prev = r;
    }
    Ok(())
}

fn parity_correct<S: Scalar>(seed: u64, n: usize) -> Result<(), TestCaseError> {
    let x: NilpotentUpper<S> = random::nilpotent(n, &mut rng_for(seed, 4));
    let xm = x.as_matrix();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !xm[(i, j)].is_zero()).collect();
    // brute force over sign patterns with the first sign fixed
    let works = |mask: u32| {
        let sign = |i: usize| i > 0 && mask >> (i - 1) & 1 == 1;
        edges.iter().all(|&(i, j)| sign(i) != sign(j))
    };
    let exists = (0..1u32 << (n - 1)).any(works);
    match diagonal_parity_reverser(&x) {
        ParityOutcome::Reverser { certificate, signs } => {
            prop_assert!(exists);
            prop_assert_eq!(signs[0], Sign::Plus);
            prop_assert!(certificate.involution);
            prop_assert!(check_certificate(&certificate).unwrap());
            let d = Matrix::diagonal(&signs.iter().map(|s| s.to_scalar::<S>()).collect::<Vec<_>>());
            prop_assert_eq!(&(&d * xm) * &d, -xm);
        }
        ParityOutcome::Infeasible(cycle) => {
            prop_assert!(!exists);
            let v = &cycle.vertices;
            prop_assert!(v.len() % 2 == 1);
            for (i, j) in cycle.edges() {
                prop_assert!(!xm[(i - 1, j - 1)].is_zero());
            }
        }
    }
    Ok(())
}

fn oracle_agrees<S: Scalar>(seed: u64, n: usize) -> Result<(), TestCaseError> {
    let oracle = Oracle::default();
    let x: NilpotentUpper<S> = random::nilpotent(n, &mut rng_for(seed, 5));
    let unipotent = oracle.reverser_feasible(&x, GroupTag::Unipotent).unwrap();
    prop_assert_eq!(unipotent.is_feasible(), x.is_zero());
    let signed = oracle.reverser_feasible(&x, GroupTag::SignedUnipotent).unwrap();
    if let Some(g) = signed.reverser() {
        prop_assert_eq!(g.conjugate(x.as_matrix()).unwrap(), -x.as_matrix());
    }
    if x.is_star() {
        prop_assert!(signed.is_feasible());
    }
    Ok(())
}

fn certificate_round_trip<S: Scalar>(seed: u64, n: usize) -> Result<(), TestCaseError> {
    let x: NilpotentUpper<S> = random::star(n, &mut rng_for(seed, 6));
    let cert = reverse_star(&x).unwrap().certificate;
    let doc = CertificateDocument::from_certificate(&cert, Some(seed)).unwrap();
    let back = CertificateDocument::from_json(&doc.to_json()).unwrap();
    prop_assert_eq!(&back, &doc);
    prop_assert_eq!(back.to_certificate::<S>().unwrap(), cert);
    prop_assert!(check_document(&back).unwrap());
    prop_assert_eq!(parse_matrix::<S>(&x.as_matrix().to_text()).unwrap(), x.into_matrix());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induction_is_sound(seed in any::<u64>(), n in 1usize..=7) {
        all_rings!(induction_sound, seed, n);
    }

    #[test]
    fn group_reversal_via_log(seed in any::<u64>(), n in 2usize..=6) {
        all_rings!(group_transport, seed, n);
    }

    #[test]
    fn exp_and_log_are_inverse(seed in any::<u64>(), n in 1usize..=7) {
        all_rings!(exp_log_inverse, seed, n);
    }

    #[test]
    fn jordan_data_is_consistent(seed in any::<u64>(), n in 1usize..=7) {
        all_rings!(jordan_consistent, seed, n);
    }

    #[test]
    fn parity_matches_brute_force(seed in any::<u64>(), n in 1usize..=12) {
        all_rings!(parity_correct, seed, n);
    }

    #[test]
    fn oracle_matches_theorems(seed in any::<u64>(), n in 2usize..=4) {
        all_rings!(oracle_agrees, seed, n);
    }

    #[test]
    fn certificates_round_trip(seed in any::<u64>(), n in 1usize..=6) {
        all_rings!(certificate_round_trip, seed, n);
    }
}
