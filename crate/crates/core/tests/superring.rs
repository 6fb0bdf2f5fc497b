mod common;

use std::sync::Arc;

use common::{mono, thetas};
use num_bigint::BigInt;
use proptest::prelude::*;
use superlambda::superring::sqrt_monomial;
use superlambda::{Algebra, Error, HalfMonomial, SuperExpr};

const NV: usize = 3;
const NT: usize = 3;

fn alg() -> Arc<Algebra> {
    Algebra::standard(NV, NT)
}

type RawTerm = (i64, Vec<i32>, Vec<usize>);

fn term() -> impl Strategy<Value = RawTerm> {
    (
        -3i64..=3,
        prop::collection::vec(-3i32..=3, NV),
        prop::sample::subsequence((1..=NT).collect::<Vec<_>>(), 0..=NT).prop_shuffle(),
    )
}

fn expr() -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec(term(), 0..4)
}

fn build(a: &Arc<Algebra>, raw: &[RawTerm]) -> SuperExpr {
    raw.iter().fold(SuperExpr::zero(a), |acc, (c, e, t)| {
        acc.add(&mono(a, *c, e).mul(&thetas(a, t)).unwrap()).unwrap()
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(x in expr(), y in expr(), z in expr()) {
        let a = alg();
        let (x, y, z) = (build(&a, &x), build(&a, &y), build(&a, &z));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn multiplication_distributes(x in expr(), y in expr(), z in expr()) {
        let a = alg();
        let (x, y, z) = (build(&a, &x), build(&a, &y), build(&a, &z));
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_parts_anticommute(x in expr(), y in expr()) {
        let a = alg();
        let (x, y) = (build(&a, &x).odd_part(), build(&a, &y).odd_part());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap().neg());
        prop_assert!(x.mul(&x).unwrap().is_zero());
    }

    #[test]
    fn even_parts_are_central(x in expr(), y in expr()) {
        let a = alg();
        let (x, y) = (build(&a, &x).even_part(), build(&a, &y));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }

    #[test]
    fn theta_words_follow_permutation_sign(t in prop::sample::subsequence(vec![1usize, 2, 3], 0..=3).prop_shuffle()) {
        let a = alg();
        let mut sorted = t.clone();
        sorted.sort_by(|x, y| y.cmp(x));
        let inversions = (0..t.len())
            .flat_map(|i| (i + 1..t.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| t[i] < t[j])
            .count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(thetas(&a, &t), thetas(&a, &sorted).scale(&BigInt::from(sign)));
    }

    #[test]
    fn monomial_division_inverts_multiplication(x in expr(), e in prop::collection::vec(-4i32..=4, NV)) {
        let a = alg();
        let x = build(&a, &x);
        let m = HalfMonomial::from_exp2(e);
        prop_assert_eq!(x.mul_monomial(&m).div_monomial(&m), x);
    }

    #[test]
    fn square_roots_square_back(e in prop::collection::vec(-6i32..=6, NV)) {
        let m = HalfMonomial::from_exp2(e.iter().map(|x| 2 * x).collect());
        let r = sqrt_monomial(&m).unwrap();
        prop_assert_eq!(r.mul(&r), m);
    }

    #[test]
    fn canonical_string_round_trips(x in expr()) {
        let a = alg();
        let x = build(&a, &x);
        prop_assert_eq!(SuperExpr::parse(&a, &x.canonical_string()).unwrap(), x);
    }

    #[test]
    fn subtraction_cancels(x in expr()) {
        let a = alg();
        let x = build(&a, &x);
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }
}

#[test]
fn odd_half_exponent_has_no_root() {
    let m = HalfMonomial::from_exp2(vec![1, 0]);
    assert!(matches!(m.sqrt(), Err(Error::NonRepresentableRoot(_))));
}

#[test]
fn theta_squares_vanish() {
    let a = alg();
    for i in 1..=NT {
        assert!(thetas(&a, &[i, i]).is_zero());
    }
}

#[test]
fn zero_renders_as_zero() {
    assert_eq!(SuperExpr::zero(&alg()).canonical_string(), "0");
}

#[test]
fn custom_order_changes_canonical_sign() {
    let a = Algebra::new(1, &[1, 2]).unwrap();
    let e = thetas(&a, &[2, 1]);
    assert_eq!(e.canonical_string(), "-θ1θ2");
}

#[test]
fn algebras_must_match() {
    let a = Algebra::standard(2, 2);
    let b = Algebra::standard(3, 2);
    let err = SuperExpr::one(&a).mul(&SuperExpr::one(&b)).unwrap_err();
    assert!(matches!(err, Error::MismatchedAlgebra { .. }));
}

#[test]
fn parse_rejects_garbage() {
    assert!(matches!(SuperExpr::parse(&alg(), "x1^(1/3)"), Err(Error::Parse(_))));
    assert!(SuperExpr::parse(&alg(), "θ9").is_err());
}
