mod common;

use common::{mono, octagon, pentagon, square, sum, thetas};
use superlambda::cc::{
    cc_object, classical_cc, equivalence_sweep, flip_sign_check, lambda, ptolemy_check,
    ptolemy_sweep, quad_of_arc, CCObject,
};
use superlambda::snake::{classical_expansion, super_lambda_dimer};
use superlambda::{super_cc, Algebra, Error, SuperExpr};

#[test]
fn pentagon_character_matches_expansion() {
    let ot = pentagon();
    let a = ot.algebra();
    let body = sum(&[
        mono(a, 1, &[0, 2]),
        mono(a, 1, &[0, 1]).mul(&thetas(a, &[2, 1])).unwrap(),
        mono(a, 1, &[0, 0]),
        mono(a, 1, &[1, 1]).mul(&thetas(a, &[3, 1])).unwrap(),
        mono(a, 1, &[1, 0]).mul(&thetas(a, &[3, 2])).unwrap(),
        mono(a, 1, &[2, 0]),
    ]);
    let expected = body.mul(&mono(a, 1, &[-2, -2])).unwrap();
    assert_eq!(super_cc(&ot, 0, 2).unwrap(), expected);
    assert_eq!(super_cc(&ot, 2, 0).unwrap(), expected);
}

#[test]
fn square_character() {
    let ot = square();
    let a = ot.algebra();
    let expected = sum(&[mono(a, 2, &[-2]), mono(a, 1, &[-2]).mul(&thetas(a, &[1, 2])).unwrap()]);
    assert_eq!(super_cc(&ot, 1, 3).unwrap(), expected);
    let classical = mono(a, 2, &[-2]);
    assert_eq!(classical_cc(&ot, 1, 3).unwrap(), classical);
}

#[test]
fn squaring_the_loop_character() {
    let a = Algebra::standard(1, 2);
    let root = mono(&a, 1, &[1]);
    let t21 = thetas(&a, &[2, 1]);
    let base = sum(&[mono(&a, 1, &[0]), root.mul(&t21).unwrap(), mono(&a, 1, &[2])])
        .mul(&mono(&a, 1, &[-2]))
        .unwrap();
    let expanded = sum(&[
        mono(&a, 1, &[0]),
        root.mul(&t21).unwrap().scale(&2.into()),
        mono(&a, 2, &[2]),
        mono(&a, 2, &[3]).mul(&t21).unwrap(),
        mono(&a, 1, &[4]),
    ])
    .mul(&mono(&a, 1, &[-4]))
    .unwrap();
    assert_eq!(base.mul(&base).unwrap(), expanded);
}

#[test]
fn octagon_classical_character() {
    let ot = octagon();
    assert_eq!(classical_cc(&ot, 2, 6).unwrap(), classical_expansion(&ot, 2, 6).unwrap());
    assert_eq!(super_cc(&ot, 2, 7).unwrap(), super_lambda_dimer(&ot, 2, 7).unwrap());
}

#[test]
fn character_rejects_trivial_arcs() {
    let ot = pentagon();
    assert_eq!(super_cc(&ot, 1, 3).unwrap_err(), Error::ArcInTriangulation(1, 3));
    assert_eq!(super_cc(&ot, 0, 1).unwrap_err(), Error::BoundaryArc(0, 1));
    assert!(matches!(super_cc(&ot, 0, 9), Err(Error::OutOfRangeVertex { .. })));
    assert_eq!(lambda(&ot, 0, 1).unwrap(), SuperExpr::one(ot.algebra()));
    assert_eq!(lambda(&ot, 1, 3).unwrap(), SuperExpr::var(ot.algebra(), 2));
}

#[test]
fn direct_sums_multiply() {
    let ot = pentagon();
    let nested = CCObject::DirectSum(vec![
        CCObject::Induced(0, 2),
        CCObject::DirectSum(vec![CCObject::ShiftedProjective(1), CCObject::Induced(0, 3)]),
    ]);
    let flat = nested.clone().flatten();
    assert_eq!(
        flat,
        CCObject::DirectSum(vec![
            CCObject::Induced(0, 2),
            CCObject::ShiftedProjective(1),
            CCObject::Induced(0, 3),
        ])
    );
    let expected = super_cc(&ot, 0, 2)
        .unwrap()
        .mul(&SuperExpr::var(ot.algebra(), 1))
        .unwrap()
        .mul(&super_cc(&ot, 0, 3).unwrap())
        .unwrap();
    assert_eq!(cc_object(&ot, &nested).unwrap(), expected);
    assert!(cc_object(&ot, &CCObject::ShiftedProjective(5)).is_err());
}

#[test]
fn ptolemy_on_square_and_pentagon() {
    let r = ptolemy_check(&square(), [0, 1, 2, 3]).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.e, (0, 2));
    assert_eq!(r.f, (1, 3));

    let ot = pentagon();
    let quad = quad_of_arc(&ot, 1);
    let r = ptolemy_check(&ot, quad).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.quad, [0, 1, 3, 4]);
    assert_eq!(r.f, (0, 3));
}

#[test]
fn ptolemy_rejects_bad_quadrilaterals() {
    let ot = pentagon();
    assert!(matches!(ptolemy_check(&ot, [0, 0, 1, 2]), Err(Error::Input(_))));
    assert!(matches!(ptolemy_check(&ot, [0, 1, 2, 9]), Err(Error::Input(_))));
    assert_eq!(ptolemy_check(&ot, [0, 1, 2, 3]).unwrap_err(), Error::NonMonomialConfiguration);
}

#[test]
fn flips_return_after_eight_steps() {
    for ot in [square(), pentagon(), octagon()] {
        for label in 1..=ot.n() {
            let r = flip_sign_check(&ot, label).unwrap();
            assert!(r.product_invariant && r.double_flip_matches, "{r:?}");
            assert!(r.double_flip_spin_equivalent && r.four_flip_spin_equivalent, "{r:?}");
            assert_eq!(r.literal_period, Some(8));
            assert!(r.pass);
        }
    }
}

#[test]
fn routes_agree_up_to_seven_vertices() {
    let r = equivalence_sweep(7).unwrap();
    assert!(r.ok(), "{:?}", r.failures.first());
    assert_eq!(r.cases, r.passes);
    let r = ptolemy_sweep(7).unwrap();
    assert!(r.ok(), "{:?}", r.failures.first());
}
