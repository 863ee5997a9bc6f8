mod common;

use common::*;
use formality_core::algebra::PolyDiffOp;
use formality_core::hochschild::{cup, hkr, hochschild_d, hochschild_d_extensional};
use proptest::prelude::*;

fn sign(k: usize) -> formality_core::algebra::Rational {
    formality_core::algebra::rational::rat(if k.is_multiple_of(2) { 1 } else { -1 }, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn d_squares_to_zero(op in polydiff(1)) {
        prop_assert!(hochschild_d(&hochschild_d(&op)).is_zero());
    }

    #[test]
    fn d_squares_to_zero_arity_two(op in polydiff(2)) {
        prop_assert!(hochschild_d(&hochschild_d(&op)).is_zero());
    }

    #[test]
    fn symbolic_d_matches_evaluation(op in polydiff(2), fs in polynomials(3)) {
        let symbolic = hochschild_d(&op).evaluate(&fs).unwrap();
        prop_assert_eq!(&symbolic, &d_by_evaluation(&op, &fs));
        prop_assert_eq!(&symbolic, &hochschild_d_extensional(&op, &fs).unwrap());
    }

    #[test]
    fn graded_leibniz(a in polydiff(1), b in polydiff(2)) {
        // d(a∪b) = da∪b + (-1)^{|a|} a∪db
        let lhs = hochschild_d(&cup(&a, &b));
        let rhs = cup(&hochschild_d(&a), &b).add(&cup(&a, &hochschild_d(&b)).scale(&sign(a.arity())));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_leibniz_even(a in polydiff(2), b in polydiff(1)) {
        let lhs = hochschild_d(&cup(&a, &b));
        let rhs = cup(&hochschild_d(&a), &b).add(&cup(&a, &hochschild_d(&b)).scale(&sign(a.arity())));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cup_is_associative(a in polydiff(1), b in polydiff(0), c in polydiff(2)) {
        prop_assert_eq!(cup(&cup(&a, &b), &c), cup(&a, &cup(&b, &c)));
    }

    #[test]
    fn cup_matches_evaluation(a in polydiff(1), b in polydiff(2), fs in polynomials(3)) {
        let lhs = cup(&a, &b).evaluate(&fs).unwrap();
        let rhs = &a.evaluate(&fs[..1]).unwrap() * &b.evaluate(&fs[1..]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hkr_image_is_closed(g1 in polyvector(1), g2 in polyvector(2), g3 in polyvector(3)) {
        for g in [g1, g2, g3] {
            prop_assert!(hochschild_d(&hkr(&g)).is_zero());
        }
    }
}

#[test]
fn d_on_identity_and_constants() {
    use formality_core::algebra::{MultiIndex, OpTerm, Polynomial};
    let id = PolyDiffOp::from_terms(1, vec![OpTerm::new(Polynomial::one(), vec![MultiIndex::one()])]).unwrap();
    let (f, g) = (Polynomial::x(1), &Polynomial::x(2) * &Polynomial::x(2));
    assert_eq!(hochschild_d(&id).evaluate(&[f.clone(), g.clone()]).unwrap(), &f * &g);
    assert!(hochschild_d(&PolyDiffOp::constant(Polynomial::x(3))).is_zero());
    assert!(hochschild_d_extensional(&id, &[f]).is_err());
}
