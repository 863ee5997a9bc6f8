mod common;

use common::*;
use formality_core::algebra::rational::rat;
use formality_core::algebra::{PolyDiffOp, Polynomial, Polyvector, VarIndex};
use proptest::prelude::*;

fn v(i: u32) -> VarIndex {
    VarIndex::new(i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn partials_commute(a in polynomial(), i in 1..=VARS, j in 1..=VARS) {
        prop_assert_eq!(a.partial(v(i)).partial(v(j)), a.partial(v(j)).partial(v(i)));
    }

    #[test]
    fn partial_is_a_derivation(a in polynomial(), b in polynomial(), i in 1..=VARS) {
        let lhs = (&a * &b).partial(v(i));
        let rhs = &(&a.partial(v(i)) * &b) + &(&a * &b.partial(v(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_associative(a in polyvector(1), b in polyvector(1), c in polyvector(2)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn wedge_is_graded_commutative(a in polyvector(1), b in polyvector(2), c in polyvector(1)) {
        // (-1)^{|a||b|}
        prop_assert_eq!(a.wedge(&b), b.wedge(&a));
        prop_assert_eq!(a.wedge(&c), c.wedge(&a).scale(&rat(-1, 1)));
    }

    #[test]
    fn extraction_is_alternating(g in polyvector(3), i in 1..=VARS, j in 1..=VARS, k in 1..=VARS) {
        let base = g.extract(&[v(i), v(j), v(k)]).unwrap();
        prop_assert_eq!(g.extract(&[v(j), v(i), v(k)]).unwrap(), -&base);
        prop_assert_eq!(g.extract(&[v(j), v(k), v(i)]).unwrap(), base.clone());
        if i == j {
            prop_assert!(base.is_zero());
        }
    }

    #[test]
    fn normalize_preserves_evaluation(op in polydiff(2), fs in polynomials(2)) {
        prop_assert_eq!(op.evaluate(&fs).unwrap(), op.normalize().evaluate(&fs).unwrap());
    }

    #[test]
    fn evaluation_is_multilinear(op in polydiff(2), f in polynomial(), g in polynomial(), h in polynomial(), c in rational()) {
        let lhs = op.evaluate(&[&f + &g.scale(&c), h.clone()]).unwrap();
        let rhs = &op.evaluate(&[f, h.clone()]).unwrap() + &op.evaluate(&[g, h]).unwrap().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trips(p in polynomial(), g in polyvector(2), op in polydiff(2)) {
        let p2: Polynomial = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        let g2: Polyvector = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        let op2: PolyDiffOp = serde_json::from_str(&serde_json::to_string(&op).unwrap()).unwrap();
        prop_assert_eq!(p, p2);
        prop_assert_eq!(g, g2);
        prop_assert_eq!(op, op2);
    }
}

#[test]
fn extraction_normalization() {
    let g = Polyvector::wedge_of(&[1, 2]);
    assert_eq!(g.extract(&[v(1), v(2)]).unwrap(), Polynomial::one());
    assert_eq!(g.extract(&[v(2), v(1)]).unwrap(), -Polynomial::one());
    assert!(g.extract(&[v(1)]).is_err());
}

#[test]
fn zero_arity_operator_is_a_constant() {
    let op = PolyDiffOp::constant(Polynomial::x(2));
    assert_eq!(op.evaluate(&[]).unwrap(), Polynomial::x(2));
    assert!(op.evaluate(&[Polynomial::one()]).is_err());
}
