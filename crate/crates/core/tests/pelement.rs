use num_bigint::BigInt;
use proptest::prelude::*;

use schur_core::symring::{decompose_pseudo_unit, recompose, PElement, Polynomial, Ring};

/// Terms over `w, x, y, p` with small exponents and coefficients.
fn terms() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 4), -9i64..=9), 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn decompose_then_recompose_is_identity(t in terms()) {
        let ring = Ring::for_params(&["x", "y"]).unwrap();
        let f = Polynomial::from_terms(&ring, t.into_iter().map(|(e, c)| (e, BigInt::from(c))));
        prop_assume!(!f.is_zero());
        let e = PElement::from_polynomial(&f);
        let (l, u) = decompose_pseudo_unit(&e).unwrap();
        prop_assert_eq!(Some(l), f.p_valuation());
        prop_assert!(!u.constant_term().is_zero());
        prop_assert_eq!(recompose(l, &u), e.clone());
        prop_assert_eq!(recompose(l, &u).to_polynomial(), Some(f));
    }
}

#[test]
fn zero_has_no_decomposition() {
    let ring = Ring::for_params(&["x"]).unwrap();
    assert!(decompose_pseudo_unit(&PElement::zero(&ring)).is_err());
}
