use bforest_core::poly::hp;
use bforest_core::{
    arithmetic_profile, is_connected, tree_count_by_oracle, tree_count_chebyshev, tree_count_closed, validate_spec,
    verify_square_structure, ConnectionSpec, Error, RawSpec,
};
use proptest::prelude::*;

fn connected_spec() -> impl Strategy<Value = Option<ConnectionSpec>> {
    (
        1u64..=14,
        proptest::collection::vec(1i64..7, 0..3),
        proptest::collection::vec(1i64..7, 0..3),
        proptest::collection::vec(0i64..14, 1..4),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(n, alphas, betas, gammas, hr, ht)| {
            let even = n % 2 == 0;
            let raw = RawSpec { n, alphas, betas, gammas, half_r: hr && even, half_t: ht && even };
            validate_spec(&raw, true).ok().filter(is_connected)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closed_form_matches_oracle(spec in connected_spec()) {
        let Some(spec) = spec else { return Ok(()) };
        let closed = tree_count_closed(&spec).unwrap();
        prop_assert_eq!(&closed.tau, &tree_count_by_oracle(&spec).tau, "{}", spec);
        let w = verify_square_structure(&spec, &closed);
        prop_assert!(w.is_ok(), "{}: {:?} {:?}", spec, w, arithmetic_profile(&spec));
    }

    #[test]
    fn chebyshev_route_rounds_to_exact(spec in connected_spec()) {
        let Some(spec) = spec else { return Ok(()) };
        let est = match tree_count_chebyshev(&spec, 48) {
            // P1 ≡ 0: no Chebyshev transform to take; only r = t = 0, s = 1 gets here
            Err(Error::DegenerateSystem) => {
                prop_assert!(spec.r() == 0 && spec.t() == 0 && spec.s() == 1, "{}", spec);
                return Ok(());
            }
            other => other.unwrap(),
        };
        let exact = tree_count_closed(&spec).unwrap().tau;
        prop_assert_eq!(est.rounded(), exact.into());
    }
}

#[test]
fn disconnected_specs_are_rejected() {
    let raw = RawSpec { n: 6, alphas: vec![2], betas: vec![2], gammas: vec![0], half_r: false, half_t: false };
    let spec = validate_spec(&raw, true).unwrap();
    assert!(!is_connected(&spec));
    assert!(tree_count_closed(&spec).is_err());
    assert_eq!(tree_count_by_oracle(&spec).tau, 0u32.into());
}

#[test]
fn large_n_is_exact_and_consistent() {
    let raw = RawSpec { n: 3000, alphas: vec![1, 7], betas: vec![2], gammas: vec![0, 5], half_r: false, half_t: false };
    let spec = validate_spec(&raw, true).unwrap();
    let t = tree_count_closed(&spec).unwrap();
    let est = tree_count_chebyshev(&spec, 64).unwrap();
    assert!(est.rel_error < 1e-40);
    let bits = hp::bits_for_digits(64);
    let exact = hp::from_bigint(&t.tau.into(), bits);
    let rel = hp::to_f64(&hp::abs(&((&est.value - &exact) / &exact)));
    assert!(rel < 1e-40, "{rel}");
}
