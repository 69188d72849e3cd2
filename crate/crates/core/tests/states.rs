use std::f64::consts::FRAC_1_SQRT_2;

use phaserep::half::HalfInt;
use phaserep::states::{build_state, QuantumState, StateSpec};
use proptest::prelude::*;

fn amp_at(state: &QuantumState, dj: i32, dm: i32) -> f64 {
    let e = state
        .entries()
        .iter()
        .find(|e| e.j.doubled() == dj && e.m.doubled() == dm)
        .unwrap_or_else(|| panic!("no entry at (2j={dj}, 2m={dm})"));
    assert_eq!(e.amp.im, 0.0);
    e.amp.re
}

#[test]
fn noon_two_entry_normalization() {
    let state = build_state(&StateSpec::Noon { j_max: 2 }).unwrap();
    assert_eq!(state.entries().len(), 2);
    assert!((amp_at(&state, 4, 4) - FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((amp_at(&state, 4, -4) - FRAC_1_SQRT_2).abs() < 1e-15);
}

#[test]
fn noonvac_weights() {
    // Raw weights (1/sqrt(6), 1/sqrt(6), 1) normalize to vacuum sqrt(3)/2
    // and path amplitudes 1/(2 sqrt(2)); the path component carries 1/4
    // of the probability.
    let state = build_state(&StateSpec::NoonVac { j_max: 8, n: 3.0 }).unwrap();
    assert_eq!(state.entries().len(), 3);
    assert!((amp_at(&state, 0, 0) - 3f64.sqrt() / 2.0).abs() < 1e-15);
    assert!((amp_at(&state, 16, 16) - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
    assert!((amp_at(&state, 16, -16) - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
    let path_prob = 2.0 * (1.0 / (2.0 * 2f64.sqrt())).powi(2);
    assert!((path_prob - 0.25).abs() < 1e-15);
}

#[test]
fn substate_weights() {
    // Raw weights (1, 1, 1, 1/sqrt(2), 1/sqrt(2)) on the vacuum,
    // sub-harmonic, and path kets give norm^2 = 2*(1/2) + 2*1 + 1 = 4.
    let state = build_state(&StateSpec::SubState { j_max: 4, r1: 1.0 }).unwrap();
    assert_eq!(state.entries().len(), 5);
    assert!((amp_at(&state, 0, 0) - 0.5).abs() < 1e-15);
    assert!((amp_at(&state, 4, 4) - 0.5).abs() < 1e-15);
    assert!((amp_at(&state, 4, -4) - 0.5).abs() < 1e-15);
    assert!((amp_at(&state, 8, 8) - FRAC_1_SQRT_2 / 2.0).abs() < 1e-15);
    assert!((amp_at(&state, 8, -8) - FRAC_1_SQRT_2 / 2.0).abs() < 1e-15);
}

#[test]
fn substate_keeps_structural_entries_at_zero_weight() {
    // The alternate-bin protocol is defined by the family structure, so
    // the sub-harmonic kets stay (with zero amplitude) at r1 = 0.
    let state = build_state(&StateSpec::SubState { j_max: 8, r1: 0.0 }).unwrap();
    assert_eq!(state.entries().len(), 5);
    assert_eq!(amp_at(&state, 8, 8), 0.0);
    assert!((state.m_gap().unwrap() - 4.0).abs() < 1e-15);
}

#[test]
fn expected_j_values() {
    let noon = build_state(&StateSpec::Noon { j_max: 5 }).unwrap();
    assert!((noon.expected_j() - 5.0).abs() < 1e-12);

    for r1 in [0.0, 0.5, 1.0, 2.0] {
        let sub = build_state(&StateSpec::SubState { j_max: 8, r1 }).unwrap();
        assert!(
            (sub.expected_j() - 4.0).abs() < 1e-12,
            "sub-state cost must not depend on r1 = {r1}"
        );
    }

    let nv = build_state(&StateSpec::NoonVac { j_max: 8, n: 3.0 }).unwrap();
    assert!((nv.expected_j() - 2.0).abs() < 1e-12);
}

#[test]
fn photon_cost_values() {
    assert!(
        (build_state(&StateSpec::Noon { j_max: 2 })
            .unwrap()
            .photon_cost()
            - 4.0)
            .abs()
            < 1e-12
    );
    assert!(
        (build_state(&StateSpec::NoonVac { j_max: 8, n: 3.0 })
            .unwrap()
            .photon_cost()
            - 4.0)
            .abs()
            < 1e-12
    );
    assert!(
        (build_state(&StateSpec::SubState { j_max: 8, r1: 1.0 })
            .unwrap()
            .photon_cost()
            - 8.0)
            .abs()
            < 1e-12
    );
}

#[test]
fn noonvac_cost_law() {
    for n in [1.0, 2.0, 3.0, 8.0, 67.9411] {
        let state = build_state(&StateSpec::NoonVac { j_max: 8, n }).unwrap();
        assert!(
            (state.photon_cost() - 16.0 / (n + 1.0)).abs() < 1e-12,
            "cost law at n = {n}"
        );
    }
}

#[test]
fn m_gap_values() {
    let noon = build_state(&StateSpec::Noon { j_max: 2 }).unwrap();
    assert!((noon.m_gap().unwrap() - 4.0).abs() < 1e-15);

    let nv = build_state(&StateSpec::NoonVac { j_max: 8, n: 3.0 }).unwrap();
    assert!((nv.m_gap().unwrap() - 8.0).abs() < 1e-15);

    let sub = build_state(&StateSpec::SubState { j_max: 8, r1: 1.0 }).unwrap();
    assert!((sub.m_gap().unwrap() - 4.0).abs() < 1e-15);
}

#[test]
fn fock_mapping_consistency() {
    // Every constructed entry must satisfy j = (n_u + n_d)/2 and
    // m = (n_u - n_d)/2 for the Fock pair it came from.
    let state = build_state(&StateSpec::SubState { j_max: 8, r1: 1.0 }).unwrap();
    let expect: Vec<(HalfInt, HalfInt)> = [(16, 0), (0, 16), (8, 0), (0, 8), (0, 0)]
        .iter()
        .map(|&(n_u, n_d): &(i32, i32)| {
            (
                HalfInt::from_doubled(n_u + n_d),
                HalfInt::from_doubled(n_u - n_d),
            )
        })
        .collect();
    for (j, m) in expect {
        assert!(
            state.entries().iter().any(|e| e.j == j && e.m == m),
            "missing entry (j = {j}, m = {m})"
        );
    }
}

fn spec_strategy() -> impl Strategy<Value = StateSpec> {
    prop_oneof![
        (1u32..=12).prop_map(|j_max| StateSpec::Noon { j_max }),
        (1u32..=6, 0.0f64..100.0).prop_map(|(h, r1)| StateSpec::SubState { j_max: 2 * h, r1 }),
        (1u32..=12, 1e-3f64..100.0).prop_map(|(j_max, n)| StateSpec::NoonVac { j_max, n }),
        (1u32..=6, 0.0f64..10.0, 1e-3f64..4.0).prop_map(|(h, r1, r2)| StateSpec::General {
            j_max: 2 * h,
            r1,
            r2
        }),
    ]
}

proptest! {
    #[test]
    fn construction_normalizes(spec in spec_strategy()) {
        let state = build_state(&spec).unwrap();
        let norm: f64 = state.entries().iter().map(|e| e.amp.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        for e in state.entries() {
            prop_assert!(e.m.abs() <= e.j);
            prop_assert_eq!((e.j.doubled() - e.m.doubled()) % 2, 0);
        }
    }

    #[test]
    fn substate_cost_is_half_jmax(h in 1u32..=8, r1 in 0.0f64..1000.0) {
        let state = build_state(&StateSpec::SubState { j_max: 2 * h, r1 }).unwrap();
        prop_assert!((state.expected_j() - f64::from(h)).abs() < 1e-12);
    }
}
