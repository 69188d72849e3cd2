mod common;

use std::f64::consts::TAU;

use num_complex::Complex64;
use phaserep::half::HalfInt;
use phaserep::rotation::{interferometer_probs, rotation_block};
use phaserep::states::{build_state, StateSpec};
use proptest::prelude::*;

#[test]
fn spectral_matches_series_oracle() {
    // Spectral exponential against the independent scaled-Taylor oracle.
    for dj in 1..=8 {
        for phi in [0.3, 1.1, 2.7, -0.9] {
            let spectral = rotation_block(HalfInt::from_doubled(dj), phi).unwrap();
            let series = common::rotation_oracle(dj, phi);
            let mut worst = 0.0f64;
            for r in 0..spectral.dim() {
                for c in 0..spectral.dim() {
                    worst = worst.max((spectral.get(r, c) - series.get(r, c)).norm());
                }
            }
            assert!(
                worst < 1e-10,
                "dj = {dj}, phi = {phi}: deviation {worst:.2e}"
            );
        }
    }
}

#[test]
fn unitarity_over_j_and_phi() {
    for dj in 1..=16 {
        for k in 0..32 {
            let phi = TAU * k as f64 / 32.0;
            let dev = rotation_block(HalfInt::from_doubled(dj), phi)
                .unwrap()
                .unitarity_deviation();
            assert!(dev < 1e-12, "dj = {dj}, phi = {phi}: deviation {dev:.2e}");
        }
    }
}

#[test]
fn rotations_compose() {
    let j = HalfInt::from_int(3);
    for (p1, p2) in [(0.2, 0.9), (1.3, -2.1), (3.0, 3.0)] {
        let a = rotation_block(j, p1).unwrap();
        let b = rotation_block(j, p2).unwrap();
        let ab = rotation_block(j, p1 + p2).unwrap();
        for r in 0..a.dim() {
            for c in 0..a.dim() {
                let mut acc = Complex64::ZERO;
                for k in 0..a.dim() {
                    acc += a.get(r, k) * b.get(k, c);
                }
                assert!(
                    (acc - ab.get(r, c)).norm() < 1e-11,
                    "composition at ({r},{c}) for ({p1},{p2})"
                );
            }
        }
    }
}

#[test]
fn noon_statistics_at_zero_phase() {
    let state = build_state(&StateSpec::Noon { j_max: 2 }).unwrap();
    let probs = interferometer_probs(&state, 0.0);
    assert!((probs.prob(HalfInt::from_int(2)) - 0.5).abs() < 1e-14);
    assert!((probs.prob(HalfInt::from_int(-2)) - 0.5).abs() < 1e-14);
    assert!(probs.prob(HalfInt::from_int(0)) < 1e-14);
    assert!(probs.prob(HalfInt::from_int(1)) < 1e-14);
}

#[test]
fn statistics_agree_with_block_application() {
    // Rotating the amplitude vector with the dense block reproduces the
    // output statistics.
    let state = build_state(&StateSpec::Noon { j_max: 2 }).unwrap();
    let probs = interferometer_probs(&state, 1.1);
    let block = rotation_block(HalfInt::from_int(2), 1.1).unwrap();
    let mut psi = vec![Complex64::ZERO; 5];
    for e in state.entries() {
        psi[((e.m.doubled() + 4) / 2) as usize] = e.amp;
    }
    for (k, z) in block.apply(&psi).iter().enumerate() {
        let m = block.m_at(k);
        assert!((probs.prob(m) - z.norm_sqr()).abs() < 1e-13);
    }
}

#[test]
fn noon_statistics_match_series_oracle() {
    // Rotate the amplitude vector with the independent 5x5 exponential.
    let state = build_state(&StateSpec::Noon { j_max: 2 }).unwrap();
    let probs = interferometer_probs(&state, 0.7);
    let oracle = common::rotation_oracle(4, 0.7);
    let mut psi = vec![Complex64::ZERO; 5];
    for e in state.entries() {
        psi[((e.m.doubled() + 4) / 2) as usize] = e.amp;
    }
    let rotated = oracle.apply(&psi);
    for (k, z) in rotated.iter().enumerate() {
        let m = HalfInt::from_doubled(-4 + 2 * k as i32);
        assert!(
            (probs.prob(m) - z.norm_sqr()).abs() < 1e-10,
            "P_m mismatch at m = {m}"
        );
    }
}

#[test]
fn single_photon_statistics() {
    // One photon split across the arms is the j = 1/2 block; under the
    // arm-phase rotation the up-arm probability is cos^2(phi/2).
    use phaserep::states::{AmplitudeEntry, QuantumState};
    let state = QuantumState::normalized(vec![AmplitudeEntry::from_fock(1, 0, 1.0)]).unwrap();
    for phi in [0.0, 0.4, 1.3, 2.9] {
        let probs = interferometer_probs(&state, phi);
        let up = probs.prob(HalfInt::from_doubled(1));
        let down = probs.prob(HalfInt::from_doubled(-1));
        assert!((up - (phi / 2.0).cos().powi(2)).abs() < 1e-13, "phi = {phi}");
        assert!((up + down - 1.0).abs() < 1e-13);
    }
    let json = serde_json::to_value(interferometer_probs(&state, 0.5)).unwrap();
    assert!(json["probs"].get("1").is_some(), "doubled half-integer keys");
}

#[test]
fn measurement_distribution_json_uses_doubled_keys() {
    let state = build_state(&StateSpec::Noon { j_max: 1 }).unwrap();
    let probs = interferometer_probs(&state, 0.25);
    let json = serde_json::to_value(&probs).unwrap();
    assert!(json["probs"].get("-2").is_some());
    assert!(json["probs"].get("2").is_some());
    assert!((json["phi"].as_f64().unwrap() - 0.25).abs() < 1e-15);
}

fn any_spec() -> impl Strategy<Value = StateSpec> {
    prop_oneof![
        (1u32..=8).prop_map(|j_max| StateSpec::Noon { j_max }),
        (1u32..=4, 0.0f64..10.0).prop_map(|(h, r1)| StateSpec::SubState { j_max: 2 * h, r1 }),
        (1u32..=8, 0.1f64..100.0).prop_map(|(j_max, n)| StateSpec::NoonVac { j_max, n }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn probabilities_conserved(spec in any_spec(), phi in -7.0f64..7.0) {
        let state = build_state(&spec).unwrap();
        let probs = interferometer_probs(&state, phi);
        prop_assert!((probs.total() - 1.0).abs() < 1e-12);
        for p in probs.probs.values() {
            prop_assert!(*p >= 0.0 && *p <= 1.0 + 1e-12);
        }
    }
}
