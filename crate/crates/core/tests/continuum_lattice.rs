//! Cross-validation of the continuum zero mode against the lattice midgap
//! state on a single-wall chain.

use kinkcharge::continuum::{compare_to_lattice, zero_mode, ContinuumError, PhononProfile};
use kinkcharge::lattice::{analyze, Boundary, ChainConfig, Occupancy};

fn single_wall_analysis(xi: f64) -> kinkcharge::lattice::ChainAnalysis {
    let config = ChainConfig {
        sites: 401,
        t0: 1.0,
        delta_t: 0.1,
        xi,
        boundary: Boundary::Open,
        walls: vec![200],
        occupancy: Occupancy::ZeroModesEmpty,
    };
    analyze(&config, None).unwrap()
}

fn midgap_mode(analysis: &kinkcharge::lattice::ChainAnalysis) -> &[f64] {
    &analysis.spectral.vectors[analysis.midgap.indices[0]]
}

/// Continuum profile whose decay rate matches the lattice texture: the local
/// gap parameter per site is `delta_t / t0` and the wall width is `xi`.
fn matched_profile(xi: f64) -> PhononProfile {
    PhononProfile::tanh_kink(0.1, xi, 240.0, 0.01).unwrap()
}

#[test]
fn wide_wall_envelope_matches_continuum() {
    let analysis = single_wall_analysis(8.0);
    let zm = zero_mode(&matched_profile(8.0)).unwrap();
    let distance = compare_to_lattice(&zm, midgap_mode(&analysis), 1.0).unwrap();
    assert!(distance <= 0.05, "distance {distance}");
}

#[test]
fn narrow_wall_distance_grows_but_reports() {
    let wide = {
        let analysis = single_wall_analysis(8.0);
        compare_to_lattice(
            &zero_mode(&matched_profile(8.0)).unwrap(),
            midgap_mode(&analysis),
            1.0,
        )
        .unwrap()
    };
    let narrow = {
        let analysis = single_wall_analysis(2.0);
        compare_to_lattice(
            &zero_mode(&matched_profile(2.0)).unwrap(),
            midgap_mode(&analysis),
            1.0,
        )
        .unwrap()
    };
    // Discretization bites harder at xi = 2; still a valid, reported number.
    assert!(narrow > wide, "narrow {narrow} vs wide {wide}");
    assert!(narrow < 0.05);
}

#[test]
fn bulk_state_is_orthogonality_dominated() {
    let analysis = single_wall_analysis(8.0);
    // A deep valence state: delocalized, nothing like the bound mode. Its
    // envelope overlaps the localized profile only weakly, so the distance
    // between unit vectors lands near sqrt(2) (measured ~1.15).
    let bulk = &analysis.spectral.vectors[10];
    let zm = zero_mode(&matched_profile(8.0)).unwrap();
    let distance = compare_to_lattice(&zm, bulk, 1.0).unwrap();
    assert!(distance > 1.0, "distance {distance}");
    assert!(distance < 2.0f64.sqrt() + 0.05);
}

#[test]
fn mismatched_widths_are_rejected() {
    let analysis = single_wall_analysis(8.0);
    // Five times the decay rate gives a mode five times narrower.
    let narrow_profile = PhononProfile::tanh_kink(0.5, 8.0, 200.0, 0.01).unwrap();
    let zm = zero_mode(&narrow_profile).unwrap();
    let err = compare_to_lattice(&zm, midgap_mode(&analysis), 1.0).unwrap_err();
    assert!(matches!(err, ContinuumError::ScaleMismatch { .. }));
}
