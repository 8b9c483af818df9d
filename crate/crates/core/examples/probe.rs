// scratch probe
use kinkcharge::continuum::*;
use kinkcharge::lattice::*;

fn main() {
    let config = ChainConfig {
        sites: 401, t0: 1.0, delta_t: 0.1, xi: 8.0,
        boundary: Boundary::Open, walls: vec![200],
        occupancy: Occupancy::ZeroModesEmpty,
    };
    let analysis = analyze(&config, None).unwrap();
    let mode = analysis.spectral.vectors[analysis.midgap.indices[0]].clone();
    // Five times the decay rate: mode five times narrower.
    let p = PhononProfile::tanh_kink(0.5, 8.0, 200.0, 0.01).unwrap();
    let zm = zero_mode(&p).unwrap();
    println!("narrow vs wide: {:?}", compare_to_lattice(&zm, &mode, 1.0));
}
