//! Nearest-neighbor hopping chains with domain-wall dimerization textures.
//!
//! The chain Hamiltonian is `H[n][n+1] = -t_n` with zero diagonal, so the
//! staggered sign matrix `M = diag((-1)^n)` anticommutes with it exactly and
//! the spectrum pairs as `E <-> -E`. A domain wall in the dimerization
//! envelope binds one midgap mode; the symmetrically regularized charge
//! density (occupied density minus one half per site) then localizes minus
//! half of each midgap mode's probability density around its wall. Summing
//! that density over a window enclosing one wall gives the half-unit soliton
//! charge, with no second reference chain needed.

use serde::{Deserialize, Serialize};

use crate::eigen::{self, EigenError, SymMatrix};
use crate::Interval;

/// Fraction of the bulk gap below which an eigenvalue counts as midgap.
pub const MIDGAP_THRESHOLD_FRACTION: f64 = 0.1;
/// Eigenvalues closer than this (times the matrix norm) form one degenerate
/// shell whose summed density is compared. Levels split more finely than the
/// eigensolver can resolve would otherwise leak basis-rotation noise into the
/// per-state densities; physical level spacings sit far above this.
const DEGENERACY_GROUP_TOL: f64 = 1e-6;
/// Required accuracy of the eigensolver relative to the matrix norm.
const RESIDUAL_LIMIT: f64 = 1e-10;
/// Windows must keep this many wall widths between any wall and a window edge.
const WINDOW_MARGIN_WIDTHS: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Ring,
    Open,
}

/// Whether the midgap (zero-mode) levels are occupied on top of the filled
/// valence band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Occupancy {
    ZeroModesEmpty,
    ZeroModesFilled,
}

/// Geometry and dimerization texture of one chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub sites: usize,
    /// Base hopping amplitude (sets the energy scale).
    pub t0: f64,
    /// Dimerization amplitude, `0 < delta_t < t0`.
    pub delta_t: f64,
    /// Wall width in lattice spacings.
    pub xi: f64,
    pub boundary: Boundary,
    /// Ascending wall positions (chain coordinate).
    pub walls: Vec<usize>,
    pub occupancy: Occupancy,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("chain needs at least 4 sites, got {got}")]
    TooFewSites { got: usize },
    #[error("hopping parameters must satisfy 0 < delta_t < t0, got t0={t0}, delta_t={delta_t}")]
    BadDimerization { t0: f64, delta_t: f64 },
    #[error("wall width must be at least 1 lattice spacing, got {got}")]
    WallTooNarrow { got: f64 },
    #[error("a ring needs an even number of sites to stay bipartite, got {got}")]
    OddRing { got: usize },
    #[error("a ring needs an even number of walls, got {got}")]
    OddWallCountOnRing { got: usize },
    #[error("wall at {position} outside the allowed range [{min}, {max}]")]
    WallOutOfRange { position: usize, min: usize, max: usize },
    #[error("walls at {first} and {second} are separated by {separation} < 4*xi = {required}")]
    WallsTooClose {
        first: usize,
        second: usize,
        separation: usize,
        required: f64,
    },
    #[error("hopping amplitudes must be positive, t[{index}] = {value}")]
    NonPositiveHopping { index: usize, value: f64 },
    #[error("eigensolver failed: {0}")]
    Eigen(#[from] EigenError),
    #[error("residual bound {bound:e} exceeds {limit:e}")]
    ResidualTooLarge { bound: f64, limit: f64 },
    #[error("conjugation symmetry violated: {detail} (defect {defect:e})")]
    SymmetryViolation { detail: String, defect: f64 },
    #[error("midgap count {found} does not match the topological prediction {predicted}")]
    IndexMismatch { found: usize, predicted: usize },
    #[error("window {window} is not a valid site range for {sites} sites")]
    WindowOutOfRange { window: Interval, sites: usize },
    #[error("window {window} must enclose exactly one wall, found {found}")]
    WindowMustEncloseOneWall { window: Interval, found: usize },
    #[error("window {window} comes within {distance} sites of wall {wall}; needs >= {required}")]
    WindowTouchesWall {
        window: Interval,
        wall: usize,
        distance: usize,
        required: f64,
    },
}

impl ChainConfig {
    pub fn validate(&self) -> Result<(), LatticeError> {
        if self.sites < 4 {
            return Err(LatticeError::TooFewSites { got: self.sites });
        }
        if !(self.t0.is_finite() && self.delta_t.is_finite())
            || self.delta_t <= 0.0
            || self.delta_t >= self.t0
        {
            return Err(LatticeError::BadDimerization {
                t0: self.t0,
                delta_t: self.delta_t,
            });
        }
        if !(self.xi >= 1.0) {
            return Err(LatticeError::WallTooNarrow { got: self.xi });
        }
        match self.boundary {
            Boundary::Ring => {
                if self.sites % 2 != 0 {
                    return Err(LatticeError::OddRing { got: self.sites });
                }
                if self.walls.len() % 2 != 0 {
                    return Err(LatticeError::OddWallCountOnRing {
                        got: self.walls.len(),
                    });
                }
                for &w in &self.walls {
                    if w > self.sites - 1 {
                        return Err(LatticeError::WallOutOfRange {
                            position: w,
                            min: 0,
                            max: self.sites - 1,
                        });
                    }
                }
            }
            Boundary::Open => {
                for &w in &self.walls {
                    if w < 1 || w > self.sites - 2 {
                        return Err(LatticeError::WallOutOfRange {
                            position: w,
                            min: 1,
                            max: self.sites - 2,
                        });
                    }
                }
            }
        }
        let required = 4.0 * self.xi;
        for pair in self.walls.windows(2) {
            let sep = pair[1] - pair[0];
            if (sep as f64) < required {
                return Err(LatticeError::WallsTooClose {
                    first: pair[0],
                    second: pair[1],
                    separation: sep,
                    required,
                });
            }
        }
        // On a ring the first and last wall are also neighbors.
        if self.boundary == Boundary::Ring && self.walls.len() >= 2 {
            let first = self.walls[0];
            let last = *self.walls.last().unwrap();
            let sep = self.sites - (last - first);
            if (sep as f64) < required {
                return Err(LatticeError::WallsTooClose {
                    first: last,
                    second: first,
                    separation: sep,
                    required,
                });
            }
        }
        Ok(())
    }

    /// Dimerization envelope `s(x) = prod_w tanh((w - x) / xi)`.
    ///
    /// Each factor crosses zero at its wall. The orientation keeps `s = +1`
    /// at the left end, so a single wall on an open chain leaves both chain
    /// ends terminated by strong bonds and binds exactly one midgap mode;
    /// for even wall counts the orientation drops out entirely.
    pub fn envelope(&self, x: f64) -> f64 {
        self.walls
            .iter()
            .map(|&w| ((w as f64 - x) / self.xi).tanh())
            .product()
    }
}

/// Position-dependent hopping amplitudes. A ring of `N` sites has `N` bonds
/// (the last wraps around); an open chain has `N - 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoppingProfile {
    t: Vec<f64>,
    boundary: Boundary,
}

impl HoppingProfile {
    pub fn new(t: Vec<f64>, boundary: Boundary) -> Result<HoppingProfile, LatticeError> {
        let sites = match boundary {
            Boundary::Ring => t.len(),
            Boundary::Open => t.len() + 1,
        };
        if sites < 4 {
            return Err(LatticeError::TooFewSites { got: sites });
        }
        for (index, &value) in t.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(LatticeError::NonPositiveHopping { index, value });
            }
        }
        Ok(HoppingProfile { t, boundary })
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.t
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn sites(&self) -> usize {
        match self.boundary {
            Boundary::Ring => self.t.len(),
            Boundary::Open => self.t.len() + 1,
        }
    }
}

/// Builds the hopping texture `t_n = t0 + (-1)^n * delta_t * s(n)` from the
/// wall envelope. A wall-free configuration reproduces the uniform
/// dimerization of the chosen vacuum.
pub fn build_hoppings(config: &ChainConfig) -> Result<HoppingProfile, LatticeError> {
    config.validate()?;
    let bonds = match config.boundary {
        Boundary::Ring => config.sites,
        Boundary::Open => config.sites - 1,
    };
    let t = (0..bonds)
        .map(|n| {
            let stagger = if n % 2 == 0 { 1.0 } else { -1.0 };
            config.t0 + stagger * config.delta_t * config.envelope(n as f64)
        })
        .collect();
    HoppingProfile::new(t, config.boundary)
}

/// Assembles the hopping Hamiltonian: tridiagonal with zero diagonal, plus
/// the two corner entries on a ring.
pub fn build_hamiltonian(profile: &HoppingProfile) -> SymMatrix {
    let n = profile.sites();
    let mut h = SymMatrix::zeros(n);
    for (b, &t) in profile.t.iter().enumerate() {
        h.set_sym(b, (b + 1) % n, -t);
    }
    h
}

/// Full spectrum with orthonormal eigenvectors, ascending energies, and the
/// measured residual bound `max_i ||H v_i - E_i v_i||`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralData {
    pub energies: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub residual_bound: f64,
}

/// Exact diagonalization with deterministic ordering and sign convention.
pub fn diagonalize(h: &SymMatrix) -> Result<SpectralData, LatticeError> {
    let decomposition = eigen::symmetric_eigen(h)?;
    let n = h.n();
    let mut hv = vec![0.0; n];
    let mut residual_bound = 0.0f64;
    for (lambda, vec) in decomposition
        .eigenvalues
        .iter()
        .zip(&decomposition.eigenvectors)
    {
        h.matvec(vec, &mut hv);
        let resid = hv
            .iter()
            .zip(vec)
            .map(|(a, b)| (a - lambda * b).powi(2))
            .sum::<f64>()
            .sqrt();
        residual_bound = residual_bound.max(resid);
    }
    let limit = RESIDUAL_LIMIT * h.inf_norm();
    if residual_bound > limit {
        return Err(LatticeError::ResidualTooLarge {
            bound: residual_bound,
            limit,
        });
    }
    Ok(SpectralData {
        energies: decomposition.eigenvalues,
        vectors: decomposition.eigenvectors,
        residual_bound,
    })
}

/// Outcome of the conjugation-symmetry checks.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConjugationReport {
    /// `max_i |E_i + E_{N-1-i}|` over the sorted spectrum.
    pub pairing_defect: f64,
    /// Largest pointwise mismatch between the summed densities of mirrored
    /// degenerate shells at `E` and `-E`.
    pub density_symmetry_defect: f64,
}

/// Verifies `M H M = -H` exactly for `M = diag((-1)^n)`, then bounds the
/// spectral pairing and per-energy density symmetry by `tol`.
///
/// Densities are compared shell by shell (degenerate levels summed), which is
/// the basis-independent statement of the symmetry.
pub fn conjugation_check(
    h: &SymMatrix,
    spectral: &SpectralData,
    tol: f64,
) -> Result<ConjugationReport, LatticeError> {
    let n = h.n();
    // M H M = -H means H vanishes on every same-sublattice entry.
    for i in 0..n {
        for j in i..n {
            if (i + j) % 2 == 0 && h.get(i, j) != 0.0 {
                return Err(LatticeError::SymmetryViolation {
                    detail: format!("H[{i}][{j}] = {} connects equal sublattices", h.get(i, j)),
                    defect: h.get(i, j).abs(),
                });
            }
        }
    }

    let energies = &spectral.energies;
    let mut pairing_defect = 0.0f64;
    for i in 0..n {
        pairing_defect = pairing_defect.max((energies[i] + energies[n - 1 - i]).abs());
    }
    if pairing_defect > tol {
        return Err(LatticeError::SymmetryViolation {
            detail: "spectral pairing defect exceeds tolerance".into(),
            defect: pairing_defect,
        });
    }

    let shells = degenerate_shells(energies, DEGENERACY_GROUP_TOL * h.inf_norm());
    let mut density_symmetry_defect = 0.0f64;
    let count = shells.len();
    for j in 0..count / 2 {
        let (a0, a1) = shells[j];
        let (b0, b1) = shells[count - 1 - j];
        if a1 - a0 != b1 - b0 {
            return Err(LatticeError::SymmetryViolation {
                detail: format!(
                    "shells at E={} and E={} have different multiplicities",
                    energies[a0],
                    energies[b0]
                ),
                defect: pairing_defect,
            });
        }
        for x in 0..n {
            let da: f64 = (a0..a1).map(|i| spectral.vectors[i][x].powi(2)).sum();
            let db: f64 = (b0..b1).map(|i| spectral.vectors[i][x].powi(2)).sum();
            density_symmetry_defect = density_symmetry_defect.max((da - db).abs());
        }
    }
    if density_symmetry_defect > tol {
        return Err(LatticeError::SymmetryViolation {
            detail: "per-energy density symmetry defect exceeds tolerance".into(),
            defect: density_symmetry_defect,
        });
    }

    Ok(ConjugationReport {
        pairing_defect,
        density_symmetry_defect,
    })
}

/// Half-open index ranges of near-degenerate eigenvalue groups.
fn degenerate_shells(energies: &[f64], tol: f64) -> Vec<(usize, usize)> {
    let mut shells = Vec::new();
    let mut start = 0usize;
    for i in 1..=energies.len() {
        if i == energies.len() || energies[i] - energies[i - 1] > tol {
            shells.push((start, i));
            start = i;
        }
    }
    shells
}

/// Resolution-of-identity defect `max_{x,y} |sum_i v_i(x) v_i(y) - delta_xy|`.
pub fn completeness_check(spectral: &SpectralData) -> f64 {
    let n = match spectral.vectors.first() {
        Some(v) => v.len(),
        None => return 0.0,
    };
    let mut gram = vec![0.0f64; n * n];
    for vec in &spectral.vectors {
        for x in 0..n {
            let vx = vec[x];
            if vx == 0.0 {
                continue;
            }
            let row = &mut gram[x * n..(x + 1) * n];
            for (g, &vy) in row.iter_mut().zip(vec) {
                *g += vx * vy;
            }
        }
    }
    let mut defect = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            let expect = if x == y { 1.0 } else { 0.0 };
            defect = defect.max((gram[x * n + y] - expect).abs());
        }
    }
    defect
}

/// Midgap (zero-mode) bookkeeping.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Midgap {
    /// Indices into the sorted spectrum.
    pub indices: Vec<usize>,
    pub energies: Vec<f64>,
    /// `|E|` below this counted as midgap.
    pub threshold: f64,
    /// Sign changes of the dimerization envelope.
    pub predicted: usize,
}

impl Midgap {
    pub fn count(&self) -> usize {
        self.indices.len()
    }

    pub fn max_abs_energy(&self) -> f64 {
        self.energies.iter().fold(0.0, |a, &e| a.max(e.abs()))
    }
}

/// Locates midgap states with the default threshold (a tenth of the bulk gap)
/// and checks their number against the envelope topology.
pub fn find_midgap(spectral: &SpectralData, config: &ChainConfig) -> Result<Midgap, LatticeError> {
    find_midgap_with_threshold(spectral, config, MIDGAP_THRESHOLD_FRACTION)
}

/// As [`find_midgap`] with an explicit threshold fraction of the bulk gap.
pub fn find_midgap_with_threshold(
    spectral: &SpectralData,
    config: &ChainConfig,
    fraction: f64,
) -> Result<Midgap, LatticeError> {
    let threshold = fraction * bulk_gap(config);
    let mut indices = Vec::new();
    let mut energies = Vec::new();
    for (i, &e) in spectral.energies.iter().enumerate() {
        if e.abs() < threshold {
            indices.push(i);
            energies.push(e);
        }
    }
    let predicted = envelope_sign_changes(config);
    if indices.len() != predicted {
        return Err(LatticeError::IndexMismatch {
            found: indices.len(),
            predicted,
        });
    }
    Ok(Midgap {
        indices,
        energies,
        threshold,
        predicted,
    })
}

/// Bulk gap `2 |t_even - t_odd|` estimated at the bond farthest from any wall.
fn bulk_gap(config: &ChainConfig) -> f64 {
    let bonds = match config.boundary {
        Boundary::Ring => config.sites,
        Boundary::Open => config.sites - 1,
    };
    let profile = build_hoppings(config).expect("config validated upstream");
    let t = profile.amplitudes();
    let mut best_bond = 0usize;
    let mut best_distance = -1.0f64;
    for b in 0..bonds.saturating_sub(1) {
        let distance = config
            .walls
            .iter()
            .map(|&w| {
                let d = (b as f64 - w as f64).abs();
                match config.boundary {
                    Boundary::Ring => d.min(config.sites as f64 - d),
                    Boundary::Open => d,
                }
            })
            .fold(f64::INFINITY, f64::min);
        let distance = if distance.is_finite() { distance } else { 0.0 };
        if distance > best_distance {
            best_distance = distance;
            best_bond = b;
        }
    }
    2.0 * (t[best_bond] - t[best_bond + 1]).abs()
}

/// Counts sign changes of the envelope over consecutive integer positions
/// (cyclically on a ring), skipping exact zeros at wall centers.
pub fn envelope_sign_changes(config: &ChainConfig) -> usize {
    let n = config.sites;
    let signs: Vec<f64> = (0..n)
        .map(|x| config.envelope(x as f64))
        .filter(|s| *s != 0.0)
        .map(f64::signum)
        .collect();
    if signs.is_empty() {
        return 0;
    }
    let mut changes = 0usize;
    for pair in signs.windows(2) {
        if pair[0] != pair[1] {
            changes += 1;
        }
    }
    if config.boundary == Boundary::Ring && signs[signs.len() - 1] != signs[0] {
        changes += 1;
    }
    changes
}

/// Symmetrically regularized charge density
/// `rho(n) = sum_occupied |psi(n)|^2 - 1/2`.
///
/// The occupied set is every negative-energy state outside the midgap group,
/// plus the midgap states when they are filled.
pub fn charge_density(spectral: &SpectralData, midgap: &Midgap, occupancy: Occupancy) -> Vec<f64> {
    let n = spectral.vectors.first().map_or(0, Vec::len);
    let mut density = vec![-0.5f64; n];
    for (i, vec) in spectral.vectors.iter().enumerate() {
        let is_midgap = midgap.indices.contains(&i);
        let occupied = if is_midgap {
            occupancy == Occupancy::ZeroModesFilled
        } else {
            spectral.energies[i] < 0.0
        };
        if occupied {
            for (d, &v) in density.iter_mut().zip(vec) {
                *d += v * v;
            }
        }
    }
    density
}

/// Largest pointwise violation of the finite-size identity
/// `rho(n) = ±(1/2) sum_zm |psi_0(n)|^2` (minus when empty, plus when filled).
pub fn local_identity_defect(
    density: &[f64],
    spectral: &SpectralData,
    midgap: &Midgap,
    occupancy: Occupancy,
) -> f64 {
    let sign = match occupancy {
        Occupancy::ZeroModesEmpty => -0.5,
        Occupancy::ZeroModesFilled => 0.5,
    };
    let mut defect = 0.0f64;
    for (x, &rho) in density.iter().enumerate() {
        let zm: f64 = midgap
            .indices
            .iter()
            .map(|&i| spectral.vectors[i][x].powi(2))
            .sum();
        defect = defect.max((rho - sign * zm).abs());
    }
    defect
}

/// Windowed charge around a single enclosed wall.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChargeReport {
    pub window: Interval,
    pub charge: f64,
    pub zero_mode_count: usize,
    pub zero_mode_energies: Vec<f64>,
    pub occupancy: Occupancy,
}

/// Sums the regularized density over `window`. The window must enclose
/// exactly one wall and keep at least five wall widths between every wall
/// and both window edges.
pub fn window_charge(
    config: &ChainConfig,
    density: &[f64],
    midgap: &Midgap,
    window: Interval,
) -> Result<ChargeReport, LatticeError> {
    if window.lo > window.hi || window.hi >= config.sites {
        return Err(LatticeError::WindowOutOfRange {
            window,
            sites: config.sites,
        });
    }
    let enclosed: Vec<usize> = config
        .walls
        .iter()
        .copied()
        .filter(|&w| window.contains_site(w))
        .collect();
    if enclosed.len() != 1 {
        return Err(LatticeError::WindowMustEncloseOneWall {
            window,
            found: enclosed.len(),
        });
    }
    let required = WINDOW_MARGIN_WIDTHS * config.xi;
    for &w in &config.walls {
        let distance = if window.contains_site(w) {
            (w - window.lo).min(window.hi - w)
        } else {
            let to_lo = cyclic_distance(w, window.lo, config);
            let to_hi = cyclic_distance(w, window.hi, config);
            to_lo.min(to_hi)
        };
        if (distance as f64) < required {
            return Err(LatticeError::WindowTouchesWall {
                window,
                wall: w,
                distance,
                required,
            });
        }
    }
    let charge = density[window.lo..=window.hi].iter().sum();
    Ok(ChargeReport {
        window,
        charge,
        zero_mode_count: midgap.count(),
        zero_mode_energies: midgap.energies.clone(),
        occupancy: config.occupancy,
    })
}

fn cyclic_distance(a: usize, b: usize, config: &ChainConfig) -> usize {
    let d = a.abs_diff(b);
    match config.boundary {
        Boundary::Ring => d.min(config.sites - d),
        Boundary::Open => d,
    }
}

/// Windowed charge by literal subtraction of a separately diagonalized
/// wall-free chain, instead of the local one-half counterterm. The two
/// agree on a half-filled ring because the vacuum's occupied density is
/// exactly one half per site there.
pub fn two_chain_window_charge(
    config: &ChainConfig,
    window: Interval,
) -> Result<f64, LatticeError> {
    let soliton = analyze(config, None)?;
    let vacuum_config = ChainConfig {
        walls: Vec::new(),
        occupancy: Occupancy::ZeroModesEmpty,
        ..config.clone()
    };
    let vacuum = analyze(&vacuum_config, None)?;
    // Undo the counterterm in both densities; the -1/2 per site cancels.
    let charge = (window.lo..=window.hi)
        .map(|n| soliton.density[n] - vacuum.density[n])
        .sum();
    Ok(charge)
}

/// Everything the pipeline measures for one configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainAnalysis {
    pub config: ChainConfig,
    pub spectral: SpectralData,
    pub midgap: Midgap,
    pub density: Vec<f64>,
    pub pairing_defect: f64,
    pub density_symmetry_defect: f64,
    pub completeness_defect: f64,
    pub local_identity_defect: f64,
    /// Sum of the regularized density over the whole chain; equals
    /// (occupied count) - N/2 up to roundoff.
    pub total_charge: f64,
    pub charge: Option<ChargeReport>,
}

/// Runs the full pipeline: texture, Hamiltonian, spectrum, symmetry and
/// completeness checks, midgap census, regularized density, and (when a
/// window is given) the enclosed-wall charge.
pub fn analyze(
    config: &ChainConfig,
    window: Option<Interval>,
) -> Result<ChainAnalysis, LatticeError> {
    let profile = build_hoppings(config)?;
    let h = build_hamiltonian(&profile);
    let spectral = diagonalize(&h)?;
    let conjugation = conjugation_check(&h, &spectral, 1e-10 * config.t0)?;
    let completeness_defect = completeness_check(&spectral);
    let midgap = find_midgap(&spectral, config)?;
    let density = charge_density(&spectral, &midgap, config.occupancy);
    let identity_defect = local_identity_defect(&density, &spectral, &midgap, config.occupancy);
    let total_charge = density.iter().sum();
    let charge = match window {
        Some(w) => Some(window_charge(config, &density, &midgap, w)?),
        None => None,
    };
    Ok(ChainAnalysis {
        config: config.clone(),
        spectral,
        midgap,
        density,
        pairing_defect: conjugation.pairing_defect,
        density_symmetry_defect: conjugation.density_symmetry_defect,
        completeness_defect,
        local_identity_defect: identity_defect,
        total_charge,
        charge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_config(sites: usize, walls: Vec<usize>, xi: f64, delta_t: f64) -> ChainConfig {
        ChainConfig {
            sites,
            t0: 1.0,
            delta_t,
            xi,
            boundary: Boundary::Ring,
            walls,
            occupancy: Occupancy::ZeroModesEmpty,
        }
    }

    fn open_config(sites: usize, walls: Vec<usize>, xi: f64, delta_t: f64) -> ChainConfig {
        ChainConfig {
            boundary: Boundary::Open,
            ..ring_config(sites, walls, xi, delta_t)
        }
    }

    /// Independent dense diagonalization for cross-checks.
    fn nalgebra_spectrum(h: &SymMatrix) -> Vec<f64> {
        let n = h.n();
        let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| h.get(i, j));
        let mut vals: Vec<f64> = dm.symmetric_eigen().eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    #[test]
    fn vacuum_hoppings_alternate() {
        let config = ring_config(8, vec![], 2.0, 0.2);
        let profile = build_hoppings(&config).unwrap();
        for (n, &t) in profile.amplitudes().iter().enumerate() {
            let expect = if n % 2 == 0 { 1.2 } else { 0.8 };
            assert!((t - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn single_wall_flips_dimerization() {
        let config = open_config(201, vec![100], 4.0, 0.2);
        let profile = build_hoppings(&config).unwrap();
        let t = profile.amplitudes();
        // Wall-centered bond is undimerized; the even-bond amplitude swaps
        // from strong to weak across the wall.
        assert!((t[100] - 1.0).abs() < 1e-12);
        assert!((t[0] - 1.2).abs() < 1e-9);
        assert!((t[198] - 0.8).abs() < 1e-9);
        assert!(config.envelope(0.0) > 0.0);
        assert!(config.envelope(200.0) < 0.0);
    }

    #[test]
    fn two_walls_restore_vacuum_at_ends() {
        let config = ring_config(200, vec![50, 150], 4.0, 0.2);
        assert!((config.envelope(0.0) - 1.0).abs() < 1e-9);
        assert!((config.envelope(199.0) - 1.0).abs() < 1e-9);
        assert!((config.envelope(100.0) + 1.0).abs() < 1e-9);
    }

    #[test]
    fn config_validation_errors() {
        assert!(matches!(
            ring_config(3, vec![], 1.0, 0.1).validate(),
            Err(LatticeError::TooFewSites { .. })
        ));
        assert!(matches!(
            ring_config(8, vec![], 1.0, 1.5).validate(),
            Err(LatticeError::BadDimerization { .. })
        ));
        assert!(matches!(
            ring_config(8, vec![2], 1.0, 0.1).validate(),
            Err(LatticeError::OddWallCountOnRing { .. })
        ));
        assert!(matches!(
            ChainConfig { sites: 9, ..ring_config(8, vec![], 1.0, 0.1) }.validate(),
            Err(LatticeError::OddRing { .. })
        ));
        assert!(matches!(
            ring_config(40, vec![10, 12], 1.0, 0.1).validate(),
            Err(LatticeError::WallsTooClose { .. })
        ));
        // Wrap-around separation counts on a ring.
        assert!(matches!(
            ring_config(40, vec![1, 38], 1.0, 0.1).validate(),
            Err(LatticeError::WallsTooClose { .. })
        ));
        assert!(matches!(
            open_config(40, vec![39], 1.0, 0.1).validate(),
            Err(LatticeError::WallOutOfRange { .. })
        ));
    }

    #[test]
    fn hamiltonian_is_symmetric_with_zero_diagonal() {
        let config = ring_config(12, vec![3, 9], 1.0, 0.2);
        let h = build_hamiltonian(&build_hoppings(&config).unwrap());
        assert!(h.is_symmetric());
        for i in 0..12 {
            assert_eq!(h.get(i, i), 0.0);
        }
        // Ring corner entries present.
        assert!(h.get(0, 11) != 0.0);
    }

    #[test]
    fn two_site_chain_analytic() {
        let mut h2 = SymMatrix::zeros(2);
        h2.set_sym(0, 1, -1.0);
        let s2 = diagonalize(&h2).unwrap();
        assert!((s2.energies[0] + 1.0).abs() < 1e-15);
        assert!((s2.energies[1] - 1.0).abs() < 1e-15);
        let r = 0.5f64.sqrt();
        assert!((s2.vectors[0][0] - r).abs() < 1e-15 && (s2.vectors[0][1] - r).abs() < 1e-15);
        assert!((s2.vectors[1][0] - r).abs() < 1e-15 && (s2.vectors[1][1] + r).abs() < 1e-15);

        // Open uniform 4-chain against the closed form E_k = -2 cos(k pi / 5).
        let profile = HoppingProfile::new(vec![1.0, 1.0, 1.0], Boundary::Open).unwrap();
        let spectral = diagonalize(&build_hamiltonian(&profile)).unwrap();
        let mut expect: Vec<f64> = (1..=4)
            .map(|k| -2.0 * (k as f64 * std::f64::consts::PI / 5.0).cos())
            .collect();
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in spectral.energies.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn uniform_four_ring_spectrum() {
        let profile = HoppingProfile::new(vec![1.0; 4], Boundary::Ring).unwrap();
        let h = build_hamiltonian(&profile);
        let spectral = diagonalize(&h).unwrap();
        let oracle = nalgebra_spectrum(&h);
        for (a, b) in spectral.energies.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
        let expect = [-2.0, 0.0, 0.0, 2.0];
        for (a, b) in spectral.energies.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn vacuum_ring_spectrum_is_symmetric() {
        let config = ring_config(8, vec![], 1.0, 0.2);
        let h = build_hamiltonian(&build_hoppings(&config).unwrap());
        let spectral = diagonalize(&h).unwrap();
        let oracle = nalgebra_spectrum(&h);
        for (a, b) in spectral.energies.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
        for i in 0..8 {
            assert!((spectral.energies[i] + spectral.energies[7 - i]).abs() < 1e-13);
        }
    }

    #[test]
    fn kink_antikink_ring_has_two_midgap_states() {
        let config = ring_config(12, vec![3, 9], 1.0, 0.3);
        let h = build_hamiltonian(&build_hoppings(&config).unwrap());
        let spectral = diagonalize(&h).unwrap();
        let midgap = find_midgap(&spectral, &config).unwrap();
        assert_eq!(midgap.count(), 2);

        // Independent count from the oracle spectrum with the same threshold.
        let oracle = nalgebra_spectrum(&h);
        let oracle_count = oracle
            .iter()
            .filter(|e| e.abs() < midgap.threshold)
            .count();
        assert_eq!(oracle_count, 2);
    }

    #[test]
    fn single_wall_open_chain_has_one_midgap_state() {
        let config = open_config(201, vec![100], 4.0, 0.2);
        let analysis = analyze(&config, None).unwrap();
        assert_eq!(analysis.midgap.count(), 1);
        assert!(analysis.midgap.max_abs_energy() < 1e-8);
    }

    #[test]
    fn vacuum_ring_has_no_midgap_states() {
        let config = ring_config(40, vec![], 1.0, 0.2);
        let analysis = analyze(&config, None).unwrap();
        assert_eq!(analysis.midgap.count(), 0);
    }

    #[test]
    fn stray_edge_mode_triggers_index_mismatch() {
        // A single wall on an even open chain leaves one chain end on a weak
        // bond; the resulting edge mode is a second midgap state the envelope
        // topology does not predict, and the census must fail loudly.
        let config = open_config(60, vec![30], 2.0, 0.2);
        let h = build_hamiltonian(&build_hoppings(&config).unwrap());
        let spectral = diagonalize(&h).unwrap();
        let result = find_midgap(&spectral, &config);
        assert!(matches!(
            result,
            Err(LatticeError::IndexMismatch {
                found: 2,
                predicted: 1
            })
        ));
    }

    #[test]
    fn conjugation_holds_on_vacuum_ring() {
        let config = ring_config(100, vec![], 2.0, 0.15);
        let h = build_hamiltonian(&build_hoppings(&config).unwrap());
        let spectral = diagonalize(&h).unwrap();
        let report = conjugation_check(&h, &spectral, 1e-10).unwrap();
        assert!(report.pairing_defect <= 1e-10);
        assert!(report.density_symmetry_defect <= 1e-10);
    }

    #[test]
    fn on_site_energy_breaks_conjugation() {
        let config = ring_config(12, vec![], 1.0, 0.2);
        let mut h = build_hamiltonian(&build_hoppings(&config).unwrap());
        h.set_sym(4, 4, 0.05);
        let spectral = diagonalize(&h).unwrap();
        let err = conjugation_check(&h, &spectral, 1e-10).unwrap_err();
        assert!(matches!(err, LatticeError::SymmetryViolation { .. }));
    }

    #[test]
    fn midgap_state_is_self_conjugate() {
        // One wall, open chain: M psi_0 = ±psi_0, i.e. the mode lives on a
        // single sublattice.
        let config = open_config(201, vec![100], 4.0, 0.2);
        let analysis = analyze(&config, None).unwrap();
        let psi = &analysis.spectral.vectors[analysis.midgap.indices[0]];
        let odd_weight: f64 = psi.iter().skip(1).step_by(2).map(|v| v * v).sum();
        let even_weight: f64 = psi.iter().step_by(2).map(|v| v * v).sum();
        let minority = odd_weight.min(even_weight);
        assert!(minority < 1e-18, "minority sublattice weight {minority}");
    }

    #[test]
    fn completeness_of_full_and_truncated_spectra() {
        let config = ring_config(24, vec![], 1.0, 0.2);
        let h = build_hamiltonian(&build_hoppings(&config).unwrap());
        let spectral = diagonalize(&h).unwrap();
        assert!(completeness_check(&spectral) <= 1e-12);

        // Dropping one mode leaves a defect of exactly max |psi|^2 for it.
        let mut truncated = spectral.clone();
        let dropped = truncated.vectors.remove(7);
        truncated.energies.remove(7);
        let expect = dropped.iter().fold(0.0f64, |a, &v| a.max(v * v));
        let defect = completeness_check(&truncated);
        assert!((defect - expect).abs() <= 1e-12);
    }

    #[test]
    fn vacuum_ring_density_vanishes() {
        let config = ring_config(64, vec![], 1.0, 0.2);
        let analysis = analyze(&config, None).unwrap();
        for &rho in &analysis.density {
            assert!(rho.abs() <= 1e-12);
        }
    }

    #[test]
    fn density_equals_minus_half_zero_mode_density() {
        let config = ring_config(120, vec![30, 90], 2.0, 0.2);
        let analysis = analyze(&config, None).unwrap();
        assert_eq!(analysis.midgap.count(), 2);
        assert!(analysis.local_identity_defect <= 1e-12);

        // Filling the zero modes flips the localized lumps.
        let filled_config = ChainConfig {
            occupancy: Occupancy::ZeroModesFilled,
            ..config.clone()
        };
        let filled = analyze(&filled_config, None).unwrap();
        assert!(filled.local_identity_defect <= 1e-12);
        for (a, b) in analysis.density.iter().zip(&filled.density) {
            assert!((a + b).abs() <= 1e-12);
        }
    }

    #[test]
    fn windowed_charge_is_minus_half_then_plus_half() {
        let config = ring_config(240, vec![60, 180], 4.0, 0.2);
        let window = Interval::new(20, 100);
        let analysis = analyze(&config, Some(window)).unwrap();
        let report = analysis.charge.unwrap();
        assert!(
            (report.charge + 0.5).abs() < 1e-6,
            "charge {}",
            report.charge
        );

        let filled = ChainConfig {
            occupancy: Occupancy::ZeroModesFilled,
            ..config
        };
        let analysis = analyze(&filled, Some(window)).unwrap();
        let report = analysis.charge.unwrap();
        assert!((report.charge - 0.5).abs() < 1e-6);
    }

    #[test]
    fn vacuum_window_charge_is_zero() {
        let config = ring_config(64, vec![], 1.0, 0.2);
        let analysis = analyze(&config, None).unwrap();
        // No wall to enclose: the window op refuses, but the plain density
        // sum over any interval is zero.
        let partial: f64 = analysis.density[10..30].iter().sum();
        assert!(partial.abs() <= 1e-10);
        let err = window_charge(&config, &analysis.density, &analysis.midgap, Interval::new(10, 29));
        assert!(matches!(
            err,
            Err(LatticeError::WindowMustEncloseOneWall { .. })
        ));
    }

    #[test]
    fn window_margin_violations_are_rejected() {
        let config = ring_config(240, vec![60, 180], 4.0, 0.2);
        let analysis = analyze(&config, None).unwrap();
        // Margin to the enclosed wall too small (< 20 sites).
        let err = window_charge(&config, &analysis.density, &analysis.midgap, Interval::new(50, 100));
        assert!(matches!(err, Err(LatticeError::WindowTouchesWall { .. })));
        // Window edge too close to the other wall.
        let err = window_charge(&config, &analysis.density, &analysis.midgap, Interval::new(20, 170));
        assert!(matches!(err, Err(LatticeError::WindowTouchesWall { .. })));
        // Out of range.
        let err = window_charge(&config, &analysis.density, &analysis.midgap, Interval::new(20, 400));
        assert!(matches!(err, Err(LatticeError::WindowOutOfRange { .. })));
    }

    #[test]
    fn charge_additivity_and_total() {
        let config = ring_config(240, vec![60, 180], 4.0, 0.2);
        let analysis = analyze(&config, None).unwrap();
        let kink = window_charge(
            &config,
            &analysis.density,
            &analysis.midgap,
            Interval::new(20, 100),
        )
        .unwrap();
        let antikink = window_charge(
            &config,
            &analysis.density,
            &analysis.midgap,
            Interval::new(140, 220),
        )
        .unwrap();
        assert!((kink.charge + antikink.charge - analysis.total_charge).abs() < 1e-6);
        // Total ring charge: occupied count minus half the sites, exactly -1 here.
        assert!((analysis.total_charge + 1.0).abs() < 1e-10);
    }

    #[test]
    fn two_chain_subtraction_agrees_with_counterterm() {
        let config = ring_config(240, vec![60, 180], 4.0, 0.2);
        let window = Interval::new(20, 100);
        let analysis = analyze(&config, Some(window)).unwrap();
        let schwinger = analysis.charge.unwrap().charge;
        let literal = two_chain_window_charge(&config, window).unwrap();
        assert!(
            (schwinger - literal).abs() <= 1e-10,
            "{schwinger} vs {literal}"
        );
    }

    #[test]
    fn analysis_is_bit_deterministic() {
        let config = ring_config(120, vec![30, 90], 2.0, 0.2);
        let a = analyze(&config, Some(Interval::new(10, 50))).unwrap();
        let b = analyze(&config, Some(Interval::new(10, 50))).unwrap();
        assert_eq!(
            a.charge.unwrap().charge.to_bits(),
            b.charge.unwrap().charge.to_bits()
        );
        for (x, y) in a.density.iter().zip(&b.density) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
