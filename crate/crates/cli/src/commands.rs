//! Subcommand argument structures and execution.

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use kinkcharge::continuum::{
    self, PhononProfile, SpinorComponent, TopologyClass,
};
use kinkcharge::dimer::{self, DomainWallSpec, Vacuum};
use kinkcharge::fock::{self, FockState, ModeSet};
use kinkcharge::lattice::{self, Boundary, ChainConfig, Occupancy};
use kinkcharge::Interval;

use crate::output::{csv_row, f64_field, opt_f64_field, opt_usize_field};
use crate::CliError;

/// Largest mode count for which the full operator-algebra check runs.
pub const CAR_CHECK_MAX_K: usize = 3;

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountArgs {
    pub sites: usize,
    pub vacuum: Vacuum,
    pub walls: Vec<usize>,
    pub region: Interval,
    pub diagram: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountResult {
    pub links_vacuum: usize,
    pub links_solitonic: usize,
    /// Exact rationals rendered as `p/q` (or plain integers).
    pub deficit_total: String,
    pub deficit_per_wall: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram_vacuum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram_solitonic: Option<String>,
}

pub fn run_count(args: &CountArgs) -> Result<CountResult, CliError> {
    let walls = DomainWallSpec::new(args.walls.clone())?;
    let solitonic = dimer::build_pattern(args.sites, args.vacuum, &walls)?;
    let vacuum = dimer::build_pattern(args.sites, args.vacuum, &DomainWallSpec::none())?;
    let deficit = dimer::link_deficit(&solitonic, &vacuum, args.region)?;
    Ok(CountResult {
        links_vacuum: deficit.links_vacuum,
        links_solitonic: deficit.links_solitonic,
        deficit_total: deficit.total.to_string(),
        deficit_per_wall: deficit.per_wall.map(|r| r.to_string()),
        diagram_vacuum: args.diagram.then(|| vacuum.ascii_diagram()),
        diagram_solitonic: args.diagram.then(|| solitonic.ascii_diagram()),
    })
}

pub fn count_csv_header() -> String {
    "sites,region_lo,region_hi,links_vacuum,links_solitonic,deficit_total,deficit_per_wall"
        .to_string()
}

pub fn count_csv_row(args: &CountArgs, result: &CountResult) -> String {
    csv_row(&[
        args.sites.to_string(),
        args.region.lo.to_string(),
        args.region.hi.to_string(),
        result.links_vacuum.to_string(),
        result.links_solitonic.to_string(),
        result.deficit_total.clone(),
        result.deficit_per_wall.clone().unwrap_or_default(),
    ])
}

// ---------------------------------------------------------------------------
// lattice
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subtraction {
    /// Local one-half counterterm per site.
    Schwinger,
    /// Literal subtraction of a separately diagonalized wall-free chain.
    TwoChain,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeArgs {
    pub sites: usize,
    pub t0: f64,
    pub delta_t: f64,
    pub xi: f64,
    pub boundary: Boundary,
    pub walls: Vec<usize>,
    pub occupancy: Occupancy,
    pub window: Option<Interval>,
    pub subtraction: Subtraction,
}

impl LatticeArgs {
    pub fn chain_config(&self) -> ChainConfig {
        ChainConfig {
            sites: self.sites,
            t0: self.t0,
            delta_t: self.delta_t,
            xi: self.xi,
            boundary: self.boundary,
            walls: self.walls.clone(),
            occupancy: self.occupancy,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeResult {
    pub sites: usize,
    pub xi: f64,
    pub delta_t: f64,
    pub window_lo: Option<usize>,
    pub window_hi: Option<usize>,
    pub zero_mode_count: usize,
    pub max_zero_mode_energy: f64,
    pub zero_mode_energies: Vec<f64>,
    /// Windowed charge for one fermion species.
    pub charge: Option<f64>,
    /// The same charge with the twofold spin degeneracy applied: this is the
    /// physical electric charge deficit of the wall.
    pub charge_with_spin_degeneracy: Option<f64>,
    pub total_charge: f64,
    pub pairing_defect: f64,
    pub density_symmetry_defect: f64,
    pub completeness_defect: f64,
    pub local_identity_defect: f64,
    pub residual_bound: f64,
}

pub fn run_lattice(args: &LatticeArgs) -> Result<LatticeResult, CliError> {
    let config = args.chain_config();
    let analysis = lattice::analyze(&config, args.window)?;
    let charge = match (args.subtraction, args.window) {
        (Subtraction::Schwinger, _) => analysis.charge.as_ref().map(|c| c.charge),
        (Subtraction::TwoChain, Some(window)) => {
            Some(lattice::two_chain_window_charge(&config, window)?)
        }
        (Subtraction::TwoChain, None) => None,
    };
    Ok(LatticeResult {
        sites: args.sites,
        xi: args.xi,
        delta_t: args.delta_t,
        window_lo: args.window.map(|w| w.lo),
        window_hi: args.window.map(|w| w.hi),
        zero_mode_count: analysis.midgap.count(),
        max_zero_mode_energy: analysis.midgap.max_abs_energy(),
        zero_mode_energies: analysis.midgap.energies.clone(),
        charge,
        charge_with_spin_degeneracy: charge.map(|q| 2.0 * q),
        total_charge: analysis.total_charge,
        pairing_defect: analysis.pairing_defect,
        density_symmetry_defect: analysis.density_symmetry_defect,
        completeness_defect: analysis.completeness_defect,
        local_identity_defect: analysis.local_identity_defect,
        residual_bound: analysis.spectral.residual_bound,
    })
}

pub fn lattice_csv_header() -> String {
    "N,xi,delta_t,window_lo,window_hi,zero_mode_count,max_zero_mode_energy,charge,\
     pairing_defect,completeness_defect,local_identity_defect"
        .to_string()
}

pub fn lattice_csv_row(result: &LatticeResult) -> String {
    csv_row(&[
        result.sites.to_string(),
        f64_field(result.xi),
        f64_field(result.delta_t),
        opt_usize_field(result.window_lo),
        opt_usize_field(result.window_hi),
        result.zero_mode_count.to_string(),
        f64_field(result.max_zero_mode_energy),
        opt_f64_field(result.charge),
        f64_field(result.pairing_defect),
        f64_field(result.completeness_defect),
        f64_field(result.local_identity_defect),
    ])
}

// ---------------------------------------------------------------------------
// continuum
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSource {
    Tanh,
    Table(PathBuf),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContinuumArgs {
    pub profile: ProfileSource,
    pub phi0: f64,
    pub xi: f64,
    /// Half-length of the grid; defaults to ten wall widths.
    pub half_length: Option<f64>,
    pub grid_step: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContinuumResult {
    pub class: TopologyClass,
    /// `-1/2` for any non-vacuum profile; absent for vacuum.
    pub charge: Option<f64>,
    pub norm_check: Option<f64>,
    pub tail_decay_rate: Option<f64>,
    pub component: Option<SpinorComponent>,
}

pub fn run_continuum(args: &ContinuumArgs) -> Result<ContinuumResult, CliError> {
    let profile = match &args.profile {
        ProfileSource::Tanh => {
            let half_length = args.half_length.unwrap_or(10.0 * args.xi);
            let grid_step = args.grid_step.unwrap_or(args.xi / 2000.0);
            PhononProfile::tanh_kink(args.phi0, args.xi, half_length, grid_step)?
        }
        ProfileSource::Table(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            PhononProfile::from_table(&text)?
        }
    };
    let class = continuum::classify(&profile)?;
    if class == TopologyClass::Vacuum {
        return Ok(ContinuumResult {
            class,
            charge: None,
            norm_check: None,
            tail_decay_rate: None,
            component: None,
        });
    }
    let zm = continuum::zero_mode(&profile)?;
    Ok(ContinuumResult {
        class,
        charge: Some(continuum::zero_mode_charge(&zm)),
        norm_check: Some(zm.norm_check),
        tail_decay_rate: Some(zm.tail_decay_left.min(zm.tail_decay_right)),
        component: Some(zm.component),
    })
}

pub fn continuum_csv_header() -> String {
    "class,charge,norm_check,tail_decay_rate".to_string()
}

pub fn continuum_csv_row(result: &ContinuumResult) -> String {
    let class = match result.class {
        TopologyClass::Vacuum => "vacuum",
        TopologyClass::Kink => "kink",
        TopologyClass::Antikink => "antikink",
    };
    csv_row(&[
        class.to_string(),
        opt_f64_field(result.charge),
        opt_f64_field(result.norm_check),
        opt_f64_field(result.tail_decay_rate),
    ])
}

// ---------------------------------------------------------------------------
// fock
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FockArgs {
    pub modes: usize,
    /// Occupation string like `b:1,3;d:2;a:1`; empty means `|->`.
    pub state: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FockResult {
    pub charge: String,
    pub variance: String,
    /// `None` when K exceeds the exhaustive-check limit.
    pub checks_passed: Option<bool>,
    pub fock_dimension: usize,
}

/// Parses `b:1,3;d:2;a:1` into a validated state over `1..=K`.
pub fn parse_fock_state(modes: &ModeSet, raw: &str) -> Result<FockState, CliError> {
    let mut b_occ = BTreeSet::new();
    let mut d_occ = BTreeSet::new();
    let mut a_occ = false;
    for section in raw.split(';') {
        let section = section.trim();
        if section.is_empty() {
            continue;
        }
        let (which, list) = section
            .split_once(':')
            .ok_or_else(|| CliError::Config(format!("state section `{section}`: expected x:…")))?;
        match which.trim() {
            "b" | "d" => {
                let target = if which.trim() == "b" {
                    &mut b_occ
                } else {
                    &mut d_occ
                };
                for part in list.split(',') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    let label: u32 = part
                        .parse()
                        .map_err(|e| CliError::Config(format!("state label `{part}`: {e}")))?;
                    if !target.insert(label) {
                        return Err(CliError::Config(format!(
                            "state occupies {which}:{label} twice"
                        )));
                    }
                }
            }
            "a" => {
                a_occ = match list.trim() {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(CliError::Config(format!(
                            "zero-mode occupation must be 0 or 1, got {other}"
                        )))
                    }
                };
            }
            other => {
                return Err(CliError::Config(format!(
                    "state section must be b, d, or a, got {other}"
                )))
            }
        }
    }
    Ok(FockState::new(modes, b_occ, d_occ, a_occ)?)
}

pub fn run_fock(args: &FockArgs) -> Result<FockResult, CliError> {
    let modes = ModeSet::with_zero_mode(args.modes);
    let state = parse_fock_state(&modes, &args.state)?;
    let charge = fock::charge_eigenvalue(&modes, &state);
    let variance = fock::charge_variance(&modes, &state);
    let checks_passed = if args.modes <= CAR_CHECK_MAX_K {
        fock::verify_car_algebra(&modes, CAR_CHECK_MAX_K)?;
        Some(true)
    } else {
        None
    };
    Ok(FockResult {
        charge: charge.to_string(),
        variance: variance.to_string(),
        checks_passed,
        fock_dimension: modes.fock_dimension(),
    })
}

pub fn fock_csv_header() -> String {
    "charge,variance,checks_passed,fock_dimension".to_string()
}

pub fn fock_csv_row(result: &FockResult) -> String {
    csv_row(&[
        result.charge.clone(),
        result.variance.clone(),
        result
            .checks_passed
            .map(|b| b.to_string())
            .unwrap_or_default(),
        result.fock_dimension.to_string(),
    ])
}
