//! Continuum zero modes over a sampled background profile.
//!
//! A profile `phi(x)` with opposite signs at the two ends of the line admits
//! exactly one normalizable zero-energy solution; it satisfies the
//! first-order equation `psi' = -phi psi` (kink, upper spinor component) or
//! `psi' = +phi psi` (antikink, lower component), so
//! `psi_0(x) ∝ exp(∓ ∫_0^x phi)`. A profile with equal-sign asymptotics
//! makes both branches blow up at one end: no normalizable solution exists,
//! which is the index statement at this level. The charge bound to the mode
//! is `-1/2 ∫ psi_0^2`, independent of the profile shape.
//!
//! The spinor representation is fixed by this choice of first-order
//! equations; any unitarily equivalent convention works as well, and only
//! statements invariant under that freedom are exposed here.

use serde::{Deserialize, Serialize};

/// Absolute asymptotic values below this cannot be classified.
const ASYMPTOTE_TOL: f64 = 1e-9;
/// Relative deviation allowed between the profile ends and its asymptotics.
const FLATNESS_TOL: f64 = 1e-6;
/// Richardson self-consistency limit on the normalization quadrature.
const SELF_CHECK_TOL: f64 = 1e-6;
/// Fraction of samples on each end used for asymptotics and tail fits.
const TAIL_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ContinuumError {
    #[error("profile needs at least {required} samples, got {got}")]
    TooFewSamples { got: usize, required: usize },
    #[error("grid step must be positive and finite, got {got}")]
    BadGridStep { got: f64 },
    #[error("sample spacing at row {index} deviates from a uniform grid")]
    NonUniformGrid { index: usize },
    #[error("profile table line {line}: {reason}")]
    TableParse { line: usize, reason: String },
    #[error(
        "{side} end of the profile deviates {deviation:e} from its asymptote (allowed {allowed:e})"
    )]
    ProfileNotFlat {
        side: &'static str,
        deviation: f64,
        allowed: f64,
    },
    #[error("{side} asymptotic value {value:e} is too close to zero to classify")]
    AmbiguousAsymptotics { side: &'static str, value: f64 },
    #[error("no normalizable zero mode: the background topology is trivial")]
    NonNormalizable,
    #[error("quadrature self-check {estimate:e} exceeds {tolerance:e}; refine the grid")]
    GridTooCoarse { estimate: f64, tolerance: f64 },
    #[error(
        "mode widths differ more than twofold: continuum {width_continuum}, lattice {width_lattice}"
    )]
    ScaleMismatch {
        width_continuum: f64,
        width_lattice: f64,
    },
    #[error("lattice mode unusable: {reason}")]
    InvalidLatticeMode { reason: String },
}

/// Background profile sampled on a uniform grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhononProfile {
    phi: Vec<f64>,
    /// Coordinate of the first sample.
    x0: f64,
    grid_step: f64,
    pub phi_minus_inf: f64,
    pub phi_plus_inf: f64,
}

/// Large-distance behavior of a profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyClass {
    Vacuum,
    Kink,
    Antikink,
}

/// Spinor component carrying the zero mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinorComponent {
    Upper,
    Lower,
}

impl PhononProfile {
    /// Wraps raw samples; asymptotic values are read off the outer 5% of the
    /// grid and the ends must already sit on them.
    pub fn from_samples(x0: f64, grid_step: f64, phi: Vec<f64>) -> Result<Self, ContinuumError> {
        if !(grid_step > 0.0) || !grid_step.is_finite() {
            return Err(ContinuumError::BadGridStep { got: grid_step });
        }
        if phi.len() < 16 {
            return Err(ContinuumError::TooFewSamples {
                got: phi.len(),
                required: 16,
            });
        }
        let tail = ((phi.len() as f64 * TAIL_FRACTION) as usize).max(3);
        let phi_minus_inf = phi[..tail].iter().sum::<f64>() / tail as f64;
        let phi_plus_inf = phi[phi.len() - tail..].iter().sum::<f64>() / tail as f64;
        let profile = PhononProfile {
            phi,
            x0,
            grid_step,
            phi_minus_inf,
            phi_plus_inf,
        };
        profile.check_flat("left", profile.phi[0], phi_minus_inf)?;
        profile.check_flat("right", *profile.phi.last().unwrap(), phi_plus_inf)?;
        Ok(profile)
    }

    /// Samples `phi0 * tanh(x / xi)` over `[-half_length, half_length]`.
    pub fn tanh_kink(
        phi0: f64,
        xi: f64,
        half_length: f64,
        grid_step: f64,
    ) -> Result<Self, ContinuumError> {
        Self::sampled(half_length, grid_step, |x| phi0 * (x / xi).tanh())
    }

    /// Samples an arbitrary function over `[-half_length, half_length]`.
    pub fn sampled(
        half_length: f64,
        grid_step: f64,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self, ContinuumError> {
        if !(grid_step > 0.0) || !grid_step.is_finite() || half_length <= 0.0 {
            return Err(ContinuumError::BadGridStep { got: grid_step });
        }
        let steps = (2.0 * half_length / grid_step).round() as usize;
        let phi: Vec<f64> = (0..=steps)
            .map(|k| f(-half_length + k as f64 * grid_step))
            .collect();
        Self::from_samples(-half_length, grid_step, phi)
    }

    /// Parses two-column `x phi` text (whitespace separated, `#` comments).
    pub fn from_table(text: &str) -> Result<Self, ContinuumError> {
        let mut xs = Vec::new();
        let mut phi = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split_whitespace();
            let x: f64 = cols
                .next()
                .ok_or(ContinuumError::TableParse {
                    line: i + 1,
                    reason: "missing x column".into(),
                })?
                .parse()
                .map_err(|e| ContinuumError::TableParse {
                    line: i + 1,
                    reason: format!("bad x value: {e}"),
                })?;
            let v: f64 = cols
                .next()
                .ok_or(ContinuumError::TableParse {
                    line: i + 1,
                    reason: "missing phi column".into(),
                })?
                .parse()
                .map_err(|e| ContinuumError::TableParse {
                    line: i + 1,
                    reason: format!("bad phi value: {e}"),
                })?;
            xs.push(x);
            phi.push(v);
        }
        if xs.len() < 16 {
            return Err(ContinuumError::TooFewSamples {
                got: xs.len(),
                required: 16,
            });
        }
        let step = xs[1] - xs[0];
        if !(step > 0.0) {
            return Err(ContinuumError::BadGridStep { got: step });
        }
        for (i, pair) in xs.windows(2).enumerate() {
            if ((pair[1] - pair[0]) - step).abs() > 1e-9 * step.abs() {
                return Err(ContinuumError::NonUniformGrid { index: i + 1 });
            }
        }
        Self::from_samples(xs[0], step, phi)
    }

    fn check_flat(
        &self,
        side: &'static str,
        end_value: f64,
        asymptote: f64,
    ) -> Result<(), ContinuumError> {
        let deviation = (end_value - asymptote).abs();
        let allowed = FLATNESS_TOL * asymptote.abs().max(ASYMPTOTE_TOL);
        if deviation > allowed {
            return Err(ContinuumError::ProfileNotFlat {
                side,
                deviation,
                allowed,
            });
        }
        Ok(())
    }

    pub fn samples(&self) -> &[f64] {
        &self.phi
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    pub fn x(&self, index: usize) -> f64 {
        self.x0 + index as f64 * self.grid_step
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    /// Count of interior sign changes, a consistency check on the
    /// classification.
    pub fn sign_changes(&self) -> usize {
        let signs: Vec<f64> = self
            .phi
            .iter()
            .filter(|v| **v != 0.0)
            .map(|v| v.signum())
            .collect();
        signs.windows(2).filter(|p| p[0] != p[1]).count()
    }
}

/// Classifies the profile by the signs of its asymptotic values.
pub fn classify(profile: &PhononProfile) -> Result<TopologyClass, ContinuumError> {
    let minus = profile.phi_minus_inf;
    let plus = profile.phi_plus_inf;
    if minus.abs() < ASYMPTOTE_TOL {
        return Err(ContinuumError::AmbiguousAsymptotics {
            side: "left",
            value: minus,
        });
    }
    if plus.abs() < ASYMPTOTE_TOL {
        return Err(ContinuumError::AmbiguousAsymptotics {
            side: "right",
            value: plus,
        });
    }
    Ok(if minus < 0.0 && plus > 0.0 {
        TopologyClass::Kink
    } else if minus > 0.0 && plus < 0.0 {
        TopologyClass::Antikink
    } else {
        TopologyClass::Vacuum
    })
}

/// Normalized zero mode on the profile's grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroMode {
    psi: Vec<f64>,
    x0: f64,
    grid_step: f64,
    /// Richardson estimate of the quadrature error in the normalization.
    pub norm_check: f64,
    pub component: SpinorComponent,
    /// Fitted exponential decay rates of the two tails (positive = decaying).
    pub tail_decay_left: f64,
    pub tail_decay_right: f64,
}

impl ZeroMode {
    pub fn samples(&self) -> &[f64] {
        &self.psi
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    pub fn x(&self, index: usize) -> f64 {
        self.x0 + index as f64 * self.grid_step
    }

    /// Linear interpolation; zero outside the grid.
    pub fn sample_at(&self, x: f64) -> f64 {
        let u = (x - self.x0) / self.grid_step;
        if u < 0.0 || u > (self.psi.len() - 1) as f64 {
            return 0.0;
        }
        let k = u.floor() as usize;
        if k + 1 >= self.psi.len() {
            return self.psi[k];
        }
        let frac = u - k as f64;
        self.psi[k] * (1.0 - frac) + self.psi[k + 1] * frac
    }
}

/// Builds the normalizable zero mode by quadrature of the first-order
/// equation. Fails with [`ContinuumError::NonNormalizable`] on vacuum
/// profiles: with equal-sign asymptotics both spinor branches grow at one
/// end, so no topology means no mode.
pub fn zero_mode(profile: &PhononProfile) -> Result<ZeroMode, ContinuumError> {
    let class = classify(profile)?;
    let component = match class {
        TopologyClass::Kink => SpinorComponent::Upper,
        TopologyClass::Antikink => SpinorComponent::Lower,
        TopologyClass::Vacuum => return Err(ContinuumError::NonNormalizable),
    };
    let sign = match component {
        SpinorComponent::Upper => -1.0,
        SpinorComponent::Lower => 1.0,
    };

    // Cumulative trapezoid of phi, then psi = exp(sign * integral), shifted
    // so the largest exponent is zero before exponentiating.
    let n = profile.len();
    let h = profile.grid_step;
    let mut exponent = Vec::with_capacity(n);
    exponent.push(0.0f64);
    let mut acc = 0.0f64;
    for k in 1..n {
        acc += 0.5 * h * (profile.phi[k - 1] + profile.phi[k]);
        exponent.push(sign * acc);
    }
    let peak = exponent.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut psi: Vec<f64> = exponent.iter().map(|e| (e - peak).exp()).collect();

    let norm_fine = trapezoid_sq(&psi, h);
    let (norm_coarse, norm_fine_sub) = coarse_and_matching_fine(&psi, h);
    let norm_check = (norm_coarse - norm_fine_sub).abs() / (3.0 * norm_fine);
    if norm_check > SELF_CHECK_TOL {
        return Err(ContinuumError::GridTooCoarse {
            estimate: norm_check,
            tolerance: SELF_CHECK_TOL,
        });
    }
    let scale = norm_fine.sqrt();
    for v in &mut psi {
        *v /= scale;
    }

    let tail = ((n as f64 * TAIL_FRACTION) as usize).max(3);
    let tail_decay_left = fit_decay(&psi[..tail], h, true);
    let tail_decay_right = fit_decay(&psi[n - tail..], h, false);

    Ok(ZeroMode {
        psi,
        x0: profile.x0,
        grid_step: h,
        norm_check,
        component,
        tail_decay_left,
        tail_decay_right,
    })
}

/// Charge bound to the mode: `-1/2 ∫ psi^2`, shape independent.
pub fn zero_mode_charge(zm: &ZeroMode) -> f64 {
    -0.5 * trapezoid_sq(&zm.psi, zm.grid_step)
}

fn trapezoid_sq(psi: &[f64], h: f64) -> f64 {
    let n = psi.len();
    let mut sum = 0.5 * (psi[0] * psi[0] + psi[n - 1] * psi[n - 1]);
    for v in &psi[1..n - 1] {
        sum += v * v;
    }
    sum * h
}

/// Trapezoid of `psi^2` on the every-other-sample grid, together with the
/// fine-grid value over the same subrange.
fn coarse_and_matching_fine(psi: &[f64], h: f64) -> (f64, f64) {
    let last = (psi.len() - 1) & !1usize;
    let coarse: Vec<f64> = psi[..=last].iter().step_by(2).copied().collect();
    let coarse_val = trapezoid_sq(&coarse, 2.0 * h);
    let fine_val = trapezoid_sq(&psi[..=last], h);
    (coarse_val, fine_val)
}

/// Least-squares slope of `ln psi`; positive return means the tail decays
/// toward its end of the grid.
fn fit_decay(tail: &[f64], h: f64, left: bool) -> f64 {
    let logs: Vec<f64> = tail
        .iter()
        .map(|v| v.max(f64::MIN_POSITIVE).ln())
        .collect();
    let n = logs.len() as f64;
    let mean_i = (logs.len() as f64 - 1.0) / 2.0;
    let mean_y = logs.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, y) in logs.iter().enumerate() {
        let d = i as f64 - mean_i;
        num += d * (y - mean_y);
        den += d * d;
    }
    let slope = num / den / h;
    if left {
        slope
    } else {
        -slope
    }
}

/// L2 distance between the continuum mode and the staggered envelope of a
/// lattice midgap mode, both unit-normalized on the lattice points.
///
/// The envelope is taken on the majority sublattice and centered on its own
/// density centroid. When both modes are localized their r.m.s. widths must
/// agree within a factor of two; a delocalized lattice state (no meaningful
/// width to compare) skips that gate and simply reports its near-orthogonal
/// distance.
pub fn compare_to_lattice(
    zm: &ZeroMode,
    lattice_mode: &[f64],
    lattice_spacing: f64,
) -> Result<f64, ContinuumError> {
    if lattice_mode.len() < 8 {
        return Err(ContinuumError::InvalidLatticeMode {
            reason: format!("need at least 8 sites, got {}", lattice_mode.len()),
        });
    }
    if !(lattice_spacing > 0.0) {
        return Err(ContinuumError::InvalidLatticeMode {
            reason: format!("lattice spacing must be positive, got {lattice_spacing}"),
        });
    }
    let weight = |parity: usize| -> f64 {
        lattice_mode
            .iter()
            .skip(parity)
            .step_by(2)
            .map(|v| v * v)
            .sum()
    };
    let parity = if weight(0) >= weight(1) { 0 } else { 1 };

    let sites: Vec<usize> = (parity..lattice_mode.len()).step_by(2).collect();
    let mut envelope: Vec<f64> = sites.iter().map(|&n| lattice_mode[n].abs()).collect();
    let total: f64 = envelope.iter().map(|v| v * v).sum();
    if total <= 0.0 {
        return Err(ContinuumError::InvalidLatticeMode {
            reason: "mode has no weight on either sublattice".into(),
        });
    }
    let norm = total.sqrt();
    for v in &mut envelope {
        *v /= norm;
    }

    let centroid: f64 = sites
        .iter()
        .zip(&envelope)
        .map(|(&n, e)| n as f64 * e * e)
        .sum();

    // Localization gate: outer tenth of envelope sites on each side.
    let margin = (sites.len() / 10).max(1);
    let tail_mass: f64 = envelope[..margin]
        .iter()
        .chain(&envelope[envelope.len() - margin..])
        .map(|v| v * v)
        .sum();
    let localized = tail_mass < 0.05;

    let mut sampled: Vec<f64> = sites
        .iter()
        .map(|&n| zm.sample_at((n as f64 - centroid) * lattice_spacing))
        .collect();
    let snorm: f64 = sampled.iter().map(|v| v * v).sum::<f64>().sqrt();
    if snorm <= 0.0 {
        return Err(ContinuumError::InvalidLatticeMode {
            reason: "continuum mode does not overlap the lattice window".into(),
        });
    }
    for v in &mut sampled {
        *v /= snorm;
    }

    if localized {
        let width_lattice = lattice_spacing
            * sites
                .iter()
                .zip(&envelope)
                .map(|(&n, e)| (n as f64 - centroid).powi(2) * e * e)
                .sum::<f64>()
                .sqrt();
        let width_continuum = rms_width(zm);
        let ratio = width_continuum / width_lattice;
        if !(0.5..=2.0).contains(&ratio) {
            return Err(ContinuumError::ScaleMismatch {
                width_continuum,
                width_lattice,
            });
        }
    }

    let distance = envelope
        .iter()
        .zip(&sampled)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(distance)
}

fn rms_width(zm: &ZeroMode) -> f64 {
    let h = zm.grid_step;
    let norm = trapezoid_sq(&zm.psi, h);
    let mean: f64 = zm
        .psi
        .iter()
        .enumerate()
        .map(|(k, v)| zm.x(k) * v * v)
        .sum::<f64>()
        * h
        / norm;
    let var: f64 = zm
        .psi
        .iter()
        .enumerate()
        .map(|(k, v)| (zm.x(k) - mean).powi(2) * v * v)
        .sum::<f64>()
        * h
        / norm;
    var.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tanh_profile(phi0: f64, xi: f64) -> PhononProfile {
        PhononProfile::tanh_kink(phi0, xi, 10.0 * xi, 5e-4 * xi).unwrap()
    }

    #[test]
    fn classify_by_asymptotics() {
        assert_eq!(
            classify(&tanh_profile(0.5, 4.0)).unwrap(),
            TopologyClass::Kink
        );
        assert_eq!(
            classify(&tanh_profile(-0.5, 4.0)).unwrap(),
            TopologyClass::Antikink
        );
        let vac = PhononProfile::sampled(40.0, 0.05, |_| 0.5).unwrap();
        assert_eq!(classify(&vac).unwrap(), TopologyClass::Vacuum);
    }

    #[test]
    fn ambiguous_asymptotics_rejected() {
        let p = PhononProfile::sampled(40.0, 0.05, |_| 1e-12).unwrap();
        assert!(matches!(
            classify(&p),
            Err(ContinuumError::AmbiguousAsymptotics { .. })
        ));
    }

    #[test]
    fn profile_must_reach_its_asymptote() {
        // tanh(4) is ~7e-4 away from 1, far outside the 1e-6 flatness budget.
        let err = PhononProfile::tanh_kink(0.5, 4.0, 16.0, 0.01).unwrap_err();
        assert!(matches!(err, ContinuumError::ProfileNotFlat { .. }));
    }

    #[test]
    fn tanh_zero_mode_matches_closed_form() {
        // psi' = -phi psi integrates to cosh(x/xi)^(-phi0 xi).
        let phi0 = 0.25;
        let xi = 8.0;
        let profile = tanh_profile(phi0, xi);
        let zm = zero_mode(&profile).unwrap();
        assert_eq!(zm.component, SpinorComponent::Upper);

        let mut closed: Vec<f64> = (0..profile.len())
            .map(|k| (profile.x(k) / xi).cosh().powf(-phi0 * xi))
            .collect();
        let norm = trapezoid_sq(&closed, profile.grid_step()).sqrt();
        for v in &mut closed {
            *v /= norm;
        }
        let sup = zm
            .samples()
            .iter()
            .zip(&closed)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(sup <= 1e-8, "sup-norm deviation {sup:e}");
    }

    #[test]
    fn constant_profile_has_no_mode() {
        let p = PhononProfile::sampled(40.0, 0.05, |_| 0.5).unwrap();
        assert_eq!(zero_mode(&p).unwrap_err(), ContinuumError::NonNormalizable);
    }

    #[test]
    fn reflected_kink_gives_reflected_mode() {
        let profile = PhononProfile::sampled(40.0, 4e-3, |x| 0.5 * (x / 4.0).tanh()).unwrap();
        let reflected = PhononProfile::sampled(40.0, 4e-3, |x| 0.5 * (-x / 4.0).tanh()).unwrap();
        let zm = zero_mode(&profile).unwrap();
        let rzm = zero_mode(&reflected).unwrap();
        assert_eq!(zm.component, SpinorComponent::Upper);
        assert_eq!(rzm.component, SpinorComponent::Lower);
        let n = zm.samples().len();
        // Same grid geometry, so reflection is index reversal.
        let sup = (0..n)
            .map(|k| (zm.samples()[k] - rzm.samples()[n - 1 - k]).abs())
            .fold(0.0f64, f64::max);
        assert!(sup <= 1e-9, "{sup:e}");
        assert!((zero_mode_charge(&zm) - zero_mode_charge(&rzm)).abs() <= 1e-12);
    }

    #[test]
    fn charge_is_minus_half() {
        let zm = zero_mode(&tanh_profile(0.25, 8.0)).unwrap();
        assert!((zero_mode_charge(&zm) + 0.5).abs() <= 1e-10);
    }

    #[test]
    fn charge_is_shape_independent() {
        let profiles = vec![
            PhononProfile::sampled(80.0, 5e-3, |x| 0.25 * (x / 8.0).tanh()).unwrap(),
            PhononProfile::sampled(20.0, 2e-3, |x| (x / 2.0).tanh()).unwrap(),
            PhononProfile::sampled(30.0, 2e-3, |x| {
                let t = (x / 3.0).tanh();
                0.5 * t * t * t
            })
            .unwrap(),
            PhononProfile::sampled(25.0, 2e-3, |x| 0.6 * (x / 2.5).clamp(-1.0, 1.0)).unwrap(),
            PhononProfile::sampled(35.0, 2e-3, |x| 0.5 + (x / 3.0).tanh()).unwrap(),
            PhononProfile::sampled(30.0, 2e-3, |x| -0.7 * (x / 3.0).tanh()).unwrap(),
        ];
        for (i, p) in profiles.iter().enumerate() {
            assert!(classify(p).unwrap() != TopologyClass::Vacuum);
            let zm = zero_mode(p).unwrap();
            let q = zero_mode_charge(&zm);
            assert!((q + 0.5).abs() <= 1e-8, "profile {i}: charge {q}");
        }
    }

    #[test]
    fn halving_the_grid_step_barely_moves_the_mode() {
        let coarse = PhononProfile::tanh_kink(0.25, 8.0, 80.0, 2e-3).unwrap();
        let fine = PhononProfile::tanh_kink(0.25, 8.0, 80.0, 1e-3).unwrap();
        let zc = zero_mode(&coarse).unwrap();
        let zf = zero_mode(&fine).unwrap();
        let sup = (0..zc.samples().len())
            .map(|k| (zc.samples()[k] - zf.samples()[2 * k]).abs())
            .fold(0.0f64, f64::max);
        assert!(sup <= 1e-8, "refinement moved psi by {sup:e}");
        assert!((zero_mode_charge(&zc) - zero_mode_charge(&zf)).abs() <= 1e-8);
    }

    #[test]
    fn coarse_grid_rejected() {
        let p = PhononProfile::sampled(12.0, 0.75, |x| 4.0 * (x / 0.5).tanh()).unwrap();
        let err = zero_mode(&p).unwrap_err();
        assert!(matches!(err, ContinuumError::GridTooCoarse { .. }));
    }

    #[test]
    fn tails_decay_at_the_asymptotic_rate() {
        let zm = zero_mode(&tanh_profile(0.5, 4.0)).unwrap();
        assert!(
            (zm.tail_decay_left - 0.5).abs() < 0.05,
            "{}",
            zm.tail_decay_left
        );
        assert!(
            (zm.tail_decay_right - 0.5).abs() < 0.05,
            "{}",
            zm.tail_decay_right
        );
    }

    #[test]
    fn table_round_trip_and_validation() {
        let profile = tanh_profile(0.5, 4.0);
        let mut text = String::from("# x phi\n");
        for k in (0..profile.len()).step_by(100) {
            text.push_str(&format!("{} {}\n", profile.x(k), profile.samples()[k]));
        }
        let parsed = PhononProfile::from_table(&text).unwrap();
        assert_eq!(classify(&parsed).unwrap(), TopologyClass::Kink);

        let err = PhononProfile::from_table("1 2\n2 3\n").unwrap_err();
        assert!(matches!(err, ContinuumError::TooFewSamples { .. }));

        let mut bad = text.clone();
        bad.push_str("999 nope\n");
        assert!(matches!(
            PhononProfile::from_table(&bad),
            Err(ContinuumError::TableParse { .. })
        ));
    }

    #[test]
    fn sign_changes_consistent_with_class() {
        assert_eq!(tanh_profile(0.5, 4.0).sign_changes(), 1);
        let vac = PhononProfile::sampled(40.0, 0.05, |_| 0.5).unwrap();
        assert_eq!(vac.sign_changes(), 0);
    }
}
