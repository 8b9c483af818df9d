//! Convergence sweeps: one lattice run per axis value, emitted as CSV rows
//! in input order. Rows are independent and may run concurrently; failures
//! land in the row's `error` column and the sweep continues.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use kinkcharge::lattice::{Boundary, Occupancy};
use kinkcharge::Interval;

use crate::commands::{
    lattice_csv_header, lattice_csv_row, run_lattice, LatticeArgs, LatticeResult, Subtraction,
};
use crate::config::{
    parse_boundary, parse_f64, parse_f64_list, parse_interval, parse_occupancy, parse_usize,
    parse_walls, ParamMap,
};
use crate::output::csv_row;
use crate::CliError;

/// Sweepable numeric parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Sites,
    Xi,
    DeltaT,
    T0,
}

impl Axis {
    fn parse(raw: &str) -> Result<Axis, CliError> {
        match raw.trim() {
            "sites" | "N" => Ok(Axis::Sites),
            "xi" => Ok(Axis::Xi),
            "delta_t" => Ok(Axis::DeltaT),
            "t0" => Ok(Axis::T0),
            other => Err(CliError::Config(format!(
                "axis must be sites, xi, delta_t, or t0; got {other}"
            ))),
        }
    }
}

/// Parsed sweep description.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<f64>,
    base: LatticeArgs,
    /// Wall positions as fractions of the chain length; used instead of
    /// absolute walls so a sites sweep scales its geometry.
    walls_frac: Option<Vec<f64>>,
    window_frac: Option<(f64, f64)>,
}

impl SweepSpec {
    /// Reads the sweep from config keys: the lattice parameters plus
    /// `axis` and `values`, with optional `walls_frac`/`window_frac`.
    pub fn from_params(mut map: ParamMap) -> Result<SweepSpec, CliError> {
        let axis = Axis::parse(
            &map.take("axis")
                .ok_or_else(|| CliError::Config("missing required key: axis".into()))?,
        )?;
        let values = parse_f64_list(
            "values",
            &map.take("values")
                .ok_or_else(|| CliError::Config("missing required key: values".into()))?,
        )?;

        let sites = match map.take("sites") {
            Some(raw) => parse_usize("sites", &raw)?,
            None if axis == Axis::Sites => 0,
            None => return Err(CliError::Config("missing required key: sites".into())),
        };
        let t0 = match map.take("t0") {
            Some(raw) => parse_f64("t0", &raw)?,
            None => 1.0,
        };
        let delta_t = match map.take("delta_t") {
            Some(raw) => parse_f64("delta_t", &raw)?,
            None if axis == Axis::DeltaT => 0.0,
            None => return Err(CliError::Config("missing required key: delta_t".into())),
        };
        let xi = match map.take("xi") {
            Some(raw) => parse_f64("xi", &raw)?,
            None if axis == Axis::Xi => 0.0,
            None => return Err(CliError::Config("missing required key: xi".into())),
        };
        let boundary = match map.take("boundary") {
            Some(raw) => parse_boundary(&raw)?,
            None => Boundary::Ring,
        };
        let occupancy = match map.take("occupancy") {
            Some(raw) => parse_occupancy(&raw)?,
            None => Occupancy::ZeroModesEmpty,
        };
        let walls = match map.take("walls") {
            Some(raw) => parse_walls(&raw)?,
            None => Vec::new(),
        };
        let walls_frac = match map.take("walls_frac") {
            Some(raw) => Some(parse_f64_list("walls_frac", &raw)?),
            None => None,
        };
        let window = match map.take("window") {
            Some(raw) => Some(parse_interval("window", &raw)?),
            None => None,
        };
        let window_frac = match map.take("window_frac") {
            Some(raw) => {
                let iv = raw.trim();
                let (lo, hi) = iv.split_once(':').ok_or_else(|| {
                    CliError::Config(format!("window_frac: expected lo:hi, got {iv}"))
                })?;
                Some((parse_f64("window_frac", lo)?, parse_f64("window_frac", hi)?))
            }
            None => None,
        };
        map.finish()?;

        if walls_frac.is_some() && !walls.is_empty() {
            return Err(CliError::Config(
                "walls and walls_frac are mutually exclusive".into(),
            ));
        }
        if window_frac.is_some() && window.is_some() {
            return Err(CliError::Config(
                "window and window_frac are mutually exclusive".into(),
            ));
        }

        Ok(SweepSpec {
            axis,
            values,
            base: LatticeArgs {
                sites,
                t0,
                delta_t,
                xi,
                boundary,
                walls,
                occupancy,
                window,
                subtraction: Subtraction::Schwinger,
            },
            walls_frac,
            window_frac,
        })
    }

    /// Lattice arguments for one sweep point.
    fn point(&self, value: f64) -> Result<LatticeArgs, CliError> {
        let mut args = self.base.clone();
        match self.axis {
            Axis::Sites => {
                if value <= 0.0 || value.fract() != 0.0 {
                    return Err(CliError::Config(format!(
                        "sites value must be a positive integer, got {value}"
                    )));
                }
                args.sites = value as usize;
            }
            Axis::Xi => args.xi = value,
            Axis::DeltaT => args.delta_t = value,
            Axis::T0 => args.t0 = value,
        }
        if let Some(fracs) = &self.walls_frac {
            args.walls = fracs
                .iter()
                .map(|f| (f * args.sites as f64).round() as usize)
                .collect();
        }
        if let Some((lo, hi)) = self.window_frac {
            args.window = Some(Interval::new(
                (lo * args.sites as f64).round() as usize,
                (hi * args.sites as f64).round() as usize,
            ));
        }
        Ok(args)
    }
}

/// One sweep row: the axis value and either a result or the error message.
#[derive(Debug)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: Result<LatticeResult, CliError>,
}

/// Runs every point, at most `jobs` at a time, preserving input order.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Vec<SweepRow> {
    let jobs = jobs.max(1).min(spec.values.len().max(1));
    let counter = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<SweepRow>>> =
        spec.values.iter().map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let idx = counter.fetch_add(1, Ordering::Relaxed);
                if idx >= spec.values.len() {
                    break;
                }
                let value = spec.values[idx];
                let outcome = spec.point(value).and_then(|args| run_lattice(&args));
                *slots[idx].lock().unwrap() = Some(SweepRow { value, outcome });
            });
        }
    });

    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("every slot filled"))
        .collect()
}

pub fn sweep_csv_header() -> String {
    format!("{},error", lattice_csv_header())
}

pub fn sweep_csv_row(row: &SweepRow) -> String {
    match &row.outcome {
        Ok(result) => format!("{},", lattice_csv_row(result)),
        Err(err) => {
            let blanks: Vec<String> = std::iter::repeat(String::new()).take(10).collect();
            let mut fields = vec![match row.value.fract() == 0.0 {
                true => format!("{}", row.value as i64),
                false => format!("{}", row.value),
            }];
            fields.extend(blanks);
            fields.push(err.to_string());
            csv_row(&fields)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_from(text: &str) -> Result<SweepSpec, CliError> {
        SweepSpec::from_params(ParamMap::parse(text).unwrap())
    }

    #[test]
    fn sites_sweep_scales_geometry() {
        let spec = spec_from(
            "axis = sites\nvalues = 80,120\ndelta_t = 0.2\nxi = 2\n\
             walls_frac = 0.25,0.75\nwindow_frac = 0.05,0.45\n",
        );
        // window_frac uses a colon, not a comma
        assert!(spec.is_err());
        let spec = spec_from(
            "axis = sites\nvalues = 80,120\ndelta_t = 0.2\nxi = 2\n\
             walls_frac = 0.25,0.75\nwindow_frac = 0.05:0.45\n",
        )
        .unwrap();
        let p = spec.point(80.0).unwrap();
        assert_eq!(p.sites, 80);
        assert_eq!(p.walls, vec![20, 60]);
        assert_eq!(p.window.unwrap(), Interval::new(4, 36));
    }

    #[test]
    fn unknown_key_rejected() {
        let err = spec_from("axis = sites\nvalues = 8\ndelta_t = 0.2\nxi = 1\nnope = 3\n");
        assert!(matches!(err, Err(CliError::Config(_))));
    }

    #[test]
    fn errors_are_recorded_per_row() {
        // 63 sites is odd: invalid on a ring, but the sweep must not stop.
        let spec = spec_from(
            "axis = sites\nvalues = 64,63,80\ndelta_t = 0.2\nxi = 1\nwalls_frac = 0.25,0.75\n",
        )
        .unwrap();
        let rows = run_sweep(&spec, 2);
        assert_eq!(rows.len(), 3);
        assert!(rows[0].outcome.is_ok());
        assert!(rows[1].outcome.is_err());
        assert!(rows[2].outcome.is_ok());
        // Ordered by input, not completion.
        assert_eq!(rows[0].value, 64.0);
        assert_eq!(rows[1].value, 63.0);
        assert_eq!(rows[2].value, 80.0);
    }

    #[test]
    fn empty_value_list_gives_empty_sweep() {
        let spec = spec_from("axis = xi\nvalues =\nsites = 64\ndelta_t = 0.2\n").unwrap();
        let rows = run_sweep(&spec, 4);
        assert!(rows.is_empty());
    }

    #[test]
    fn parallel_matches_serial() {
        let spec = spec_from(
            "axis = xi\nvalues = 1,2,3,4\nsites = 120\ndelta_t = 0.2\n\
             walls = 30,90\nwindow = 10:50\n",
        )
        .unwrap();
        let serial = run_sweep(&spec, 1);
        let parallel = run_sweep(&spec, 4);
        for (a, b) in serial.iter().zip(&parallel) {
            let (a, b) = (a.outcome.as_ref().unwrap(), b.outcome.as_ref().unwrap());
            assert_eq!(
                a.charge.unwrap().to_bits(),
                b.charge.unwrap().to_bits()
            );
        }
    }
}
