use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kinkcharge_cli::commands::{
    self, ContinuumArgs, CountArgs, FockArgs, LatticeArgs, ProfileSource, Subtraction,
};
use kinkcharge_cli::config::{
    parse_boundary, parse_f64, parse_interval, parse_occupancy, parse_usize, parse_vacuum,
    parse_walls, ParamMap,
};
use kinkcharge_cli::sweep::{self, SweepSpec};
use kinkcharge_cli::CliError;

/// Soliton charge fractionalization laboratory: bond counting, chain
/// diagonalization, continuum zero modes, and exact charge operators.
#[derive(Parser)]
#[command(name = "kinkcharge", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
    /// Concurrent rows in sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Parameter file (key = value text or a JSON object); explicit flags
    /// override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count double bonds and the per-wall link deficit of a dimer pattern.
    Count {
        #[arg(long)]
        sites: Option<usize>,
        /// Comma-separated wall edge indices.
        #[arg(long)]
        walls: Option<String>,
        /// Site interval a:b to count within.
        #[arg(long)]
        region: Option<String>,
        /// Vacuum label of the left end (A or B).
        #[arg(long)]
        vacuum: Option<String>,
        /// Include ASCII bond diagrams in the output.
        #[arg(long)]
        diagram: bool,
    },
    /// Diagonalize a dimerized chain and measure the windowed soliton charge.
    Lattice {
        #[arg(long)]
        sites: Option<usize>,
        #[arg(long)]
        t0: Option<f64>,
        #[arg(long)]
        delta_t: Option<f64>,
        #[arg(long)]
        xi: Option<f64>,
        /// Comma-separated wall positions.
        #[arg(long)]
        walls: Option<String>,
        /// ring or open.
        #[arg(long)]
        boundary: Option<String>,
        /// empty or filled zero modes.
        #[arg(long)]
        occupancy: Option<String>,
        /// Charge window a:b enclosing exactly one wall.
        #[arg(long)]
        window: Option<String>,
        /// schwinger (local counterterm) or two-chain (literal subtraction).
        #[arg(long)]
        subtraction: Option<String>,
    },
    /// Classify a background profile and integrate its zero mode.
    Continuum {
        /// `tanh` or `table:<path>` (two-column x phi text).
        #[arg(long)]
        profile: Option<String>,
        #[arg(long)]
        phi0: Option<f64>,
        #[arg(long)]
        xi: Option<f64>,
        /// Half-length of the grid (default 10 xi).
        #[arg(long = "L")]
        half_length: Option<f64>,
        #[arg(long)]
        grid_step: Option<f64>,
    },
    /// Charge eigenvalues of occupation states over K paired modes plus the
    /// zero mode.
    Fock {
        /// Number of positive-energy mode pairs K.
        #[arg(long)]
        modes: Option<usize>,
        /// Occupation string like `b:1,3;d:2;a:1` (empty = all empty).
        #[arg(long)]
        state: Option<String>,
    },
    /// Sweep one lattice parameter from a config file; one CSV row per value.
    Converge,
}

#[derive(Serialize)]
struct Record<'a, C: Serialize, R: Serialize> {
    command: &'a str,
    config: &'a C,
    result: &'a R,
    duration_ms: f64,
}

fn emit_record<C: Serialize, R: Serialize>(
    emit: Emit,
    command: &str,
    config: &C,
    result: &R,
    header: String,
    row: String,
    started: Instant,
) {
    match emit {
        Emit::Json => {
            let record = Record {
                command,
                config,
                result,
                duration_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&record).expect("serializable record")
            );
        }
        Emit::Csv => {
            println!("{header}");
            println!("{row}");
        }
    }
}

fn file_params(path: &Option<PathBuf>) -> Result<ParamMap, CliError> {
    match path {
        Some(p) => ParamMap::from_file(p),
        None => Ok(ParamMap::default()),
    }
}

/// Flag value if present, else the config-file value parsed by `parse`.
fn resolve<T>(
    flag: Option<T>,
    map: &mut ParamMap,
    key: &str,
    parse: impl Fn(&str) -> Result<T, CliError>,
) -> Result<Option<T>, CliError> {
    if let Some(v) = flag {
        map.take(key);
        return Ok(Some(v));
    }
    match map.take(key) {
        Some(raw) => Ok(Some(parse(&raw)?)),
        None => Ok(None),
    }
}

fn required<T>(value: Option<T>, key: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Config(format!("missing required parameter: {key}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    match cli.command {
        Command::Count {
            sites,
            walls,
            region,
            vacuum,
            diagram,
        } => {
            let mut map = file_params(&cli.config)?;
            let sites = required(
                resolve(sites, &mut map, "sites", |s| parse_usize("sites", s))?,
                "sites",
            )?;
            let walls = resolve(walls, &mut map, "walls", |s| Ok(s.to_string()))?
                .map(|raw| parse_walls(&raw))
                .transpose()?
                .unwrap_or_default();
            let region = required(
                resolve(region, &mut map, "region", |s| Ok(s.to_string()))?,
                "region",
            )?;
            let region = parse_interval("region", &region)?;
            let vacuum = resolve(vacuum, &mut map, "vacuum", |s| Ok(s.to_string()))?
                .map(|raw| parse_vacuum(&raw))
                .transpose()?
                .unwrap_or(kinkcharge::dimer::Vacuum::A);
            map.finish()?;

            let args = CountArgs {
                sites,
                vacuum,
                walls,
                region,
                diagram,
            };
            let result = commands::run_count(&args)?;
            emit_record(
                cli.emit,
                "count",
                &args,
                &result,
                commands::count_csv_header(),
                commands::count_csv_row(&args, &result),
                started,
            );
        }
        Command::Lattice {
            sites,
            t0,
            delta_t,
            xi,
            walls,
            boundary,
            occupancy,
            window,
            subtraction,
        } => {
            let mut map = file_params(&cli.config)?;
            let args = LatticeArgs {
                sites: required(
                    resolve(sites, &mut map, "sites", |s| parse_usize("sites", s))?,
                    "sites",
                )?,
                t0: resolve(t0, &mut map, "t0", |s| parse_f64("t0", s))?.unwrap_or(1.0),
                delta_t: required(
                    resolve(delta_t, &mut map, "delta_t", |s| parse_f64("delta_t", s))?,
                    "delta_t",
                )?,
                xi: resolve(xi, &mut map, "xi", |s| parse_f64("xi", s))?.unwrap_or(1.0),
                boundary: resolve(boundary, &mut map, "boundary", |s| Ok(s.to_string()))?
                    .map(|raw| parse_boundary(&raw))
                    .transpose()?
                    .unwrap_or(kinkcharge::lattice::Boundary::Ring),
                walls: resolve(walls, &mut map, "walls", |s| Ok(s.to_string()))?
                    .map(|raw| parse_walls(&raw))
                    .transpose()?
                    .unwrap_or_default(),
                occupancy: resolve(occupancy, &mut map, "occupancy", |s| Ok(s.to_string()))?
                    .map(|raw| parse_occupancy(&raw))
                    .transpose()?
                    .unwrap_or(kinkcharge::lattice::Occupancy::ZeroModesEmpty),
                window: resolve(window, &mut map, "window", |s| Ok(s.to_string()))?
                    .map(|raw| parse_interval("window", &raw))
                    .transpose()?,
                subtraction: match resolve(subtraction, &mut map, "subtraction", |s| {
                    Ok(s.to_string())
                })? {
                    Some(raw) => match raw.trim() {
                        "schwinger" => Subtraction::Schwinger,
                        "two-chain" | "two_chain" => Subtraction::TwoChain,
                        other => {
                            return Err(CliError::Config(format!(
                                "subtraction must be schwinger or two-chain, got {other}"
                            )))
                        }
                    },
                    None => Subtraction::Schwinger,
                },
            };
            map.finish()?;

            let result = commands::run_lattice(&args)?;
            emit_record(
                cli.emit,
                "lattice",
                &args,
                &result,
                commands::lattice_csv_header(),
                commands::lattice_csv_row(&result),
                started,
            );
        }
        Command::Continuum {
            profile,
            phi0,
            xi,
            half_length,
            grid_step,
        } => {
            let mut map = file_params(&cli.config)?;
            let source = resolve(profile, &mut map, "profile", |s| Ok(s.to_string()))?
                .unwrap_or_else(|| "tanh".to_string());
            let source = match source.trim() {
                "tanh" => ProfileSource::Tanh,
                other => match other.strip_prefix("table:") {
                    Some(path) => ProfileSource::Table(PathBuf::from(path)),
                    None => {
                        return Err(CliError::Config(format!(
                            "profile must be tanh or table:<path>, got {other}"
                        )))
                    }
                },
            };
            let args = ContinuumArgs {
                phi0: match source {
                    ProfileSource::Tanh => required(
                        resolve(phi0, &mut map, "phi0", |s| parse_f64("phi0", s))?,
                        "phi0",
                    )?,
                    ProfileSource::Table(_) => {
                        resolve(phi0, &mut map, "phi0", |s| parse_f64("phi0", s))?.unwrap_or(0.0)
                    }
                },
                xi: match source {
                    ProfileSource::Tanh => {
                        required(resolve(xi, &mut map, "xi", |s| parse_f64("xi", s))?, "xi")?
                    }
                    ProfileSource::Table(_) => {
                        resolve(xi, &mut map, "xi", |s| parse_f64("xi", s))?.unwrap_or(1.0)
                    }
                },
                half_length: resolve(half_length, &mut map, "L", |s| parse_f64("L", s))?,
                grid_step: resolve(grid_step, &mut map, "grid_step", |s| {
                    parse_f64("grid_step", s)
                })?,
                profile: source,
            };
            map.finish()?;

            let result = commands::run_continuum(&args)?;
            emit_record(
                cli.emit,
                "continuum",
                &args,
                &result,
                commands::continuum_csv_header(),
                commands::continuum_csv_row(&result),
                started,
            );
        }
        Command::Fock { modes, state } => {
            let mut map = file_params(&cli.config)?;
            let args = FockArgs {
                modes: required(
                    resolve(modes, &mut map, "modes", |s| parse_usize("modes", s))?,
                    "modes",
                )?,
                state: resolve(state, &mut map, "state", |s| Ok(s.to_string()))?
                    .unwrap_or_default(),
            };
            map.finish()?;

            let result = commands::run_fock(&args)?;
            emit_record(
                cli.emit,
                "fock",
                &args,
                &result,
                commands::fock_csv_header(),
                commands::fock_csv_row(&result),
                started,
            );
        }
        Command::Converge => {
            let path = cli
                .config
                .as_ref()
                .ok_or_else(|| CliError::Config("converge requires --config <path>".into()))?;
            let spec = SweepSpec::from_params(ParamMap::from_file(path)?)?;
            let rows = sweep::run_sweep(&spec, cli.jobs);
            match cli.emit {
                Emit::Csv => {
                    println!("{}", sweep::sweep_csv_header());
                    for row in &rows {
                        println!("{}", sweep::sweep_csv_row(row));
                    }
                }
                Emit::Json => {
                    let items: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|row| match &row.outcome {
                            Ok(result) => serde_json::json!({
                                "value": row.value,
                                "result": result,
                            }),
                            Err(err) => serde_json::json!({
                                "value": row.value,
                                "error": {"kind": err.kind(), "message": err.message()},
                            }),
                        })
                        .collect();
                    let record = serde_json::json!({
                        "command": "converge",
                        "rows": items,
                        "duration_ms": started.elapsed().as_secs_f64() * 1e3,
                    });
                    println!("{}", serde_json::to_string_pretty(&record).unwrap());
                }
            }
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        let report = serde_json::json!({
            "error": {"kind": err.kind(), "message": err.message()}
        });
        eprintln!("{report}");
        std::process::exit(err.exit_code());
    }
}
