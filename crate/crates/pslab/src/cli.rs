//! Command-line front end. One verb per capability: `wigner`, `husimi`,
//! `entropy`, `admissibility`, `smooth`, `probe`, `claims`, and `run` for
//! scenario files. Exit codes: 0 success, 1 validation error, 2 numerical
//! guard (e.g. a divergence-suspect smoothing input).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::admissibility::{
    admissibility_report_with_spectrum, divergence_probe, gaussian_smooth, AdmissibilityReport,
    SmoothingKernel,
};
use crate::claims::{run_all_claims, run_claim};
use crate::entropy::{
    husimi_from_state, purity_integral, s2_operator, s2_wigner, von_neumann_entropy,
    wehrl_entropy, HusimiParameter,
};
use crate::error::{Error, Result};
use crate::field::PhaseSpaceField;
use crate::grid::{build_grid, PhaseSpaceGrid};
use crate::io::{export_field, load_scenario, write_json_report, ExportFormat, Operation};
use crate::state::DensityOperatorKernel;
use crate::statelib::{BuiltState, StateSpec};
use crate::weyl::wigner_from_pure;

/// Environment variable that overrides the default grid size (for CI-scale
/// runs).
pub const GRID_NX_ENV: &str = "PSLAB_GRID_NX";

#[derive(Debug, Parser)]
#[command(
    name = "pslab",
    about = "Numerical laboratory for quantum phase-space distributions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Planck constant ħ.
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Half-width L of the x-domain.
    #[arg(long = "grid-l", default_value_t = 8.0)]
    grid_l: f64,
    /// Number of grid points per axis (even, ≥ 8); defaults to
    /// $PSLAB_GRID_NX or 256.
    #[arg(long = "grid-nx")]
    grid_nx: Option<usize>,
}

impl GridArgs {
    fn build(&self) -> Result<PhaseSpaceGrid> {
        let nx = match self.grid_nx {
            Some(n) => n,
            None => default_nx()?,
        };
        build_grid(self.hbar, self.grid_l, nx)
    }
}

fn default_nx() -> Result<usize> {
    match std::env::var(GRID_NX_ENV) {
        Ok(text) => text.trim().parse::<usize>().map_err(|e| Error::InvalidParameter {
            name: "PSLAB_GRID_NX",
            reason: e.to_string(),
        }),
        Err(_) => Ok(256),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the Wigner function of a pure state and export it.
    Wigner {
        /// State, e.g. fock:0, coherent:x0=2,p0=0, cat:d=6,parity=-1.
        #[arg(long)]
        state: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
        /// csv (default) or json.
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Compute the Husimi function of a pure state and export it.
    Husimi {
        #[arg(long)]
        state: String,
        /// Squeezing ratio of the minimal-uncertainty kernel.
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Entropy functionals of a pure state (purity, S2 in both pictures,
    /// von Neumann, Wehrl).
    Entropy {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[command(flatten)]
        grid: GridArgs,
        /// Optional JSON output file (stdout otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inverse-Weyl positivity diagnosis of a state's Wigner function or of
    /// a raw field.
    Admissibility {
        #[arg(long)]
        state: String,
        /// Smooth with the minimal-uncertainty kernel before judging.
        #[arg(long)]
        smooth: bool,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smooth a field (or a pure state's Wigner function) with a Gaussian
    /// kernel and export the result.
    Smooth {
        #[arg(long)]
        state: String,
        /// Kernel width in x (and in p unless --sigma-p is given).
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        sigma_p: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Truncated-integral divergence probe for e^{a(x²+p²)} under Gaussian
    /// smoothing.
    Probe {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long)]
        sigma_p: Option<f64>,
        /// Comma-separated radii, strictly increasing.
        #[arg(long, default_value = "2,3,4,5,6,7,8")]
        cutoffs: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one claim (--id C1..C6) or all of them (--all).
    Claims {
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute a scenario file.
    Run {
        /// Path to the scenario JSON.
        scenario: PathBuf,
    },
}

#[derive(Serialize)]
struct EntropyReport {
    state: StateSpec,
    grid: PhaseSpaceGrid,
    kappa: f64,
    purity: f64,
    s2_wigner: f64,
    s2_operator: f64,
    von_neumann: f64,
    wehrl: f64,
}

#[derive(Serialize)]
struct AdmissibilityOutput {
    state: StateSpec,
    grid: PhaseSpaceGrid,
    smoothed: bool,
    report: AdmissibilityReport,
    spectrum: Vec<f64>,
}

/// Parse argv and execute; returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    1
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn state_field(spec: &StateSpec, grid: &PhaseSpaceGrid) -> Result<PhaseSpaceField> {
    match spec.build(grid)? {
        BuiltState::Pure(psi) => wigner_from_pure(&psi),
        BuiltState::Field(f) => Ok(f),
    }
}

fn emit_json<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => write_json_report(value, path),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn entropy_report(spec: StateSpec, grid: PhaseSpaceGrid, kappa: f64) -> Result<EntropyReport> {
    let psi = match spec.build(&grid)? {
        BuiltState::Pure(psi) => psi,
        BuiltState::Field(_) => {
            return Err(Error::Scenario(
                "entropy functionals need a pure state (fock, coherent, or cat)".into(),
            ))
        }
    };
    let kappa = HusimiParameter::new(kappa)?;
    let w = wigner_from_pure(&psi)?;
    let rho = DensityOperatorKernel::from_pure(&psi)?;
    let q = husimi_from_state(&psi, &kappa)?;
    Ok(EntropyReport {
        state: spec,
        grid,
        kappa: kappa.kappa,
        purity: purity_integral(&w),
        s2_wigner: s2_wigner(&w),
        s2_operator: s2_operator(&rho)?,
        von_neumann: von_neumann_entropy(&rho)?,
        wehrl: wehrl_entropy(&q)?,
    })
}

fn parse_cutoffs(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<f64>().map_err(|e| Error::InvalidParameter {
                name: "cutoffs",
                reason: e.to_string(),
            })
        })
        .collect()
}

fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Wigner {
            state,
            grid,
            out,
            format,
        } => {
            let grid = grid.build()?;
            let spec = StateSpec::parse_cli(&state)?;
            let field = state_field(&spec, &grid)?;
            export_field(&field, format.parse()?, &out)
        }
        Command::Husimi {
            state,
            kappa,
            grid,
            out,
            format,
        } => {
            let grid = grid.build()?;
            let spec = StateSpec::parse_cli(&state)?;
            let psi = match spec.build(&grid)? {
                BuiltState::Pure(psi) => psi,
                BuiltState::Field(_) => {
                    return Err(Error::Scenario(
                        "husimi needs a pure state (fock, coherent, or cat)".into(),
                    ))
                }
            };
            let q = husimi_from_state(&psi, &HusimiParameter::new(kappa)?)?;
            export_field(&q, format.parse()?, &out)
        }
        Command::Entropy {
            state,
            kappa,
            grid,
            out,
        } => {
            let grid = grid.build()?;
            let report = entropy_report(StateSpec::parse_cli(&state)?, grid, kappa)?;
            emit_json(&report, out.as_ref())
        }
        Command::Admissibility {
            state,
            smooth,
            kappa,
            grid,
            out,
        } => {
            let grid = grid.build()?;
            let spec = StateSpec::parse_cli(&state)?;
            let mut field = state_field(&spec, &grid)?;
            if smooth {
                field = gaussian_smooth(&field, &SmoothingKernel::minimal(grid.hbar, kappa)?)?;
            }
            let (report, spectrum) = admissibility_report_with_spectrum(&field)?;
            emit_json(
                &AdmissibilityOutput {
                    state: spec,
                    grid,
                    smoothed: smooth,
                    report,
                    spectrum,
                },
                out.as_ref(),
            )
        }
        Command::Smooth {
            state,
            sigma,
            sigma_p,
            grid,
            out,
            format,
        } => {
            let grid = grid.build()?;
            let spec = StateSpec::parse_cli(&state)?;
            let field = state_field(&spec, &grid)?;
            let kernel = SmoothingKernel::new(sigma, sigma_p.unwrap_or(sigma))?;
            let smoothed = gaussian_smooth(&field, &kernel)?;
            match out {
                Some(path) => export_field(&smoothed, format.parse()?, &path),
                None => {
                    println!(
                        "smoothed field: integral {:?}, min {:?}, max|.| {:?}",
                        smoothed.integral(),
                        smoothed.min_value(),
                        smoothed.max_abs()
                    );
                    Ok(())
                }
            }
        }
        Command::Probe {
            a,
            sigma,
            sigma_p,
            cutoffs,
            out,
        } => {
            let kernel = SmoothingKernel::new(sigma, sigma_p.unwrap_or(sigma))?;
            let report = divergence_probe(a, &kernel, &parse_cutoffs(&cutoffs)?)?;
            emit_json(&report, out.as_ref())
        }
        Command::Claims { id, all, grid, out } => {
            let grid = grid.build()?;
            match (id, all) {
                (Some(_), true) | (None, false) => Err(Error::Scenario(
                    "claims needs exactly one of --id or --all".into(),
                )),
                (Some(id), false) => {
                    let report = run_claim(id.parse()?, &grid)?;
                    emit_json(&report, out.as_ref())
                }
                (None, true) => {
                    let reports = run_all_claims(&grid)?;
                    emit_json(&reports, out.as_ref())
                }
            }
        }
        Command::Run { scenario } => {
            let sc = load_scenario(&scenario)?;
            run_scenario(sc)
        }
    }
}

fn run_scenario(sc: crate::io::Scenario) -> Result<()> {
    let grid = sc.grid;
    let out = sc.output.clone();
    let export = |field: &PhaseSpaceField| -> Result<()> {
        match &out {
            Some(spec) => export_field(field, spec.format, &spec.path),
            None => {
                println!(
                    "field: kind {}, integral {:?}, min {:?}",
                    field.kind.name(),
                    field.integral(),
                    field.min_value()
                );
                Ok(())
            }
        }
    };
    let report_out = |value: &dyn erased::SerializeReport| -> Result<()> {
        match &out {
            Some(spec) => match spec.format {
                ExportFormat::Json => value.write(&spec.path),
                ExportFormat::Csv => Err(Error::Scenario(
                    "reports serialize to JSON; set output.format to \"json\"".into(),
                )),
            },
            None => value.print(),
        }
    };

    match sc.operation {
        Operation::Wigner => export(&state_field(&sc.state, &grid)?),
        Operation::Husimi { kappa } => {
            let psi = match sc.state.build(&grid)? {
                BuiltState::Pure(psi) => psi,
                BuiltState::Field(_) => {
                    return Err(Error::Scenario("husimi needs a pure state".into()))
                }
            };
            export(&husimi_from_state(&psi, &HusimiParameter::new(kappa)?)?)
        }
        Operation::Entropy { kappa } => {
            let report = entropy_report(sc.state, grid, kappa)?;
            report_out(&report)
        }
        Operation::Admissibility => {
            let field = state_field(&sc.state, &grid)?;
            let (report, spectrum) = admissibility_report_with_spectrum(&field)?;
            report_out(&AdmissibilityOutput {
                state: sc.state,
                grid,
                smoothed: false,
                report,
                spectrum,
            })
        }
        Operation::Smooth { sigma_x, sigma_p } => {
            let field = state_field(&sc.state, &grid)?;
            let minimal = SmoothingKernel::minimal(grid.hbar, 1.0)?;
            let kernel = SmoothingKernel::new(
                sigma_x.unwrap_or(minimal.sigma_x),
                sigma_p.unwrap_or(minimal.sigma_p),
            )?;
            export(&gaussian_smooth(&field, &kernel)?)
        }
        Operation::Probe {
            a,
            sigma_x,
            sigma_p,
            cutoffs,
        } => {
            let kernel = SmoothingKernel::new(sigma_x, sigma_p)?;
            let report = divergence_probe(a, &kernel, &cutoffs)?;
            report_out(&report)
        }
        Operation::Claim { id } => {
            let report = run_claim(id, &grid)?;
            report_out(&report)
        }
    }
}

/// Object-safe serialization shim so `run_scenario` can route any report
/// type through one output path.
mod erased {
    use super::*;

    pub trait SerializeReport {
        fn write(&self, path: &std::path::Path) -> Result<()>;
        fn print(&self) -> Result<()>;
    }

    impl<T: Serialize> SerializeReport for T {
        fn write(&self, path: &std::path::Path) -> Result<()> {
            write_json_report(self, path)
        }
        fn print(&self) -> Result<()> {
            println!("{}", serde_json::to_string_pretty(self)?);
            Ok(())
        }
    }
}
