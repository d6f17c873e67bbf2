//! `dkfield`: verification suites, residual tables and the dual-charge
//! field simulator.
//!
//! Exit codes: 0 everything passed, 1 a check failed, 2 bad input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use dkfield::harness::{
    residual_rows, run_suite, sample_points, ReportRecord, RunConfig, Suite, System,
};
use dkfield::maxwell::{
    duality_invariance_test, threads_from_env, DualFieldState, DualityAngle, DyonicScenario,
    OutputKind, SimulationConfig,
};
use dkfield::{Mass, PlaneWaveField};

#[derive(Parser)]
#[command(
    name = "dkfield",
    version,
    about = "Dirac–Kähler field and dual-charge electrodynamics checks"
)]
#[command(
    after_help = "Exit status: 0 all checks pass, 1 a check failed, 2 invalid input.\n\
Set DKFIELD_THREADS to run the simulator on several threads (default 1)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a JSON report.
    #[command(
        after_help = "Default tolerances: algebra, roundtrip, sectors (projector and block \
checks) 1e-12; lorentz 1e-10 (homomorphism 1e-9); sector preservation, equivalence and \
duality invariance 1e-10; duality identities 1e-12. --tolerance replaces all of them."
    )]
    Verify {
        #[arg(value_parser = suite_parser())]
        suite: Suite,
        #[command(flatten)]
        common: Common,
        /// Duality angle in radians (duality suite).
        #[arg(long, default_value_t = 0.7, allow_hyphen_values = true)]
        chi: f64,
    },
    /// Evaluate an equation system on a JSON plane-wave field spec; CSV out.
    Residual {
        /// Field spec: a JSON list of {k: [4 reals], polarization: 16 [re, im] pairs}.
        spec: PathBuf,
        #[arg(long, default_value = "dk", value_parser = system_parser())]
        system: System,
        /// Mass for the massive systems.
        #[arg(long, short = 'm', default_value_t = 1.0)]
        mass: f64,
        /// Number of seeded sample points.
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the lattice solver from a JSON config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output directory for diagnostics.csv and fields.csv; diagnostics
        /// go to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check invariance of the extended system under a duality rotation.
    Duality {
        #[arg(long, default_value_t = 0.7, allow_hyphen_values = true)]
        chi: f64,
        /// Sample points in the dyonic scenario.
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn suite_parser() -> impl TypedValueParser<Value = Suite> {
    PossibleValuesParser::new(Suite::ALL.map(Suite::name)).map(|s| s.parse().expect("listed"))
}

fn system_parser() -> impl TypedValueParser<Value = System> {
    let names = [
        "dk",
        "proca",
        "pseudoproca",
        "maxwell",
        "pseudomaxwell",
        "extended",
    ];
    PossibleValuesParser::new(names).map(|s| s.parse().expect("listed"))
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random samples per check (suite default when omitted).
    #[arg(long)]
    trials: Option<usize>,
    /// Pass threshold override.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    seed: u64,
    pass: bool,
    records: Vec<ReportRecord>,
}

/// Bad input and unwritable output both exit 2; kept apart for the message
/// context only.
enum Failure {
    Input(anyhow::Error),
    Io(anyhow::Error),
}

impl From<dkfield::Error> for Failure {
    fn from(e: dkfield::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

fn io<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Io(e.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(e) | Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Verify { suite, common, chi } => verify(suite, &common, chi),
        Command::Residual {
            spec,
            system,
            mass,
            points,
            common,
        } => residual(&spec, system, mass, points, &common),
        Command::Simulate { config, out } => simulate(&config, out.as_deref()),
        Command::Duality {
            chi,
            points,
            common,
        } => duality(chi, points, &common),
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p)
                .with_context(|| format!("cannot create {}", p.display()))
                .map_err(io)?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_report(report: &Report, out: Option<&Path>) -> Result<(), Failure> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, report).map_err(io)?;
    writeln!(w).map_err(io)?;
    w.flush().map_err(io)
}

fn verify(suite: Suite, common: &Common, chi: f64) -> Result<bool, Failure> {
    let cfg = RunConfig {
        seed: common.seed,
        trials: common.trials,
        tolerance: common.tolerance,
        chi,
    };
    let records = run_suite(suite, &cfg)?;
    for r in &records {
        eprintln!(
            "{:<5} {}/{} max_residual={:.3e} tolerance={:.0e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.suite,
            r.check,
            r.max_residual,
            r.tolerance
        );
    }
    let pass = records.iter().all(|r| r.pass);
    write_report(
        &Report {
            command: "verify",
            seed: common.seed,
            pass,
            records,
        },
        common.out.as_deref(),
    )?;
    Ok(pass)
}

fn read_field(path: &Path) -> Result<PlaneWaveField, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read field spec {}", path.display()))
        .map_err(input)?;
    // serde_json errors carry "line L column C"
    serde_json::from_str(&text)
        .with_context(|| format!("malformed field spec {}", path.display()))
        .map_err(input)
}

fn residual(
    spec: &Path,
    system: System,
    mass: f64,
    points: usize,
    common: &Common,
) -> Result<bool, Failure> {
    if let Some(t) = common.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(input(anyhow!("tolerance must be positive, got {t}")));
        }
    }
    let field = read_field(spec)?;
    let m = Mass::new(mass)?;
    if points == 0 {
        return Err(input(anyhow!("need at least one sample point")));
    }
    let rows = residual_rows(&field, system, m, &sample_points(common.seed, points))?;
    let mut w = csv::Writer::from_writer(sink(common.out.as_deref())?);
    for r in &rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(io)?;
    Ok(match common.tolerance {
        Some(t) => rows.iter().all(|r| r.residual <= t),
        None => true,
    })
}

fn read_config(path: &Path) -> Result<SimulationConfig, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))
        .map_err(input)?;
    serde_json::from_str(&text)
        .with_context(|| format!("malformed config {}", path.display()))
        .map_err(input)
}

#[derive(Serialize)]
struct FieldRow {
    step: usize,
    i: usize,
    j: usize,
    k: usize,
    #[serde(rename = "Ex")]
    ex: f64,
    #[serde(rename = "Ey")]
    ey: f64,
    #[serde(rename = "Ez")]
    ez: f64,
    #[serde(rename = "Bx")]
    bx: f64,
    #[serde(rename = "By")]
    by: f64,
    #[serde(rename = "Bz")]
    bz: f64,
}

fn write_fields(path: &Path, snapshots: &[DualFieldState]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(sink(Some(path))?);
    for s in snapshots {
        let [nx, ny, nz] = s.grid().n;
        for k in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    let [ex, ey, ez, bx, by, bz] = s.cell(i, j, k);
                    w.serialize(FieldRow {
                        step: s.step(),
                        i,
                        j,
                        k,
                        ex,
                        ey,
                        ez,
                        bx,
                        by,
                        bz,
                    })
                    .map_err(io)?;
                }
            }
        }
    }
    w.flush().map_err(io)
}

fn simulate(config: &Path, out: Option<&Path>) -> Result<bool, Failure> {
    let cfg = read_config(config)?;
    let threads = threads_from_env()?;
    if cfg.outputs.contains(&OutputKind::Fields) && out.is_none() {
        return Err(input(anyhow!("field snapshots need --out DIR")));
    }
    // fails with the CFL bound before any stepping
    cfg.initial_state(threads)?;
    let start = Instant::now();
    let result = cfg.run(threads)?;
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))
            .map_err(io)?;
    }
    let wants_diag = cfg
        .outputs
        .iter()
        .any(|o| matches!(o, OutputKind::Energy | OutputKind::Gauss));
    if wants_diag {
        let path = out.map(|d| d.join("diagnostics.csv"));
        let mut w = csv::Writer::from_writer(sink(path.as_deref())?);
        w.write_record([
            "step",
            "energy",
            "max_divE_minus_rho",
            "max_divB_plus_rhomag",
        ])
        .map_err(io)?;
        for d in &result.diagnostics {
            w.write_record([
                d.step.to_string(),
                d.energy.to_string(),
                d.max_div_e_minus_rho.to_string(),
                d.max_div_b_plus_rhomag.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(io)?;
    }
    if let Some(dir) = out {
        if cfg.outputs.contains(&OutputKind::Fields) {
            write_fields(&dir.join("fields.csv"), &result.snapshots)?;
        }
    }
    let first = result.diagnostics.first().map_or(0.0, |d| d.energy);
    let last = result.diagnostics.last().map_or(0.0, |d| d.energy);
    eprintln!(
        "{} steps on {:?} with {} thread(s) in {:.1} ms; energy {:.6e} -> {:.6e}",
        cfg.steps,
        cfg.grid.n,
        threads,
        start.elapsed().as_secs_f64() * 1e3,
        first,
        last
    );
    Ok(true)
}

fn duality(chi: f64, points: usize, common: &Common) -> Result<bool, Failure> {
    if !chi.is_finite() {
        return Err(input(anyhow!("chi must be finite")));
    }
    if let Some(t) = common.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(input(anyhow!("tolerance must be positive, got {t}")));
        }
    }
    let tolerance = common.tolerance.unwrap_or(1e-10);
    let trials = common.trials.unwrap_or(1);
    if trials == 0 || points == 0 {
        return Err(input(anyhow!("need at least one scenario and one point")));
    }
    let mut records = Vec::new();
    for n in 0..trials {
        let seed = common.seed.wrapping_add(n as u64);
        let scenario = DyonicScenario::plane_wave(seed, points);
        let start = Instant::now();
        let gap = duality_invariance_test(&scenario, DualityAngle(chi));
        records.push(ReportRecord {
            suite: "duality".into(),
            check: format!("invariance_seed_{seed}"),
            max_residual: gap,
            tolerance,
            pass: gap <= tolerance,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    let pass = records.iter().all(|r| r.pass);
    write_report(
        &Report {
            command: "duality",
            seed: common.seed,
            pass,
            records,
        },
        common.out.as_deref(),
    )?;
    Ok(pass)
}
